#include "buckle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "buckle/parallel.hpp"

namespace buckle::analysis {
namespace {

// Evenly spaced lo, lo+step, ... up to hi (inclusive within 1e-9 step).
std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        out.push_back(lo + static_cast<double>(i) * step);
    }
    return out;
}

struct Line {
    double intercept = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Line line;
    line.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    line.intercept = my - line.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        line.max_residual =
            std::max(line.max_residual, std::abs(y[i] - line.intercept - line.slope * x[i]));
    }
    return line;
}

template <typename T>
bool monotone(const std::vector<T>& v) {
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        up = up && v[i] >= v[i - 1];
        down = down && v[i] <= v[i - 1];
    }
    return up || down;
}

}  // namespace

void check_envelope(double a, bool extended) {
    annulus::check_inner_radius(a);
    const double limit = extended ? kExtendedMaxA : kSupportedMaxA;
    if (a > limit) {
        std::ostringstream msg;
        msg << "inner radius " << a << " is above the supported limit " << limit;
        if (!extended) {
            msg << " (pass --extended to allow up to " << kExtendedMaxA << ")";
        }
        throw std::domain_error(msg.str());
    }
}

std::vector<TableRow> table1(const std::vector<double>& a_list, const SweepOptions& options) {
    return parallel_map<TableRow>(a_list.size(), options.workers, [&](std::size_t i) {
        TableRow row;
        row.a = a_list[i];
        try {
            check_envelope(row.a, options.extended);
            const annulus::FirstEigenvalueResult r = annulus::first_eigenvalue(row.a, options.xtol);
            row.k_max = r.k_max;
            row.k_opt = r.k_opt;
            row.sqrt_lambda1 = r.sqrt_lambda1;
            row.normalized = r.normalized;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    });
}

std::vector<double> reference_radii() {
    return {0.0,  0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65,
            0.70, 0.75, 0.80, 0.82, 0.84, 0.86, 0.88, 0.90, 0.91, 0.92, 0.93, 0.94, 0.95};
}

std::vector<std::vector<BranchCell>> branches(const std::vector<int>& k_set,
                                              const std::vector<double>& a_grid,
                                              const SweepOptions& options) {
    const std::size_t cols = a_grid.size();
    const auto flat = parallel_map<BranchCell>(k_set.size() * cols, options.workers, [&](std::size_t i) {
        const int k = k_set[i / cols];
        const double a = a_grid[i % cols];
        BranchCell cell;
        cell.point = {k, a, 0.0, 0.0};
        try {
            check_envelope(a, options.extended);
            cell.point = annulus::tau(k, a, options.xtol);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        return cell;
    });
    std::vector<std::vector<BranchCell>> out(k_set.size());
    for (std::size_t r = 0; r < k_set.size(); ++r) {
        out[r].assign(flat.begin() + static_cast<long>(r * cols),
                      flat.begin() + static_cast<long>((r + 1) * cols));
    }
    return out;
}

std::vector<int> default_branch_indices() { return {0, 1, 2, 3, 4}; }

std::vector<double> default_branch_grid() { return grid(0.0, 0.4, 0.01); }

std::vector<annulus::RadialProfile> radial_profiles(const std::vector<ProfileCase>& cases,
                                                    const SweepOptions& options, int n_samples) {
    for (const ProfileCase& c : cases) {
        check_envelope(c.second, options.extended);
    }
    return parallel_map<annulus::RadialProfile>(cases.size(), options.workers, [&](std::size_t i) {
        const auto [k, a] = cases[i];
        return annulus::radial_profile(annulus::tau(k, a, options.xtol), n_samples);
    });
}

std::vector<ProfileCase> default_profile_cases() {
    return {{1, 0.2}, {2, 0.2}, {3, 0.2}, {3, 0.5}, {4, 0.5},
            {5, 0.5}, {5, 0.8}, {11, 0.8}, {13, 0.8}};
}

AsymptoticFit fit_asymptotics(const std::vector<double>& a_grid, const SweepOptions& options) {
    if (a_grid.size() < 2) {
        throw std::invalid_argument("fit_asymptotics: need at least two inner radii");
    }
    const std::vector<TableRow> rows = table1(a_grid, options);
    AsymptoticFit fit;
    std::vector<double> x;
    std::vector<double> yk;
    std::vector<double> ymu;
    for (const TableRow& row : rows) {
        if (!row.ok()) {
            throw std::runtime_error("fit_asymptotics: a = " + std::to_string(row.a) + ": " + row.error);
        }
        const double gap = 1.0 - row.a;
        fit.samples.push_back({row.a, row.k_opt, row.sqrt_lambda1, row.k_opt * gap, row.sqrt_lambda1 * gap});
        x.push_back(gap);
        yk.push_back(row.k_opt * gap);
        ymu.push_back(row.sqrt_lambda1 * gap);
    }
    const Line lk = least_squares(x, yk);
    const Line lmu = least_squares(x, ymu);
    fit.c_k = lk.intercept;
    fit.c_mu = lmu.intercept;

    std::size_t last = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].a > rows[last].a) {
            last = i;
        }
    }
    fit.last_c_k = yk[last];
    fit.last_c_mu = ymu[last];

    std::vector<std::string> reasons;
    if (lk.max_residual > 0.01 * std::abs(lk.intercept)) {
        reasons.emplace_back("c_k residual above 1% of intercept");
    }
    if (lmu.max_residual > 0.01 * std::abs(lmu.intercept)) {
        reasons.emplace_back("c_mu residual above 1% of intercept");
    }
    // Monotonicity is judged in the order of increasing a.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return rows[p].a < rows[q].a; });
    std::vector<double> sk;
    std::vector<double> smu;
    for (std::size_t i : order) {
        sk.push_back(yk[i]);
        smu.push_back(ymu[i]);
    }
    if (!monotone(sk)) {
        reasons.emplace_back("c_k estimates not monotone in a");
    }
    if (!monotone(smu)) {
        reasons.emplace_back("c_mu estimates not monotone in a");
    }
    fit.flagged = !reasons.empty();
    for (std::size_t i = 0; i < reasons.size(); ++i) {
        fit.flag_reason += (i ? "; " : "") + reasons[i];
    }
    return fit;
}

std::vector<double> default_asymptotic_grid() {
    return {0.88, 0.90, 0.91, 0.92, 0.93, 0.94, 0.95};
}

MonotonicityReport monotonicity_audit(const std::vector<double>& a_grid, const SweepOptions& options) {
    MonotonicityReport report;
    report.rows = table1(a_grid, options);
    report.disk_lambda = annulus::disk_eigenvalue(0, 1, 1.0);
    report.disk_normalized = report.disk_lambda * std::numbers::pi;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const TableRow& row = report.rows[i];
        if (!row.ok()) {
            continue;
        }
        const double lambda = row.sqrt_lambda1 * row.sqrt_lambda1;
        if (!(report.disk_lambda < lambda && report.disk_normalized < row.normalized)) {
            report.disk_below_all = false;
        }
        if (i + 1 < report.rows.size() && report.rows[i + 1].ok()) {
            const TableRow& next = report.rows[i + 1];
            const bool lam_up = next.sqrt_lambda1 > row.sqrt_lambda1;
            const bool norm_up = next.normalized > row.normalized;
            report.lambda_increasing = report.lambda_increasing && lam_up;
            report.normalized_increasing = report.normalized_increasing && norm_up;
            if ((!lam_up || !norm_up) && !report.first_violation) {
                report.first_violation = i;
            }
        }
    }
    return report;
}

}  // namespace buckle::analysis
