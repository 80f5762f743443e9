// Acceptance checks. One line per criterion: PASS or FAIL, the criterion
// number, a short name and the measured values.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "buckle/analysis.hpp"
#include "buckle/annulus.hpp"
#include "buckle/rectangle.hpp"
#include "buckle/specfun.hpp"

namespace {

using namespace buckle;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++failures;
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool rel_close(double value, double expect, double tol) {
    return std::abs(value - expect) <= tol * std::abs(expect);
}

// Guards each criterion so an unexpected exception is a FAIL line, not a crash.
void run(int id, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

struct Row {
    double a;
    int k_opt;
    double sqrt_lambda1;
    double normalized;
};

const std::vector<Row> kTableRows = {
    {0.05, 1, 6.23824, 121.95}, {0.10, 1, 6.71001, 140.03}, {0.15, 2, 7.06409, 153.24},
    {0.20, 2, 7.50246, 169.76}, {0.25, 2, 8.02527, 189.69}, {0.30, 2, 8.63688, 213.26},
    {0.40, 3, 10.0995, 269.17}, {0.50, 4, 12.1553, 348.13}, {0.60, 5, 15.2003, 464.55},
    {0.70, 7, 20.2830, 659.15}, {0.80, 11, 30.4382, 1047.8}, {0.90, 23, 60.8901, 2213.1},
    {0.95, 47, 121.786, 4543.1},
};

void table_reproduction() {
    std::vector<double> head;
    for (const Row& r : kTableRows) {
        if (r.a <= 0.90) {
            head.push_back(r.a);
        }
    }
    analysis::SweepOptions options;
    const auto t0 = Clock::now();
    std::vector<analysis::TableRow> rows = analysis::table1(head, options);
    const double t_head = seconds_since(t0);
    const auto t1 = Clock::now();
    const auto tail = analysis::table1({0.95}, options);
    const double t_tail = seconds_since(t1);
    rows.insert(rows.end(), tail.begin(), tail.end());

    int bad = 0;
    double worst_sqrt = 0.0;
    double worst_norm = 0.0;
    std::ostringstream misses;
    for (std::size_t i = 0; i < kTableRows.size(); ++i) {
        const Row& want = kTableRows[i];
        const analysis::TableRow& got = rows[i];
        const double e_sqrt = std::abs(got.sqrt_lambda1 / want.sqrt_lambda1 - 1.0);
        const double e_norm = std::abs(got.normalized / want.normalized - 1.0);
        worst_sqrt = std::max(worst_sqrt, e_sqrt);
        worst_norm = std::max(worst_norm, e_norm);
        if (!got.ok() || got.k_opt != want.k_opt || e_sqrt > 1e-3 || e_norm > 1e-3) {
            ++bad;
            misses << " a=" << want.a << (got.ok() ? "" : " (" + got.error + ")");
        }
    }
    const bool fast = t_head < 60.0 && t_tail < 300.0;
    std::ostringstream d;
    d << kTableRows.size() - bad << "/" << kTableRows.size() << " rows match; max rel err sqrt "
      << worst_sqrt << ", area-normalized " << worst_norm << "; time a<=0.90 " << t_head
      << " s, a=0.95 " << t_tail << " s" << misses.str();
    report(1, "first-eigenvalue table", bad == 0 && fast, d.str());
}

void punctured_disk() {
    const double mu0 = annulus::tau(0, 0.0).mu;
    const annulus::FirstEigenvalueResult r = annulus::first_eigenvalue(0.0);
    const double j21 = specfun::bessel_j_zero(2, 1).value;
    const bool ok = std::abs(mu0 - 6.6478167) <= 1e-6 && std::abs(r.lambda1 - j21 * j21) <= 1e-9 * j21 * j21 &&
                    std::abs(r.sqrt_lambda1 - 5.13562) <= 1e-4;
    std::ostringstream d;
    d.precision(10);
    d << "first k=0 root " << mu0 << " (want 6.6478167 +- 1e-6); lambda1 " << r.lambda1 << " = j_{2,1}^2 "
      << j21 * j21 << "; sqrt " << r.sqrt_lambda1 << " (want 5.13562 +- 1e-4)";
    report(2, "punctured disk", ok, d.str());
}

void disk() {
    const double lambda = annulus::disk_eigenvalue(0, 1, 1.0);
    const double normalized = lambda * kPi;
    const bool first = std::abs(lambda - 14.6819) <= 1e-3;
    const bool second = std::abs(normalized - 12.038) <= 1e-2;
    std::ostringstream d;
    d.precision(8);
    d << "lambda1(B1) = " << lambda << (first ? " ok" : " off") << " (want 14.6819 +- 1e-3); lambda1|B1| = "
      << normalized << (second ? " ok" : " off") << " (want 12.038 +- 1e-2; note j_{1,1}*pi = "
      << specfun::bessel_j_zero(1, 1).value * kPi << ")";
    report(3, "unit disk", first && second, d.str());
}

void rectangle_checks() {
    const double g11 = rectangle::gamma_even(1.0, 1.0, 0);
    const double l11 = rectangle::lambda_1m(1.0, 1.0);
    const double l0 = rectangle::lambda_1m(1e-4, 1.0);
    bool phi_ok = true;
    double prev = INFINITY;
    for (int i = 0; i < 100; ++i) {
        const double m = 0.01 * std::pow(50.0 / 0.01, i / 99.0);
        const double p = rectangle::phi(m, 1.0);
        phi_ok = phi_ok && p > kPi / 2 && p < kPi && p < prev;
        prev = p;
    }
    const bool ok = std::abs(g11 - 2.8833) <= 1e-3 && std::abs(l11 - 9.3134) <= 1e-3 &&
                    std::abs(l0 - kPi * kPi) <= 1e-2 && phi_ok;
    std::ostringstream d;
    d.precision(8);
    d << "gamma_{1,1} " << g11 << ", lambda_{1,1} " << l11 << ", lambda_{1,1e-4} " << l0
      << ", Phi on 100 points in [0.01,50] " << (phi_ok ? "decreasing inside (pi/2, pi)" : "VIOLATED");
    report(4, "strip", ok, d.str());
}

void determinant_oracle() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> k_dist(0, 20);
    std::uniform_real_distribution<double> a_dist(0.1, 0.9);
    std::uniform_real_distribution<double> mu_dist(1.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const int k = k_dist(rng);
        const double a = a_dist(rng);
        const double mu = mu_dist(rng);
        const annulus::Matrix4 m = annulus::boundary_matrix(k, a, mu);
        Eigen::Matrix4d e;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                e(r, c) = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            }
        }
        const double closed = k == 0 ? annulus::det_k0(a, mu) : annulus::det_k(k, a, mu);
        worst = std::max(worst, std::abs(closed - e.fullPivLu().determinant()) / annulus::det_term_scale(k, a, mu));
    }
    std::ostringstream d;
    d << "500 samples, max |closed - det| / term scale = " << worst << " (limit 1e-8)";
    report(5, "closed-form determinants", worst <= 1e-8, d.str());
}

void special_functions() {
    double worst_w = 0.0;
    for (int n = 0; n <= 150; ++n) {
        for (int i = 0; i < 60; ++i) {
            const double x = 0.5 * std::pow(1000.0, i / 59.0);
            const specfun::ScaledBessel b = specfun::bessel_jy_scaled(n, x);
            const double w = (b.j_next * b.y_n - b.j_n * b.y_next).value();
            const double expect = 2.0 / (kPi * x);
            worst_w = std::max(worst_w, std::abs(w - expect) / expect);
        }
    }
    bool interlaced = true;
    for (int n = 0; n <= 150; ++n) {
        const double a1 = specfun::bessel_j_zero(n, 1).value;
        const double b1 = specfun::bessel_j_zero(n + 1, 1).value;
        const double a2 = specfun::bessel_j_zero(n, 2).value;
        interlaced = interlaced && a1 < b1 && b1 < a2;
    }
    double worst_d = 0.0;
    const double h = 1e-5;
    for (int n : {0, 1, 2, 5, 10, 20}) {
        for (double x : {0.8, 2.5, 5.0, 12.0, 40.0}) {
            const double fj = (specfun::bessel_j(n, x + h) - specfun::bessel_j(n, x - h)) / (2 * h);
            const double fy = (specfun::bessel_y(n, x + h) - specfun::bessel_y(n, x - h)) / (2 * h);
            const double dj = specfun::bessel_deriv(specfun::BesselKind::J, n, x);
            const double dy = specfun::bessel_deriv(specfun::BesselKind::Y, n, x);
            worst_d = std::max(worst_d, std::abs(dj - fj) / std::max(1.0, std::abs(dj)));
            worst_d = std::max(worst_d, std::abs(dy - fy) / std::max(1.0, std::abs(dy)));
        }
    }
    const bool ok = worst_w <= 1e-10 && interlaced && worst_d <= 1e-6;
    std::ostringstream d;
    d << "Wronskian max rel err " << worst_w << " over n<=150, x in [0.5,500]; interlacing "
      << (interlaced ? "holds" : "VIOLATED") << " for n<=150; derivative vs difference max rel err " << worst_d;
    report(6, "Bessel functions", ok, d.str());
}

void asymptotics() {
    const analysis::AsymptoticFit fit = analysis::fit_asymptotics(analysis::default_asymptotic_grid());
    const double e_mu = std::abs(fit.c_mu / 6.0894 - 1.0);
    const double e_k = std::abs(fit.c_k / 2.38 - 1.0);
    const bool anchor = rel_close(608.940 * (1.0 - 0.99), 6.0894, 1e-12);
    std::ostringstream d;
    d.precision(6);
    d << "c_mu " << fit.c_mu << " (" << 100 * e_mu << "% from 6.0894), c_k " << fit.c_k << " (" << 100 * e_k
      << "% from 2.38), a in [0.88,0.95]; anchor 608.940*0.01 = 6.0894 " << (anchor ? "ok" : "off");
    report(7, "asymptotic constants", e_mu <= 0.05 && e_k <= 0.05 && anchor, d.str());
}

void nodal_divergence() {
    const auto t0 = Clock::now();
    bool ok = true;
    double prev = INFINITY;
    std::ostringstream d;
    d.precision(6);
    d << "ell:";
    for (int n = 1; n <= 6; ++n) {
        const double ell = rectangle::find_ell_for_nodal_count(n);
        const int m = rectangle::first_eigenvalue_rect(ell).m_opt;
        ok = ok && ell < prev && m == n;
        d << " " << n << "->" << ell << (m == n ? "" : "(m_opt mismatch)");
        prev = ell;
    }
    const double t = seconds_since(t0);
    d << "; " << t << " s";
    report(8, "nodal-count witnesses", ok && t < 30.0, d.str());
}

void structural_invariants() {
    std::ostringstream d;
    d.precision(10);

    bool branch_mono = true;
    for (int k = 0; k <= 5; ++k) {
        double prev = 0.0;
        for (int i = 0; i <= 8; ++i) {
            const double mu = annulus::tau(k, 0.1 * i).mu;
            branch_mono = branch_mono && mu > prev;
            prev = mu;
        }
    }
    d << "tau_k(a) increasing " << (branch_mono ? "yes" : "NO");

    bool unimodal = true;
    for (double a : {0.2, 0.5, 0.8}) {
        const annulus::FirstEigenvalueResult r = annulus::first_eigenvalue(a);
        double prev = annulus::tau(1, a).mu;
        for (int k = 2; k <= r.k_max + 2; ++k) {
            const double mu = annulus::tau(k, a).mu;
            unimodal = unimodal && (k <= r.k_opt ? mu < prev : mu > prev);
            prev = mu;
        }
    }
    d << "; unimodal in k " << (unimodal ? "yes" : "NO");

    const analysis::MonotonicityReport audit = analysis::monotonicity_audit(analysis::reference_radii());
    d << "; lambda1|Omega| increasing over the table grid " << (audit.normalized_increasing ? "yes" : "NO");

    // (1/eps^2) lambda_{1,m/eps}(ell) against lambda_{1,m}(eps ell), eps = 1/2, ell = 1.
    bool scaling = true;
    const double eps = 0.5;
    for (double m : {2.0, 4.0}) {
        const double lhs = rectangle::lambda_1m(m / eps, 1.0) / (eps * eps);
        const double rhs = rectangle::lambda_1m(m, eps * 1.0);
        const bool hit = rel_close(lhs, rhs, 1e-8);
        scaling = scaling && hit;
        d << "; m=" << m << ": (1/eps^2) lambda_{1,m/eps}(1) = " << lhs << " vs lambda_{1,m}(eps) = " << rhs
          << (hit ? "" : " MISMATCH");
    }
    report(9, "structural invariants", branch_mono && unimodal && audit.normalized_increasing && scaling, d.str());
}

void radial_positivity() {
    int positive = 0;
    std::ostringstream misses;
    for (const auto& [k, a] : analysis::default_profile_cases()) {
        const annulus::RadialProfile p = annulus::radial_profile(annulus::tau(k, a));
        // Each call compares n and 2n samples and throws if they disagree.
        const int s1 = annulus::count_radial_sign_changes(p, 1000);
        const int s2 = annulus::count_radial_sign_changes(p, 4096);
        if (s1 == 0 && s2 == 0) {
            ++positive;
        } else {
            misses << " (" << k << "," << a << ")";
        }
    }
    std::ostringstream d;
    d << positive << "/9 profiles with no interior sign change at 1000/2000 and 4096/8192 samples" << misses.str();
    report(10, "radial positivity", positive == 9, d.str());
}

}  // namespace

int main() {
    run(1, "first-eigenvalue table", table_reproduction);
    run(2, "punctured disk", punctured_disk);
    run(3, "unit disk", disk);
    run(4, "strip", rectangle_checks);
    run(5, "closed-form determinants", determinant_oracle);
    run(6, "Bessel functions", special_functions);
    run(7, "asymptotic constants", asymptotics);
    run(8, "nodal-count witnesses", nodal_divergence);
    run(9, "structural invariants", structural_invariants);
    run(10, "radial positivity", radial_positivity);
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
