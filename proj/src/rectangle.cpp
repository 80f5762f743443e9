#include "buckle/rectangle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "buckle/errors.hpp"

namespace buckle::rectangle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTanResidual = 1e-9;
constexpr double kEllScanTop = 10.0;
constexpr double kEllScanBottom = 1e-3;
constexpr double kEllScanRatio = 0.95;
constexpr double kEllXtol = 1e-10;

void check_ell(double ell) {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw std::domain_error("ell must be positive");
    }
}

void check_branch_args(double m, double ell, int j) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::domain_error("m must be positive");
    }
    check_ell(ell);
    if (j < 0) {
        throw std::domain_error("branch index j must be non-negative");
    }
}

// tanh(m ell) for m ell large is 1 to double precision; std::tanh already
// saturates and stays accurate for small arguments.
double damped(double m, double ell) { return std::tanh(m * ell); }

double solve_in(const rootfind::ScalarFunction& f, double lo, double hi, double xtol,
                const char* name) {
    const rootfind::Bracket b{lo, hi, f(lo), f(hi)};
    if (!b.valid()) {
        throw ConvergenceError(std::string(name) + ": no sign change on the branch interval");
    }
    return rootfind::refine(f, b, xtol).root;
}

// Ratio cosh(m y)/cosh(m ell) for |y| <= ell without overflow.
double cosh_ratio(double m, double y, double ell) {
    const double ay = std::abs(y);
    return std::exp(m * (ay - ell)) * (1.0 + std::exp(-2.0 * m * ay)) /
           (1.0 + std::exp(-2.0 * m * ell));
}

// Ratio sinh(m y)/sinh(m ell).
double sinh_ratio(double m, double y, double ell) {
    const double ay = std::abs(y);
    const double r = std::exp(m * (ay - ell)) * std::expm1(-2.0 * m * ay) /
                     std::expm1(-2.0 * m * ell);
    return y < 0.0 ? -r : r;
}

// Ratios m sinh(m y)/cosh(m ell) and m cosh(m y)/sinh(m ell).
double sinh_over_cosh(double m, double y, double ell) {
    const double ay = std::abs(y);
    const double r = -std::exp(m * (ay - ell)) * std::expm1(-2.0 * m * ay) /
                     (1.0 + std::exp(-2.0 * m * ell));
    return y < 0.0 ? -r : r;
}

double cosh_over_sinh(double m, double y, double ell) {
    const double ay = std::abs(y);
    return -std::exp(m * (ay - ell)) * (1.0 + std::exp(-2.0 * m * ay)) /
           std::expm1(-2.0 * m * ell);
}

struct Run {
    double upper_edge;
    double lower_edge;
    double first_inside;
};

}  // namespace

RectangleConfig::RectangleConfig(double half_height) : ell(half_height) { check_ell(half_height); }

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

double gamma_even(double m, double ell, int j, double xtol) {
    check_branch_args(m, ell, j);
    const double t = m * damped(m, ell);
    const auto f = [ell, t](double g) { return g * std::sin(g * ell) + t * std::cos(g * ell); };
    const double lo = (0.5 * kPi + j * kPi) / ell;
    const double hi = (kPi + j * kPi) / ell;
    const double g = solve_in(f, lo, hi, xtol, "gamma_even");
    const double residual = g * std::tan(g * ell) + t;
    if (std::abs(residual) > kTanResidual * std::max(1.0, t)) {
        throw ConvergenceError("gamma_even: residual " + std::to_string(residual));
    }
    return g;
}

double gamma_odd(double m, double ell, int j, double xtol) {
    check_branch_args(m, ell, j);
    const double th = damped(m, ell);
    const auto f = [ell, m, th](double g) { return m * std::sin(g * ell) - g * th * std::cos(g * ell); };
    const double lo = (kPi + j * kPi) / ell;
    const double hi = (1.5 * kPi + j * kPi) / ell;
    const double g = solve_in(f, lo, hi, xtol, "gamma_odd");
    const double residual = std::tan(g * ell) / g - th / m;
    if (std::abs(residual) > kTanResidual * std::max(1.0, th / m)) {
        throw ConvergenceError("gamma_odd: residual " + std::to_string(residual));
    }
    return g;
}

RectMode mode_gamma(int k, double m, double ell) {
    if (k < 1) {
        throw std::domain_error("branch index k must be >= 1");
    }
    RectMode mode;
    mode.k = k;
    mode.m = m;
    mode.ell = ell;
    if (k % 2 == 1) {
        mode.parity = Parity::Even;
        mode.gamma = gamma_even(m, ell, (k - 1) / 2);
    } else {
        mode.parity = Parity::Odd;
        mode.gamma = gamma_odd(m, ell, (k - 2) / 2);
    }
    mode.lambda = m * m + mode.gamma * mode.gamma;
    return mode;
}

double h_profile(const RectMode& mode, double y) {
    const double g = mode.gamma;
    const double ell = mode.ell;
    if (mode.parity == Parity::Even) {
        return cosh_ratio(mode.m, y, ell) - std::cos(g * y) / std::cos(g * ell);
    }
    return sinh_ratio(mode.m, y, ell) - std::sin(g * y) / std::sin(g * ell);
}

double h_derivative(const RectMode& mode, double y) {
    const double g = mode.gamma;
    const double ell = mode.ell;
    const double m = mode.m;
    if (mode.parity == Parity::Even) {
        return m * sinh_over_cosh(m, y, ell) + g * std::sin(g * y) / std::cos(g * ell);
    }
    return m * cosh_over_sinh(m, y, ell) - g * std::cos(g * y) / std::sin(g * ell);
}

double phi(double m, double ell) { return gamma_even(m, ell, 0); }

double lambda_1m(double m, double ell) {
    check_ell(ell);
    if (m == 0.0) {
        return (kPi / ell) * (kPi / ell);
    }
    const double g = phi(m, ell);
    return m * m + g * g;
}

RealMinimum minimize_lambda1_real(double ell, double xtol) {
    check_ell(ell);
    if (!(xtol > 0.0)) {
        throw std::invalid_argument("minimize_lambda1_real: xtol must be positive");
    }
    const auto f = [ell](double m) { return lambda_1m(m, ell); };
    double lo = 0.5;
    double mid = 1.0;
    double hi = 2.0;
    double f_lo = f(lo);
    double f_mid = f(mid);
    double f_hi = f(hi);
    while (f_lo <= f_mid) {
        if (lo < 1e-8) {
            throw ConvergenceError("minimize_lambda1_real: minimum not bracketed above m = 0");
        }
        hi = mid;
        f_hi = f_mid;
        mid = lo;
        f_mid = f_lo;
        lo *= 0.5;
        f_lo = f(lo);
    }
    while (f_hi <= f_mid) {
        if (hi > 1e8) {
            throw ConvergenceError("minimize_lambda1_real: minimum not bracketed");
        }
        lo = mid;
        mid = hi;
        f_mid = f_hi;
        hi *= 2.0;
        f_hi = f(hi);
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double m_star = 0.5 * (lo + hi);
    return {m_star, f(m_star)};
}

RectFirstResult first_eigenvalue_rect(double ell) {
    check_ell(ell);
    RectFirstResult best{ell, 1, lambda_1m(1.0, ell), 1};
    for (int m = 2; static_cast<double>(m) * m <= best.lambda1; ++m) {
        const double value = lambda_1m(m, ell);
        if (value < best.lambda1) {
            best.lambda1 = value;
            best.m_opt = m;
        }
    }
    best.nodal_domains = best.m_opt;
    return best;
}

double find_ell_for_nodal_count(int n) {
    if (n < 1) {
        throw std::domain_error("nodal count must be >= 1");
    }
    // Crossing of branches n and other between two grid points.
    const auto crossing = [n](int other, double ell_lo, double ell_hi) {
        const auto d = [n, other](double ell) {
            return lambda_1m(n, ell) - lambda_1m(other, ell);
        };
        const rootfind::Bracket b{ell_lo, ell_hi, d(ell_lo), d(ell_hi)};
        if (!b.valid()) {
            return std::sqrt(ell_lo * ell_hi);
        }
        return rootfind::refine(d, b, kEllXtol).root;
    };

    double prev_ell = 0.0;
    int prev_m = 0;
    bool inside = false;
    Run run{kEllScanTop, kEllScanBottom, 0.0};
    for (double ell = kEllScanTop; ell >= kEllScanBottom; ell *= kEllScanRatio) {
        const int m = first_eigenvalue_rect(ell).m_opt;
        if (!inside && m == n) {
            inside = true;
            run.first_inside = ell;
            if (prev_m != 0) {
                run.upper_edge = crossing(prev_m, ell, prev_ell);
            }
        } else if (inside && m != n) {
            run.lower_edge = crossing(m, ell, prev_ell);
            break;
        }
        prev_ell = ell;
        prev_m = m;
    }
    if (!inside) {
        throw RootNotFound("no ell in [1e-3, 10] with " + std::to_string(n) + " nodal domains");
    }
    const double witness = std::sqrt(run.upper_edge * run.lower_edge);
    if (first_eigenvalue_rect(witness).m_opt == n) {
        return witness;
    }
    return run.first_inside;
}

}  // namespace buckle::rectangle
