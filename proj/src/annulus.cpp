#include "buckle/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "buckle/errors.hpp"
#include "buckle/specfun.hpp"

namespace buckle::annulus {
namespace {

using specfun::BesselAdjacent;
using specfun::bessel_adjacent;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kRootResidual = 1e-6;

struct Terms {
    double value = 0.0;
    double scale = 0.0;
};

void check_mu(double mu) {
    if (!(mu > 0.0)) {
        throw std::domain_error("mu must be positive");
    }
}

void check_open_radius(double a) {
    if (!(a > 0.0 && a < 1.0)) {
        throw std::domain_error("inner radius must lie in (0,1) for the annulus determinant");
    }
}

double power_checked(double a, int exponent) {
    const double p = std::pow(a, exponent);
    if (!std::isfinite(p) || p == 0.0) {
        throw std::overflow_error("a^" + std::to_string(exponent) + " leaves the double range");
    }
    return p;
}

// Largest magnitude among the listed values.
template <typename... T>
double largest(T... values) {
    return std::max({std::abs(values)...});
}

Terms det_k0_terms(double a, double mu) {
    check_open_radius(a);
    check_mu(mu);
    // bessel_adjacent(1, x) = (J_0, J_1, Y_0, Y_1)
    const BesselAdjacent o = bessel_adjacent(1, mu);
    const BesselAdjacent i = bessel_adjacent(1, mu * a);
    const double log_a = std::log(a);

    const double t1 = 4.0 / (kPi * a);
    const double p2a = mu * o.j_prev * i.y;
    const double p2b = mu * i.j * o.y_prev;
    const double p3a = -mu * mu * log_a * o.j * i.y;
    const double p3b = -mu * mu * log_a * i.j * o.y;
    const double p4a = (mu / a) * i.j_prev * o.y;
    const double p4b = (mu / a) * o.j * i.y_prev;
    const double value = t1 + (p2a - p2b) + (p3a - p3b) + (p4a - p4b);
    return {value, largest(t1, p2a, p2b, p3a, p3b, p4a, p4b)};
}

Terms det_k_terms(int k, double a, double mu) {
    if (k < 1) {
        throw std::domain_error("det_k requires k >= 1");
    }
    check_open_radius(a);
    check_mu(mu);
    const BesselAdjacent o = bessel_adjacent(k, mu);
    const BesselAdjacent i = bessel_adjacent(k, mu * a);
    const double a_k = power_checked(a, k);
    const double a_minus_k = power_checked(a, -k);
    const double a_k1 = power_checked(a, k - 1);

    const double c1 = mu * mu * (a_k - a_minus_k);
    const double p1a = c1 * o.j_prev * i.y_prev;
    const double p1b = c1 * i.j_prev * o.y_prev;
    const double t2 = -8.0 * k / (kPi * a);
    const double c3 = 2.0 * k * mu * a_k1;
    const double p3a = c3 * i.j * o.y_prev;
    const double p3b = c3 * o.j_prev * i.y;
    const double c4 = 2.0 * k * mu * a_minus_k;
    const double p4a = c4 * o.j * i.y_prev;
    const double p4b = c4 * i.j_prev * o.y;
    const double value = (p1a - p1b) + t2 + (p3a - p3b) + (p4a - p4b);
    return {value, largest(p1a, p1b, t2, p3a, p3b, p4a, p4b)};
}

Terms det_punctured_terms(double mu) {
    check_mu(mu);
    const BesselAdjacent b = bessel_adjacent(1, mu);
    const double t1 = kTwoOverPi * (b.j_prev - 2.0);
    const double t2 = kTwoOverPi * mu * b.j * (std::log(0.5 * mu) + kEulerGamma);
    const double t3 = -mu * b.y;
    return {t1 + t2 + t3, largest(t1, t2, t3, 2.0 * kTwoOverPi)};
}

// Row (C(x), x C'(x)) pieces for C = J_k, Y_k at argument mu*r.
struct RadialBessel {
    double j, dj, y, dy;  // dj = mu J_k'(mu r), dy likewise
};

RadialBessel radial_bessel(int k, double mu, double r) {
    const double x = mu * r;
    const BesselAdjacent b = bessel_adjacent(k, x);
    return {b.j, mu * (b.j_prev - (k / x) * b.j), b.y, mu * (b.y_prev - (k / x) * b.y)};
}

RadialCoefficients null_vector(Matrix4 m) {
    std::array<double, 4> scale{};
    for (std::size_t j = 0; j < 4; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            s = std::max(s, std::abs(m[i][j]));
        }
        scale[j] = s > 0.0 ? s : 1.0;
        for (std::size_t i = 0; i < 4; ++i) {
            m[i][j] /= scale[j];
        }
    }

    std::array<double, 4> pivots{};
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t best = col;
        for (std::size_t i = col + 1; i < 4; ++i) {
            if (std::abs(m[i][col]) > std::abs(m[best][col])) {
                best = i;
            }
        }
        std::swap(m[col], m[best]);
        pivots[col] = std::abs(m[col][col]);
        if (m[col][col] == 0.0) {
            continue;
        }
        for (std::size_t i = col + 1; i < 4; ++i) {
            const double factor = m[i][col] / m[col][col];
            for (std::size_t j = col; j < 4; ++j) {
                m[i][j] -= factor * m[col][j];
            }
        }
    }
    pivots[3] = std::abs(m[3][3]);

    std::array<double, 4> c{0.0, 0.0, 0.0, 1.0};
    for (int i = 2; i >= 0; --i) {
        const auto row = static_cast<std::size_t>(i);
        double s = 0.0;
        for (std::size_t j = row + 1; j < 4; ++j) {
            s += m[row][j] * c[j];
        }
        c[row] = m[row][row] != 0.0 ? -s / m[row][row] : 0.0;
    }
    for (std::size_t j = 0; j < 4; ++j) {
        c[j] /= scale[j];
    }

    const double top = *std::max_element(pivots.begin(), pivots.end());
    const auto tiny = std::count_if(pivots.begin(), pivots.end(),
                                    [top](double p) { return p <= 1e-8 * top; });
    RadialCoefficients out{c[0], c[1], c[2], c[3], tiny >= 2};
    return out;
}

}  // namespace

Annulus::Annulus(double inner_radius) : a(inner_radius) { check_inner_radius(inner_radius); }

double Annulus::area() const { return kPi * (1.0 - a * a); }

void check_inner_radius(double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw std::domain_error("inner radius must lie in [0,1)");
    }
}

double det_k0(double a, double mu) { return det_k0_terms(a, mu).value; }

double det_k(int k, double a, double mu) { return det_k_terms(k, a, mu).value; }

double det_punctured(double mu) { return det_punctured_terms(mu).value; }

double det_term_scale(int k, double a, double mu) {
    return k == 0 ? det_k0_terms(a, mu).scale : det_k_terms(k, a, mu).scale;
}

Matrix4 matrix_k0(double a, double mu) {
    check_open_radius(a);
    check_mu(mu);
    const RadialBessel o = radial_bessel(0, mu, 1.0);
    const RadialBessel i = radial_bessel(0, mu, a);
    return {{{o.j, o.y, 1.0, 0.0},
             {o.dj, o.dy, 0.0, 1.0},
             {i.j, i.y, 1.0, std::log(a)},
             {i.dj, i.dy, 0.0, 1.0 / a}}};
}

Matrix4 matrix_k(int k, double a, double mu) {
    if (k < 1) {
        throw std::domain_error("matrix_k requires k >= 1");
    }
    check_open_radius(a);
    check_mu(mu);
    const RadialBessel o = radial_bessel(k, mu, 1.0);
    const RadialBessel i = radial_bessel(k, mu, a);
    const double kd = k;
    return {{{o.j, o.y, 1.0, 1.0},
             {o.dj, o.dy, kd, -kd},
             {i.j, i.y, power_checked(a, k), power_checked(a, -k)},
             {i.dj, i.dy, kd * power_checked(a, k - 1), -kd * power_checked(a, -k - 1)}}};
}

Matrix4 matrix_punctured(double mu) {
    check_mu(mu);
    const RadialBessel o = radial_bessel(0, mu, 1.0);
    return {{{o.j, o.y, 1.0, 0.0},
             {o.dj, o.dy, 0.0, 1.0},
             {1.0, kTwoOverPi * (std::log(0.5 * mu) + kEulerGamma), 1.0, 0.0},
             {0.0, kTwoOverPi, 0.0, 1.0}}};
}

Matrix4 boundary_matrix(int k, double a, double mu) {
    if (a == 0.0) {
        if (k != 0) {
            throw std::domain_error("boundary_matrix: the punctured disk uses a closed form for k >= 1");
        }
        return matrix_punctured(mu);
    }
    return k == 0 ? matrix_k0(a, mu) : matrix_k(k, a, mu);
}

double branch_determinant(int k, double a, double mu) {
    if (k < 0) {
        throw std::domain_error("angular index must be non-negative");
    }
    check_inner_radius(a);
    if (a == 0.0) {
        return k == 0 ? det_punctured(mu) : specfun::bessel_j(k + 1, mu);
    }
    return k == 0 ? det_k0(a, mu) : det_k(k, a, mu);
}

double scan_start(int k) {
    return std::max(0.9 * specfun::bessel_j_zero(k + 1, 1).value, 0.5);
}

double scan_step(double a) { return std::min(0.2, (1.0 - a) / 5.0); }

BranchPoint tau(int k, double a, double xtol) {
    if (k < 0) {
        throw std::domain_error("angular index must be non-negative");
    }
    check_inner_radius(a);
    double mu = 0.0;
    if (a == 0.0 && k >= 1) {
        mu = specfun::bessel_j_zero(k + 1, 1).value;
    } else {
        // a = 0, k = 0 starts at 0.5, past the trivial zero at mu = 0.
        const double start = a == 0.0 ? 0.5 : scan_start(k);
        const auto f = [k, a](double m) { return branch_determinant(k, a, m); };
        mu = rootfind::smallest_root(f, start, scan_step(a), xtol, start + 1e4).root;
    }
    return {k, a, mu, mu * mu};
}

double disk_eigenvalue(int k, int t, double radius) {
    if (k < 0 || t < 1 || !(radius > 0.0)) {
        throw std::domain_error("disk_eigenvalue: need k >= 0, t >= 1, R > 0");
    }
    const double j = specfun::bessel_j_zero(k + 1, t).value;
    return (j / radius) * (j / radius);
}

FirstEigenvalueResult first_eigenvalue(double a, double xtol) {
    const Annulus domain(a);
    std::vector<double> first_zero;  // j_{k+1,1}, grown on demand
    auto zero_above = [&first_zero](std::size_t k) {
        while (first_zero.size() <= k) {
            first_zero.push_back(specfun::bessel_j_zero(static_cast<int>(first_zero.size()) + 1, 1).value);
        }
        return first_zero[k];
    };
    // tau_k(0) = j_{k+1,1}^2 increases with k, so the comparison can run on mu.
    auto cutoff = [&zero_above](double mu_opt) {
        std::size_t k = 0;
        while (!(zero_above(k) > mu_opt)) {
            ++k;
        }
        return static_cast<int>(k);
    };

    int k = 0;
    int k_opt = 0;
    double mu_opt = tau(0, a, xtol).mu;
    int k_max = cutoff(mu_opt);
    while (k < k_max) {
        ++k;
        const double mu = tau(k, a, xtol).mu;
        if (mu < mu_opt) {
            mu_opt = mu;
            k_opt = k;
        }
        k_max = cutoff(mu_opt);
    }
    const double lambda = mu_opt * mu_opt;
    return {a, k_opt, k_max, lambda, mu_opt, lambda * domain.area()};
}

RadialCoefficients radial_coefficients(int k, double a, double mu) {
    if (k < 0) {
        throw std::domain_error("angular index must be non-negative");
    }
    check_inner_radius(a);
    check_mu(mu);

    if (a == 0.0 && k >= 1) {
        if (std::abs(specfun::bessel_j(k + 1, mu)) > kRootResidual) {
            throw std::invalid_argument("radial_coefficients: mu is not a root of J_{k+1}");
        }
        const double jk = specfun::bessel_j(k, mu);
        const double norm = std::max(1.0, std::abs(jk));
        return {1.0 / norm, 0.0, -jk / norm, 0.0, false};
    }

    const Terms det = a == 0.0 ? det_punctured_terms(mu)
                      : k == 0 ? det_k0_terms(a, mu)
                               : det_k_terms(k, a, mu);
    if (std::abs(det.value) > kRootResidual * det.scale) {
        throw std::invalid_argument("radial_coefficients: mu is not a root (relative residual " +
                                    std::to_string(std::abs(det.value) / det.scale) + ")");
    }

    RadialCoefficients c = null_vector(boundary_matrix(k, a, mu));
    const double top = largest(c.A, c.B, c.C, c.D);
    c.A /= top;
    c.B /= top;
    c.C /= top;
    c.D /= top;
    RadialProfile probe{k, a, mu, c, {}};
    if (radial_eval(probe, 0.5 * (a + 1.0)) < 0.0) {
        c.A = -c.A;
        c.B = -c.B;
        c.C = -c.C;
        c.D = -c.D;
    }
    return c;
}

double radial_eval(const RadialProfile& p, double r) {
    if (!(r >= p.a && r <= 1.0)) {
        throw std::domain_error("radial_eval: r outside [a, 1]");
    }
    const RadialCoefficients& c = p.coefficients;
    if (r == 0.0) {
        // Punctured disk: for k = 0 the log singularities of Y_0 and ln r cancel.
        if (p.k == 0) {
            return c.A + c.B * kTwoOverPi * (std::log(0.5 * p.mu) + kEulerGamma) + c.C;
        }
        return 0.0;
    }
    const double x = p.mu * r;
    const double j = specfun::bessel_j(p.k, x);
    double value = c.A * j + c.C * (p.k == 0 ? 1.0 : std::pow(r, p.k));
    if (c.B != 0.0) {
        value += c.B * specfun::bessel_y(p.k, x);
    }
    if (c.D != 0.0) {
        value += c.D * (p.k == 0 ? std::log(r) : std::pow(r, -p.k));
    }
    return value;
}

double radial_derivative(const RadialProfile& p, double r) {
    if (!(r >= p.a && r <= 1.0 && r > 0.0)) {
        throw std::domain_error("radial_derivative: r outside (0, 1] or below a");
    }
    const RadialCoefficients& c = p.coefficients;
    const RadialBessel b = radial_bessel(p.k, p.mu, r);
    const double kd = p.k;
    double value = c.A * b.dj;
    if (c.B != 0.0) {
        value += c.B * b.dy;
    }
    if (p.k == 0) {
        value += c.D / r;
    } else {
        value += c.C * kd * std::pow(r, p.k - 1);
        if (c.D != 0.0) {
            value -= c.D * kd * std::pow(r, -p.k - 1);
        }
    }
    return value;
}

RadialProfile radial_profile(const BranchPoint& branch, int n_samples) {
    if (n_samples < 2) {
        throw std::invalid_argument("radial_profile: need at least two samples");
    }
    RadialProfile p{branch.k, branch.a, branch.mu,
                    radial_coefficients(branch.k, branch.a, branch.mu), {}};
    p.samples.reserve(static_cast<std::size_t>(n_samples));
    const double width = 1.0 - branch.a;
    for (int i = 0; i < n_samples; ++i) {
        const double r = (i == n_samples - 1) ? 1.0 : branch.a + width * i / (n_samples - 1);
        p.samples.push_back({r, radial_eval(p, r)});
    }
    return p;
}

namespace {

int sign_changes_on_grid(const RadialProfile& p, int n) {
    const double width = 1.0 - p.a;
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) {
        v.push_back(radial_eval(p, p.a + width * i / n));
    }
    double top = 0.0;
    for (double x : v) {
        top = std::max(top, std::abs(x));
    }
    int changes = 0;
    int last_sign = 0;
    for (double x : v) {
        if (std::abs(x) <= 1e-12 * top) {
            continue;
        }
        const int s = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) {
            ++changes;
        }
        last_sign = s;
    }
    return changes;
}

}  // namespace

int count_radial_sign_changes(const RadialProfile& profile, int n_samples) {
    if (n_samples < 100) {
        throw std::invalid_argument("count_radial_sign_changes: n_samples must be >= 100");
    }
    const int coarse = sign_changes_on_grid(profile, n_samples);
    const int fine = sign_changes_on_grid(profile, 2 * n_samples);
    if (coarse != fine) {
        throw InstabilityError("radial sign-change count changed from " + std::to_string(coarse) +
                               " to " + std::to_string(fine) + " when the grid was doubled");
    }
    return coarse;
}

int nodal_domain_count(int k, int radial_sign_changes) {
    if (k < 0 || radial_sign_changes < 0) {
        throw std::domain_error("nodal_domain_count: arguments must be non-negative");
    }
    return k == 0 ? radial_sign_changes + 1 : 2 * k * (radial_sign_changes + 1);
}

}  // namespace buckle::annulus
