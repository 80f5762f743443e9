#pragma once

// Buckling eigenvalues of the strip (0,pi) x (-ell, ell), clamped on the long
// edges y = +-ell and simply supported (Navier) on x = 0, pi.
//
// Modes are sin(m x) h(y) with lambda = m^2 + gamma^2, where gamma solves
//   even h:  gamma tan(gamma ell) = -m tanh(m ell)
//   odd h:   tan(gamma ell) / gamma = tanh(m ell) / m
// Eigenvalues need integer m; real m is allowed for the continuous branch.

#include <string_view>

#include "buckle/rootfind.hpp"

namespace buckle::rectangle {

struct RectangleConfig {
    double ell = 1.0;

    /// Throws std::domain_error unless ell > 0.
    explicit RectangleConfig(double half_height);
};

enum class Parity { Even, Odd };

[[nodiscard]] std::string_view to_string(Parity p);

struct RectMode {
    int k = 1;
    double m = 0.0;
    double ell = 1.0;
    Parity parity = Parity::Even;
    double gamma = 0.0;
    double lambda = 0.0;
};

struct RectFirstResult {
    double ell = 0.0;
    int m_opt = 1;
    double lambda1 = 0.0;
    /// sin(m x) has m sign sectors and h is positive, so this equals m_opt.
    int nodal_domains = 1;
};

struct RealMinimum {
    double m_star = 0.0;
    double lambda_star = 0.0;
};

/// Root of gamma sin(gamma ell) + m tanh(m ell) cos(gamma ell) in
/// ((pi/2 + j pi)/ell, (pi + j pi)/ell).
[[nodiscard]] double gamma_even(double m, double ell, int j, double xtol = rootfind::kDefaultXtol);

/// Root of m sin(gamma ell) - gamma tanh(m ell) cos(gamma ell) in
/// ((pi + j pi)/ell, (3pi/2 + j pi)/ell).
[[nodiscard]] double gamma_odd(double m, double ell, int j, double xtol = rootfind::kDefaultXtol);

/// Branch k >= 1: odd k is the even family with j = (k-1)/2, even k the odd
/// family with j = (k-2)/2, so gamma lies in (k pi/(2 ell), (k+1) pi/(2 ell)).
[[nodiscard]] RectMode mode_gamma(int k, double m, double ell);

/// h(y), scaled by 1/cosh(m ell) (even) or 1/sinh(m ell) (odd).
[[nodiscard]] double h_profile(const RectMode& mode, double y);
[[nodiscard]] double h_derivative(const RectMode& mode, double y);

/// First even-branch root gamma_{1,m}.
[[nodiscard]] double phi(double m, double ell);

/// m^2 + phi(m, ell)^2; m = 0 gives the limit (pi/ell)^2.
[[nodiscard]] double lambda_1m(double m, double ell);

/// Golden-section minimum of lambda_1m over real m > 0. The bracket grows
/// from m = 1 until both ends exceed the middle value.
[[nodiscard]] RealMinimum minimize_lambda1_real(double ell, double xtol = 1e-10);

/// Minimum of lambda_1m over integers m >= 1; stops once m^2 exceeds the
/// best value, since lambda_{1,m} > m^2.
[[nodiscard]] RectFirstResult first_eigenvalue_rect(double ell);

/// Some ell whose first eigenfunction has n nodal domains. Scans ell
/// downward from 10 on a geometric grid (ratio 0.95) to 1e-3, locates the
/// interval where m_opt = n, solves the two crossings with the neighbouring
/// branches to 1e-10 and returns their geometric mean. Throws
/// RootNotFound if no grid point has m_opt = n.
[[nodiscard]] double find_ell_for_nodal_count(int n);

}  // namespace buckle::rectangle
