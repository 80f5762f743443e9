#pragma once

// Buckling eigenvalues of the clamped annulus {a < |x| < 1}, the punctured
// disk (a = 0) and the disk.
//
// Eigenfunctions separate as v(r) e^{+-ik theta}. The radial factor is
//   k = 0:  A J_0(mu r) + B Y_0(mu r) + C + D ln r
//   k >= 1: A J_k(mu r) + B Y_k(mu r) + C r^k + D r^-k
// with mu = sqrt(lambda); clamping at r = a and r = 1 gives a 4x4 system
// whose determinant vanishes exactly at the eigenvalues.

#include <array>
#include <vector>

#include "buckle/rootfind.hpp"

namespace buckle::annulus {

using Matrix4 = std::array<std::array<double, 4>, 4>;

struct Annulus {
    double a = 0.0;

    /// Throws std::domain_error unless 0 <= a < 1.
    explicit Annulus(double inner_radius);
    [[nodiscard]] double area() const;
};

/// Smallest eigenvalue tau_k(a) among eigenfunctions with angular index k.
struct BranchPoint {
    int k = 0;
    double a = 0.0;
    double mu = 0.0;
    double lambda = 0.0;
};

struct RadialCoefficients {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
    /// Two small pivots were met while extracting the null vector, which
    /// hints at a double eigenvalue.
    bool rank_warning = false;
};

struct RadialSample {
    double r = 0.0;
    double v = 0.0;
};

struct RadialProfile {
    int k = 0;
    double a = 0.0;
    double mu = 0.0;
    RadialCoefficients coefficients;
    std::vector<RadialSample> samples;
};

struct FirstEigenvalueResult {
    double a = 0.0;
    int k_opt = 0;
    int k_max = 0;
    double lambda1 = 0.0;
    double sqrt_lambda1 = 0.0;
    /// lambda1 * |Omega_a|
    double normalized = 0.0;
};

/// Throws std::domain_error("inner radius must lie in [0,1)") when a is outside [0,1).
void check_inner_radius(double a);

/// Closed-form determinant of the k = 0 system (0 < a < 1, mu > 0).
[[nodiscard]] double det_k0(double a, double mu);
/// Closed-form determinant of the k >= 1 system.
[[nodiscard]] double det_k(int k, double a, double mu);
/// Closed-form k = 0 determinant for the punctured disk. Note this is the
/// negative of det(matrix_punctured(mu)); the zeros agree.
[[nodiscard]] double det_punctured(double mu);

/// Largest absolute term in the closed form used by det_k0/det_k
/// (k = 0 dispatches to det_k0). Reference scale for residual checks.
[[nodiscard]] double det_term_scale(int k, double a, double mu);

/// Boundary-condition matrices, rows (v(1), v'(1), v(a), v'(a)).
[[nodiscard]] Matrix4 matrix_k0(double a, double mu);
[[nodiscard]] Matrix4 matrix_k(int k, double a, double mu);
/// Rows (v(1), v'(1), v(0), bounded-gradient condition) for a = 0, k = 0.
[[nodiscard]] Matrix4 matrix_punctured(double mu);

/// The matrix whose null space gives the radial coefficients at (k, a, mu).
[[nodiscard]] Matrix4 boundary_matrix(int k, double a, double mu);

/// Determinant whose zeros in mu are the eigenvalues on branch k.
/// a = 0 uses det_punctured for k = 0 and J_{k+1}(mu) for k >= 1.
[[nodiscard]] double branch_determinant(int k, double a, double mu);

/// Scan parameters used by tau().
[[nodiscard]] double scan_start(int k);
[[nodiscard]] double scan_step(double a);

/// tau_k(a) as mu = sqrt(lambda).
///
/// For a > 0 the first zero of the branch determinant above scan_start(k)
/// (0.9 j_{k+1,1}; tau_k(a) >= tau_k(0) = j_{k+1,1}^2 rules out earlier
/// roots). For a = 0, k >= 1 the disk value j_{k+1,1}; for a = 0, k = 0 the
/// first nontrivial zero of det_punctured.
[[nodiscard]] BranchPoint tau(int k, double a, double xtol = rootfind::kDefaultXtol);

/// (j_{k+1,t} / R)^2
[[nodiscard]] double disk_eigenvalue(int k, int t, double radius);

/// lambda_1(Omega_a) by the branch-search loop:
///  1. k = 0, k_opt = 0, compute tau_0(a);
///  2. k_max = smallest index with j_{k_max+1,1}^2 > tau_{k_opt}(a);
///  3. stop once k >= k_max;
///  4. otherwise k += 1, compute tau_k(a), keep it if strictly smaller, go to 2.
[[nodiscard]] FirstEigenvalueResult first_eigenvalue(double a,
                                                     double xtol = rootfind::kDefaultXtol);

/// Null vector of the boundary matrix at a root, by Gaussian elimination with
/// partial pivoting on the column-equilibrated matrix (D is the free
/// variable). Normalised so max |coefficient| = 1 and v((a+1)/2) >= 0.
/// For a = 0, k >= 1 returns (1, 0, -J_k(mu), 0). Throws std::invalid_argument
/// if mu is not a root to within 1e-6 of the determinant's term scale.
[[nodiscard]] RadialCoefficients radial_coefficients(int k, double a, double mu);

/// v(r) for r in [a, 1]; r = 0 on the punctured disk gives the limit value.
[[nodiscard]] double radial_eval(const RadialProfile& profile, double r);
/// v'(r) for r in [a, 1], r > 0.
[[nodiscard]] double radial_derivative(const RadialProfile& profile, double r);

/// Profile at a branch point with `n_samples` uniform samples on [a, 1].
[[nodiscard]] RadialProfile radial_profile(const BranchPoint& branch, int n_samples = 1024);

/// Strict sign changes of v on (a, 1), skipping one grid cell at each end.
/// Samples with |v| <= 1e-12 max|v| carry no sign. Throws InstabilityError if
/// the count changes when n_samples is doubled; n_samples must be >= 100.
[[nodiscard]] int count_radial_sign_changes(const RadialProfile& profile, int n_samples);

/// Nodal domains of v(r) cos(k theta): 2k(s+1) for k >= 1, s+1 for k = 0.
[[nodiscard]] int nodal_domain_count(int k, int radial_sign_changes);

}  // namespace buckle::annulus
