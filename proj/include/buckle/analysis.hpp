#pragma once

// Parameter sweeps over the annulus solver: the first-eigenvalue table,
// branch curves, radial profiles, asymptotic constants and monotonicity.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "buckle/annulus.hpp"
#include "buckle/rootfind.hpp"

namespace buckle::analysis {

/// Largest inner radius covered by accuracy checks.
inline constexpr double kSupportedMaxA = 0.95;
/// Largest inner radius accepted with `extended` set.
inline constexpr double kExtendedMaxA = 0.995;

struct SweepOptions {
    double xtol = rootfind::kDefaultXtol;
    /// 0 means one worker per hardware thread.
    unsigned workers = 0;
    bool extended = false;
};

/// Throws std::domain_error for a outside [0,1), or above the supported
/// envelope unless `extended` is set.
void check_envelope(double a, bool extended);

struct TableRow {
    double a = 0.0;
    int k_max = 0;
    int k_opt = 0;
    double sqrt_lambda1 = 0.0;
    double normalized = 0.0;
    /// Empty on success.
    std::string error;

    [[nodiscard]] bool ok() const { return error.empty(); }
};

/// One row per inner radius, in input order. A failing row keeps its error
/// message and the other rows are still computed.
[[nodiscard]] std::vector<TableRow> table1(const std::vector<double>& a_list,
                                           const SweepOptions& options = {});

/// The inner radii of the reference table, 0 through 0.95.
[[nodiscard]] std::vector<double> reference_radii();

struct BranchCell {
    annulus::BranchPoint point;
    std::string error;

    [[nodiscard]] bool ok() const { return error.empty(); }
};

/// cells[i][j] = tau_{k_set[i]}(a_grid[j]).
[[nodiscard]] std::vector<std::vector<BranchCell>> branches(const std::vector<int>& k_set,
                                                            const std::vector<double>& a_grid,
                                                            const SweepOptions& options = {});

[[nodiscard]] std::vector<int> default_branch_indices();
/// 0, 0.01, ..., 0.4
[[nodiscard]] std::vector<double> default_branch_grid();

/// (k, a) pairs.
using ProfileCase = std::pair<int, double>;

/// First-root radial profiles with 1024 samples each.
[[nodiscard]] std::vector<annulus::RadialProfile> radial_profiles(
    const std::vector<ProfileCase>& cases, const SweepOptions& options = {},
    int n_samples = 1024);

/// (1,.2) (2,.2) (3,.2) (3,.5) (4,.5) (5,.5) (5,.8) (11,.8) (13,.8)
[[nodiscard]] std::vector<ProfileCase> default_profile_cases();

struct AsymptoticSample {
    double a = 0.0;
    int k_opt = 0;
    double sqrt_lambda1 = 0.0;
    double c_k = 0.0;   // k_opt (1-a)
    double c_mu = 0.0;  // sqrt(lambda1) (1-a)
};

struct AsymptoticFit {
    std::vector<AsymptoticSample> samples;
    /// Intercepts of least-squares lines in (1-a), i.e. values at a -> 1.
    double c_k = 0.0;
    double c_mu = 0.0;
    /// Products at the largest a in the grid.
    double last_c_k = 0.0;
    double last_c_mu = 0.0;
    /// Set when a fit residual exceeds 1% of its intercept or a product
    /// sequence is not monotone in a.
    bool flagged = false;
    std::string flag_reason;
};

[[nodiscard]] AsymptoticFit fit_asymptotics(const std::vector<double>& a_grid,
                                            const SweepOptions& options = {});

/// 0.88, 0.90, 0.91, ..., 0.95
[[nodiscard]] std::vector<double> default_asymptotic_grid();

struct MonotonicityReport {
    std::vector<TableRow> rows;
    bool lambda_increasing = true;
    bool normalized_increasing = true;
    /// Index i such that rows[i] -> rows[i+1] is the first violation.
    std::optional<std::size_t> first_violation;
    double disk_lambda = 0.0;
    double disk_normalized = 0.0;
    /// Disk values sit below every row (lambda and lambda |Omega|).
    bool disk_below_all = true;
};

[[nodiscard]] MonotonicityReport monotonicity_audit(const std::vector<double>& a_grid,
                                                    const SweepOptions& options = {});

}  // namespace buckle::analysis
