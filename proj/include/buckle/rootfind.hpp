#pragma once

// Bracketing and refinement of real roots of scalar functions.

#include <functional>
#include <vector>

namespace buckle::rootfind {

using ScalarFunction = std::function<double(double)>;

/// Absolute tolerance on the root used when callers do not pass one.
inline constexpr double kDefaultXtol = 1e-12;

/// Interval [lo, hi] with finite endpoint values of opposite sign.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;

    [[nodiscard]] bool valid() const;
    [[nodiscard]] double width() const { return hi - lo; }
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    Bracket bracket;
};

/// Every sign change of f on the grid lo, lo+step, ..., hi.
///
/// Non-finite samples split the scan. Each crossing is re-sampled at step/10
/// and split when it hides several crossings, and sign changes whose
/// endpoint magnitudes keep growing under four bisections are dropped as
/// poles.
[[nodiscard]] std::vector<Bracket> scan_brackets(const ScalarFunction& f, double lo, double hi,
                                                 double step);

/// True if |f| at the endpoints grows under four successive bisections.
[[nodiscard]] bool looks_like_pole(const ScalarFunction& f, const Bracket& bracket);

/// Brent's method (bisection interleaved with secant and inverse quadratic
/// steps). The returned bracket has width <= xtol unless xtol is below the
/// floating-point spacing at the root. Throws std::invalid_argument on an
/// invalid bracket and ConvergenceError after 200 iterations.
[[nodiscard]] RootResult refine(const ScalarFunction& f, const Bracket& bracket,
                                double xtol = kDefaultXtol);

/// Refines the first bracket of a scan that starts at lo and doubles its
/// window until a sign change appears. Throws RootNotFound past `ceiling`.
[[nodiscard]] RootResult smallest_root(const ScalarFunction& f, double lo, double step,
                                       double xtol = kDefaultXtol, double ceiling = 1e4);

}  // namespace buckle::rootfind
