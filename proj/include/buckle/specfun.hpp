#pragma once

// Bessel functions of integer order for real non-negative arguments.
//
// J_n uses the ascending series where it converges without cancellation
// (x^2 <= 4(n+1)) and Miller's backward recurrence elsewhere. Y_0 and Y_1
// come from the logarithmic series (x <= 2), the Neumann expansion over the
// Miller sequence (2 < x < 25) or the Hankel expansion (x >= 25); Y_n is then
// obtained by forward recurrence. Everything is carried as a mantissa and a
// binary exponent internally so high orders at small arguments stay
// representable.

#include <cstdint>

namespace buckle::specfun {

/// A real number stored as mantissa * 2^exponent.
struct Scaled {
    double mantissa = 0.0;
    std::int64_t exponent = 0;

    /// Converts to double; overflows to +-inf and underflows to 0.
    [[nodiscard]] double value() const;
    /// log2 |value|; -inf for zero.
    [[nodiscard]] double log2_abs() const;
};

[[nodiscard]] Scaled operator*(const Scaled& lhs, const Scaled& rhs);
/// lhs - rhs, aligned on the larger exponent.
[[nodiscard]] Scaled operator-(const Scaled& lhs, const Scaled& rhs);

/// J_n, J_{n+1}, Y_n, Y_{n+1} at one argument, without range limits.
struct ScaledBessel {
    Scaled j_n;
    Scaled j_next;
    Scaled y_n;
    Scaled y_next;
};

/// C_{n-1} and C_n for C = J, Y. Order -1 is folded with C_{-1} = -C_1.
struct BesselAdjacent {
    double j_prev = 0.0;
    double j = 0.0;
    double y_prev = 0.0;
    double y = 0.0;
};

enum class BesselKind { J, Y };

/// J_n(x) for n >= 0, x >= 0. Throws std::domain_error for x < 0 or n < 0.
[[nodiscard]] double bessel_j(int n, double x);

/// Y_n(x) for n >= 0, x > 0. Throws std::domain_error for x <= 0 or n < 0.
[[nodiscard]] double bessel_y(int n, double x);

/// C_n'(x) = C_{n-1}(x) - (n/x) C_n(x); J_0' = -J_1, Y_0' = -Y_1.
[[nodiscard]] double bessel_deriv(BesselKind kind, int n, double x);

/// J_{n-1}, J_n, Y_{n-1}, Y_n in one pass (x > 0).
[[nodiscard]] BesselAdjacent bessel_adjacent(int n, double x);

/// J_n, J_{n+1}, Y_n, Y_{n+1} with unbounded exponent range (x > 0).
[[nodiscard]] ScaledBessel bessel_jy_scaled(int n, double x);

struct BesselZero {
    int order = 0;
    int index = 0;
    double value = 0.0;
};

/// t-th positive zero j_{n,t} of J_n (t >= 1).
///
/// The starting point is McMahon's expansion when n == 0 or t > n and the
/// leading term of the uniform (Airy) expansion otherwise; both are within
/// 0.01 of the zero for n <= 150, t <= 20. Newton's method then runs inside
/// a +-1 bracket, bisecting whenever a step would leave it. Throws
/// buckle::ConvergenceError if the bracket has no sign change or the
/// iteration budget runs out.
[[nodiscard]] BesselZero bessel_j_zero(int n, int t);

}  // namespace buckle::specfun
