#include "buckle/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "buckle/errors.hpp"

namespace buckle::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

// Above this argument J_0, J_1, Y_0, Y_1 come from the Hankel expansion; its
// smallest term is ~exp(-2x), far below double precision.
constexpr double kHankelThreshold = 25.0;
// Below this argument Y_0, Y_1 come from their logarithmic series.
constexpr double kLogSeriesThreshold = 2.0;

Scaled make_scaled(double mantissa, std::int64_t exponent) {
    if (mantissa == 0.0 || !std::isfinite(mantissa)) {
        return {mantissa, 0};
    }
    int shift = 0;
    const double m = std::frexp(mantissa, &shift);
    return {m, exponent + shift};
}

Scaled divide(const Scaled& num, const Scaled& den) {
    return make_scaled(num.mantissa / den.mantissa, num.exponent - den.exponent);
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            carry_ += (sum_ - t) + v;
        } else {
            carry_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check_order(int n) {
    if (n < 0) {
        throw std::domain_error("Bessel order must be non-negative, got " + std::to_string(n));
    }
}

// Ascending series; all terms decrease in magnitude when x^2 <= 4(n+1).
Scaled j_series(int n, double x) {
    Scaled lead = make_scaled(1.0, 0);
    const double half = 0.5 * x;
    for (int i = 1; i <= n; ++i) {
        lead = make_scaled(lead.mantissa * half / i, lead.exponent);
    }
    const double q = -0.25 * x * x;
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(n + k));
        sum.add(term);
        if (std::abs(term) < 1e-17 * std::abs(sum.value())) {
            break;
        }
    }
    return make_scaled(lead.mantissa * sum.value(), lead.exponent);
}

bool use_j_series(int n, double x) { return x * x <= 4.0 * (n + 1); }

struct Hankel01 {
    double j0, y0, j1, y1;
};

Hankel01 hankel01(double x) {
    auto pq = [x](double nu) {
        const double mu = 4.0 * nu * nu;
        double p = 1.0;
        double q = 0.0;
        double term = 1.0;
        double previous = std::numeric_limits<double>::infinity();
        for (int k = 1; k < 400; ++k) {
            const double odd = 2.0 * k - 1.0;
            term *= (mu - odd * odd) / (8.0 * k * x);
            if (std::abs(term) > previous) {
                break;  // asymptotic series starts to diverge
            }
            switch (k % 4) {
                case 1: q += term; break;
                case 2: p -= term; break;
                case 3: q -= term; break;
                default: p += term; break;
            }
            if (std::abs(term) < 1e-18) {
                break;
            }
            previous = std::abs(term);
        }
        return std::pair{p, q};
    };
    const auto [p0, q0] = pq(0.0);
    const auto [p1, q1] = pq(1.0);
    // cos(x - pi/4) etc. expanded so the phase shift adds no rounding at large x.
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double r = std::numbers::sqrt2 / 2.0;
    const double cos0 = (c + s) * r;
    const double sin0 = (s - c) * r;
    const double cos1 = (s - c) * r;
    const double sin1 = -(s + c) * r;
    const double amp = std::sqrt(kTwoOverPi / x);
    return {amp * (p0 * cos0 - q0 * sin0), amp * (p0 * sin0 + q0 * cos0),
            amp * (p1 * cos1 - q1 * sin1), amp * (p1 * sin1 + q1 * cos1)};
}

// Approximately -log10 |J_nu(x)| for nu beyond the turning point.
double envelope_digits(double nu, double x) {
    nu = std::max(nu, 1.0);
    return 0.5 * std::log10(6.28 * nu) - nu * std::log10(1.36 * x / nu);
}

// Even start order for backward recurrence giving full precision at `n`.
int miller_start(int n, double x) {
    const double target = 16.0 + std::max(0.0, envelope_digits(n, x));
    int start = std::max(n + 2, static_cast<int>(x) + 2);
    while (envelope_digits(start, x) < target) {
        start += 1 + start / 128;
    }
    return start + (start & 1);
}

struct Recorded {
    double value = 0.0;
    std::int64_t exponent = 0;
    [[nodiscard]] Scaled scaled() const { return make_scaled(value, exponent); }
};

// Miller's algorithm: J_n and J_{n+1} for x > 2.
std::pair<Scaled, Scaled> j_pair_miller(int n, double x) {
    const int start = miller_start(n + 1, x);
    double upper = 0.0;  // f_{k+1}
    double current = 1.0;  // f_k
    std::int64_t exponent = 0;
    CompensatedSum sum;
    sum.add(2.0 * current);  // start is even and positive
    double sum_value = 0.0;
    Recorded at_n, at_next, at0, at1;
    for (int k = start; k >= 1; --k) {
        const double lower = (2.0 * k / x) * current - upper;
        upper = current;
        current = lower;
        if (std::abs(current) > 0x1p500) {
            current = std::ldexp(current, -500);
            upper = std::ldexp(upper, -500);
            sum_value = std::ldexp(sum.value(), -500);
            sum = CompensatedSum{};
            sum.add(sum_value);
            exponent += 500;
        }
        const int m = k - 1;
        if (m % 2 == 0) {
            sum.add(m == 0 ? current : 2.0 * current);
        }
        if (m == n + 1) at_next = {current, exponent};
        if (m == n) at_n = {current, exponent};
        if (m == 1) at1 = {current, exponent};
        if (m == 0) at0 = {current, exponent};
    }

    Scaled norm;
    if (x < kHankelThreshold) {
        norm = make_scaled(sum.value(), exponent);
    } else {
        // Normalise on whichever of J_0, J_1 is further from a zero.
        const Hankel01 h = hankel01(x);
        if (std::abs(h.j0) >= std::abs(h.j1)) {
            norm = divide(at0.scaled(), make_scaled(h.j0, 0));
        } else {
            norm = divide(at1.scaled(), make_scaled(h.j1, 0));
        }
    }
    return {divide(at_n.scaled(), norm), divide(at_next.scaled(), norm)};
}

std::pair<Scaled, Scaled> j_pair(int n, double x) {
    if (x == 0.0) {
        return {make_scaled(n == 0 ? 1.0 : 0.0, 0), make_scaled(0.0, 0)};
    }
    if (use_j_series(n, x)) {
        return {j_series(n, x), j_series(n + 1, x)};
    }
    if (x >= kHankelThreshold && n <= 1) {
        const Hankel01 h = hankel01(x);
        if (n == 0) {
            return {make_scaled(h.j0, 0), make_scaled(h.j1, 0)};
        }
        return {make_scaled(h.j1, 0), make_scaled((2.0 / x) * h.j1 - h.j0, 0)};
    }
    return j_pair_miller(n, x);
}

// Normalised J_0..J_N for 2 < x < 25 (no rescaling needed in this range).
std::vector<double> j_sequence(double x) {
    const int start = miller_start(1, x);
    std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
    f[static_cast<std::size_t>(start)] = 1e-30;
    for (int k = start; k >= 1; --k) {
        const auto i = static_cast<std::size_t>(k);
        f[i - 1] = (2.0 * k / x) * f[i] - f[i + 1];
    }
    CompensatedSum sum;
    sum.add(f[0]);
    for (std::size_t k = 2; k < f.size(); k += 2) {
        sum.add(2.0 * f[k]);
    }
    const double norm = sum.value();
    for (double& v : f) {
        v /= norm;
    }
    return f;
}

std::pair<double, double> y01_series(double x) {
    const double j0 = j_series(0, x).value();
    const double j1 = j_series(1, x).value();
    const double log_half = std::log(0.5 * x);
    const double q = 0.25 * x * x;

    CompensatedSum s0;
    double u = 1.0;
    double harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        u *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        const double term = (k % 2 == 1 ? 1.0 : -1.0) * harmonic * u;
        s0.add(term);
        if (std::abs(term) < 1e-18 * std::abs(s0.value())) {
            break;
        }
    }
    const double y0 = kTwoOverPi * ((log_half + kEulerGamma) * j0 + s0.value());

    // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
    CompensatedSum s1;
    double w = 1.0;  // (-q)^k / (k! (k+1)!)
    double h_k = 0.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            w *= -q / (static_cast<double>(k) * (k + 1));
            h_k += 1.0 / k;
        }
        const double h_next = h_k + 1.0 / (k + 1);
        const double term = (-2.0 * kEulerGamma + h_k + h_next) * w;
        s1.add(term);
        if (k > 2 && std::abs(term) < 1e-18 * std::abs(s1.value())) {
            break;
        }
    }
    const double y1 = -kTwoOverPi / x + kTwoOverPi * log_half * j1 - (0.5 * x / kPi) * s1.value();
    return {y0, y1};
}

std::pair<double, double> y01_neumann(double x) {
    const std::vector<double> j = j_sequence(x);
    const double log_term = std::log(0.5 * x) + kEulerGamma;
    CompensatedSum s0;
    CompensatedSum s1;
    for (std::size_t k = 1; 2 * k + 1 < j.size(); ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        s0.add(sign * j[2 * k] / static_cast<double>(k));
        s1.add(-sign * (j[2 * k - 1] - j[2 * k + 1]) / static_cast<double>(k));
    }
    const double y0 = kTwoOverPi * (log_term * j[0] + 2.0 * s0.value());
    const double y1 = kTwoOverPi * (log_term * j[1] - j[0] / x + s1.value());
    return {y0, y1};
}

std::pair<double, double> y01(double x) {
    if (x <= kLogSeriesThreshold) {
        return y01_series(x);
    }
    if (x < kHankelThreshold) {
        return y01_neumann(x);
    }
    const Hankel01 h = hankel01(x);
    return {h.y0, h.y1};
}

// Forward recurrence for Y_n, Y_{n+1}; Y grows with order so this is stable.
std::pair<Scaled, Scaled> y_pair(int n, double x) {
    const auto [y0, y1] = y01(x);
    if (n == 0) {
        return {make_scaled(y0, 0), make_scaled(y1, 0)};
    }
    std::int64_t exponent = std::ilogb(std::max(std::abs(y0), std::abs(y1)));
    double previous = std::ldexp(y0, static_cast<int>(-exponent));
    double current = std::ldexp(y1, static_cast<int>(-exponent));
    const bool tiny = x < 1e-200;
    for (int k = 1; k <= n; ++k) {
        const double next = (2.0 * k / x) * current - previous;
        previous = current;
        current = next;
        if (!std::isfinite(current)) {
            break;
        }
        if (tiny || std::abs(current) > 0x1p64) {
            const int shift = std::ilogb(current);
            previous = std::ldexp(previous, -shift);
            current = std::ldexp(current, -shift);
            exponent += shift;
        }
    }
    return {make_scaled(previous, exponent), make_scaled(current, exponent)};
}

double airy_ai_zero(int t) {
    const double z = 3.0 * kPi / 8.0 * (4.0 * t - 1.0);
    const double z2 = 1.0 / (z * z);
    return -std::cbrt(z * z) *
           (1.0 + z2 * (5.0 / 48.0 + z2 * (-5.0 / 36.0 + z2 * 77125.0 / 82944.0)));
}

double mcmahon_guess(int n, int t) {
    const double beta = (t + 0.5 * n - 0.25) * kPi;
    const double mu = 4.0 * n * n;
    const double b8 = 8.0 * beta;
    return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(b8, 3)) -
           32.0 * (mu - 1.0) * ((83.0 * mu - 982.0) * mu + 3779.0) / (15.0 * std::pow(b8, 5));
}

// Leading term of Olver's uniform expansion: j_{n,t} ~ n z(zeta), with
// zeta = n^{-2/3} a_t and (2/3)(-zeta)^{3/2} = sqrt(z^2-1) - arcsec z.
double uniform_guess(int n, int t) {
    const double zeta = airy_ai_zero(t) / std::cbrt(static_cast<double>(n) * n);
    const double rhs = 2.0 / 3.0 * std::pow(-zeta, 1.5);
    auto g = [rhs](double z) { return std::sqrt(z * z - 1.0) - std::acos(1.0 / z) - rhs; };
    double lo = 1.0;
    double hi = 2.0;
    while (g(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return n * 0.5 * (lo + hi);
}

}  // namespace

double Scaled::value() const {
    if (mantissa == 0.0 || !std::isfinite(mantissa)) {
        return mantissa;
    }
    if (exponent > 4096) {
        return std::copysign(std::numeric_limits<double>::infinity(), mantissa);
    }
    if (exponent < -4096) {
        return std::copysign(0.0, mantissa);
    }
    return std::ldexp(mantissa, static_cast<int>(exponent));
}

double Scaled::log2_abs() const {
    if (mantissa == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
}

Scaled operator*(const Scaled& lhs, const Scaled& rhs) {
    return make_scaled(lhs.mantissa * rhs.mantissa, lhs.exponent + rhs.exponent);
}

Scaled operator-(const Scaled& lhs, const Scaled& rhs) {
    if (rhs.mantissa == 0.0) return lhs;
    if (lhs.mantissa == 0.0) return make_scaled(-rhs.mantissa, rhs.exponent);
    const std::int64_t top = std::max(lhs.exponent, rhs.exponent);
    auto shifted = [top](const Scaled& s) {
        const std::int64_t d = s.exponent - top;
        return d < -2000 ? 0.0 : std::ldexp(s.mantissa, static_cast<int>(d));
    };
    return make_scaled(shifted(lhs) - shifted(rhs), top);
}

double bessel_j(int n, double x) {
    check_order(n);
    if (x < 0.0 || std::isnan(x)) {
        throw std::domain_error("bessel_j: argument must be non-negative");
    }
    if (x == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    if (use_j_series(n, x)) {
        return j_series(n, x).value();
    }
    return j_pair(n, x).first.value();
}

double bessel_y(int n, double x) {
    check_order(n);
    if (!(x > 0.0)) {
        throw std::domain_error("bessel_y: argument must be positive");
    }
    return y_pair(n, x).first.value();
}

ScaledBessel bessel_jy_scaled(int n, double x) {
    check_order(n);
    if (!(x > 0.0)) {
        throw std::domain_error("bessel_jy_scaled: argument must be positive");
    }
    const auto [jn, jn1] = j_pair(n, x);
    const auto [yn, yn1] = y_pair(n, x);
    return {jn, jn1, yn, yn1};
}

BesselAdjacent bessel_adjacent(int n, double x) {
    check_order(n);
    if (!(x > 0.0)) {
        throw std::domain_error("bessel_adjacent: argument must be positive");
    }
    if (n == 0) {
        const ScaledBessel b = bessel_jy_scaled(0, x);
        return {-b.j_next.value(), b.j_n.value(), -b.y_next.value(), b.y_n.value()};
    }
    const ScaledBessel b = bessel_jy_scaled(n - 1, x);
    return {b.j_n.value(), b.j_next.value(), b.y_n.value(), b.y_next.value()};
}

double bessel_deriv(BesselKind kind, int n, double x) {
    check_order(n);
    if (kind == BesselKind::J) {
        if (x < 0.0 || std::isnan(x)) {
            throw std::domain_error("bessel_deriv: argument must be non-negative");
        }
        if (x == 0.0) {
            return n == 1 ? 0.5 : 0.0;
        }
        if (n == 0) {
            return -bessel_j(1, x);
        }
        const auto [prev, cur] = j_pair(n - 1, x);
        return prev.value() - (n / x) * cur.value();
    }
    if (!(x > 0.0)) {
        throw std::domain_error("bessel_deriv: argument must be positive for Y");
    }
    if (n == 0) {
        return -y_pair(0, x).second.value();
    }
    const auto [prev, cur] = y_pair(n - 1, x);
    return prev.value() - (n / x) * cur.value();
}

BesselZero bessel_j_zero(int n, int t) {
    check_order(n);
    if (t < 1) {
        throw std::domain_error("bessel_j_zero: zero index must be >= 1");
    }
    const double guess = (n == 0 || t > n) ? mcmahon_guess(n, t) : uniform_guess(n, t);
    double lo = std::max(guess - 1.0, 0.5 * guess);
    double hi = guess + 1.0;
    double f_lo = bessel_j(n, lo);
    const double f_hi = bessel_j(n, hi);
    if (!(f_lo * f_hi < 0.0)) {
        throw ConvergenceError("bessel_j_zero: no sign change around the initial estimate for n=" +
                               std::to_string(n) + ", t=" + std::to_string(t));
    }
    double x = guess;
    for (int iter = 0; iter < 100; ++iter) {
        const double fx = bessel_j(n, x);
        if (fx == 0.0) {
            return {n, t, x};
        }
        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        const double slope = bessel_deriv(BesselKind::J, n, x);
        double next = x - fx / slope;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
            return {n, t, next};
        }
        x = next;
    }
    throw ConvergenceError("bessel_j_zero: Newton iteration did not converge for n=" +
                           std::to_string(n) + ", t=" + std::to_string(t));
}

}  // namespace buckle::specfun
