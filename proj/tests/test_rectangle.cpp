#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "buckle/errors.hpp"
#include "buckle/rectangle.hpp"

using namespace buckle::rectangle;

namespace {

constexpr double kPi = std::numbers::pi;

// Sign changes of f on a uniform grid of n points spanning [lo, hi].
int dense_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n) {
    int changes = 0;
    double prev = f(lo);
    for (int i = 1; i < n; ++i) {
        const double cur = f(lo + (hi - lo) * i / (n - 1));
        if ((cur < 0.0) != (prev < 0.0)) {
            ++changes;
        }
        prev = cur;
    }
    return changes;
}

// Dense scan followed by plain bisection.
double scan_bisect(const std::function<double(double)>& f, double lo, double hi) {
    const int n = 2000;
    double x0 = lo + (hi - lo) / (n + 1);
    double f0 = f(x0);
    for (int i = 2; i <= n; ++i) {
        const double x1 = lo + (hi - lo) * i / (n + 1);
        const double f1 = f(x1);
        if ((f1 < 0.0) != (f0 < 0.0)) {
            double a = x0;
            double b = x1;
            for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
                const double mid = 0.5 * (a + b);
                if ((f(mid) < 0.0) == (f0 < 0.0)) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        x0 = x1;
        f0 = f1;
    }
    return std::nan("");
}

double fd2(const RectMode& m, double y, double h) {
    return (-h_profile(m, y - 2 * h) + 16 * h_profile(m, y - h) - 30 * h_profile(m, y) +
            16 * h_profile(m, y + h) - h_profile(m, y + 2 * h)) /
           (12 * h * h);
}

double fd4(const RectMode& m, double y, double h) {
    const double c[] = {-1, 12, -39, 56, -39, 12, -1};
    double s = 0.0;
    for (int i = -3; i <= 3; ++i) {
        s += c[i + 3] * h_profile(m, y + i * h);
    }
    return s / (6 * h * h * h * h);
}

}  // namespace

TEST_CASE("config") {
    CHECK(RectangleConfig(2.0).ell == 2.0);
    CHECK_THROWS_AS(RectangleConfig(0.0), std::domain_error);
    CHECK_THROWS_AS(RectangleConfig(-1.0), std::domain_error);
}

TEST_CASE("even branch examples") {
    CHECK(gamma_even(1.0, 1.0, 0) == doctest::Approx(2.8833).epsilon(2e-5));
    CHECK(gamma_even(1e-6, 1.0, 0) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(std::abs(gamma_even(50.0, 1.0, 0) - kPi / 2) < 0.05);
    CHECK_THROWS_AS((void)gamma_even(0.0, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS((void)gamma_even(1.0, 1.0, -1), std::domain_error);
}

TEST_CASE("odd branch examples") {
    const double g = gamma_odd(1.0, 1.0, 0);
    CHECK(g > kPi);
    CHECK(g < 1.5 * kPi);
    CHECK(std::abs(std::tan(g) / g - std::tanh(1.0)) <= 1e-9);
    const double oracle = scan_bisect(
        [](double x) { return 2.0 * std::sin(x) - x * std::tanh(2.0) * std::cos(x); }, kPi, 1.5 * kPi);
    CHECK(std::abs(gamma_odd(2.0, 1.0, 0) - oracle) <= 1e-10);
}

TEST_CASE("mode dispatch and brackets") {
    const RectMode m1 = mode_gamma(1, 1.0, 1.0);
    CHECK(m1.parity == Parity::Even);
    CHECK(m1.gamma == doctest::Approx(2.8833).epsilon(2e-5));
    CHECK(m1.lambda == doctest::Approx(9.3134).epsilon(1e-4));

    const RectMode m3 = mode_gamma(3, 1.0, 1.0);
    CHECK(m3.parity == Parity::Even);
    CHECK(m3.gamma == gamma_even(1.0, 1.0, 1));
    CHECK(m3.gamma > 1.5 * kPi);
    CHECK(m3.gamma < 2.0 * kPi);
    CHECK(mode_gamma(2, 3.0, 0.7).parity == Parity::Odd);
    CHECK_THROWS_AS((void)mode_gamma(0, 1.0, 1.0), std::domain_error);

    for (int k = 1; k <= 8; ++k) {
        for (double m : {0.05, 0.5, 1.0, 3.0, 10.0, 40.0}) {
            for (double ell : {0.2, 1.0, 3.0}) {
                const RectMode mode = mode_gamma(k, m, ell);
                INFO("k=" << k << " m=" << m << " ell=" << ell);
                CHECK(mode.gamma > k * kPi / (2 * ell));
                CHECK(mode.gamma < (k + 1) * kPi / (2 * ell));
                CHECK(mode.lambda > m * m);
                CHECK(mode.parity == (k % 2 == 1 ? Parity::Even : Parity::Odd));
            }
        }
    }
}

TEST_CASE("exactly one root per bracket") {
    for (double m : {0.1, 1.0, 5.0}) {
        for (double ell : {0.5, 1.0, 2.0}) {
            const double t = m * std::tanh(m * ell);
            const double th = std::tanh(m * ell);
            for (int j = 0; j < 3; ++j) {
                const auto F = [ell, t](double g) { return g * std::sin(g * ell) + t * std::cos(g * ell); };
                const auto G = [ell, m, th](double g) { return m * std::sin(g * ell) - g * th * std::cos(g * ell); };
                CHECK(dense_sign_changes(F, (0.5 + j) * kPi / ell, (1.0 + j) * kPi / ell, 200) == 1);
                CHECK(dense_sign_changes(G, (1.0 + j) * kPi / ell, (1.5 + j) * kPi / ell, 200) == 1);
            }
        }
    }
}

TEST_CASE("no modes with lambda <= m^2") {
    // With lambda < m^2 the conditions become gamma tanh(gamma ell) = m tanh(m ell)
    // and tanh(gamma ell)/gamma = tanh(m ell)/m, both monotone in gamma.
    for (double m : {0.3, 1.0, 4.0}) {
        for (double ell : {0.5, 1.0, 2.0}) {
            const double even_rhs = m * std::tanh(m * ell);
            const double odd_rhs = std::tanh(m * ell) / m;
            for (double g = 0.01; g < 20.0; g += 0.01) {
                if (std::abs(g - m) < 1e-9) {
                    continue;
                }
                const double e = g * std::tanh(g * ell) - even_rhs;
                const double o = std::tanh(g * ell) / g - odd_rhs;
                REQUIRE((e > 0.0) == (g > m));
                REQUIRE((o < 0.0) == (g > m));
            }
        }
    }
}

TEST_CASE("phi decreases from pi to pi/2") {
    double prev = kPi;
    for (double m = 0.01; m <= 50.0; m *= 1.05) {
        const double p = phi(m, 1.0);
        REQUIRE(p < prev);
        REQUIRE(p > kPi / 2);
        prev = p;
    }
}

TEST_CASE("h profile: boundary, parity, positivity") {
    for (int k = 1; k <= 4; ++k) {
        for (double m : {0.2, 1.0, 5.0, 40.0}) {
            for (double ell : {0.3, 1.0, 2.5}) {
                const RectMode mode = mode_gamma(k, m, ell);
                INFO("k=" << k << " m=" << m << " ell=" << ell);
                CHECK(std::abs(h_profile(mode, ell)) <= 1e-8);
                CHECK(std::abs(h_profile(mode, -ell)) <= 1e-8);
                CHECK(std::abs(h_derivative(mode, ell)) <= 1e-8);
                CHECK(std::abs(h_derivative(mode, -ell)) <= 1e-8);
                const double sign = mode.parity == Parity::Even ? 1.0 : -1.0;
                for (double y : {0.1, 0.37, 0.8}) {
                    CHECK(h_profile(mode, -y * ell) == sign * h_profile(mode, y * ell));
                }
            }
        }
    }
    for (double m : {0.05, 0.5, 1.0, 2.0, 7.0, 30.0}) {
        for (double ell : {0.1, 0.5, 1.0, 4.0}) {
            const RectMode mode = mode_gamma(1, m, ell);
            double lowest = INFINITY;
            for (int i = 1; i <= 1000; ++i) {
                lowest = std::min(lowest, h_profile(mode, -ell + 2 * ell * i / 1001.0));
            }
            CHECK(lowest > 0.0);
        }
    }
}

TEST_CASE("h solves the fourth-order profile equation") {
    for (int k = 1; k <= 4; ++k) {
        for (double m : {0.5, 1.0, 3.0}) {
            const RectMode mode = mode_gamma(k, m, 1.0);
            const double lam = mode.lambda;
            // The characteristic roots z = m^2 - lambda and z = m^2 annihilate the symbol.
            const auto symbol = [&](double z) { return z * z + (lam - 2 * m * m) * z + m * m * (m * m - lam); };
            CHECK(std::abs(symbol(m * m - lam)) <= 1e-10 * lam * lam);
            CHECK(std::abs(symbol(m * m)) <= 1e-10 * lam * lam);
            const double h = 0.01;
            for (int i = 1; i <= 10; ++i) {
                const double y = -0.8 + 1.6 * (i - 1) / 9.0;
                const double d4 = fd4(mode, y, h);
                const double d2 = fd2(mode, y, h);
                const double v = h_profile(mode, y);
                const double residual = d4 + (lam - 2 * m * m) * d2 + m * m * (m * m - lam) * v;
                const double scale = std::abs(d4) + std::abs((lam - 2 * m * m) * d2) + std::abs(m * m * (m * m - lam) * v);
                INFO("k=" << k << " m=" << m << " y=" << y);
                CHECK(std::abs(residual) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("lambda_1m examples") {
    CHECK(lambda_1m(1.0, 1.0) == doctest::Approx(9.3134).epsilon(1e-4));
    CHECK(std::abs(lambda_1m(1e-4, 1.0) - kPi * kPi) < 1e-3);
    CHECK(lambda_1m(0.0, 1.0) == doctest::Approx(kPi * kPi));
    CHECK(lambda_1m(0.0, 2.0) == doctest::Approx(kPi * kPi / 4));
    const double l2 = lambda_1m(2.0, 1.0);
    CHECK(l2 > 9.3134);
    CHECK(l2 == doctest::Approx(10.1).epsilon(0.01));
}

TEST_CASE("real minimiser") {
    const RealMinimum r = minimize_lambda1_real(1.0);
    CHECK(r.m_star > 0.0);
    CHECK(r.lambda_star <= lambda_1m(1.0, 1.0));
    CHECK(r.lambda_star <= kPi * kPi);
    double best_m = 0.0;
    double best = INFINITY;
    for (double m = 0.001; m < 4.0; m += 0.001) {
        const double v = lambda_1m(m, 1.0);
        if (v < best) {
            best = v;
            best_m = m;
        }
    }
    CHECK(std::abs(r.m_star - best_m) < 2e-3);
    CHECK(r.lambda_star <= best);
    CHECK(r.lambda_star == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("first eigenvalue over integer m") {
    const RectFirstResult r = first_eigenvalue_rect(1.0);
    CHECK(r.m_opt == 1);
    CHECK(r.lambda1 == doctest::Approx(9.3134).epsilon(1e-4));
    CHECK(r.nodal_domains == 1);
    CHECK(first_eigenvalue_rect(0.05).m_opt > 10);
    const RectFirstResult s = first_eigenvalue_rect(0.3);
    for (int m = 1; m < 40; ++m) {
        CHECK(lambda_1m(m, 0.3) >= s.lambda1);
    }
}

TEST_CASE("dilation: lambda_{1,m/eps}(eps ell) = lambda_{1,m}(ell) / eps^2") {
    for (double eps : {0.5, 0.25, 2.0}) {
        for (double m : {1.0, 2.0, 4.0}) {
            for (double ell : {0.6, 1.0}) {
                CHECK(lambda_1m(m / eps, eps * ell) ==
                      doctest::Approx(lambda_1m(m, ell) / (eps * eps)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("nodal count witnesses") {
    CHECK(first_eigenvalue_rect(1.0).m_opt == 1);
    double prev = INFINITY;
    for (int n = 1; n <= 6; ++n) {
        const double ell = find_ell_for_nodal_count(n);
        CHECK(ell < prev);
        CHECK(first_eigenvalue_rect(ell).m_opt == n);
        CHECK(first_eigenvalue_rect(ell).nodal_domains == n);
        prev = ell;
    }
    // The 1 -> 2 transition sits where the first two branches cross.
    const double e2 = find_ell_for_nodal_count(2);
    CHECK(e2 < 1.0);
    CHECK(lambda_1m(2.0, e2) < lambda_1m(1.0, e2));
    CHECK_THROWS_AS((void)find_ell_for_nodal_count(0), std::domain_error);
}
