#include "buckle/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "buckle/errors.hpp"

namespace buckle::rootfind {
namespace {

constexpr int kMaxRefineIterations = 200;
constexpr int kPoleHalvings = 4;
constexpr int kRescanDivisions = 10;

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

// Crossings on a uniform grid; a non-finite sample resets the scan.
std::vector<Bracket> raw_crossings(const ScalarFunction& f, double lo, double hi, double step) {
    std::vector<Bracket> out;
    const auto count = static_cast<long>(std::ceil((hi - lo) / step - 1e-9));
    // Last finite non-zero sample; zero means "no sign information".
    double x_signed = lo;
    double f_signed = f(lo);
    if (!std::isfinite(f_signed)) {
        f_signed = 0.0;
    }
    for (long i = 1; i <= count; ++i) {
        const double x = (i == count) ? hi : lo + static_cast<double>(i) * step;
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            f_signed = 0.0;
            continue;
        }
        if (opposite(f_signed, fx)) {
            out.push_back({x_signed, x, f_signed, fx});
        }
        if (fx != 0.0) {
            x_signed = x;
            f_signed = fx;
        }
    }
    return out;
}

}  // namespace

bool Bracket::valid() const {
    return lo < hi && std::isfinite(f_lo) && std::isfinite(f_hi) && opposite(f_lo, f_hi);
}

bool looks_like_pole(const ScalarFunction& f, const Bracket& bracket) {
    Bracket b = bracket;
    double smallest = std::min(std::abs(b.f_lo), std::abs(b.f_hi));
    for (int i = 0; i < kPoleHalvings; ++i) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double fm = f(mid);
        if (!std::isfinite(fm)) {
            return true;
        }
        if (fm == 0.0) {
            return false;
        }
        if (opposite(b.f_lo, fm)) {
            b.hi = mid;
            b.f_hi = fm;
        } else {
            b.lo = mid;
            b.f_lo = fm;
        }
        const double next = std::min(std::abs(b.f_lo), std::abs(b.f_hi));
        if (!(next > smallest)) {
            return false;
        }
        smallest = next;
    }
    return true;
}

std::vector<Bracket> scan_brackets(const ScalarFunction& f, double lo, double hi, double step) {
    if (!(lo < hi)) {
        throw std::invalid_argument("scan_brackets: need lo < hi");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("scan_brackets: step must be positive");
    }
    std::vector<Bracket> out;
    for (const Bracket& coarse : raw_crossings(f, lo, hi, step)) {
        std::vector<Bracket> fine =
            raw_crossings(f, coarse.lo, coarse.hi, coarse.width() / kRescanDivisions);
        if (fine.empty()) {
            fine.push_back(coarse);
        }
        for (const Bracket& b : fine) {
            if (!looks_like_pole(f, b)) {
                out.push_back(b);
            }
        }
    }
    return out;
}

RootResult refine(const ScalarFunction& f, const Bracket& bracket, double xtol) {
    if (!(xtol > 0.0)) {
        throw std::invalid_argument("refine: xtol must be positive");
    }
    if (bracket.lo < bracket.hi && bracket.f_lo == 0.0) {
        return {bracket.lo, 0.0, 0, bracket};
    }
    if (bracket.lo < bracket.hi && bracket.f_hi == 0.0) {
        return {bracket.hi, 0.0, 0, bracket};
    }
    if (!bracket.valid()) {
        throw std::invalid_argument("refine: invalid bracket [" + std::to_string(bracket.lo) +
                                    ", " + std::to_string(bracket.hi) + "]");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();

    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 1; iter <= kMaxRefineIterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = std::max(2.0 * eps * std::abs(b), 0.25 * xtol);
        const double half = 0.5 * (c - b);
        if (fb == 0.0 || std::abs(c - b) <= xtol || std::abs(half) <= 2.0 * eps * std::abs(b)) {
            Bracket out = b < c ? Bracket{b, c, fb, fc} : Bracket{c, b, fc, fb};
            return {b, fb, iter, out};
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * half * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : std::copysign(tol, half);
        fb = f(b);
        if (!std::isfinite(fb)) {
            throw ConvergenceError("refine: non-finite function value inside bracket");
        }
    }
    throw ConvergenceError("refine: iteration limit reached");
}

RootResult smallest_root(const ScalarFunction& f, double lo, double step, double xtol,
                         double ceiling) {
    if (!(lo >= 0.0)) {
        throw std::invalid_argument("smallest_root: lo must be non-negative");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("smallest_root: step must be positive");
    }
    double window = 64.0 * step;
    double start = lo;
    while (start < ceiling) {
        const double stop = std::min(start + window, ceiling);
        const std::vector<Bracket> found = scan_brackets(f, start, stop, step);
        if (!found.empty()) {
            return refine(f, found.front(), xtol);
        }
        start = stop;
        window *= 2.0;
    }
    throw RootNotFound("no root below ceiling " + std::to_string(ceiling));
}

}  // namespace buckle::rootfind
