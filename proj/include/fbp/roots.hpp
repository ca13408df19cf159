#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace fbp {

struct RootSet {
    std::vector<Complex> roots;  // with multiplicity
    double residual = 0.0;       // see scaled_residual()
};

struct RootOptions {
    int max_iterations = 1000;
    double tolerance = 1e-10;
};

/// max over roots of |p(r)| / (max_k |c_k| * max(1, |r|)^deg p).
inline double scaled_residual(const ComplexPoly& p, const std::vector<Complex>& roots) {
    const double scale = max_abs_coeff(p);
    if (scale == 0.0) return 0.0;
    const int n = p.degree();
    double worst = 0.0;
    for (const auto& r : roots) {
        double grow = std::pow(std::max(1.0, std::abs(r)), n);
        worst = std::max(worst, std::abs(eval(p, r)) / (scale * grow));
    }
    return worst;
}

namespace detail {

// p(z) and p'(z) by one Horner pass.
inline void horner2(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp) {
    p = 0.0;
    dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

// Aberth-Ehrlich simultaneous iteration on a polynomial with nonzero
// constant term. Returns false if the iteration cap was hit.
inline bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z, int max_iterations) {
    const std::size_t n = c.size() - 1;
    const double lead = std::abs(c.back());
    // Initial guesses on a circle of radius (|c0|/|cn|)^(1/n), rotated off
    // the real axis so conjugate pairs are not started symmetrically.
    const double radius = std::pow(std::abs(c.front()) / lead, 1.0 / static_cast<double>(n));
    z.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    std::vector<bool> done(n, false);
    constexpr double eps = 1e-15;
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Complex p, dp;
            horner2(c, z[k], p, dp);
            if (p == Complex{}) {
                done[k] = true;
                continue;
            }
            Complex ratio = p / dp;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            Complex w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                // dp vanished: nudge the estimate and keep going.
                w = Complex(1e-8, 1e-8) * std::max(1.0, std::abs(z[k]));
            }
            z[k] -= w;
            if (std::abs(w) <= eps * std::max(1.0, std::abs(z[k])))
                done[k] = true;
            else
                all_done = false;
        }
        if (all_done) return true;
    }
    return false;
}

}  // namespace detail

/// All complex roots of p with multiplicity.
///
/// Exact zero roots are split off first; the rest are found by Aberth-Ehrlich
/// iteration and then polished with a few guarded Newton steps against the
/// original coefficients. Throws NumericFailure when the scaled residual stays
/// above options.tolerance.
inline RootSet roots(const ComplexPoly& p, const RootOptions& options = {}) {
    if (p.degree() < 1) throw ParameterError("roots: polynomial degree must be at least 1");

    const auto& all = p.coeffs();
    std::size_t zeros_at_origin = 0;
    while (all[zeros_at_origin] == Complex{}) ++zeros_at_origin;
    std::vector<Complex> c(all.begin() + static_cast<std::ptrdiff_t>(zeros_at_origin), all.end());

    RootSet out;
    out.roots.assign(zeros_at_origin, Complex{});
    if (c.size() > 1) {
        std::vector<Complex> z;
        detail::aberth(c, z, options.max_iterations);
        for (auto& r : z) {
            for (int step = 0; step < 3; ++step) {
                Complex v, dv;
                detail::horner2(c, r, v, dv);
                if (dv == Complex{}) break;
                Complex next = r - v / dv;
                Complex vn, dvn;
                detail::horner2(c, next, vn, dvn);
                if (!(std::abs(vn) < std::abs(v))) break;
                r = next;
            }
            out.roots.push_back(r);
        }
    }
    out.residual = scaled_residual(p, out.roots);
    if (!(out.residual <= options.tolerance))
        throw NumericFailure("roots: residual " + std::to_string(out.residual) +
                                 " above tolerance after " + std::to_string(options.max_iterations) +
                                 " iterations",
                             out.residual);
    return out;
}

// Monic product of (z - r) over the given roots.
inline ComplexPoly poly_from_roots(const std::vector<Complex>& roots) {
    ComplexPoly acc{Complex(1.0)};
    for (const auto& r : roots) acc = acc * ComplexPoly{-r, Complex(1.0)};
    return acc;
}

}  // namespace fbp
