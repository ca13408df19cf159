#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "roots.hpp"

namespace fbp {

/// Parameters of a terminating Gauss series F(a, b; c; z) with a = -n.
struct HypergeoParams {
    Rational a, b, c;

    HypergeoParams(Rational a_, Rational b_, Rational c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
    HypergeoParams(int n, Rational b_, Rational c_) : a(-n), b(std::move(b_)), c(std::move(c_)) {}

    int n() const { return static_cast<int>(-a.get_num().get_si()); }

    std::string str() const {
        return "(" + to_string(a) + ", " + to_string(b) + "; " + to_string(c) + ")";
    }
};

/// Rising factorial x (x+1) ... (x+k-1), with (x)_0 = 1.
inline Rational pochhammer(const Rational& x, unsigned k) {
    Rational acc(1);
    for (unsigned j = 0; j < k; ++j) acc *= x + j;
    return acc;
}

inline double pochhammer(double x, unsigned k) {
    double acc = 1.0;
    for (unsigned j = 0; j < k; ++j) acc *= x + j;
    return acc;
}

// a must be a nonpositive integer and (c)_k != 0 for k <= -a.
inline bool admissible(const HypergeoParams& p) {
    if (p.a.get_den() != 1 || p.a > 0) return false;
    const int n = p.n();
    if (p.c.get_den() == 1 && p.c <= 0 && p.c >= 1 - n) return false;
    return true;
}

inline void require_admissible(const HypergeoParams& p, const char* where) {
    if (!admissible(p))
        throw ParameterError(std::string(where) + ": inadmissible parameters " + p.str() +
                             " (need a = -n and c not in {0, -1, ..., 1-n})");
}

struct HypergeoPoly {
    HypergeoParams params;
    RationalPoly poly;
};

/// Exact coefficients of F(a, b; c; z), a = -n, by the ratio recursion
/// c_{k+1} / c_k = (k+a)(k+b) / ((k+1)(k+c)), c_0 = 1.
inline HypergeoPoly hyper_poly(const HypergeoParams& params) {
    require_admissible(params, "hyper_poly");
    const int n = params.n();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1;
    for (int k = 0; k < n; ++k) {
        Rational ratio = (params.a + k) * (params.b + k) / ((Rational(k) + 1) * (params.c + k));
        c[k + 1] = c[k] * ratio;
    }
    return {params, RationalPoly(std::move(c))};
}

inline HypergeoPoly hyper_poly(int n, const Rational& b, const Rational& c) {
    if (n < 0) throw ParameterError("hyper_poly: n must be nonnegative");
    return hyper_poly(HypergeoParams(n, b, c));
}

inline void require_nu(const Rational& nu, const char* where) {
    if (nu <= -1 || nu == 0)
        throw ParameterError(std::string(where) + ": nu = " + to_string(nu) +
                             " must satisfy nu > -1, nu != 0");
}

/// Closed form of p(1) for p = F(-n, nu+2; -n-nu+1; z): (2nu+2)_n / (nu)_n.
inline Rational hyper_at_one(int n, const Rational& nu) {
    require_nu(nu, "hyper_at_one");
    if (n < 1) throw ParameterError("hyper_at_one: n must be positive");
    return pochhammer(Rational(2 * nu + 2), static_cast<unsigned>(n)) /
           pochhammer(nu, static_cast<unsigned>(n));
}

// Exact sum of coefficients, i.e. the value at z = 1.
inline Rational coefficient_sum(const RationalPoly& p) {
    Rational s(0);
    for (const auto& q : p.coeffs()) s += q;
    return s;
}

/// Result of an exact polynomial identity check: lhs - rhs, which must be
/// the zero polynomial.
struct IdentityReport {
    std::string name;
    RationalPoly deviation;

    bool holds() const { return deviation.is_zero(); }
    Rational max_deviation() const { return max_abs_coeff(deviation); }
};

struct ContiguousReport {
    HypergeoParams params;
    std::vector<IdentityReport> relations;

    bool all_hold() const {
        for (const auto& r : relations)
            if (!r.holds()) return false;
        return true;
    }
    Rational max_deviation() const {
        Rational m(0);
        for (const auto& r : relations)
            if (r.max_deviation() > m) m = r.max_deviation();
        return m;
    }
};

/// Two contiguous relations and two derivative relations, exactly:
///   (c-a-1) F + a F(a+1) - (c-1) F(c-1) = 0
///   c (1-z) F - c F(a-1) + (c-b) z F(c+1) = 0
///   z F' = b (F(b+1) - F)
///   z F' = (c-1) (F(c-1) - F)
inline ContiguousReport check_contiguous(const HypergeoParams& params) {
    const Rational& a = params.a;
    const Rational& b = params.b;
    const Rational& c = params.c;
    auto F = [](Rational aa, Rational bb, Rational cc) {
        HypergeoParams p(std::move(aa), std::move(bb), std::move(cc));
        require_admissible(p, "check_contiguous");
        return hyper_poly(p).poly;
    };
    if (a >= 0) throw ParameterError("check_contiguous: need a <= -1 so that a+1 is terminating");

    const RationalPoly f = F(a, b, c);
    const RationalPoly f_a_up = F(a + 1, b, c);
    const RationalPoly f_a_down = F(a - 1, b, c);
    const RationalPoly f_b_up = F(a, b + 1, c);
    const RationalPoly f_c_down = F(a, b, c - 1);
    const RationalPoly f_c_up = F(a, b, c + 1);
    const RationalPoly one_minus_z{Rational(1), Rational(-1)};
    const RationalPoly zf_prime = f.derivative().shifted(1);

    ContiguousReport report{params, {}};
    report.relations.push_back(
        {"contiguous (c-a-1)F + aF(a+1) - (c-1)F(c-1)",
         f * Rational(c - a - 1) + f_a_up * a - f_c_down * Rational(c - 1)});
    report.relations.push_back(
        {"contiguous c(1-z)F - cF(a-1) + (c-b)zF(c+1)",
         one_minus_z * f * c - f_a_down * c + f_c_up.shifted(1) * Rational(c - b)});
    report.relations.push_back({"derivative zF' = b(F(b+1) - F)", zf_prime - (f_b_up - f) * b});
    report.relations.push_back(
        {"derivative zF' = (c-1)(F(c-1) - F)", zf_prime - (f_c_down - f) * Rational(c - 1)});
    return report;
}

struct WronskianReport {
    RationalPoly f, g, h;
    RationalPoly lhs;  // z (f g' - f' g)
    RationalPoly rhs;  // c (f g - h^2)
    IdentityReport identity;
};

/// With c = a - b + 1, f = F(a,b+1;c+1), g = F(a,b-1;c-1), h = F(a,b;c):
/// z (f g' - f' g) = c (f g - h^2), checked exactly.
inline WronskianReport check_wronskian_identity(int a, const Rational& b) {
    if (a >= 0) throw ParameterError("check_wronskian_identity: a must be a negative integer");
    const Rational c = Rational(a) - b + 1;
    if (c.get_den() == 1 && c >= a && c <= 1)
        throw ParameterError("check_wronskian_identity: c = " + to_string(c) +
                             " lies in the excluded set {a, ..., 0, 1}");
    const int n = -a;
    WronskianReport r;
    r.f = hyper_poly(n, b + 1, c + 1).poly;
    r.g = hyper_poly(n, b - 1, c - 1).poly;
    r.h = hyper_poly(n, b, c).poly;
    r.lhs = wronskian_combo(r.f, r.g);
    r.rhs = (r.f * r.g - r.h * r.h) * c;
    r.identity = {"z(fg' - f'g) = c(fg - h^2)", r.lhs - r.rhs};
    return r;
}

/// Gegenbauer C_n^(lambda)(x) by the three-term recurrence.
inline double gegenbauer(int n, double lambda, double x) {
    if (n < 0) throw ParameterError("gegenbauer: n must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * x;
    for (int k = 1; k < n; ++k) {
        double next = (2.0 * x * (k + lambda) * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// h(z) = F(-n, lambda; -n+1-lambda; z), whose zeros lie on the unit circle.
inline RationalPoly circle_hyper_poly(int n, const Rational& lambda) {
    return hyper_poly(n, lambda, Rational(1 - n) - lambda).poly;
}

struct GegenbauerReport {
    double max_deviation = 0.0;
    double worst_theta = 0.0;
    std::size_t points = 0;
};

/// Compares C_n^(lambda)(cos t) with e^{int} ((lambda)_n / n!) h(e^{-2it})
/// on the given grid; throws VerificationFailure above tol.
inline GegenbauerReport check_gegenbauer_relation(int n, const Rational& lambda,
                                                  std::span<const double> thetas,
                                                  double tol = 1e-10) {
    if (lambda == 0) throw ParameterError("check_gegenbauer_relation: lambda must be nonzero");
    if (lambda <= Rational(-1, 2))
        throw ParameterError("check_gegenbauer_relation: lambda must exceed -1/2");
    const RationalPoly h = circle_hyper_poly(n, lambda);
    const ComplexPoly hc = to_complex(h);
    const double lam = to_double(lambda);
    const double prefactor =
        to_double(pochhammer(lambda, static_cast<unsigned>(n)) /
                  pochhammer(Rational(1), static_cast<unsigned>(n)));

    GegenbauerReport report;
    report.points = thetas.size();
    for (double t : thetas) {
        double lhs = gegenbauer(n, lam, std::cos(t));
        Complex rhs = std::polar(1.0, n * t) * prefactor * eval(hc, std::polar(1.0, -2.0 * t));
        double dev = std::abs(Complex(lhs) - rhs);
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.worst_theta = t;
        }
    }
    if (report.max_deviation > tol) {
        std::ostringstream os;
        os << "Gegenbauer relation deviates by " << report.max_deviation << " at theta = "
           << report.worst_theta;
        throw VerificationFailure(os.str());
    }
    return report;
}

struct RootLocationReport {
    std::vector<Complex> roots;
    double max_modulus = 0.0;
    double min_modulus = 0.0;
    double worst_circle_gap = 0.0;  // max | |r| - 1 |
    double min_separation = 0.0;    // smallest pairwise distance
};

namespace detail {

inline RootLocationReport locate(const RationalPoly& p) {
    RootLocationReport r;
    r.roots = roots(to_complex(p)).roots;
    r.min_modulus = r.roots.empty() ? 0.0 : std::abs(r.roots.front());
    r.min_separation = INFINITY;
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
        double m = std::abs(r.roots[i]);
        r.max_modulus = std::max(r.max_modulus, m);
        r.min_modulus = std::min(r.min_modulus, m);
        r.worst_circle_gap = std::max(r.worst_circle_gap, std::abs(m - 1.0));
        for (std::size_t j = i + 1; j < r.roots.size(); ++j)
            r.min_separation = std::min(r.min_separation, std::abs(r.roots[i] - r.roots[j]));
    }
    return r;
}

inline std::string list_roots(const std::vector<Complex>& rs) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& z : rs) os << ' ' << z << " |z|=" << std::abs(z);
    return os.str();
}

}  // namespace detail

/// Zeros of F(-n, lambda; -n+1-lambda; z) are simple and on the unit circle
/// for lambda > -1/2, lambda != 0.
inline RootLocationReport check_roots_on_circle(int n, const Rational& lambda, double tol = 1e-8) {
    if (lambda == 0 || lambda <= Rational(-1, 2))
        throw ParameterError("check_roots_on_circle: need lambda > -1/2, lambda != 0");
    if (n < 1) throw ParameterError("check_roots_on_circle: n must be positive");
    auto report = detail::locate(circle_hyper_poly(n, lambda));
    if (report.worst_circle_gap > tol || (n > 1 && report.min_separation <= tol)) {
        std::vector<Complex> bad;
        for (const auto& z : report.roots)
            if (std::abs(std::abs(z) - 1.0) > tol) bad.push_back(z);
        throw VerificationFailure("roots of F(-" + std::to_string(n) + ", " + to_string(lambda) +
                                  "; ...) off the circle or repeated:" +
                                  detail::list_roots(bad.empty() ? report.roots : bad));
    }
    return report;
}

/// Zeros of F(-n, nu+2; -n+1-nu; z) lie in the open disk for nu > -1, nu != 0.
inline RootLocationReport check_roots_in_disk(int n, const Rational& nu, double margin = 1e-10) {
    require_nu(nu, "check_roots_in_disk");
    if (n < 1) throw ParameterError("check_roots_in_disk: n must be positive");
    auto report = detail::locate(hyper_poly(n, nu + 2, Rational(1 - n) - nu).poly);
    if (report.max_modulus > 1.0 - margin) {
        std::vector<Complex> bad;
        for (const auto& z : report.roots)
            if (std::abs(z) > 1.0 - margin) bad.push_back(z);
        throw VerificationFailure("roots outside the open disk:" + detail::list_roots(bad));
    }
    return report;
}

/// (-1)^n (b)_n / (c)_n, the constant of the reciprocal transformation.
inline Rational reciprocal_constant(int n, const Rational& b, const Rational& c) {
    Rational k = pochhammer(b, static_cast<unsigned>(n)) / pochhammer(c, static_cast<unsigned>(n));
    return (n % 2 == 0) ? k : Rational(-k);
}

struct ReciprocalReport {
    Rational constant;
    IdentityReport identity;
};

/// z^n F(-n,b;c;1/z) = (-1)^n ((b)_n/(c)_n) F(-n, 1-c-n; 1-b-n; z), exactly.
inline ReciprocalReport check_reciprocal_transform(int n, const Rational& b, const Rational& c) {
    if (n < 1) throw ParameterError("check_reciprocal_transform: n must be positive");
    HypergeoParams left(n, b, c);
    HypergeoParams right(n, Rational(1 - n) - c, Rational(1 - n) - b);
    require_admissible(left, "check_reciprocal_transform");
    require_admissible(right, "check_reciprocal_transform");
    const RationalPoly lhs = conj_reciprocal(hyper_poly(left).poly, n);
    ReciprocalReport r;
    r.constant = reciprocal_constant(n, b, c);
    r.identity = {"z^n F(1/z) = (-1)^n (b)_n/(c)_n F(-n,1-c-n;1-b-n;z)",
                  lhs - hyper_poly(right).poly * r.constant};
    return r;
}

}  // namespace fbp
