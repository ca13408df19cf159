#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blaschke.hpp"
#include "errors.hpp"
#include "hypergeo.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "roots.hpp"
#include "tolerances.hpp"

namespace fbp {

enum class ExtremalKind { first, second, monomial };

inline const char* to_string(ExtremalKind k) {
    switch (k) {
        case ExtremalKind::first: return "first";
        case ExtremalKind::second: return "second";
        case ExtremalKind::monomial: return "monomial";
    }
    return "?";
}

inline ExtremalKind kind_of(const Rational& nu) {
    if (nu > 0) return ExtremalKind::first;
    if (nu < 0) return ExtremalKind::second;
    return ExtremalKind::monomial;
}

/// (M, m): (n+nu, n/(nu+1)) for nu > 0, swapped for -1 < nu < 0, (n, n) at 0.
inline std::pair<Rational, Rational> predicted_extrema(int n, const Rational& nu) {
    if (nu <= -1) throw ParameterError("predicted_extrema: nu must exceed -1");
    const Rational big = Rational(n) + nu;
    const Rational small = Rational(n) / (nu + 1);
    if (nu > 0) return {big, small};
    if (nu < 0) return {small, big};
    return {Rational(n), Rational(n)};
}

// nu (nu+1) / ((n+nu)(n+nu+1)); equals (-1)^n (-n-nu+1)_n / (nu+2)_n.
inline Rational extremal_kappa(int n, const Rational& nu) {
    return nu * (nu + 1) / ((n + nu) * (n + nu + 1));
}

struct ExtremalSpec {
    int n = 0;
    Rational nu;
    ExtremalKind kind = ExtremalKind::monomial;
    Rational kappa;
    Rational predicted_M;
    Rational predicted_m;
};

inline ExtremalSpec make_extremal_spec(int n, const Rational& nu) {
    if (n < 1) throw ParameterError("extremal: degree must be positive");
    if (nu <= -1) throw ParameterError("extremal: nu = " + to_string(nu) + " must exceed -1");
    ExtremalSpec s;
    s.n = n;
    s.nu = nu;
    s.kind = kind_of(nu);
    s.kappa = extremal_kappa(n, nu);
    std::tie(s.predicted_M, s.predicted_m) = predicted_extrema(n, nu);
    return s;
}

/// p(z) = F(-n, nu+2; -n-nu+1; z).
inline RationalPoly extremal_numerator(int n, const Rational& nu) {
    require_nu(nu, "extremal_numerator");
    return hyper_poly(n, nu + 2, Rational(1 - n) - nu).poly;
}

/// h(z) = F(-n, nu+1; -n-nu; z); its zeros plus the point 1 form the set
/// where z B(z) = 1.
inline RationalPoly extremal_set_poly(int n, const Rational& nu) {
    return hyper_poly(n, nu + 1, Rational(-n) - nu).poly;
}

struct ExtremalProduct {
    BlaschkeProduct product;
    ExtremalSpec spec;
    RationalPoly numerator;  // exact p; the constant 1 for the monomial case
};

namespace detail {

inline BlaschkeProduct product_from_numerator(const ComplexPoly& p, const Tolerances& tol) {
    auto rs = roots(p, {.max_iterations = 2000, .tolerance = tol.root_residual});
    for (const auto& z : rs.roots)
        if (!(std::abs(z) < 1.0))
            throw NumericFailure("extremal numerator has a zero outside the open disk",
                                 std::abs(z) - 1.0);
    // Normalize so that B(1) = 1.
    auto unnormalized = BlaschkeProduct::from_zeros(rs.roots, 1.0);
    const Complex at_one = unnormalized(1.0);
    return BlaschkeProduct::from_zeros(std::move(rs.roots), std::conj(at_one) / std::abs(at_one));
}

}  // namespace detail

/// The extremal product p/q with p = F(-n, nu+2; -n-nu+1; z), q its
/// conjugate reciprocal, normalized by B(1) = 1. nu = 0 gives z^n.
inline ExtremalProduct extremal_product(int n, const Rational& nu, const Tolerances& tol = {}) {
    ExtremalProduct out{BlaschkeProduct{}, make_extremal_spec(n, nu), RationalPoly{}};
    if (nu == 0) {
        out.product = BlaschkeProduct::from_zeros(std::vector<Complex>(n, Complex{}), 1.0);
        out.numerator = RationalPoly::monomial(static_cast<std::size_t>(n));
        return out;
    }
    out.numerator = extremal_numerator(n, nu);
    out.product = detail::product_from_numerator(to_complex(out.numerator), tol);
    return out;
}

struct ApproxExtremalProduct {
    BlaschkeProduct product;
    double nu = 0.0;
    double predicted_M = 0.0;
    double predicted_m = 0.0;
};

/// Floating-point construction for nu that is not given as a rational.
/// Nothing downstream can be checked exactly for these.
inline ApproxExtremalProduct extremal_product_approx(int n, double nu, const Tolerances& tol = {}) {
    if (n < 1) throw ParameterError("extremal: degree must be positive");
    if (!(nu > -1.0)) throw ParameterError("extremal: nu must exceed -1");
    ApproxExtremalProduct out;
    out.nu = nu;
    const double big = n + nu, small = n / (nu + 1.0);
    out.predicted_M = nu >= 0 ? big : small;
    out.predicted_m = nu >= 0 ? small : big;
    if (nu == 0.0) {
        out.product = BlaschkeProduct::from_zeros(std::vector<Complex>(n, Complex{}), 1.0);
        return out;
    }
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    const double b = nu + 2.0, cc = 1.0 - n - nu;
    for (int k = 0; k < n; ++k) c[k + 1] = c[k] * ((k - n) * (k + b) / ((k + 1.0) * (k + cc)));
    out.product = detail::product_from_numerator(ComplexPoly(std::move(c)), tol);
    return out;
}

struct ExtremalSetReport {
    PreimageSet set;                  // solutions of z B(z) = 1
    std::vector<Complex> via_h;       // zeros of h plus the point 1, sorted
    std::vector<double> deriv;        // |B'| at set.points
    double max_mismatch = 0.0;        // between the two routes
    double max_value_error = 0.0;     // |B'| against n+nu and n/(nu+1)
};

inline bool arg_less(Complex x, Complex y) { return std::arg(x) < std::arg(y); }

/// The set where z B(z) = 1, computed from the preimage equation and from
/// the zeros of h with the point 1 added; on it |B'| = n+nu except at 1,
/// where |B'(1)| = n/(nu+1).
inline ExtremalSetReport extremal_set(const BlaschkeProduct& b, const ExtremalSpec& spec,
                                      const Tolerances& tol = {}) {
    ExtremalSetReport r;
    r.set = preimages(b, 1.0, true, tol);

    const auto h = extremal_set_poly(spec.n, spec.nu);
    r.via_h = roots(to_complex(h), {.max_iterations = 2000, .tolerance = tol.root_residual}).roots;
    r.via_h.push_back(1.0);
    // Snap the h-route points onto the circle at their own argument.
    for (auto& z : r.via_h) z = std::polar(1.0, std::arg(z));
    std::sort(r.via_h.begin(), r.via_h.end(), arg_less);

    if (r.via_h.size() != r.set.points.size())
        throw VerificationFailure("extremal_set: the two routes give different cardinalities");
    // Nearest match, not sorted position: a point at -1 may sit at either end.
    std::vector<bool> used(r.set.points.size(), false);
    for (const auto& z : r.via_h) {
        std::size_t best = 0;
        double gap = INFINITY;
        for (std::size_t j = 0; j < r.set.points.size(); ++j)
            if (!used[j] && std::abs(z - r.set.points[j]) < gap) {
                gap = std::abs(z - r.set.points[j]);
                best = j;
            }
        used[best] = true;
        r.max_mismatch = std::max(r.max_mismatch, gap);
    }

    const double at_one = to_double(Rational(Rational(spec.n) / (spec.nu + 1)));
    const double elsewhere = to_double(Rational(spec.n + spec.nu));
    for (const auto& z : r.set.points) {
        const double d = deriv_modulus(b, z);
        r.deriv.push_back(d);
        const double expected = std::abs(z - 1.0) < 1e-9 ? at_one : elsewhere;
        r.max_value_error = std::max(r.max_value_error, std::abs(d - expected));
    }
    if (r.max_mismatch > tol.circle)
        throw VerificationFailure("extremal_set: routes disagree by " + std::to_string(r.max_mismatch));
    if (r.max_value_error > tol.circle)
        throw VerificationFailure("extremal_set: |B'| misses its predicted value by " +
                                  std::to_string(r.max_value_error));
    return r;
}

struct ExtremalClassification {
    bool extremal = false;
    std::optional<ExtremalKind> kind;
    double nu = 0.0;
    double first_residual = 0.0;   // m - n/(M-n+1)
    double second_residual = 0.0;  // m - (n-1+n/M)
    ExtremaReport extrema;
};

/// Tests m = n/(M-n+1) (first kind) and m = n-1+n/M (second kind) within
/// tol; nu is M-n for the first kind and m-n for the second.
inline ExtremalClassification classify_extremal(const BlaschkeProduct& b, double tol = 1e-9,
                                                std::size_t samples = 0) {
    ExtremalClassification c;
    c.extrema = extrema(b, samples);
    const double n = b.degree(), M = c.extrema.M, m = c.extrema.m;
    c.first_residual = m - n / (M - n + 1.0);
    c.second_residual = m - (n - 1.0 + n / M);
    if (std::abs(M - n) <= tol && std::abs(m - n) <= tol) {
        c.extremal = true;
        c.kind = ExtremalKind::monomial;
        c.nu = 0.0;
    } else if (std::abs(c.first_residual) <= tol && M - n > tol) {
        c.extremal = true;
        c.kind = ExtremalKind::first;
        c.nu = M - n;
    } else if (std::abs(c.second_residual) <= tol) {
        c.extremal = true;
        c.kind = ExtremalKind::second;
        c.nu = m - n;
    }
    return c;
}

struct UniquenessReport {
    IdentityReport ode;           // hypergeometric differential equation
    IdentityReport key_identity;  // nu(zp - q) = (z-1)[(n+nu)p - zp' + q']
    RationalPoly psi;             // (n+nu)pq - z(p'q - q'p)
    std::vector<Complex> double_roots;
    double psi_square_deviation = 0.0;  // psi against lead(psi) * r^2, relative
    double psi_at_roots = 0.0;          // max |psi|, |psi'| at the double roots, relative
    double numerator_mismatch = 0.0;    // B against p/q on the circle
};

/// Structural identities satisfied by an extremal numerator p (q its
/// reciprocal): the hypergeometric ODE and the key identity, both exact, and
/// psi = C r^2 with r monic with roots at the set z B(z) = 1 minus the point 1.
inline UniquenessReport verify_uniqueness_structure(const BlaschkeProduct& b, const ExtremalSpec& spec,
                                                    const Tolerances& tol = {}) {
    if (spec.nu == 0) throw PreconditionError("verify_uniqueness_structure: needs nu != 0");
    const int n = spec.n;
    const Rational& nu = spec.nu;
    const RationalPoly p = extremal_numerator(n, nu);
    const RationalPoly q = conj_reciprocal(p, n);
    const RationalPoly dp = p.derivative(), ddp = dp.derivative(), dq = q.derivative();
    const RationalPoly z{Rational(0), Rational(1)};
    const RationalPoly z_minus_one{Rational(-1), Rational(1)};
    const RationalPoly z_one_minus_z{Rational(0), Rational(1), Rational(-1)};

    UniquenessReport r;
    r.ode = {"z(1-z)p'' - (n+nu-1)p' - (nu-n+3)zp' + n(nu+2)p = 0",
             z_one_minus_z * ddp - dp * Rational(n + nu - 1) - (z * dp) * Rational(nu - n + 3) +
                 p * Rational(n * (nu + 2))};
    r.key_identity = {"nu(zp - q) = (z-1)[(n+nu)p - zp' + q']",
                      (z * p - q) * nu - z_minus_one * (p * Rational(n + nu) - z * dp + dq)};
    if (!r.ode.holds()) throw VerificationFailure("hypergeometric ODE fails for the numerator");
    if (!r.key_identity.holds()) throw VerificationFailure("key identity fails for the numerator");

    r.psi = p * q * Rational(n + nu) - z * (dp * q - dq * p);

    // Double roots: the extremal set without the point 1.
    const auto set = preimages(b, 1.0, true, tol);
    for (const auto& w : set.points)
        if (std::abs(w - 1.0) > 1e-9) r.double_roots.push_back(w);
    if (static_cast<int>(r.double_roots.size()) != n)
        throw VerificationFailure("psi: expected n double roots on the circle");

    const ComplexPoly psi_c = to_complex(r.psi);
    const ComplexPoly rr = poly_from_roots(r.double_roots);
    const ComplexPoly square = rr * rr * psi_c.leading();
    const double scale = max_abs_coeff(psi_c);
    for (int k = 0; k <= 2 * n; ++k)
        r.psi_square_deviation =
            std::max(r.psi_square_deviation, std::abs(psi_c[k] - square[k]) / scale);
    const ComplexPoly dpsi = psi_c.derivative();
    for (const auto& w : r.double_roots)
        r.psi_at_roots = std::max({r.psi_at_roots, std::abs(eval(psi_c, w)) / scale,
                                   std::abs(eval(dpsi, w)) / scale});
    if (r.psi_square_deviation > tol.psi_double_root || r.psi_at_roots > tol.psi_double_root)
        throw VerificationFailure("psi is not a constant times the square of r");

    const ComplexPoly pc = to_complex(p), qc = to_complex(q);
    for (int k = 0; k < 64; ++k) {
        const Complex w = std::polar(1.0, -pi + 2.0 * pi * (k + 0.5) / 64);
        r.numerator_mismatch = std::max(r.numerator_mismatch, std::abs(b(w) - eval(pc, w) / eval(qc, w)));
    }
    if (r.numerator_mismatch > tol.identity)
        throw VerificationFailure("product does not match p/q");
    return r;
}

struct SymmetricProduct {
    BlaschkeProduct product;
    double M = 0.0;  // n (1+a^n)/(1-a^n)
    double m = 0.0;  // n (1-a^n)/(1+a^n)
};

/// (z^n + a^n) / (1 + a^n z^n): zeros at the n-th roots of -a^n.
inline SymmetricProduct symmetric_product(int n, double a) {
    if (n < 1) throw ParameterError("symmetric_product: degree must be positive");
    if (!(a > 0 && a < 1)) throw ParameterError("symmetric_product: need 0 < a < 1");
    std::vector<Complex> zeros;
    for (int k = 0; k < n; ++k) zeros.push_back(std::polar(a, (pi + 2.0 * pi * k) / n));
    SymmetricProduct s;
    s.product = BlaschkeProduct::from_zeros(std::move(zeros), 1.0);
    const double an = std::pow(a, n);
    s.M = n * (1 + an) / (1 - an);
    s.m = n * (1 - an) / (1 + an);
    return s;
}

}  // namespace fbp
