#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "roots.hpp"
#include "tolerances.hpp"

namespace fbp {

inline constexpr double pi = std::numbers::pi;

// Wraps an angle into [-pi, pi).
inline double wrap_angle(double t) {
    t = std::fmod(t + pi, 2.0 * pi);
    if (t < 0) t += 2.0 * pi;
    return t - pi;
}

/// Finite Blaschke product alpha * prod (z - a_k) / (1 - conj(a_k) z).
///
/// Zeros lie in the open unit disk and |alpha| = 1. A product with no zeros
/// is the constant alpha; it can be evaluated but every extremal quantity
/// rejects it.
class BlaschkeProduct {
public:
    BlaschkeProduct() : alpha_(1.0) {}

    static BlaschkeProduct from_zeros(std::vector<Complex> zeros, Complex alpha = 1.0,
                                      double unimodular_tol = 1e-12) {
        for (const auto& a : zeros) {
            if (!(std::abs(a) < 1.0)) {
                std::ostringstream os;
                os.precision(17);
                os << "Blaschke zero " << a << " is not inside the open unit disk";
                throw DomainError(os.str());
            }
        }
        if (!(std::abs(std::abs(alpha) - 1.0) <= unimodular_tol))
            throw DomainError("Blaschke factor alpha is not unimodular");
        BlaschkeProduct b;
        b.zeros_ = std::move(zeros);
        b.alpha_ = alpha / std::abs(alpha);
        return b;
    }

    int degree() const { return static_cast<int>(zeros_.size()); }
    const std::vector<Complex>& zeros() const { return zeros_; }
    Complex alpha() const { return alpha_; }

    Complex operator()(Complex z) const {
        Complex acc = alpha_;
        for (const auto& a : zeros_) acc *= (z - a) / (1.0 - std::conj(a) * z);
        return acc;
    }

    // B'(z) from the logarithmic derivative sum 1/(z-a) + conj(a)/(1-conj(a) z).
    Complex derivative(Complex z) const {
        Complex value = (*this)(z);
        Complex logd = 0.0;
        for (const auto& a : zeros_) logd += 1.0 / (z - a) + std::conj(a) / (1.0 - std::conj(a) * z);
        return value * logd;
    }

    // z * B(z): one more zero at the origin.
    BlaschkeProduct times_z() const {
        BlaschkeProduct b = *this;
        b.zeros_.insert(b.zeros_.begin(), Complex{});
        return b;
    }

    BlaschkeProduct with_alpha(Complex alpha) const { return from_zeros(zeros_, alpha); }

private:
    std::vector<Complex> zeros_;
    Complex alpha_;
};

inline void require_positive_degree(const BlaschkeProduct& b, const char* where) {
    if (b.degree() < 1) throw ParameterError(std::string(where) + ": product has degree 0");
}

struct RationalForm {
    ComplexPoly p;  // degree n, zeros a_k
    ComplexPoly q;  // conj_reciprocal(p, n)
};

/// B = p / q with q the conjugate-reciprocal of p. The leading coefficient
/// of p is sqrt(alpha), so that p / q carries the factor alpha.
inline RationalForm to_rational(const BlaschkeProduct& b) {
    ComplexPoly p{std::sqrt(b.alpha())};
    for (const auto& a : b.zeros()) p = p * ComplexPoly{-a, Complex(1.0)};
    return {p, conj_reciprocal(p, b.degree())};
}

/// P(a, z) = (1 - |a|^2) / |z - a|^2.
inline double poisson_kernel(Complex a, Complex z, double circle_tol = 1e-8) {
    if (!(std::abs(a) < 1.0)) throw DomainError("poisson_kernel: a must lie in the open disk");
    if (!(std::abs(std::abs(z) - 1.0) <= circle_tol))
        throw DomainError("poisson_kernel: z must lie on the unit circle");
    return (1.0 - std::norm(a)) / std::norm(z - a);
}

namespace detail {

// |w - a|^2 with |w| = 1 taken exactly.
inline double circle_gap2(Complex a, Complex w) { return 1.0 - 2.0 * (std::conj(a) * w).real() + std::norm(a); }

// |B'(e^{it})| as a Poisson sum, and its t-derivative.
inline double poisson_sum(const std::vector<Complex>& zeros, double t) {
    const Complex w = std::polar(1.0, t);
    double v = 0.0;
    for (const auto& a : zeros) v += (1.0 - std::norm(a)) / circle_gap2(a, w);
    return v;
}

inline double poisson_sum_dt(const std::vector<Complex>& zeros, double t) {
    const Complex w = std::polar(1.0, t);
    double d = 0.0;
    for (const auto& a : zeros) {
        const double den = circle_gap2(a, w);
        d -= (1.0 - std::norm(a)) * 2.0 * (std::conj(a) * w).imag() / (den * den);
    }
    return d;
}

}  // namespace detail

/// |B'(z)| on the unit circle, as the sum of Poisson kernels at the zeros.
inline double deriv_modulus(const BlaschkeProduct& b, Complex z, double circle_tol = 1e-8) {
    if (!(std::abs(std::abs(z) - 1.0) <= circle_tol))
        throw DomainError("deriv_modulus: z must lie on the unit circle");
    double v = 0.0;
    for (const auto& a : b.zeros()) v += (1.0 - std::norm(a)) / std::norm(z - a);
    return v;
}

// |B'(z)| by differentiating p/q directly; an independent route.
inline double deriv_modulus_direct(const RationalForm& pq, Complex z) {
    const Complex p = eval(pq.p, z), q = eval(pq.q, z);
    const Complex dp = eval(pq.p.derivative(), z), dq = eval(pq.q.derivative(), z);
    return std::abs((dp * q - p * dq) / (q * q));
}

struct ExtremaReport {
    double M = 0.0;
    double m = 0.0;
    double argmax = 0.0;  // in [-pi, pi)
    double argmin = 0.0;
    double mean = 0.0;    // uniform-grid quadrature of |B'|
    std::size_t samples = 0;
};

inline std::size_t minimum_samples(int degree, const Tolerances& tol = {}) {
    return static_cast<std::size_t>(
        std::max(tol.min_samples, tol.scan_oversampling * std::max(degree, 1)));
}

/// M(B) and m(B) by a uniform scan of |B'(e^{it})| over t in [-pi, pi)
/// followed by derivative-sign bisection at every bracketed critical point.
///
/// samples == 0 selects minimum_samples(n). Ties are broken towards the
/// smallest t.
inline ExtremaReport extrema(const BlaschkeProduct& b, std::size_t samples = 0,
                             const Tolerances& tol = {}) {
    require_positive_degree(b, "extrema");
    const std::size_t min_n = minimum_samples(b.degree(), tol);
    if (samples == 0) samples = min_n;
    if (samples < min_n)
        throw ParameterError("extrema: need at least " + std::to_string(min_n) + " samples");

    const auto& zeros = b.zeros();
    const double h = 2.0 * pi / static_cast<double>(samples);
    std::vector<double> t(samples), v(samples), d(samples);
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        t[i] = -pi + h * static_cast<double>(i);
        v[i] = detail::poisson_sum(zeros, t[i]);
        d[i] = detail::poisson_sum_dt(zeros, t[i]);
        sum += v[i];
    }

    ExtremaReport r;
    r.samples = samples;
    r.mean = sum / static_cast<double>(samples);
    r.M = -INFINITY;
    r.m = INFINITY;
    auto offer = [&r](double tt, double val) {
        tt = wrap_angle(tt);
        if (val > r.M || (val == r.M && tt < r.argmax)) {
            r.M = val;
            r.argmax = tt;
        }
        if (val < r.m || (val == r.m && tt < r.argmin)) {
            r.m = val;
            r.argmin = tt;
        }
    };
    for (std::size_t i = 0; i < samples; ++i) offer(t[i], v[i]);

    // Bisect on the sign of d/dt between consecutive samples (cyclically).
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t j = (i + 1) % samples;
        const double d0 = d[i], d1 = d[j];
        const bool is_max = d0 > 0 && d1 <= 0;
        const bool is_min = d0 < 0 && d1 >= 0;
        if (!is_max && !is_min) continue;
        double lo = t[i], hi = t[i] + h;
        for (int it = 0; it < tol.max_bisections && hi - lo > tol.refine_t; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double dm = detail::poisson_sum_dt(zeros, mid);
            if ((dm > 0) == (d0 > 0) && dm != 0)
                lo = mid;
            else
                hi = mid;
        }
        const double tc = 0.5 * (lo + hi);
        offer(tc, detail::poisson_sum(zeros, tc));
    }
    return r;
}

struct PreimageSet {
    Complex lambda;
    bool lifted = false;          // solutions of z B(z) = lambda rather than B(z) = lambda
    std::vector<Complex> points;  // sorted by argument in [-pi, pi)
    std::vector<double> weights;  // residues m_j, when computed
};

/// Solutions on the unit circle of z B(z) = lambda (lifted) or B(z) = lambda.
///
/// The roots of z p - lambda q (or p - lambda q) seed a Newton iteration in
/// the angle, whose derivative |B'| (+1 when lifted) is strictly positive.
inline PreimageSet preimages(const BlaschkeProduct& b, Complex lambda, bool lifted,
                             const Tolerances& tol = {}) {
    if (!(std::abs(std::abs(lambda) - 1.0) <= tol.circle))
        throw DomainError("preimages: lambda must be unimodular");
    if (!lifted) require_positive_degree(b, "preimages");
    lambda /= std::abs(lambda);

    const auto pq = to_rational(b);
    const ComplexPoly eq = (lifted ? pq.p.shifted(1) : pq.p) - pq.q * lambda;
    const auto raw = roots(eq, {.max_iterations = 2000, .tolerance = tol.root_residual});

    auto target = [&](Complex z) { return lifted ? z * b(z) : b(z); };
    PreimageSet set{lambda, lifted, {}, {}};
    for (const auto& r : raw.roots) {
        if (!(std::abs(std::abs(r) - 1.0) <= tol.circle)) {
            std::ostringstream os;
            os.precision(17);
            os << "preimages: root " << r << " is off the unit circle";
            throw NumericFailure(os.str(), std::abs(std::abs(r) - 1.0));
        }
        double t = std::arg(r);
        for (int it = 0; it < 50; ++it) {
            const Complex z = std::polar(1.0, t);
            const double phase = std::arg(target(z) / lambda);
            const double slope = detail::poisson_sum(b.zeros(), t) + (lifted ? 1.0 : 0.0);
            const double step = phase / slope;
            t -= step;
            if (std::abs(step) < 1e-16) break;
        }
        set.points.push_back(std::polar(1.0, wrap_angle(t)));
    }
    std::sort(set.points.begin(), set.points.end(),
              [](Complex x, Complex y) { return std::arg(x) < std::arg(y); });
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        const Complex z = set.points[i];
        if (std::abs(target(z) - lambda) > tol.identity)
            throw NumericFailure("preimages: refined point misses the target value",
                                 std::abs(target(z) - lambda));
        if (i > 0 && std::abs(z - set.points[i - 1]) < 1e-12)
            throw NumericFailure("preimages: two refined points coincide");
    }
    return set;
}

// max |B(z)/(z(B(z)-lambda)) - sum m_j/(z - z_j)| / max(1, |lhs|) over
// `count` random points off the circle.
inline double partial_fraction_deviation(const BlaschkeProduct& b, const PreimageSet& set,
                                         int count = 16, unsigned seed = 20240521u) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> inner(0.2, 0.8), outer(1.25, 3.0);
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        const double r = (k % 2 == 0) ? inner(rng) : outer(rng);
        const Complex z = std::polar(r, angle(rng));
        const Complex bz = b(z);
        const Complex lhs = bz / (z * (bz - set.lambda));
        Complex rhs = 0.0;
        for (std::size_t j = 0; j < set.points.size(); ++j) rhs += set.weights[j] / (z - set.points[j]);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return worst;
}

/// Residues m_j = 1/|B'(z_j)| at the solutions of B(z) = lambda, for a
/// product with B(0) = 0 and degree >= 2. Verifies that they sum to 1 and
/// reproduce the partial-fraction expansion of B(z) / (z (B(z) - lambda)).
inline PreimageSet residue_weights(const BlaschkeProduct& b, Complex lambda,
                                   const Tolerances& tol = {}) {
    if (b.degree() < 2) throw PreconditionError("residue_weights: degree must be at least 2");
    if (std::abs(b(0.0)) > tol.unimodular)
        throw PreconditionError("residue_weights: B(0) must vanish");
    PreimageSet set = preimages(b, lambda, false, tol);
    double sum = 0.0;
    for (const auto& z : set.points) {
        set.weights.push_back(1.0 / detail::poisson_sum(b.zeros(), std::arg(z)));
        sum += set.weights.back();
    }
    if (std::abs(sum - 1.0) > tol.identity)
        throw VerificationFailure("residue_weights: weights sum to " + std::to_string(sum));
    const double dev = partial_fraction_deviation(b, set);
    if (dev > 1e-8)
        throw VerificationFailure("residue_weights: partial fractions deviate by " +
                                  std::to_string(dev));
    return set;
}

struct MainInequalityReport {
    int n = 0;
    double M = 0.0;
    double m = 0.0;
    double left_slack = 0.0;   // m - n/(M-n+1)
    double right_slack = 0.0;  // n-1+n/M - m
};

/// n/(M-n+1) <= m <= n-1+n/M and 0 < m <= n <= M. A violation beyond
/// tol.identity throws InvariantFailure.
inline MainInequalityReport check_main_inequality(const BlaschkeProduct& b, std::size_t samples = 0,
                                                  const Tolerances& tol = {}) {
    const auto ex = extrema(b, samples, tol);
    MainInequalityReport r;
    r.n = b.degree();
    r.M = ex.M;
    r.m = ex.m;
    const double n = r.n;
    r.left_slack = r.m - n / (r.M - n + 1.0);
    r.right_slack = n - 1.0 + n / r.M - r.m;
    const double eps = tol.identity;
    std::ostringstream os;
    os.precision(17);
    if (r.left_slack < -eps || r.right_slack < -eps) {
        os << "main inequality violated: n=" << r.n << " M=" << r.M << " m=" << r.m
           << " slacks " << r.left_slack << ", " << r.right_slack;
        throw InvariantFailure(os.str());
    }
    if (!(r.m > 0) || r.m > n + eps || n > r.M + eps) {
        os << "0 < m <= n <= M violated: n=" << r.n << " M=" << r.M << " m=" << r.m;
        throw InvariantFailure(os.str());
    }
    return r;
}

/// Product with zeros lambda * a_k and the same alpha.
inline BlaschkeProduct scale_zeros(const BlaschkeProduct& b, double lambda) {
    if (!(lambda > 0)) throw DomainError("scale_zeros: lambda must be positive");
    std::vector<Complex> z;
    z.reserve(b.zeros().size());
    for (const auto& a : b.zeros()) {
        if (!(std::abs(lambda * a) < 1.0)) throw DomainError("scale_zeros: a zero leaves the disk");
        z.push_back(lambda * a);
    }
    return BlaschkeProduct::from_zeros(std::move(z), b.alpha());
}

struct SemigroupReport {
    double delta = 0.0;
    double max_deviation = 0.0;  // over the test points
    std::size_t quadrature_points = 0;
    ExtremaReport base;    // B
    ExtremaReport scaled;  // B with zeros scaled by delta
    bool strictly_inside = false;
};

namespace detail {

// Periodic trapezoid rule for (1/2pi) int |B'(e^{is})| P(delta, e^{-is} z) ds,
// doubling the node count until two levels agree.
inline double poisson_average(const std::vector<Complex>& zeros, double delta, Complex z,
                              std::size_t& nodes_used) {
    auto integrand = [&](double s) {
        const Complex zeta = std::polar(1.0, s);
        return poisson_sum(zeros, s) * (1.0 - delta * delta) / std::norm(z - delta * zeta);
    };
    std::size_t n = 64;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += integrand(2.0 * pi * k / n);
    double estimate = sum / n;
    constexpr std::size_t cap = std::size_t{1} << 22;
    while (n < cap) {
        double odd = 0.0;
        for (std::size_t k = 0; k < n; ++k) odd += integrand(2.0 * pi * (2 * k + 1) / (2 * n));
        sum += odd;
        n *= 2;
        const double next = sum / n;
        const bool converged = std::abs(next - estimate) <= 1e-13 * std::max(1.0, std::abs(next));
        estimate = next;
        if (converged) {
            nodes_used = std::max(nodes_used, n);
            return estimate;
        }
    }
    throw NumericFailure("semigroup average: quadrature did not converge");
}

}  // namespace detail

/// Checks |B_delta'(z)| = (1/2pi) int |B'(zeta)| P(delta, conj(zeta) z) |dzeta|
/// at `test_points` points of the circle, where B_delta has zeros delta*a_k.
inline SemigroupReport check_semigroup_average(const BlaschkeProduct& b, double delta,
                                               int test_points = 32, double tol_dev = 1e-7) {
    require_positive_degree(b, "check_semigroup_average");
    if (!(delta > 0 && delta < 1)) throw ParameterError("check_semigroup_average: delta must be in (0,1)");
    bool any_nonzero = false;
    for (const auto& a : b.zeros()) any_nonzero = any_nonzero || a != Complex{};
    if (!any_nonzero) throw PreconditionError("check_semigroup_average: all zeros are at the origin");

    const BlaschkeProduct scaled = scale_zeros(b, delta);
    SemigroupReport r;
    r.delta = delta;
    for (int k = 0; k < test_points; ++k) {
        const Complex z = std::polar(1.0, -pi + 2.0 * pi * (k + 0.37) / test_points);
        const double direct = deriv_modulus(scaled, z);
        const double averaged = detail::poisson_average(b.zeros(), delta, z, r.quadrature_points);
        r.max_deviation = std::max(r.max_deviation, std::abs(direct - averaged));
    }
    r.base = extrema(b);
    r.scaled = extrema(scaled);
    r.strictly_inside = r.base.m < r.scaled.m && r.scaled.M < r.base.M;
    if (r.max_deviation > tol_dev)
        throw VerificationFailure("semigroup average deviates by " + std::to_string(r.max_deviation));
    return r;
}

// Three-valued comparison of a margin against zero.
enum class Band { negative, boundary, positive };

inline Band band_of(double margin, double width) {
    if (margin > width) return Band::positive;
    if (margin < -width) return Band::negative;
    return Band::boundary;
}

inline const char* to_string(Band b) {
    switch (b) {
        case Band::negative: return "negative";
        case Band::boundary: return "boundary";
        case Band::positive: return "positive";
    }
    return "?";
}

/// Whether B/z^{n-1} and z^{n+1}/B are homeomorphisms / diffeomorphisms of
/// the circle: m >= n-1 (> for diffeo) and M <= n+1 (< for diffeo).
/// Margins inside the band count as equality.
struct CircleMapClassification {
    int n = 0;
    double M = 0.0;
    double m = 0.0;
    Band quotient_band = Band::boundary;    // sign of m - (n-1)
    Band reciprocal_band = Band::boundary;  // sign of (n+1) - M
    bool quotient_homeo = false;            // B / z^{n-1}
    bool quotient_diffeo = false;
    bool reciprocal_homeo = false;          // z^{n+1} / B
    bool reciprocal_diffeo = false;
};

inline CircleMapClassification classify_circle_maps(const BlaschkeProduct& b, double band = 1e-9,
                                                    std::size_t samples = 0) {
    const auto ex = extrema(b, samples);
    CircleMapClassification c;
    c.n = b.degree();
    c.M = ex.M;
    c.m = ex.m;
    c.quotient_band = band_of(ex.m - (c.n - 1), band);
    c.reciprocal_band = band_of((c.n + 1) - ex.M, band);
    c.quotient_homeo = c.quotient_band != Band::negative;
    c.quotient_diffeo = c.quotient_band == Band::positive;
    c.reciprocal_homeo = c.reciprocal_band != Band::negative;
    c.reciprocal_diffeo = c.reciprocal_band == Band::positive;
    return c;
}

}  // namespace fbp
