#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "blaschke.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "rational.hpp"
#include "tolerances.hpp"

namespace fbp {

/// Slacks of n/(M-n+1) <= m <= n-1+n/M and 0 < m <= n <= M.
struct FeasibilityReport {
    int n = 0;
    double m = 0.0;
    double M = 0.0;
    double left_bound = 0.0;   // n/(M-n+1)
    double right_bound = 0.0;  // n-1+n/M
    double left_slack = 0.0;   // m - left_bound
    double right_slack = 0.0;  // right_bound - m
    bool trivial_ok = false;
    bool feasible = false;
    std::string violation;     // empty when feasible
};

inline FeasibilityReport feasibility(int n, double m, double M, double eps = 1e-12) {
    FeasibilityReport r;
    r.n = n;
    r.m = m;
    r.M = M;
    std::ostringstream os;
    os.precision(12);
    if (n < 1 || !std::isfinite(m) || !std::isfinite(M)) {
        r.violation = "need n >= 1 and finite m, M";
        return r;
    }
    r.trivial_ok = m > 0 && m <= n + eps && n <= M + eps;
    if (!r.trivial_ok) {
        os << "0 < m <= n <= M fails for (n, m, M) = (" << n << ", " << m << ", " << M << ")";
        r.violation = os.str();
        return r;
    }
    r.left_bound = n / (M - n + 1.0);
    r.right_bound = n - 1.0 + n / M;
    r.left_slack = m - r.left_bound;
    r.right_slack = r.right_bound - m;
    if (r.left_slack < -eps) {
        os << "m = " << m << " is below the left bound n/(M-n+1) = " << r.left_bound;
        r.violation = os.str();
    } else if (r.right_slack < -eps) {
        os << "m = " << m << " exceeds the right bound n-1+n/M = " << r.right_bound;
        r.violation = os.str();
    } else {
        r.feasible = true;
    }
    return r;
}

/// A zero path from `start` to `end`, linear in log-modulus and in argument.
/// Neither endpoint may be 0, so the path avoids the origin.
struct ZeroPath {
    Complex start;
    Complex end;

    Complex at(double t) const {
        const double log_r = (1.0 - t) * std::log(std::abs(start)) + t * std::log(std::abs(end));
        const double theta = (1.0 - t) * std::arg(start) + t * std::arg(end);
        return std::polar(std::exp(log_r), theta);
    }
};

namespace detail {

inline Complex snap_real(Complex z) {
    if (std::abs(z.imag()) <= 1e-12 * std::abs(z)) return {z.real(), 0.0};
    return z;
}

}  // namespace detail

/// Pairs the two zero sets by ascending argument in (-pi, pi].
inline std::vector<ZeroPath> make_paths(std::vector<Complex> from, std::vector<Complex> to) {
    if (from.size() != to.size()) throw ParameterError("make_paths: zero sets differ in size");
    for (auto* set : {&from, &to}) {
        for (auto& z : *set) {
            if (z == Complex{}) throw ParameterError("make_paths: zero paths must avoid the origin");
            z = detail::snap_real(z);
        }
        std::sort(set->begin(), set->end(), arg_less);
    }
    std::vector<ZeroPath> paths;
    for (std::size_t k = 0; k < from.size(); ++k) paths.push_back({from[k], to[k]});
    return paths;
}

/// One point of the homotopy: zeros lambda * gamma_k(t).
struct HomotopyState {
    double t = 0.0;
    std::vector<Complex> path_points;  // gamma_k(t)
    double lambda = 0.0;               // solves M(B_{t,lambda}) = M
    double lambda_max = 0.0;           // 1 / max |gamma_k(t)|
    BlaschkeProduct product;
    ExtremaReport extrema;
};

inline BlaschkeProduct scaled_path_product(const std::vector<Complex>& points, double lambda) {
    std::vector<Complex> z;
    z.reserve(points.size());
    for (const auto& g : points) z.push_back(lambda * g);
    return BlaschkeProduct::from_zeros(std::move(z), 1.0);
}

/// The unique lambda in (0, lambda_max(t)) with M(B_{t,lambda}) = M_target,
/// by bisection on the strictly increasing map lambda -> M(B_{t,lambda}).
inline HomotopyState solve_lambda(double t, const std::vector<ZeroPath>& paths, double M_target,
                                  const Tolerances& tol = {}, double M_tol = -1.0) {
    if (paths.empty()) throw ParameterError("solve_lambda: no zero paths");
    const double n = static_cast<double>(paths.size());
    if (!(M_target > n)) throw ParameterError("solve_lambda: M target must exceed the degree");
    if (M_tol < 0) M_tol = tol.lambda_solve;

    HomotopyState s;
    s.t = t;
    double biggest = 0.0;
    for (const auto& p : paths) {
        s.path_points.push_back(p.at(t));
        biggest = std::max(biggest, std::abs(s.path_points.back()));
    }
    if (!(biggest > 0.0) || !(biggest < 1.0))
        throw NumericFailure("solve_lambda: zero path left the punctured disk");
    s.lambda_max = 1.0 / biggest;

    double lo = 0.0, hi = s.lambda_max;
    double best_gap = INFINITY;
    for (int it = 0; it < tol.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        auto b = scaled_path_product(s.path_points, mid);
        auto ex = extrema(b, 0, tol);
        const double gap = ex.M - M_target;
        if (std::abs(gap) < best_gap) {
            best_gap = std::abs(gap);
            s.lambda = mid;
            s.product = b;
            s.extrema = ex;
        }
        if (std::abs(gap) <= M_tol) return s;
        (gap < 0 ? lo : hi) = mid;
    }
    if (best_gap <= tol.lambda_solve) return s;
    throw NumericFailure("solve_lambda: bisection did not reach M = " + std::to_string(M_target) +
                             " at t = " + std::to_string(t),
                         best_gap);
}

/// A t in [0, 1] with m(B_{t,lambda(t)}) = m_target: 64-point pre-scan in t,
/// then bisection on the first sign change.
inline HomotopyState solve_t(const std::vector<ZeroPath>& paths, double m_target, double M_target,
                             const Tolerances& tol = {}) {
    constexpr int prescan = 64;
    auto at = [&](double t) { return solve_lambda(t, paths, M_target, tol); };

    HomotopyState left = at(0.0);
    if (std::abs(left.extrema.m - m_target) <= tol.t_solve) return left;
    HomotopyState right = at(1.0);
    if (std::abs(right.extrema.m - m_target) <= tol.t_solve) return right;
    if (!(left.extrema.m < m_target && m_target < right.extrema.m)) {
        std::ostringstream os;
        os << "solve_t: endpoints m = " << left.extrema.m << ", " << right.extrema.m
           << " do not bracket " << m_target;
        throw InvariantFailure(os.str());
    }

    for (int i = 1; i < prescan; ++i) {
        HomotopyState next = (i == prescan - 1) ? right : at(static_cast<double>(i) / (prescan - 1));
        if (std::abs(next.extrema.m - m_target) <= tol.t_solve) return next;
        if (next.extrema.m > m_target) {
            right = std::move(next);
            break;
        }
        left = std::move(next);
    }

    HomotopyState best = std::abs(left.extrema.m - m_target) < std::abs(right.extrema.m - m_target)
                             ? left
                             : right;
    double lo = left.t, hi = right.t;
    for (int it = 0; it < tol.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        HomotopyState s = at(mid);
        const double gap = s.extrema.m - m_target;
        if (std::abs(gap) < std::abs(best.extrema.m - m_target)) best = s;
        if (std::abs(gap) <= tol.t_solve) return s;
        (gap < 0 ? lo : hi) = mid;
        if (hi - lo < 1e-15) break;
    }
    if (std::abs(best.extrema.m - m_target) <= tol.t_solve) return best;
    throw NumericFailure("solve_t: no t reached m = " + std::to_string(m_target),
                         std::abs(best.extrema.m - m_target));
}

struct Prescription {
    int case_id = 0;  // 1: z^n, 2: first-kind extremal, 3: second-kind extremal, 4: homotopy
    BlaschkeProduct product;
    std::optional<Rational> nu;             // cases 2 and 3
    std::optional<RationalPoly> numerator;  // cases 1-3, exact
    std::optional<HomotopyState> state;     // case 4
    ExtremaReport achieved;
};

class InfeasibleTriple : public ParameterError {
public:
    explicit InfeasibleTriple(FeasibilityReport report)
        : ParameterError("infeasible triple: " + report.violation), report_(std::move(report)) {}
    const FeasibilityReport& report() const noexcept { return report_; }

private:
    FeasibilityReport report_;
};

/// A Blaschke product of degree n with M(B) = M and m(B) = m, for any
/// feasible triple. Equality cases give z^n or an extremal product; strict
/// triples interpolate between the two extremal products with the same M.
inline Prescription construct(int n, double m, double M, const Tolerances& tol = {}) {
    const auto feas = feasibility(n, m, M, tol.case_dispatch);
    if (!feas.feasible) throw InfeasibleTriple(feas);

    Prescription out;
    if (std::abs(M - n) <= tol.case_dispatch) {
        out.case_id = 1;
        auto e = extremal_product(n, Rational(0), tol);
        out.product = e.product;
        out.numerator = e.numerator;
    } else if (std::abs(feas.left_slack) <= tol.case_dispatch ||
               std::abs(feas.right_slack) <= tol.case_dispatch) {
        const bool left = std::abs(feas.left_slack) <= tol.case_dispatch;
        out.case_id = left ? 2 : 3;
        const Rational nu = left ? Rational(from_double(M) - n)
                                 : Rational(Rational(n) / from_double(M) - 1);
        auto e = extremal_product(n, nu, tol);
        out.product = e.product;
        out.nu = nu;
        out.numerator = e.numerator;
    } else {
        out.case_id = 4;
        auto first = extremal_product(n, Rational(from_double(M) - n), tol);
        auto second = extremal_product(n, Rational(Rational(n) / from_double(M) - 1), tol);
        auto paths = make_paths(first.product.zeros(), second.product.zeros());
        HomotopyState s = solve_t(paths, m, M, tol);
        // Final pass: re-solve lambda at the accepted t with a tighter target.
        try {
            HomotopyState polished = solve_lambda(s.t, paths, M, tol, 0.1 * tol.lambda_solve);
            if (std::abs(polished.extrema.m - m) <= tol.t_solve) s = std::move(polished);
        } catch (const NumericFailure&) {
        }
        out.product = s.product;
        out.state = std::move(s);
    }
    out.achieved = extrema(out.product, 0, tol);
    if (std::abs(out.achieved.M - M) > 1e-4 || std::abs(out.achieved.m - m) > 1e-4) {
        std::ostringstream os;
        os << "construct: achieved (M, m) = (" << out.achieved.M << ", " << out.achieved.m
           << ") misses the target";
        throw NumericFailure(os.str(), std::max(std::abs(out.achieved.M - M), std::abs(out.achieved.m - m)));
    }
    return out;
}

}  // namespace fbp
