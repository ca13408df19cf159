#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "blaschke.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "hypergeo.hpp"
#include "io.hpp"
#include "prescribe.hpp"
#include "rational.hpp"

// Named self-check suites driven by `fbp verify`.
namespace fbp::suites {

struct Row {
    std::string suite;
    std::string check;
    bool passed = false;
    std::string detail;
};

inline const std::vector<Rational>& nu_grid() {
    static const std::vector<Rational> grid = {make_rational(-1, 2), make_rational(-1, 4),
                                               make_rational(1, 4),  make_rational(1, 2),
                                               make_rational(1),     make_rational(2),
                                               make_rational(5)};
    return grid;
}

// Zeros uniform (by area) in the disk of the given radius.
inline BlaschkeProduct random_product(std::mt19937_64& rng, int degree, double radius = 0.95) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> zeros;
    for (int k = 0; k < degree; ++k)
        zeros.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * pi * u(rng) - pi));
    return BlaschkeProduct::from_zeros(std::move(zeros), std::polar(1.0, 2.0 * pi * u(rng) - pi));
}

inline Row run(const std::string& suite, const std::string& check,
               const std::function<std::string()>& body) {
    Row row{suite, check, false, ""};
    try {
        row.detail = body();
        row.passed = true;
    } catch (const std::exception& e) {
        row.detail = e.what();
    }
    return row;
}

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw VerificationFailure(what);
}

inline std::vector<Row> identities(const Tolerances& tol = {}) {
    const std::string s = "identities";
    std::vector<Row> rows;
    auto over_grid = [&](const std::string& name, const std::function<void(int, const Rational&)>& f) {
        rows.push_back(run(s, name, [&] {
            int count = 0;
            for (int n = 1; n <= 12; ++n)
                for (const auto& nu : nu_grid()) {
                    f(n, nu);
                    ++count;
                }
            return std::to_string(count) + " (n, nu) cases exact";
        }));
    };
    over_grid("wronskian z(fg'-f'g) = c(fg-h^2)", [](int n, const Rational& nu) {
        expect(check_wronskian_identity(-n, nu + 1).identity.holds(),
               "wronskian fails at n=" + std::to_string(n) + " nu=" + to_string(nu));
    });
    over_grid("contiguous and derivative relations", [](int n, const Rational& nu) {
        expect(check_contiguous(HypergeoParams(n, nu + 1, Rational(-n) - nu)).all_hold() &&
                   check_contiguous(HypergeoParams(n, nu, Rational(-n - 1) - nu)).all_hold(),
               "contiguous relation fails at n=" + std::to_string(n) + " nu=" + to_string(nu));
    });
    over_grid("Chu-Vandermonde p(1)", [](int n, const Rational& nu) {
        expect(hyper_at_one(n, nu) == coefficient_sum(extremal_numerator(n, nu)),
               "p(1) mismatch at n=" + std::to_string(n) + " nu=" + to_string(nu));
    });
    over_grid("reciprocal transformation", [](int n, const Rational& nu) {
        expect(check_reciprocal_transform(n, nu + 2, Rational(1 - n) - nu).identity.holds(),
               "reciprocal transform fails at n=" + std::to_string(n));
    });
    over_grid("kappa closed form", [](int n, const Rational& nu) {
        expect(reciprocal_constant(n, Rational(1 - n) - nu, nu + 2) == extremal_kappa(n, nu),
               "kappa mismatch at n=" + std::to_string(n) + " nu=" + to_string(nu));
    });
    over_grid("hypergeometric ODE and key identity", [&tol](int n, const Rational& nu) {
        auto e = extremal_product(n, nu, tol);
        auto r = verify_uniqueness_structure(e.product, e.spec, tol);
        expect(r.ode.holds() && r.key_identity.holds(), "structure identity fails");
    });
    return rows;
}

inline std::vector<Row> inequalities(unsigned seed, const Tolerances& tol = {}) {
    const std::string s = "inequalities";
    std::vector<Row> rows;
    rows.push_back(run(s, "main inequality, 200 random products", [seed, &tol] {
        std::mt19937_64 rng(seed);
        double worst_slack = INFINITY, worst_mean = 0.0;
        for (int k = 0; k < 200; ++k) {
            auto b = random_product(rng, 1 + k % 8);
            auto r = check_main_inequality(b, 0, tol);
            worst_slack = std::min({worst_slack, r.left_slack, r.right_slack});
            worst_mean = std::max(worst_mean, std::abs(extrema(b, 0, tol).mean - b.degree()));
        }
        expect(worst_mean <= 1e-8, "circle mean of |B'| differs from the degree");
        std::ostringstream os;
        os << "min slack " << worst_slack << ", max mean error " << worst_mean;
        return os.str();
    }));
    rows.push_back(run(s, "lifted residue sum, 100 random (B, lambda)", [seed, &tol] {
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> angle(-pi, pi);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            auto b = random_product(rng, 1 + k % 8);
            auto set = preimages(b, std::polar(1.0, angle(rng)), true, tol);
            double sum = 0.0;
            for (const auto& z : set.points) sum += 1.0 / (deriv_modulus(b, z) + 1.0);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        expect(worst <= 1e-9, "residue sum off by " + format_double(worst));
        return "max |sum - 1| = " + format_double(worst);
    }));
    return rows;
}

inline std::vector<Row> extremal(const Tolerances& tol = {}) {
    const std::string s = "extremal";
    std::vector<Row> rows;
    rows.push_back(run(s, "degree 2, nu = 1: (6z^2+3z+1)/(z^2+3z+6)", [&tol] {
        auto e = extremal_product(2, Rational(1), tol);
        expect(e.numerator == RationalPoly{Rational(1), Rational(3), Rational(6)}, "coefficients");
        auto ex = extrema(e.product, 0, tol);
        expect(std::abs(ex.M - 3) <= 1e-9 && std::abs(ex.m - 1) <= 1e-9, "extrema (3, 1)");
        return "M=" + format_double(ex.M) + " m=" + format_double(ex.m);
    }));
    for (const auto& [nu, M, m] : {std::tuple{Rational(5), 20.0, 2.5},
                                   std::tuple{make_rational(-1, 4), 20.0, 14.75}}) {
        rows.push_back(run(s, "degree 15, nu = " + to_string(nu), [nu = nu, M = M, m = m, &tol] {
            auto e = extremal_product(15, nu, tol);
            auto ex = extrema(e.product, 8192, tol);
            expect(std::abs(ex.M - M) <= 1e-6 && std::abs(ex.m - m) <= 1e-6, "extrema mismatch");
            return "M=" + format_double(ex.M) + " m=" + format_double(ex.m);
        }));
    }
    rows.push_back(run(s, "predicted extrema for n <= 12 on the nu grid", [&tol] {
        double worst = 0.0;
        for (int n = 1; n <= 12; ++n)
            for (const auto& nu : nu_grid()) {
                auto e = extremal_product(n, nu, tol);
                auto ex = extrema(e.product, 0, tol);
                worst = std::max({worst, std::abs(ex.M - to_double(e.spec.predicted_M)),
                                  std::abs(ex.m - to_double(e.spec.predicted_m))});
                extremal_set(e.product, e.spec, tol);
            }
        expect(worst <= 1e-8, "extrema deviate by " + format_double(worst));
        return "max deviation " + format_double(worst);
    }));
    return rows;
}

inline std::vector<Row> prescribe(unsigned seed, const Tolerances& tol = {}) {
    const std::string s = "prescribe";
    std::vector<Row> rows;
    auto triple = [&](int n, double m, double M) {
        std::ostringstream name;
        name << "(" << n << ", " << m << ", " << M << ")";
        rows.push_back(run(s, name.str(), [=, &tol] {
            auto p = construct(n, m, M, tol);
            return "case " + std::to_string(p.case_id) + ", M=" + format_double(p.achieved.M) +
                   " m=" + format_double(p.achieved.m);
        }));
    };
    triple(2, 1.0, 3.0);
    triple(3, 1.6, 4.0);
    triple(15, 2.5, 20.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 5; ++k) {
        const int n = 2 + k % 4;
        const double M = n + 3.0 * u(rng);
        const double lo = n / (M - n + 1.0), hi = n - 1.0 + n / M;
        triple(n, lo + u(rng) * (hi - lo), M);
    }
    return rows;
}

inline std::vector<Row> by_name(const std::string& name, unsigned seed, const Tolerances& tol = {}) {
    if (name == "identities") return identities(tol);
    if (name == "inequalities") return inequalities(seed, tol);
    if (name == "extremal") return extremal(tol);
    if (name == "prescribe") return prescribe(seed, tol);
    if (name == "all") {
        std::vector<Row> all;
        for (auto part : {identities(tol), inequalities(seed, tol), extremal(tol), prescribe(seed, tol)})
            all.insert(all.end(), part.begin(), part.end());
        return all;
    }
    throw ParameterError("unknown suite '" + name + "'");
}

}  // namespace fbp::suites
