#include <gtest/gtest.h>

#include "fbp/extremal.hpp"

using namespace fbp;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

RationalPoly rpoly(std::initializer_list<Rational> c) { return RationalPoly(std::vector<Rational>(c)); }

const std::vector<Rational>& grid() {
    static const std::vector<Rational> g = {q(-1, 2), q(-1, 4), q(1, 4), q(1, 2), q(1), q(2), q(5)};
    return g;
}

}  // namespace

TEST(Extremal, DegreeTwoFirstKind) {
    auto e = extremal_product(2, q(1));
    EXPECT_EQ(e.numerator, rpoly({q(1), q(3), q(6)}));
    EXPECT_EQ(conj_reciprocal(e.numerator, 2), rpoly({q(6), q(3), q(1)}));
    EXPECT_EQ(e.spec.kind, ExtremalKind::first);
    EXPECT_EQ(e.spec.kappa, q(1, 6));
    EXPECT_NEAR(std::abs(e.product(1.0) - 1.0), 0.0, 1e-14);
    for (Complex z : {Complex(0.3, -0.2), Complex(-2.0, 0.5)}) {
        const Complex expected = (6.0 * z * z + 3.0 * z + 1.0) / (z * z + 3.0 * z + 6.0);
        EXPECT_NEAR(std::abs(e.product(z) - expected), 0.0, 1e-13);
    }
}

TEST(Extremal, DegreeOneMobius) {
    for (const auto& nu : {q(1, 3), q(1), q(4)}) {
        auto e = extremal_product(1, nu);
        const double v = to_double(nu);
        ASSERT_EQ(e.product.degree(), 1);
        EXPECT_NEAR(std::abs(e.product.zeros()[0] - (-v / (v + 2))), 0.0, 1e-15);
        auto ex = extrema(e.product);
        EXPECT_NEAR(ex.M, 1 + v, 1e-9);
        EXPECT_NEAR(ex.m, 1 / (1 + v), 1e-9);
    }
}

TEST(Extremal, NuZeroIsMonomial) {
    auto e = extremal_product(4, q(0));
    EXPECT_EQ(e.spec.kind, ExtremalKind::monomial);
    for (const auto& a : e.product.zeros()) EXPECT_EQ(a, Complex{});
    EXPECT_EQ(e.numerator, RationalPoly::monomial(4));
}

TEST(Extremal, RejectsNuAtMostMinusOne) {
    EXPECT_THROW(extremal_product(3, q(-1)), ParameterError);
    EXPECT_THROW(extremal_product(3, q(-3, 2)), ParameterError);
    EXPECT_THROW(extremal_product(0, q(1)), ParameterError);
}

TEST(Extremal, PredictedExtrema) {
    EXPECT_EQ(predicted_extrema(15, q(5)), std::make_pair(q(20), q(5, 2)));
    EXPECT_EQ(predicted_extrema(15, q(-1, 4)), std::make_pair(q(20), q(59, 4)));
    EXPECT_EQ(predicted_extrema(2, q(0)), std::make_pair(q(2), q(2)));
}

TEST(Extremal, KappaClosedForm) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& nu : grid()) {
            const Rational direct = pochhammer(Rational(Rational(1 - n) - nu), n) / pochhammer(Rational(nu + 2), n);
            EXPECT_EQ(extremal_kappa(n, nu), n % 2 ? Rational(-direct) : direct);
        }
}

TEST(Extremal, ScannedExtremaMatchPredictionOnGrid) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& nu : grid()) {
            auto e = extremal_product(n, nu);
            auto ex = extrema(e.product);
            EXPECT_NEAR(ex.M, to_double(e.spec.predicted_M), 1e-8) << n << " " << nu;
            EXPECT_NEAR(ex.m, to_double(e.spec.predicted_m), 1e-8) << n << " " << nu;
            for (const auto& a : e.product.zeros()) EXPECT_LT(std::abs(a), 1.0);
        }
}

TEST(Extremal, DegreeFifteen) {
    auto first = extrema(extremal_product(15, q(5)).product, 8192);
    EXPECT_NEAR(first.M, 20.0, 1e-6);
    EXPECT_NEAR(first.m, 2.5, 1e-6);
    auto second = extrema(extremal_product(15, q(-1, 4)).product, 8192);
    EXPECT_NEAR(second.M, 20.0, 1e-6);
    EXPECT_NEAR(second.m, 14.75, 1e-6);
}

TEST(Extremal, ApproxAgreesWithExact) {
    auto exact = extremal_product(6, q(3, 2));
    auto approx = extremal_product_approx(6, 1.5);
    for (Complex z : {Complex(0.4, 0.1), Complex(-0.9, 0.2)})
        EXPECT_NEAR(std::abs(exact.product(z) - approx.product(z)), 0.0, 1e-10);
    auto irr = extremal_product_approx(5, std::sqrt(2.0));
    auto ex = extrema(irr.product);
    EXPECT_NEAR(ex.M, 5 + std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(ex.m, 5 / (1 + std::sqrt(2.0)), 1e-8);
}

TEST(ExtremalSet, DegreeTwo) {
    auto e = extremal_product(2, q(1));
    auto r = extremal_set(e.product, e.spec);
    const double s5 = std::sqrt(5.0) / 3.0;
    ASSERT_EQ(r.set.points.size(), 3u);
    EXPECT_NEAR(std::abs(r.set.points[0] - Complex(-2.0 / 3.0, -s5)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(r.set.points[1] - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(r.set.points[2] - Complex(-2.0 / 3.0, s5)), 0.0, 1e-13);
    EXPECT_NEAR(r.deriv[0], 3.0, 1e-12);
    EXPECT_NEAR(r.deriv[1], 1.0, 1e-12);
    EXPECT_NEAR(r.deriv[2], 3.0, 1e-12);
    // h = F(-2, 2; -3) = 1 + 4z/3 + z^2, proportional to 3z^2 + 4z + 3.
    EXPECT_EQ(extremal_set_poly(2, q(1)), rpoly({q(1), q(4, 3), q(1)}));
}

TEST(ExtremalSet, DegreeOne) {
    auto e = extremal_product(1, q(1));
    auto r = extremal_set(e.product, e.spec);
    ASSERT_EQ(r.set.points.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        const bool at_one = std::abs(r.set.points[i] - 1.0) < 1e-9;
        EXPECT_NEAR(r.deriv[i], at_one ? 0.5 : 2.0, 1e-12);
    }
}

TEST(ExtremalSet, GridRoutesAgree) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& nu : grid()) {
            auto e = extremal_product(n, nu);
            auto r = extremal_set(e.product, e.spec);
            EXPECT_LE(r.max_mismatch, 1e-8);
            EXPECT_LE(r.max_value_error, 1e-8);
        }
}

TEST(ClassifyExtremal, Examples) {
    auto c = classify_extremal(extremal_product(2, q(1)).product);
    EXPECT_TRUE(c.extremal);
    EXPECT_EQ(c.kind, ExtremalKind::first);
    EXPECT_NEAR(c.nu, 1.0, 1e-9);

    auto sym = symmetric_product(2, 0.5);
    auto cs = classify_extremal(sym.product);
    EXPECT_FALSE(cs.extremal);
    EXPECT_NEAR(cs.extrema.M * cs.extrema.m, 4.0, 1e-9);

    auto mono = classify_extremal(extremal_product(3, q(0)).product);
    EXPECT_TRUE(mono.extremal);
    EXPECT_EQ(mono.kind, ExtremalKind::monomial);
    EXPECT_EQ(mono.nu, 0.0);

    auto second = classify_extremal(extremal_product(15, q(-1, 4)).product, 1e-8, 8192);
    EXPECT_EQ(second.kind, ExtremalKind::second);
    EXPECT_NEAR(second.nu, -0.25, 1e-8);
}

TEST(Uniqueness, DegreeTwoStructure) {
    auto e = extremal_product(2, q(1));
    auto r = verify_uniqueness_structure(e.product, e.spec);
    EXPECT_TRUE(r.ode.holds());
    EXPECT_TRUE(r.key_identity.holds());
    // psi = C (3z^2 + 4z + 3)^2, exactly.
    const RationalPoly r2 = rpoly({q(3), q(4), q(3)});
    EXPECT_EQ(r.psi, r2 * r2 * Rational(r.psi.leading() / 9));
    const double s5 = std::sqrt(5.0) / 3.0;
    ASSERT_EQ(r.double_roots.size(), 2u);
    for (const auto& w : r.double_roots) {
        EXPECT_NEAR(w.real(), -2.0 / 3.0, 1e-12);
        EXPECT_NEAR(std::abs(w.imag()), s5, 1e-12);
    }
}

TEST(Uniqueness, GaussEquationFromParameters) {
    // z(1-z)w'' + [c - (a+b+1)z]w' - ab w = 0 with a = -n, b = nu+2, c = 1-n-nu,
    // assembled from the textbook form rather than the simplified one.
    for (int n = 1; n <= 12; ++n)
        for (const auto& nu : grid()) {
            const Rational a(-n), b = nu + 2, c = Rational(1 - n) - nu;
            const RationalPoly w = extremal_numerator(n, nu);
            const RationalPoly lhs = rpoly({q(0), q(1), q(-1)}) * w.derivative().derivative() +
                                     rpoly({c, Rational(-(a + b + 1))}) * w.derivative() -
                                     w * Rational(a * b);
            EXPECT_TRUE(lhs.is_zero()) << n << " " << nu;
            auto e = extremal_product(n, nu);
            auto u = verify_uniqueness_structure(e.product, e.spec);
            EXPECT_TRUE(u.ode.holds() && u.key_identity.holds());
        }
}

TEST(Uniqueness, NeedsNonzeroNu) {
    auto e = extremal_product(3, q(0));
    EXPECT_THROW(verify_uniqueness_structure(e.product, e.spec), PreconditionError);
}

TEST(Symmetric, ClosedForm) {
    auto s = symmetric_product(2, 0.5);
    EXPECT_NEAR(s.M, 10.0 / 3.0, 1e-15);
    EXPECT_NEAR(s.m, 6.0 / 5.0, 1e-15);
    auto ex = extrema(s.product);
    EXPECT_NEAR(ex.M, s.M, 1e-9);
    EXPECT_NEAR(ex.m, s.m, 1e-9);
    auto tiny = symmetric_product(3, 1e-4);
    EXPECT_NEAR(tiny.M, 3.0, 1e-10);
    EXPECT_NEAR(tiny.m, 3.0, 1e-10);
    for (int n = 1; n <= 7; ++n) {
        auto sp = symmetric_product(n, 0.7);
        auto e = extrema(sp.product);
        EXPECT_NEAR(e.M, sp.M, 1e-9);
        EXPECT_NEAR(e.m, sp.m, 1e-9);
    }
}
