// Builds a few extremal products and prints their zeros and the extrema of
// |B'| on the circle next to the closed-form predictions.
#include <cstdio>

#include "fbp/fbp.hpp"

int main() {
    using fbp::Rational;
    const std::pair<int, Rational> cases[] = {
        {2, Rational(1)}, {4, fbp::make_rational(1, 2)}, {15, Rational(5)}, {15, fbp::make_rational(-1, 4)}};
    for (const auto& [n, nu] : cases) {
        auto e = fbp::extremal_product(n, nu);
        auto ex = fbp::extrema(e.product, 8192);
        std::printf("n=%d nu=%s (%s kind)\n", n, fbp::to_string(nu).c_str(), fbp::to_string(e.spec.kind));
        std::printf("  numerator: ");
        for (const auto& c : e.numerator.coeffs()) std::printf("%s ", fbp::to_string(c).c_str());
        std::printf("\n  M = %.12f (predicted %s)\n", ex.M, fbp::to_string(e.spec.predicted_M).c_str());
        std::printf("  m = %.12f (predicted %s)\n", ex.m, fbp::to_string(e.spec.predicted_m).c_str());
        if (n <= 4)
            for (const auto& a : e.product.zeros()) std::printf("  zero %+.12f %+.12fi\n", a.real(), a.imag());
    }

    auto p = fbp::construct(3, 1.6, 4.0);
    std::printf("prescribed (3, 1.6, 4): case %d, M = %.9f, m = %.9f\n", p.case_id, p.achieved.M, p.achieved.m);
    return 0;
}
