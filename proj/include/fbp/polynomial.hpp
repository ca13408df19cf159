#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fbp {

using Complex = std::complex<double>;

namespace detail {

inline Rational conj_coeff(const Rational& q) { return q; }
inline Complex conj_coeff(const Complex& z) { return std::conj(z); }

inline bool is_zero_coeff(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero_coeff(const Complex& z) { return z == Complex{}; }

}  // namespace detail

/// Dense univariate polynomial; coeffs()[k] is the coefficient of z^k.
///
/// Trailing zero coefficients are stripped on construction, so degree() is
/// the index of the last nonzero entry (-1 for the zero polynomial). With
/// T = Rational every operation is exact.
template <class T>
class Polynomial {
public:
    using value_type = T;

    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial monomial(std::size_t k, T coeff = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(coeff);
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }

    T operator[](std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    // Coefficients padded with zeros to length n + 1.
    std::vector<T> padded(std::size_t n) const {
        std::vector<T> out(std::max(n + 1, c_.size()), T(0));
        std::copy(c_.begin(), c_.end(), out.begin());
        return out;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
        return Polynomial(std::move(d));
    }

    // Multiplication by z^k.
    Polynomial shifted(std::size_t k = 1) const {
        if (is_zero()) return {};
        std::vector<T> out(c_.size() + k, T(0));
        std::copy(c_.begin(), c_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
        return Polynomial(std::move(out));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        os << '[';
        for (std::size_t k = 0; k < p.c_.size(); ++k) os << (k ? ", " : "") << p.c_[k];
        return os << ']';
    }

private:
    void trim() {
        while (!c_.empty() && detail::is_zero_coeff(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;
using ComplexPoly = Polynomial<Complex>;

// Horner evaluation. U may differ from T (rational coefficients at a complex
// point, say) as long as T converts to U.
template <class T, class U>
U eval(const Polynomial<T>& p, const U& z) {
    U acc(0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + U(*it);
    return acc;
}

inline Complex eval(const RationalPoly& p, const Complex& z) {
    Complex acc(0.0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + to_double(*it);
    return acc;
}

inline Complex eval(const ComplexPoly& p, const Complex& z) {
    Complex acc(0.0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// q(z) = z^n conj(p(1/conj z)): coefficient k of q is conj(coefficient n-k of p).
template <class T>
Polynomial<T> conj_reciprocal(const Polynomial<T>& p, int n) {
    if (n < p.degree())
        throw DegreeMismatch("conj_reciprocal: n = " + std::to_string(n) +
                             " is below deg p = " + std::to_string(p.degree()));
    if (n < 0) return {};
    auto c = p.padded(static_cast<std::size_t>(n));
    std::vector<T> out(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out[k] = detail::conj_coeff(c[n - k]);
    return Polynomial<T>(std::move(out));
}

/// z (f g' - f' g), in the arithmetic of the inputs.
template <class T>
Polynomial<T> wronskian_combo(const Polynomial<T>& f, const Polynomial<T>& g) {
    return (f * g.derivative() - f.derivative() * g).shifted(1);
}

inline ComplexPoly to_complex(const RationalPoly& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(to_double(q), 0.0);
    return ComplexPoly(std::move(c));
}

// Largest |coefficient|; zero for the zero polynomial.
inline Rational max_abs_coeff(const RationalPoly& p) {
    Rational m(0);
    for (const auto& q : p.coeffs())
        if (abs(q) > m) m = abs(q);
    return m;
}

inline double max_abs_coeff(const ComplexPoly& p) {
    double m = 0.0;
    for (const auto& z : p.coeffs()) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace fbp
