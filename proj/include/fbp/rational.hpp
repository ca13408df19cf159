#pragma once

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "errors.hpp"

namespace fbp {

// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "p/q" or a decimal literal such as "-0.25" or "1.5e-3".
// Decimals are converted exactly from their digits, never through double.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ParameterError("empty rational literal");

    auto bad = [&s]() { return ParameterError("malformed rational literal '" + s + "'"); };
    auto is_int = [](std::string_view v) {
        std::size_t i = (!v.empty() && (v[0] == '+' || v[0] == '-')) ? 1 : 0;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw bad();
        mpz_class n(strip_plus(num), 10), d(strip_plus(den), 10);
        if (d == 0) throw ParameterError("rational with zero denominator");
        Rational q(n, d);
        q.canonicalize();
        return q;
    }

    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        std::string exp = s.substr(e + 1);
        if (!is_int(exp)) throw bad();
        exponent = std::stol(exp);
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        mantissa = mantissa.substr(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char ch : mantissa) {
        if (ch == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            if (seen_point) ++frac_digits;
        } else {
            throw bad();
        }
    }
    if (digits.empty()) throw bad();
    long scale = exponent - frac_digits;
    if (scale > 10000 || scale < -10000) throw bad();
    mpz_class value(digits, 10);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    Rational q = scale >= 0 ? Rational(value * pow10) : Rational(value, pow10);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Nearest double (mpq_get_d truncates toward zero).
inline double to_double(const Rational& q) {
    double d = q.get_d();
    if (!std::isfinite(d) || q == 0) return d;
    double up = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(up)) return d;
    Rational err_d = abs(q - Rational(d));
    Rational err_up = abs(q - Rational(up));
    return err_up < err_d ? up : d;
}

// Exact value of a finite double.
inline Rational from_double(double x) {
    if (!std::isfinite(x)) throw ParameterError("non-finite value cannot be made rational");
    return Rational(x);
}

}  // namespace fbp
