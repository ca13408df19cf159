#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "blaschke.hpp"
#include "errors.hpp"
#include "extremal.hpp"

namespace fbp {

using json = nlohmann::json;

inline json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

// {"degree": n, "alpha": {"re":..,"im":..}, "zeros": [{"re":..,"im":..}, ...]}
inline json product_to_json(const BlaschkeProduct& b) {
    json zeros = json::array();
    for (const auto& a : b.zeros()) zeros.push_back(complex_to_json(a));
    return {{"degree", b.degree()}, {"alpha", complex_to_json(b.alpha())}, {"zeros", std::move(zeros)}};
}

inline BlaschkeProduct product_from_json(const json& j) {
    try {
        std::vector<Complex> zeros;
        for (const auto& z : j.at("zeros")) zeros.push_back(complex_from_json(z));
        const Complex alpha = j.contains("alpha") ? complex_from_json(j.at("alpha")) : Complex(1.0);
        if (j.contains("degree") && j.at("degree").get<int>() != static_cast<int>(zeros.size()))
            throw ParameterError("product JSON: degree does not match the number of zeros");
        // JSON decimals may not reproduce |alpha| = 1 to the last bit.
        return BlaschkeProduct::from_zeros(std::move(zeros), alpha, 1e-9);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed product JSON: ") + e.what());
    }
}

inline BlaschkeProduct parse_product(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed product JSON: ") + e.what());
    }
    return product_from_json(j);
}

// {"n":.., "nu":"p/q", "kind":"first|second|monomial", "kappa":"p/q", "M":.., "m":..}
inline json spec_to_json(const ExtremalSpec& s) {
    return {{"n", s.n},
            {"nu", to_string(s.nu)},
            {"kind", to_string(s.kind)},
            {"kappa", to_string(s.kappa)},
            {"M", to_double(s.predicted_M)},
            {"m", to_double(s.predicted_m)}};
}

inline ExtremalSpec spec_from_json(const json& j) {
    try {
        return make_extremal_spec(j.at("n").get<int>(), parse_rational(j.at("nu").get<std::string>()));
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed spec JSON: ") + e.what());
    }
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string zeros_csv(const BlaschkeProduct& b) {
    std::string out = "re,im\n";
    for (const auto& a : b.zeros()) out += format_double(a.real()) + "," + format_double(a.imag()) + "\n";
    return out;
}

/// t uniform in [-pi, pi) with |B'(e^{it})|.
inline std::string profile_csv(const BlaschkeProduct& b, std::size_t samples) {
    std::string out = "t,deriv_modulus\n";
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(samples);
        out += format_double(t) + "," + format_double(detail::poisson_sum(b.zeros(), t)) + "\n";
    }
    return out;
}

inline std::string summary_csv(const ExtremaReport& r) {
    return "M,m,mean\n" + format_double(r.M) + "," + format_double(r.m) + "," + format_double(r.mean) + "\n";
}

/// Writes through a temporary file in the same directory and renames it.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) throw Error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace fbp
