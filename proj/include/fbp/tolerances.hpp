#pragma once

#include <cstdlib>
#include <string>

#include "json.hpp"

#include "errors.hpp"

namespace fbp {

// Every numeric threshold used by the library, in one place.
struct Tolerances {
    double circle = 1e-8;          // membership in the unit circle
    double identity = 1e-9;        // floating identity checks
    double identity_strict = 1e-10;
    double root_residual = 1e-10;  // scaled polynomial residual
    double unimodular = 1e-12;     // |alpha| = 1
    double refine_t = 1e-12;       // extremum location in t
    double boundary_band = 1e-9;   // three-valued comparisons
    double psi_double_root = 1e-7;
    double case_dispatch = 1e-12;  // equality cases of the main inequality
    double lambda_solve = 1e-9;    // |M(B_{t,lambda}) - M|
    double t_solve = 1e-6;         // |m(B_t) - m|
    int scan_oversampling = 64;    // samples per degree
    int min_samples = 4096;
    int max_bisections = 200;
};

inline void from_json(const nlohmann::json& j, Tolerances& t) {
    auto read = [&j](const char* key, auto& field) {
        if (auto it = j.find(key); it != j.end()) it->get_to(field);
    };
    read("circle", t.circle);
    read("identity", t.identity);
    read("identity_strict", t.identity_strict);
    read("root_residual", t.root_residual);
    read("unimodular", t.unimodular);
    read("refine_t", t.refine_t);
    read("boundary_band", t.boundary_band);
    read("psi_double_root", t.psi_double_root);
    read("case_dispatch", t.case_dispatch);
    read("lambda_solve", t.lambda_solve);
    read("t_solve", t.t_solve);
    read("scan_oversampling", t.scan_oversampling);
    read("min_samples", t.min_samples);
    read("max_bisections", t.max_bisections);
}

inline void to_json(nlohmann::json& j, const Tolerances& t) {
    j = {{"circle", t.circle},
         {"identity", t.identity},
         {"identity_strict", t.identity_strict},
         {"root_residual", t.root_residual},
         {"unimodular", t.unimodular},
         {"refine_t", t.refine_t},
         {"boundary_band", t.boundary_band},
         {"psi_double_root", t.psi_double_root},
         {"case_dispatch", t.case_dispatch},
         {"lambda_solve", t.lambda_solve},
         {"t_solve", t.t_solve},
         {"scan_oversampling", t.scan_oversampling},
         {"min_samples", t.min_samples},
         {"max_bisections", t.max_bisections}};
}

// Defaults, overridden field-by-field by a JSON object in BLAS_EXT_TOL,
// e.g. BLAS_EXT_TOL='{"circle":1e-7}'.
inline Tolerances tolerances_from_env(const char* var = "BLAS_EXT_TOL") {
    Tolerances tol;
    const char* raw = std::getenv(var);
    if (raw == nullptr || *raw == '\0') return tol;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string(var) + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ParameterError(std::string(var) + " must be a JSON object");
    try {
        tol = j.get<Tolerances>();
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string(var) + ": " + e.what());
    }
    return tol;
}

}  // namespace fbp
