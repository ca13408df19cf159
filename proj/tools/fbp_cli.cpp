// fbp: command-line front end for the finite Blaschke product library.
//
//   fbp extremal  --n 15 --nu 5 --out out/
//   fbp prescribe --n 3 --m 1.6 --M 4 --out out/
//   fbp scan product.json --samples 8192
//   fbp verify --suite all --seed 7
//   fbp preimages product.json --theta 0 --lifted
//   fbp classify product.json
//
// Exit codes: 0 ok, 1 bad or infeasible input, 2 numeric failure,
// 3 verification failure.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fbp/fbp.hpp"
#include "fbp/suites.hpp"

namespace fs = std::filesystem;
using fbp::json;

namespace {

struct RunConfig {
    std::size_t samples = 8192;
    fbp::Tolerances tol;
    std::string format;
    std::string out;
    unsigned seed = 7;
};

void check_config(const RunConfig& cfg) {
    if (cfg.samples < 4096) throw fbp::ParameterError("--samples must be at least 4096");
    if (cfg.format != "json" && cfg.format != "csv")
        throw fbp::ParameterError("--format must be json or csv");
}

json coefficient_strings(const fbp::RationalPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(fbp::to_string(c));
    return a;
}

json extrema_json(const fbp::ExtremaReport& r) {
    return {{"M", r.M}, {"m", r.m}, {"argmax", r.argmax}, {"argmin", r.argmin},
            {"mean", r.mean}, {"samples", r.samples}};
}

void emit(const RunConfig& cfg, const json& j, const std::string& csv) {
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << csv;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

fbp::BlaschkeProduct load_product(const std::string& path) {
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return fbp::parse_product(text);
    }
    return fbp::parse_product(fbp::read_file(path));
}

int cmd_extremal(const RunConfig& cfg, int n, const std::string& nu_text) {
    const fbp::Rational nu = fbp::parse_rational(nu_text);
    auto e = fbp::extremal_product(n, nu, cfg.tol);
    auto ex = fbp::extrema(e.product, std::max(cfg.samples, fbp::minimum_samples(n, cfg.tol)), cfg.tol);
    const auto denominator = fbp::conj_reciprocal(e.numerator, n);

    json coeffs = {{"numerator", coefficient_strings(e.numerator)},
                   {"denominator", coefficient_strings(denominator)}};
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    fbp::write_atomic(dir / "product.json", fbp::product_to_json(e.product).dump(2) + "\n");
    fbp::write_atomic(dir / "spec.json", fbp::spec_to_json(e.spec).dump(2) + "\n");
    fbp::write_atomic(dir / "coefficients.json", coeffs.dump(2) + "\n");
    fbp::write_atomic(dir / "zeros.csv", fbp::zeros_csv(e.product));
    fbp::write_atomic(dir / "profile.csv", fbp::profile_csv(e.product, cfg.samples));

    json summary = {{"spec", fbp::spec_to_json(e.spec)},
                    {"coefficients", coeffs},
                    {"extrema", extrema_json(ex)},
                    {"out", dir.string()}};
    emit(cfg, summary, fbp::summary_csv(ex));
    return 0;
}

int cmd_prescribe(const RunConfig& cfg, int n, double m, double M) {
    fbp::Prescription p;
    try {
        p = fbp::construct(n, m, M, cfg.tol);
    } catch (const fbp::InfeasibleTriple& e) {
        const auto& r = e.report();
        std::cerr << "infeasible: " << r.violation << "\n";
        if (r.trivial_ok)
            std::cerr << std::setprecision(12) << "bounds: " << r.left_bound << " <= m <= "
                      << r.right_bound << "\n";
        return 1;
    }
    json report = {{"n", n},
                   {"m", m},
                   {"M", M},
                   {"case", p.case_id},
                   {"achieved", extrema_json(p.achieved)},
                   {"product", fbp::product_to_json(p.product)}};
    if (p.nu) report["nu"] = fbp::to_string(*p.nu);
    if (p.numerator) {
        report["numerator"] = coefficient_strings(*p.numerator);
        report["denominator"] = coefficient_strings(fbp::conj_reciprocal(*p.numerator, n));
    }
    if (p.state) {
        report["t"] = p.state->t;
        report["lambda"] = p.state->lambda;
    }
    if (!cfg.out.empty()) {
        const fs::path dir(cfg.out);
        fbp::write_atomic(dir / "product.json", fbp::product_to_json(p.product).dump(2) + "\n");
        fbp::write_atomic(dir / "report.json", report.dump(2) + "\n");
    }
    emit(cfg, report, fbp::summary_csv(p.achieved));
    return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& path) {
    auto b = load_product(path);
    auto ex = fbp::extrema(b, std::max(cfg.samples, fbp::minimum_samples(b.degree(), cfg.tol)), cfg.tol);
    if (!cfg.out.empty()) {
        const fs::path dir(cfg.out);
        fbp::write_atomic(dir / "profile.csv", fbp::profile_csv(b, cfg.samples));
        fbp::write_atomic(dir / "summary.csv", fbp::summary_csv(ex));
    }
    std::cout << fbp::summary_csv(ex);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    const auto rows = fbp::suites::by_name(suite, cfg.seed, cfg.tol);
    bool all = true;
    json j = json::array();
    std::string csv = "suite,check,status,detail\n";
    for (const auto& r : rows) {
        all = all && r.passed;
        j.push_back({{"suite", r.suite}, {"check", r.check}, {"passed", r.passed}, {"detail", r.detail}});
        csv += r.suite + "," + csv_quote(r.check) + "," + (r.passed ? "PASS" : "FAIL") + "," +
               csv_quote(r.detail) + "\n";
    }
    emit(cfg, j, csv);
    if (!all) {
        for (const auto& r : rows)
            if (!r.passed) std::cerr << "FAILED: " << r.suite << ": " << r.check << ": " << r.detail << "\n";
        return 3;
    }
    return 0;
}

int cmd_preimages(const RunConfig& cfg, const std::string& path, double theta, bool lifted,
                  bool weights) {
    auto b = load_product(path);
    const fbp::Complex lambda = std::polar(1.0, theta);
    fbp::PreimageSet set = weights ? fbp::residue_weights(b, lambda, cfg.tol)
                                   : fbp::preimages(b, lambda, lifted, cfg.tol);
    json pts = json::array();
    std::string csv = weights ? "re,im,deriv_modulus,weight\n" : "re,im,deriv_modulus\n";
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        const auto z = set.points[i];
        const double d = fbp::deriv_modulus(b, z);
        json row = {{"re", z.real()}, {"im", z.imag()}, {"deriv_modulus", d}};
        csv += fbp::format_double(z.real()) + "," + fbp::format_double(z.imag()) + "," +
               fbp::format_double(d);
        if (weights) {
            row["weight"] = set.weights[i];
            csv += "," + fbp::format_double(set.weights[i]);
        }
        csv += "\n";
        pts.push_back(row);
    }
    emit(cfg, {{"lambda", fbp::complex_to_json(lambda)}, {"lifted", set.lifted}, {"points", pts}}, csv);
    return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& path) {
    auto b = load_product(path);
    const std::size_t samples = std::max(cfg.samples, fbp::minimum_samples(b.degree(), cfg.tol));
    auto c = fbp::classify_circle_maps(b, cfg.tol.boundary_band, samples);
    auto e = fbp::classify_extremal(b, cfg.tol.identity, samples);
    json j = {{"n", c.n},
              {"M", c.M},
              {"m", c.m},
              {"quotient_homeo", c.quotient_homeo},
              {"quotient_diffeo", c.quotient_diffeo},
              {"quotient_band", fbp::to_string(c.quotient_band)},
              {"reciprocal_homeo", c.reciprocal_homeo},
              {"reciprocal_diffeo", c.reciprocal_diffeo},
              {"reciprocal_band", fbp::to_string(c.reciprocal_band)},
              {"extremal", e.extremal},
              {"kind", e.kind ? json(fbp::to_string(*e.kind)) : json(nullptr)},
              {"nu", e.extremal ? json(e.nu) : json(nullptr)}};
    std::string csv = "n,M,m,quotient_homeo,quotient_diffeo,reciprocal_homeo,reciprocal_diffeo,extremal,kind,nu\n";
    csv += std::to_string(c.n) + "," + fbp::format_double(c.M) + "," + fbp::format_double(c.m) + "," +
           (c.quotient_homeo ? "1" : "0") + "," + (c.quotient_diffeo ? "1" : "0") + "," +
           (c.reciprocal_homeo ? "1" : "0") + "," + (c.reciprocal_diffeo ? "1" : "0") + "," +
           (e.extremal ? "1" : "0") + "," + (e.kind ? fbp::to_string(*e.kind) : "") + "," +
           (e.extremal ? fbp::format_double(e.nu) : "") + "\n";
    emit(cfg, j, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite Blaschke products: derivative extrema, extremal products, prescription"};
    app.require_subcommand(1);

    RunConfig cfg;
    int n = 0;
    std::string nu = "0";
    double m = 0.0, M = 0.0;
    std::string product_path, suite = "all";
    double theta = 0.0;
    bool lifted = false, weights = false;

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("--samples", cfg.samples, "Circle samples (>= 4096)");
        sub->add_option("--format", cfg.format, "Report format: json or csv (verify defaults to csv)");
        sub->add_option("--out", cfg.out, "Output directory");
    };

    auto* extremal = app.add_subcommand("extremal", "Build the extremal product for (n, nu)");
    extremal->add_option("--n", n, "Degree")->required();
    extremal->add_option("--nu", nu, "nu > -1 as p/q or an exact decimal")->required();
    common(extremal);

    auto* prescribe = app.add_subcommand("prescribe", "Construct a product with given (n, m, M)");
    prescribe->add_option("--n", n, "Degree")->required();
    prescribe->add_option("--m", m, "Target minimum of |B'|")->required();
    prescribe->add_option("--M", M, "Target maximum of |B'|")->required();
    common(prescribe);

    auto* scan = app.add_subcommand("scan", "Scan |B'| on the circle for a product JSON");
    scan->add_option("product", product_path, "Product JSON file, or - for stdin")->required();
    common(scan);

    auto* verify = app.add_subcommand("verify", "Run a self-check suite");
    verify->add_option("--suite", suite, "identities | inequalities | extremal | prescribe | all");
    verify->add_option("--seed", cfg.seed, "Seed for randomized suites");
    common(verify);

    auto* pre = app.add_subcommand("preimages", "Solutions of B(z) = e^{i theta} (or z B(z))");
    pre->add_option("product", product_path, "Product JSON file, or - for stdin")->required();
    pre->add_option("--theta", theta, "Argument of lambda");
    pre->add_flag("--lifted", lifted, "Solve z B(z) = lambda");
    pre->add_flag("--weights", weights, "Residue weights (needs B(0) = 0, unlifted)");
    common(pre);

    auto* classify = app.add_subcommand("classify", "Circle-map and extremality classification");
    classify->add_option("product", product_path, "Product JSON file, or - for stdin")->required();
    common(classify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cfg.tol = fbp::tolerances_from_env();
        if (cfg.format.empty()) cfg.format = verify->parsed() ? "csv" : "json";
        check_config(cfg);
        if (extremal->parsed()) return cmd_extremal(cfg, n, nu);
        if (prescribe->parsed()) return cmd_prescribe(cfg, n, m, M);
        if (scan->parsed()) return cmd_scan(cfg, product_path);
        if (verify->parsed()) return cmd_verify(cfg, suite);
        if (pre->parsed()) return cmd_preimages(cfg, product_path, theta, lifted, weights);
        if (classify->parsed()) return cmd_classify(cfg, product_path);
    } catch (const fbp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fbp::exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
