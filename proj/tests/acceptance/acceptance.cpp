// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fbp/fbp.hpp"

namespace fs = std::filesystem;
using namespace fbp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[" << what << "] ";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
}

BlaschkeProduct random_product(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> z;
    for (int k = 0; k < n; ++k) z.push_back(std::polar(radius * std::sqrt(u(rng)), 2 * pi * u(rng) - pi));
    return BlaschkeProduct::from_zeros(z, std::polar(1.0, 2 * pi * u(rng) - pi));
}

const std::vector<Rational>& nu_grid() {
    static const std::vector<Rational> g = {make_rational(-1, 2), make_rational(-1, 4), make_rational(1, 4),
                                            make_rational(1, 2),  Rational(1),          Rational(2),
                                            Rational(5)};
    return g;
}

int run_cli(const std::string& args, std::string& out) {
    FILE* pipe = popen((std::string(FBP_CLI_PATH) + " " + args + " 2>&1").c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void c1(Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / "fbp_acceptance_c1";
    fs::remove_all(dir);
    std::string out;
    const auto t0 = Clock::now();
    const int code = run_cli("extremal --n 2 --nu 1 --out " + dir.string(), out);
    const double elapsed = seconds_since(t0);
    o.require(code == 0, "exit code " + std::to_string(code));
    if (code != 0) return;
    const json j = json::parse(out);
    o.require(j["coefficients"]["numerator"] == json({"1", "3", "6"}), "numerator (1,3,6)");
    o.require(j["coefficients"]["denominator"] == json({"6", "3", "1"}), "denominator (6,3,1)");
    const double M = j["extrema"]["M"], m = j["extrema"]["m"];
    o.require(std::abs(M - 3) <= 1e-9, "M = 3");
    o.require(std::abs(m - 1) <= 1e-9, "m = 1");
    const auto b = parse_product(read_file(dir / "product.json"));
    const double s = std::sqrt(15.0) / 12.0;
    double zero_err = 0.0;
    for (const auto& a : b.zeros())
        zero_err = std::max(zero_err, std::min(std::abs(a - Complex(-0.25, s)), std::abs(a - Complex(-0.25, -s))));
    o.require(b.degree() == 2 && zero_err <= 1e-10, "zeros (-3 +- i sqrt15)/12");
    o.require(elapsed < 1.0, "runtime < 1 s");
    o.detail << "M=" << format_double(M) << " m=" << format_double(m) << " zero err " << zero_err
             << ", cli " << elapsed << "s";
    fs::remove_all(dir);
}

void c2(Outcome& o) {
    struct Case {
        Rational nu;
        double M, m;
    };
    for (const auto& c : {Case{Rational(5), 20.0, 2.5}, Case{make_rational(-1, 4), 20.0, 14.75}}) {
        const auto t0 = Clock::now();
        auto e = extremal_product(15, c.nu);
        auto ex = extrema(e.product, 8192);
        const double elapsed = seconds_since(t0);
        o.require(ex.samples == 8192, "8192 samples");
        o.require(std::abs(ex.M - c.M) <= 1e-6 && std::abs(ex.m - c.m) <= 1e-6, "extrema nu=" + to_string(c.nu));
        o.require(elapsed < 5.0, "runtime nu=" + to_string(c.nu));
        o.detail << "nu=" << to_string(c.nu) << ": (" << format_double(ex.M) << ", " << format_double(ex.m)
                 << ") " << elapsed << "s; ";
    }
}

void c3(Outcome& o) {
    const auto t0 = Clock::now();
    int exact = 0;
    const RationalPoly z_one_minus_z{Rational(0), Rational(1), Rational(-1)};
    for (int n = 1; n <= 12; ++n)
        for (const auto& nu : nu_grid()) {
            const std::string at = " n=" + std::to_string(n) + " nu=" + to_string(nu);
            o.require(check_wronskian_identity(-n, nu + 1).identity.holds(), "wronskian" + at);
            o.require(check_contiguous(HypergeoParams(n, nu + 1, Rational(-n) - nu)).all_hold(), "contiguous h" + at);
            o.require(check_contiguous(HypergeoParams(n, nu, Rational(-n - 1) - nu)).all_hold(), "contiguous g" + at);
            const RationalPoly p = extremal_numerator(n, nu);
            const Rational b = nu + 2, c = Rational(1 - n) - nu;
            o.require(coefficient_sum(p) == hyper_at_one(n, nu), "p(1) closed form" + at);
            o.require(hyper_at_one(n, nu) == pochhammer(Rational(c - b), n) / pochhammer(c, n), "Chu-Vandermonde" + at);
            o.require(check_reciprocal_transform(n, b, c).identity.holds(), "reciprocal" + at);
            o.require(reciprocal_constant(n, c, b) == nu * (nu + 1) / ((n + nu) * (n + nu + 1)), "kappa" + at);
            auto e = extremal_product(n, nu);
            auto u = verify_uniqueness_structure(e.product, e.spec);
            o.require(u.ode.holds(), "ODE" + at);
            o.require(u.key_identity.holds(), "key identity" + at);
            // The ODE once more in textbook Gauss form with a = -n.
            const RationalPoly gauss = z_one_minus_z * p.derivative().derivative() +
                                       RationalPoly{c, Rational(-(Rational(1 - n) + b))} * p.derivative() +
                                       p * Rational(n * b);
            o.require(gauss.is_zero(), "Gauss form" + at);
            exact += 10;
        }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 30.0, "runtime < 30 s");
    o.detail << exact << " exact identities over 84 (n, nu) cases";
}

void c4(Outcome& o) {
    std::mt19937_64 rng(20240601);
    double worst_slack = INFINITY, worst_mean = 0.0;
    for (int k = 0; k < 200; ++k) {
        auto b = random_product(rng, 1 + k % 8, 0.95);
        auto ex = extrema(b);
        const double n = b.degree();
        worst_slack = std::min({worst_slack, ex.m - n / (ex.M - n + 1), n - 1 + n / ex.M - ex.m});
        worst_mean = std::max(worst_mean, std::abs(ex.mean - n));
    }
    o.require(worst_slack >= -1e-9, "slack >= -1e-9");
    o.require(worst_mean <= 1e-8, "mean = degree");
    o.detail << "min slack " << worst_slack << ", max mean error " << worst_mean;
}

void c5(Outcome& o) {
    std::mt19937_64 rng(20240602);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double lifted = 0.0, residues = 0.0;
    for (int k = 0; k < 100; ++k) {
        auto b = random_product(rng, 1 + k % 8, 0.95);
        auto set = preimages(b, std::polar(1.0, angle(rng)), true);
        o.require(static_cast<int>(set.points.size()) == b.degree() + 1, "lifted count");
        double sum = 0.0;
        for (const auto& z : set.points) sum += 1.0 / (deriv_modulus(b, z) + 1.0);
        lifted = std::max(lifted, std::abs(sum - 1.0));

        auto bz = random_product(rng, k % 7, 0.95).times_z();
        if (bz.degree() < 2) bz = bz.times_z();
        auto w = residue_weights(bz, std::polar(1.0, angle(rng)));
        double total = 0.0;
        for (double x : w.weights) total += x;
        residues = std::max(residues, std::abs(total - 1.0));
    }
    o.require(lifted <= 1e-9, "lifted residue sum");
    o.require(residues <= 1e-9, "B(0)=0 residue sum");
    o.detail << "max |sum-1|: lifted " << lifted << ", B(0)=0 " << residues;
}

void c6(Outcome& o) {
    double circle_gap = 0.0, min_sep = INFINITY, max_mod = 0.0;
    for (int n = 1; n <= 20; ++n) {
        for (const auto& lam : {make_rational(-2, 5), make_rational(1, 2), Rational(1), Rational(3)}) {
            auto r = check_roots_on_circle(n, lam, 1e-8);
            circle_gap = std::max(circle_gap, r.worst_circle_gap);
            if (n > 1) min_sep = std::min(min_sep, r.min_separation);
        }
        for (const auto& nu : nu_grid()) max_mod = std::max(max_mod, check_roots_in_disk(n, nu).max_modulus);
    }
    o.require(circle_gap <= 1e-8, "roots on circle");
    o.require(max_mod < 1.0, "roots in disk");
    o.detail << "max ||r|-1| " << circle_gap << ", min separation " << min_sep << ", max |r| in disk "
             << max_mod;
}

void c7(Outcome& o) {
    const auto t0 = Clock::now();
    struct Triple {
        int n;
        double m, M;
        int expected_case;
    };
    std::vector<Triple> triples{{3, 1.6, 4.0, 4}};
    std::mt19937_64 rng(20240603);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; (int)triples.size() < 50; ++k) {
        const int n = 1 + k % 6;
        const double M = n + 0.1 + 3.0 * u(rng);
        const double lo = n / (M - n + 1), hi = n - 1 + n / M;
        switch (k % 7) {
            case 0: triples.push_back({n, double(n), double(n), 1}); break;
            case 1: triples.push_back({n, lo, M, 2}); break;
            case 2:
                if (n > 1) triples.push_back({n, hi, M, 3});
                break;
            default:
                if (n > 1) triples.push_back({n, lo + (0.05 + 0.9 * u(rng)) * (hi - lo), M, 4});
        }
    }
    int strict = 0, ok = 0;
    double worst = 0.0;
    for (const auto& t : triples) {
        std::ostringstream name;
        name << "(" << t.n << ", " << t.m << ", " << t.M << ")";
        try {
            auto p = construct(t.n, t.m, t.M);
            const double err = std::max(std::abs(p.achieved.M - t.M), std::abs(p.achieved.m - t.m));
            worst = std::max(worst, err);
            o.require(err <= 1e-4, "target missed " + name.str());
            o.require(p.case_id == t.expected_case, "case " + std::to_string(p.case_id) + " for " + name.str());
            if (p.case_id == 4) ++strict;
            if (err <= 1e-4) ++ok;
        } catch (const std::exception& e) {
            o.require(false, name.str() + ": " + e.what());
        }
    }
    const double elapsed = seconds_since(t0);
    o.require(strict >= 10, "at least 10 strict triples");
    o.require(elapsed < 120.0, "runtime < 2 min");
    o.detail << ok << "/" << triples.size() << " triples, " << strict << " strict, max error " << worst;
}

void c8(Outcome& o) {
    std::mt19937_64 rng(20240604);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int monotone = 0;
    double worst_avg = 0.0;
    for (int k = 0; k < 50; ++k) {
        auto b = random_product(rng, 1 + k % 8, 0.95);
        double biggest = 0.0;
        for (const auto& a : b.zeros()) biggest = std::max(biggest, std::abs(a));
        const double cap = 1.0 / biggest;
        const double l2 = cap * (0.2 + 0.79 * u(rng));
        const double l1 = l2 * (0.1 + 0.8 * u(rng));
        auto e1 = extrema(scale_zeros(b, l1)), e2 = extrema(scale_zeros(b, l2));
        const bool ok = e1.M < e2.M && e1.m > e2.m;
        o.require(ok, "monotone scaling #" + std::to_string(k));
        if (ok) ++monotone;
        auto s = check_semigroup_average(b, 0.2 + 0.7 * u(rng), 32, 1e-7);
        worst_avg = std::max(worst_avg, s.max_deviation);
    }
    o.require(worst_avg <= 1e-7, "semigroup average");
    o.detail << monotone << "/50 strictly monotone, max averaging deviation " << worst_avg;
}

void c9(Outcome& o) {
    std::mt19937_64 rng(20240605);
    int checked = 0;
    for (int k = 0; k < 2000 && checked < 100; ++k) {
        auto b = random_product(rng, 2, 0.6);
        auto c = classify_circle_maps(b);
        if (c.M > 3.0) continue;
        ++checked;
        o.require(c.quotient_homeo, "B/z homeomorphism at M=" + format_double(c.M));
    }
    // First-kind extremal products with 0 < nu <= 1 sit on the curve m = 2/(M-1).
    for (const auto& nu : {make_rational(1, 4), make_rational(1, 2), make_rational(9, 10)}) {
        auto c = classify_circle_maps(extremal_product(2, nu).product);
        o.require(c.M <= 3.0 && c.quotient_homeo, "extremal nu=" + to_string(nu));
    }
    o.require(checked >= 50, "enough degree-2 samples");
    auto e = classify_circle_maps(extremal_product(2, Rational(1)).product);
    o.require(std::abs(e.M - 3) <= 1e-9 && std::abs(e.m - 1) <= 1e-9, "boundary M=3, m=1");
    o.require(e.quotient_homeo && !e.quotient_diffeo, "boundary homeo, not diffeo");
    o.detail << checked << " random products with M <= 3; boundary band " << to_string(e.quotient_band);
}

}  // namespace

int main() {
    criterion(1, "degree-2 extremal product via CLI", c1);
    criterion(2, "degree-15 extremal products, 8192-point scan", c2);
    criterion(3, "exact identity suite, n <= 12 on the nu grid", c3);
    criterion(4, "main inequality on 200 random products", c4);
    criterion(5, "residue sums", c5);
    criterion(6, "root location, n <= 20", c6);
    criterion(7, "prescription round-trip, 50 triples", c7);
    criterion(8, "monotone zero scaling and semigroup averaging", c8);
    criterion(9, "degree-2 circle-map classification", c9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
