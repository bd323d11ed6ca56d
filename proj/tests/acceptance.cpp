// One line per acceptance criterion; non-zero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "sdroots/curvature.hpp"
#include "sdroots/identities.hpp"
#include "sdroots/indicial.hpp"
#include "sdroots/oracle.hpp"
#include "sdroots/spectra.hpp"

using namespace sdroots;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::array<double, 3> kCube{2 * M_PI, 2 * M_PI, 2 * M_PI};

// Distinct values of `v` (greedy, within tol).
std::vector<cplx> distinct(const std::vector<cplx>& v, double tol) {
    std::vector<cplx> out;
    for (auto& x : v)
        if (std::none_of(out.begin(), out.end(), [&](cplx y) { return std::abs(x - y) < tol; })) out.push_back(x);
    return out;
}

bool same_sets(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol, double* worst) {
    auto covers = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
        for (auto& p : x) {
            double best = 1e300;
            for (auto& q : y) best = std::min(best, std::abs(p - q));
            *worst = std::max(*worst, best);
            if (best >= tol) return false;
        }
        return true;
    };
    const bool l = covers(a, b), r = covers(b, a);
    return l && r;
}

std::vector<cplx> values(const std::vector<RawRoot>& r) {
    std::vector<cplx> v;
    for (auto& x : r) v.push_back(x.value);
    return v;
}

// Cluster means and total multiplicity of the companion spectrum.
std::vector<cplx> cluster_means(const OdeSystem& ode, int* total) {
    std::vector<cplx> v;
    for (auto& c : companion_clusters(ode, 1e-6)) {
        v.push_back(c.value);
        *total += c.algebraic;
    }
    return v;
}

Outcome c1() {
    const auto cat = assemble_catalog(CrossSectionSpec::sphere(), 10);
    std::vector<cplx> low;
    bool ok = true;
    for (auto& r : cat.roots) {
        const double re = r.value.real();
        if (std::abs(re) < 2) low.push_back(r.value);
        switch (r.case_tag) {
            case CaseTag::Case2:
            case CaseTag::Case3:
                ok = ok && std::abs(r.value.imag()) < 1e-9 && std::abs(re - std::round(re)) < 1e-9 &&
                     std::abs(re) >= 2 - 1e-9;
                break;
            case CaseTag::Case4: ok = ok && std::abs(re) > std::sqrt(6.0); break;
            case CaseTag::Case5: ok = ok && std::abs(r.value) >= std::sqrt(5.0) - 1e-9; break;
            default: break;
        }
    }
    double worst = 0;
    const bool low_ok = same_sets(distinct(low, 1e-9), {0.0, 1.0, -1.0}, 1e-9, &worst);
    return {ok && low_ok, std::to_string(cat.roots.size()) + " catalog rows, " +
                              std::to_string(distinct(low, 1e-9).size()) + " distinct values with |Re|<2"};
}

Outcome c2() {
    double worst = 0;
    bool ok = true;
    for (int j = 2; j <= 10; ++j) {
        const auto v = distinct(values(type3_roots(double(j * j + 2 * j - 2), 1)), 1e-12);
        ok = ok && same_sets(v, {double(j), double(-j), double(j + 2), double(-j - 2)}, 1e-12, &worst);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.3g", worst);
    return {ok, buf};
}

Outcome c3() {
    double worst = 0;
    int failures = 0, checks = 0, skipped = 0;
    for (int kappa : {-1, 0, 1}) {
        for (int m = 0; m <= 48; ++m) {
            const double x = m;
            auto check = [&](const OdeSystem& ode, const std::vector<RawRoot>& closed, int expected_total) {
                ++checks;
                int total = 0;
                const auto numeric = cluster_means(ode, &total);
                const auto c = distinct(values(closed), 1e-9);
                if (!same_sets(numeric, c, 1e-9, &worst) || total != expected_total) ++failures;
            };
            check(matrixA(x, kappa), mixed_a_roots(x, kappa), 4);

            // type-3 only exists above the TT eigenvalue bound (6, 0, 3 for κ = 1, 0, −1)
            if (x < (kappa == 1 ? 6 : kappa == -1 ? 3 : 0)) {
                ++skipped;
                check(mixed_b_ode(x, kappa), mixed_b_roots(x, kappa), 2);
                continue;
            }
            // both helicities together carry the four type-3 roots
            ++checks;
            int t = 0;
            std::vector<cplx> b;
            for (int hel : {+1, -1}) {
                const auto cm = cluster_means(type3_ode(x, kappa, hel), &t);
                b.insert(b.end(), cm.begin(), cm.end());
            }
            if (!same_sets(distinct(b, 1e-6), distinct(values(type3_roots(x, kappa)), 1e-9), 1e-9, &worst) || t != 4)
                ++failures;

            check(mixed_b_ode(x, kappa), mixed_b_roots(x, kappa), 2);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/%d ODE checks, max deviation %.3g, %d type-3 points below the TT bound", checks - failures,
                  checks, worst, skipped);
    return {failures == 0, buf};
}

Outcome c4() {
    bool ok = true;
    std::ostringstream os;
    for (auto L : {kCube, std::array<double, 3>{1.0, 2.0, 3.5}, std::array<double, 3>{2 * M_PI, M_PI, 7.0}}) {
        const auto cat = assemble_catalog(CrossSectionSpec::torus(L), 6);
        int at0 = 0;
        for (auto& c : companion_clusters(flat_mode_pencil({0, 0, 0}, L), 1e-6))
            if (std::abs(c.value) < 1e-8) at0 += c.algebraic;
        ok = ok && cat.kernel_dim_at_zero == 14 && cat.cokernel_dim_at_zero == 14 && at0 == 14;
        os << cat.kernel_dim_at_zero << '/' << cat.cokernel_dim_at_zero << '/' << at0 << ' ';
    }
    return {ok, "kernel/cokernel/pencil at 0: " + os.str()};
}

Outcome c5() {
    const auto sweep = flat_pencil_sweep(kCube, 9);
    int good = 0, chains = 0;
    double worst = 0;
    for (auto& m : sweep) {
        good += m.ok;
        chains += m.chains_agree;
        worst = std::max(worst, m.max_value_error);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%zu modes, max value error %.3g; chain counts agree on %d modes (diagnostic)",
                  good, sweep.size(), worst, chains);
    return {good == int(sweep.size()) && worst < 1e-8, buf};
}

Outcome c6() {
    IdentitySuiteConfig cfg;
    cfg.N = 8;
    cfg.seed = 7;
    const auto res = run_identity_suite(cfg);
    int good = 0;
    double worst = 0;
    for (auto& r : res) {
        good += r.pass && r.residual < 1e-10;
        worst = std::max(worst, r.residual);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%zu identities, max residual %.3g", good, res.size(), worst);
    return {res.size() == 11 && good == 11, buf};
}

Outcome c7() {
    FdBatteryConfig cfg;  // N=16, ε=1e-4, fixed seed
    const auto res = run_fd_battery(cfg);
    int good = 0;
    double worst = 0, min_ratio = 1e300;
    for (auto& c : res) {
        good += c.pass && c.at_eps.rel_error <= 1e-6 && c.order_ratio >= 3.5;
        worst = std::max(worst, c.at_eps.rel_error);
        min_ratio = std::min(min_ratio, c.order_ratio);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/%zu cases, max rel error %.3g, min halving ratio %.3f", good, res.size(),
                  worst, min_ratio);
    return {res.size() == 10 && good == 10, buf};
}

Outcome c8() {
    const std::string dir = SDROOTS_TEST_DATA;
    const auto with = CrossSectionSpec::hyperbolic(load_hyperbolic_spectrum(dir + "/hyperbolic_codazzi.txt"));
    const auto without = CrossSectionSpec::hyperbolic(load_hyperbolic_spectrum(dir + "/hyperbolic_rhs.txt"));
    const auto a = h2plus_predicate(with), b = h2plus_predicate(without);
    const long ca = assemble_catalog(with, 10).cokernel_dim_at_zero;
    const long cb = assemble_catalog(without, 10).cokernel_dim_at_zero;
    const bool ok = !a.vanishes && b.vanishes && a.cokernel_dim_at_zero == 1 + a.b1 + 2 * a.dim_codazzi &&
                    b.cokernel_dim_at_zero == 1 + b.b1 + 2 * b.dim_codazzi && ca == a.cokernel_dim_at_zero &&
                    cb == b.cokernel_dim_at_zero;
    std::ostringstream os;
    os << "with TT=3: dim " << a.cokernel_dim_at_zero << " (catalog " << ca << "); without: dim "
       << b.cokernel_dim_at_zero << " (catalog " << cb << ")";
    return {ok, os.str()};
}

// Invariant harmonic polynomials of degree j: invariant monomials z1^a z̄1^b z2^c z̄2^d of degree j
// minus those of degree j−2 (multiplication by |z|² is an equivariant injection).
long invariant_monomials(const LensAction& g, int deg) {
    if (deg < 0) return 0;
    long n = 0;
    for (int a = 0; a <= deg; ++a)
        for (int b = 0; a + b <= deg; ++b)
            for (int c = 0; a + b + c <= deg; ++c) {
                const int d = deg - a - b - c;
                const long w = long(g.q1) * (a - b) + long(g.q2) * (c - d);
                n += ((w % g.p) + g.p) % g.p == 0;
            }
    return n;
}

Outcome c9() {
    const LensAction rp3{2, 1, 1};
    bool ok = true;
    for (int j = 0; j <= 9; ++j) {
        const long m = lens_scalar_multiplicity(rp3, j);
        const long expect = j % 2 ? 0 : long(j + 1) * (j + 1);
        ok = ok && m == expect && m == invariant_monomials(rp3, j) - invariant_monomials(rp3, j - 2);
    }
    std::ostringstream os;
    for (auto g : {LensAction{1, 1, 1}, rp3, LensAction{3, 1, 1}, LensAction{5, 1, 2}, LensAction{7, 1, 3}}) {
        const auto cat = assemble_catalog(CrossSectionSpec::sphere(g), 6);
        bool plus = false, minus = false;
        for (auto& r : cat.roots)
            if (r.case_tag == CaseTag::Case1) {
                plus = plus || std::abs(r.value - 1.0) < 1e-12;
                minus = minus || std::abs(r.value + 1.0) < 1e-12;
            }
        ok = ok && (plus && minus) == g.trivial() && (plus || minus) == g.trivial();
        os << g.p << ':' << (plus && minus ? "present" : "absent") << ' ';
    }
    return {ok, "RP3 multiplicities match monomial count; Case1 " + os.str()};
}

Outcome c10() {
    bool ok = true;
    int n = 0;
    for (std::vector<std::string> g : {std::vector<std::string>{"--sphere"}, {"--lens", "2,1,1"}, {"--lens", "3,1,1"},
                                       {"--lens", "5,1,2"}, {"--lens", "7,1,3"}, {"--lens", "8,1,3"}}) {
        std::vector<std::string> args{"gap"};
        args.insert(args.end(), g.begin(), g.end());
        std::ostringstream out, err;
        const int rc = cli::run(args, out, err);
        const std::string s = out.str();
        ok = ok && rc == 0 && s.substr(0, s.find('\n')) == "(0, 2)";
        ++n;
    }
    return {ok, std::to_string(n) + " spherical cross-sections report (0, 2)"};
}

}  // namespace

int main() {
    struct Item {
        int id;
        double budget_s;
        std::function<Outcome()> fn;
    };
    // budget 0: no runtime requirement
    const std::vector<Item> items{{1, 1, c1},  {2, 0, c2},  {3, 5, c3},  {4, 0, c4},   {5, 10, c5},
                                  {6, 5, c6},  {7, 60, c7}, {8, 0, c8},  {9, 0, c9},   {10, 0, c10}};
    int failed = 0;
    for (auto& it : items) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = it.budget_s == 0 || s < it.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] criterion %d (%.3f s%s): %s%s\n", pass ? "PASS" : "FAIL", it.id, s,
                    it.budget_s ? (" / budget " + std::to_string(int(it.budget_s)) + " s").c_str() : "",
                    o.detail.c_str(), in_time ? "" : " [over time budget]");
    }
    std::printf("%d/%zu criteria passed\n", int(items.size()) - failed, items.size());
    return failed ? 1 : 0;
}
