#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sdroots/curvature.hpp"
#include "sdroots/identities.hpp"
#include "sdroots/indicial.hpp"
#include "sdroots/oracle.hpp"
#include "sdroots/report.hpp"
#include "sdroots/spectra.hpp"

namespace sdroots::cli {
namespace {

struct BadArgs : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FileFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

double to_double(const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw BadArgs("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw BadArgs("not a number: '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw BadArgs("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw BadArgs("not an integer: '" + s + "'");
    return v;
}

struct GeometryFlags {
    bool sphere = false;
    std::string lens, torus, hyperbolic;
    int killing_dim = -1;

    void attach(CLI::App* app) {
        app->add_flag("--sphere", sphere, "round S^3 cross-section (κ = +1)");
        app->add_option("--lens", lens, "cyclic quotient S^3/Z_p given as p,q1,q2");
        app->add_option("--torus", torus, "flat torus side lengths L1,L2,L3 (e.g. 2pi,2pi,2pi)");
        app->add_option("--hyperbolic", hyperbolic, "hyperbolic spectrum file");
        app->add_option("--killing-dim", killing_dim, "Killing-field dimension of a lens quotient");
    }

    CrossSectionSpec build() const {
        const bool is_sphere = sphere || !lens.empty();
        const int count = int(is_sphere) + int(!torus.empty()) + int(!hyperbolic.empty());
        if (count != 1) throw BadArgs("choose exactly one of --sphere/--lens, --torus, --hyperbolic");
        if (is_sphere) {
            LensAction a;
            if (!lens.empty()) {
                const auto f = split_commas(lens);
                if (f.size() != 3) throw BadArgs("--lens expects p,q1,q2");
                a = {to_int(f[0]), to_int(f[1]), to_int(f[2])};
            }
            DescentData d;
            if (killing_dim >= 0) d.killing_dim = killing_dim;
            return CrossSectionSpec::sphere(a, d);
        }
        if (killing_dim >= 0) throw BadArgs("--killing-dim applies to spherical cross-sections only");
        if (!torus.empty()) {
            const auto f = split_commas(torus);
            if (f.size() != 3) throw BadArgs("--torus expects L1,L2,L3");
            std::array<double, 3> L{};
            for (int i = 0; i < 3; ++i) L[i] = parse_length_token(f[i]);
            return CrossSectionSpec::torus(L);
        }
        return CrossSectionSpec::hyperbolic(load_hyperbolic_spectrum(hyperbolic));
    }
};

std::optional<Window> parse_window(const std::string& w) {
    if (w.empty()) return std::nullopt;
    const auto f = split_commas(w);
    if (f.size() != 2) throw BadArgs("--window expects a,b");
    const Window win{to_double(f[0]), to_double(f[1])};
    if (!(win.first < win.second)) throw BadArgs("--window needs a < b");
    return win;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FileFailure("cannot open output file '" + path + "'");
    f << text;
    if (!f) throw FileFailure("write failed for '" + path + "'");
}

std::string fmt_window(double a, double b) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << a << ", " << b << ')';
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"indicial roots of the self-dual deformation complex on R × Y^3", "sdroots"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    GeometryFlags geo_roots, geo_gap, geo_ks;
    int jmax = 10;
    std::string window, format, out_path;

    auto* roots = app.add_subcommand("roots", "root catalog as JSON or CSV");
    geo_roots.attach(roots);
    roots->add_option("--jmax", jmax, "largest eigenvalue index")->check(CLI::Range(0, 1000));
    roots->add_option("--window", window, "keep roots with a < Re λ < b");
    roots->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    roots->add_option("--out", out_path, "write to FILE");

    auto* gap = app.add_subcommand("gap", "spectral gap and (spherical) gluing weight window");
    geo_gap.attach(gap);
    gap->add_option("--jmax", jmax)->check(CLI::Range(0, 1000));
    gap->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    gap->add_option("--out", out_path);

    auto* ks = app.add_subcommand("ks", "H2+ predicate for hyperbolic cross-sections");
    geo_ks.attach(ks);
    ks->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    ks->add_option("--out", out_path);

    std::string lens_action = "1,1,1";
    auto* lens = app.add_subcommand("lens", "scalar multiplicities on S^3/Z_p");
    lens->add_option("--lens", lens_action, "p,q1,q2")->required();
    lens->add_option("--jmax", jmax)->check(CLI::Range(0, 60));
    lens->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    lens->add_option("--out", out_path);

    std::string suite;
    int N = 0;
    unsigned long long seed = 0;
    bool seed_given = false;
    double eps = 1e-4;
    auto* verify = app.add_subcommand("verify", "numerical verification suites");
    verify->add_option("suite", suite, "identities | linearization | oracle")
        ->required()
        ->check(CLI::IsMember({"identities", "linearization", "oracle"}));
    verify->add_option("--N", N, "grid points per direction (power of two <= 32)");
    verify->add_option_function<unsigned long long>(
        "--seed", [&](const unsigned long long& s) { seed = s, seed_given = true; }, "RNG seed");
    verify->add_option("--eps", eps, "finite-difference step")->check(CLI::Range(1e-5, 1e-3));
    verify->add_option("--jmax", jmax)->check(CLI::Range(0, 200));
    verify->add_option("--out", out_path);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    try {
        if (roots->parsed()) {
            const auto cs = geo_roots.build();
            const auto cat = assemble_catalog(cs, jmax);
            const auto win = parse_window(window);
            emit(format == "csv" ? catalog_to_csv(cat, win) : catalog_to_json(cat, win), out_path, out);
            return kOk;
        }
        if (gap->parsed()) {
            const auto cs = geo_gap.build();
            const auto cat = assemble_catalog(cs, jmax);
            const auto g = spectral_gap(cat);
            std::optional<WeightWindow> w;
            if (std::holds_alternative<SphereGeometry>(cs.geometry)) w = gluing_window(cat);
            if (format == "json") {
                emit(gap_json(cs, g, w), out_path, out);
            } else {
                std::ostringstream os;
                os.precision(17);
                if (w) {
                    os << fmt_window(w->lower, w->upper) << '\n';
                    for (auto& c : w->caveats) os << "caveat: " << c << '\n';
                } else {
                    os << "spectral gap " << g.gap << " (above conformal Killing roots: " << g.gap_above_exceptional
                       << "); weight window is defined for spherical cross-sections only\n";
                }
                emit(os.str(), out_path, out);
            }
            return kOk;
        }
        if (ks->parsed()) {
            const auto cs = geo_ks.build();
            if (!std::holds_alternative<HyperbolicGeometry>(cs.geometry))
                throw BadArgs("ks needs --hyperbolic FILE");
            const auto r = h2plus_predicate(cs);
            if (format == "json") {
                emit(h2plus_json(cs, r), out_path, out);
            } else {
                std::ostringstream os;
                if (r.vanishes)
                    os << "H2+ = 0";
                else
                    os << "H2+ nonzero";
                os << "; cokernel dim at 0 = 1+b1+2·dimC = 1+" << r.b1 << "+2·" << r.dim_codazzi << " = "
                   << r.cokernel_dim_at_zero << '\n';
                emit(os.str(), out_path, out);
            }
            return kOk;
        }
        if (lens->parsed()) {
            const auto f = split_commas(lens_action);
            if (f.size() != 3) throw BadArgs("--lens expects p,q1,q2");
            const LensAction a{to_int(f[0]), to_int(f[1]), to_int(f[2])};
            const auto cs = CrossSectionSpec::sphere(a);  // validates the action
            std::vector<LensRow> rows;
            for (int j = 0; j <= jmax; ++j) {
                LensRow r;
                r.j = j;
                r.multiplicity = lens_scalar_multiplicity(a, j);
                if (j <= 14) {
                    const auto rep = lens_projector_report(a, j);
                    r.harmonic_dim = rep.harmonic_dim;
                    r.projector_trace = rep.projector_trace;
                    r.idempotency_residual = rep.idempotency_residual;
                }
                rows.push_back(r);
            }
            const auto cat = assemble_catalog(cs, std::max(jmax, 2));
            bool case1 = false;
            for (auto& r : cat.roots) case1 = case1 || r.case_tag == CaseTag::Case1;
            if (format == "json") {
                emit(lens_json(a, rows, case1), out_path, out);
            } else {
                std::ostringstream os;
                os << "j multiplicity\n";
                for (auto& r : rows) os << r.j << ' ' << r.multiplicity << '\n';
                os << "case1 roots ±1: " << (case1 ? "present" : "absent") << '\n';
                emit(os.str(), out_path, out);
            }
            return kOk;
        }
        if (verify->parsed()) {
            bool pass = false;
            std::string report;
            if (suite == "identities") {
                IdentitySuiteConfig cfg;
                if (N) cfg.N = N;
                if (seed_given) cfg.seed = seed;
                const auto res = run_identity_suite(cfg);
                report = identity_report_json(res, cfg.N, cfg.seed);
                pass = true;
                for (auto& r : res)
                    if (!r.pass) {
                        pass = false;
                        err << "FAIL " << r.name << " residual " << format_double(r.residual) << '\n';
                    }
            } else if (suite == "linearization") {
                FdBatteryConfig cfg;
                if (N) {
                    if (N < 8 || N > 32 || (N & (N - 1))) throw BadArgs("--N must be a power of two in [8, 32]");
                    cfg.N = N;
                }
                if (seed_given) cfg.seed = seed;
                cfg.eps = eps;
                const auto res = run_fd_battery(cfg);
                report = fd_report_json(res, cfg);
                pass = true;
                for (auto& c : res)
                    if (!c.pass) {
                        pass = false;
                        err << "FAIL " << c.name << " rel_error " << format_double(c.at_eps.rel_error) << " order_ratio "
                            << format_double(c.order_ratio) << '\n';
                    }
            } else {
                std::vector<OracleCheck> checks;
                for (const auto& cs : {CrossSectionSpec::sphere(), CrossSectionSpec::torus({6.283185307179586,
                                                                                           6.283185307179586,
                                                                                           6.283185307179586})}) {
                    auto c = verify_catalog_with_oracle(assemble_catalog(cs, jmax));
                    for (auto& x : c) x.label = cs.describe() + " " + x.label;
                    checks.insert(checks.end(), c.begin(), c.end());
                }
                const auto pencil = flat_pencil_sweep({6.283185307179586, 6.283185307179586, 6.283185307179586}, 9);
                report = oracle_report_json(checks, pencil, jmax);
                pass = true;
                for (auto& c : checks)
                    if (!c.cmp.matched) {
                        pass = false;
                        err << "FAIL " << c.label << " mismatch " << format_double(c.cmp.max_mismatch) << '\n';
                    }
                for (auto& m : pencil)
                    if (!m.ok) {
                        pass = false;
                        err << "FAIL pencil mode (" << m.xi[0] << ',' << m.xi[1] << ',' << m.xi[2] << ")\n";
                    }
            }
            emit(report, out_path, out);
            return pass ? kOk : kVerifyFailed;
        }
    } catch (const BadArgs& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const FileFailure& e) {
        err << "error: " << e.what() << '\n';
        return kFileError;
    } catch (const SpectrumFileError& e) {
        err << "error: " << e.what() << '\n';
        return kFileError;
    } catch (const std::exception& e) {
        // invalid specs (lens gcd, lattice lengths, grid sizes, ...)
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
    return kBadArguments;
}

}  // namespace sdroots::cli
