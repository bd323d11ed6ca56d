#include "sdroots/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace sdroots {

const char* to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::ScalarHodge: return "scalar";
        case OperatorKind::CoclosedOneFormHodge: return "oneform";
        case OperatorKind::DivFreeTTRough: return "tt";
    }
    return "?";
}

OperatorKind operator_kind_from_string(const std::string& s) {
    if (s == "scalar") return OperatorKind::ScalarHodge;
    if (s == "oneform") return OperatorKind::CoclosedOneFormHodge;
    if (s == "tt") return OperatorKind::DivFreeTTRough;
    throw SpectrumError("unknown operator kind '" + s + "'");
}

CrossSectionSpec CrossSectionSpec::sphere(LensAction action, DescentData descent) {
    if (action.p < 1) throw SpectrumError("lens order p must be >= 1");
    if (action.p > 1) {
        if (std::gcd(action.q1, action.p) != 1 || std::gcd(action.q2, action.p) != 1)
            throw SpectrumError("lens action is not free: q1, q2 must be coprime to p");
    }
    if (descent.killing_dim && (*descent.killing_dim < 0 || *descent.killing_dim > 6))
        throw SpectrumError("Killing dimension must lie in [0, 6]");
    return CrossSectionSpec{+1, SphereGeometry{action, std::move(descent)}};
}

CrossSectionSpec CrossSectionSpec::torus(std::array<double, 3> lengths) {
    for (double L : lengths)
        if (!(L > 0.0) || !std::isfinite(L)) throw SpectrumError("torus lengths must be positive");
    return CrossSectionSpec{0, TorusGeometry{lengths}};
}

CrossSectionSpec CrossSectionSpec::hyperbolic(HyperbolicGeometry geom) {
    return CrossSectionSpec{-1, std::move(geom)};
}

std::string CrossSectionSpec::describe() const {
    std::ostringstream os;
    if (auto* s = std::get_if<SphereGeometry>(&geometry)) {
        if (s->action.trivial())
            os << "S^3";
        else
            os << "S^3/Z_" << s->action.p << " (q1=" << s->action.q1 << ", q2=" << s->action.q2 << ")";
    } else if (auto* t = std::get_if<TorusGeometry>(&geometry)) {
        os.precision(17);
        os << "T^3(" << t->lengths[0] << ", " << t->lengths[1] << ", " << t->lengths[2] << ")";
    } else if (auto* h = std::get_if<HyperbolicGeometry>(&geometry)) {
        os << "hyperbolic(" << (h->source.empty() ? "inline" : h->source) << ")";
    }
    return os.str();
}

// ---- round sphere -----------------------------------------------------------

double sphere_scalar_eigenvalue(int j) {
    if (j < 0) throw SpectrumError("scalar degree must be >= 0");
    return double(j) * (j + 2);
}
double sphere_coclosed_eigenvalue(int j) {
    if (j < 1) throw SpectrumError("co-closed 1-form degree must be >= 1 (b1(S^3) = 0)");
    return double(j + 1) * (j + 1);
}
double sphere_tt_eigenvalue(int j) {
    if (j < 2) throw SpectrumError("TT degree must be >= 2 (rough Laplacian bound 6)");
    return double(j) * j + 2.0 * j - 2.0;
}

long sphere_scalar_multiplicity(int j) { return long(j + 1) * (j + 1); }
long sphere_coclosed_multiplicity(int j) { return 2L * j * (j + 2); }
long sphere_tt_multiplicity(int j) { return 2L * (j - 1) * (j + 3); }

int sphere_min_degree(OperatorKind k) {
    switch (k) {
        case OperatorKind::ScalarHodge: return 0;
        case OperatorKind::CoclosedOneFormHodge: return 1;
        case OperatorKind::DivFreeTTRough: return 2;
    }
    return 0;
}

namespace {

std::optional<long> lookup(const std::vector<std::pair<int, long>>& table, int j) {
    for (auto& [jj, m] : table)
        if (jj == j) return m;
    return std::nullopt;
}

}  // namespace

std::vector<SpectrumEntry> sphere_spectrum(const SphereGeometry& geom, OperatorKind kind, int j_max) {
    if (j_max < 0) throw SpectrumError("j_max must be non-negative");
    std::vector<SpectrumEntry> out;
    for (int j = sphere_min_degree(kind); j <= j_max; ++j) {
        SpectrumEntry e{kind, j, 0.0, 0};
        switch (kind) {
            case OperatorKind::ScalarHodge:
                e.eigenvalue = sphere_scalar_eigenvalue(j);
                e.multiplicity = geom.action.trivial() ? sphere_scalar_multiplicity(j)
                                                       : lens_scalar_multiplicity(geom.action, j);
                break;
            case OperatorKind::CoclosedOneFormHodge:
                e.eigenvalue = sphere_coclosed_eigenvalue(j);
                e.multiplicity = sphere_coclosed_multiplicity(j);
                if (!geom.action.trivial())
                    if (auto m = lookup(geom.descent.oneform_multiplicity, j)) e.multiplicity = *m;
                break;
            case OperatorKind::DivFreeTTRough:
                e.eigenvalue = sphere_tt_eigenvalue(j);
                e.multiplicity = sphere_tt_multiplicity(j);
                if (!geom.action.trivial())
                    if (auto m = lookup(geom.descent.tt_multiplicity, j)) e.multiplicity = *m;
                break;
        }
        if (e.multiplicity > 0) out.push_back(e);
    }
    return out;
}

// ---- flat torus -------------------------------------------------------------

int torus_mode_multiplicity(OperatorKind kind, bool zero_mode) {
    switch (kind) {
        case OperatorKind::ScalarHodge: return 1;
        case OperatorKind::CoclosedOneFormHodge: return zero_mode ? 3 : 2;
        case OperatorKind::DivFreeTTRough: return zero_mode ? 5 : 2;
    }
    return 0;
}

namespace {

std::vector<SpectrumEntry> torus_enumerate(const std::array<double, 3>& L, OperatorKind kind,
                                           double cutoff) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::array<int, 3> kmax{};
    for (int i = 0; i < 3; ++i) kmax[i] = int(std::floor(L[i] * std::sqrt(cutoff) / two_pi)) + 1;

    std::vector<std::pair<double, bool>> vals;  // (eigenvalue, is zero mode)
    for (int a = -kmax[0]; a <= kmax[0]; ++a)
        for (int b = -kmax[1]; b <= kmax[1]; ++b)
            for (int c = -kmax[2]; c <= kmax[2]; ++c) {
                const double k0 = two_pi * a / L[0], k1 = two_pi * b / L[1], k2 = two_pi * c / L[2];
                const double v = k0 * k0 + k1 * k1 + k2 * k2;
                if (v <= cutoff * (1.0 + 1e-12)) vals.emplace_back(v, a == 0 && b == 0 && c == 0);
            }
    std::sort(vals.begin(), vals.end());

    std::vector<SpectrumEntry> out;
    for (auto& [v, zero] : vals) {
        const long m = torus_mode_multiplicity(kind, zero);
        if (!out.empty() && std::abs(v - out.back().eigenvalue) <= 1e-9 * std::max(1.0, v)) {
            out.back().multiplicity += m;
        } else {
            out.push_back({kind, int(out.size()), v, m});
        }
    }
    return out;
}

}  // namespace

std::vector<SpectrumEntry> torus_spectrum(const std::array<double, 3>& lengths, OperatorKind kind,
                                          double cutoff) {
    if (!(cutoff >= 0.0)) throw SpectrumError("cutoff must be non-negative");
    return torus_enumerate(lengths, kind, cutoff);
}

std::vector<SpectrumEntry> torus_spectrum_by_index(const std::array<double, 3>& lengths,
                                                   OperatorKind kind, int j_max) {
    if (j_max < 0) throw SpectrumError("j_max must be non-negative");
    const double lmax = *std::max_element(lengths.begin(), lengths.end());
    double cutoff = std::pow(2.0 * std::numbers::pi / lmax, 2) * (j_max + 1);
    for (;;) {
        auto all = torus_enumerate(lengths, kind, cutoff);
        if (int(all.size()) > j_max + 1) {
            // the last entry may be incomplete only if it sits at the cutoff; drop extras
            all.resize(j_max + 1);
            return all;
        }
        cutoff *= 2.0;
    }
}

// ---- hyperbolic (user supplied) ---------------------------------------------

HyperbolicGeometry parse_hyperbolic_spectrum(const std::string& text, const std::string& source) {
    HyperbolicGeometry g;
    g.source = source;
    bool have_b1 = false, have_codazzi = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw SpectrumFileError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        std::string extra;
        if (head == "b1" || head == "codazzi") {
            long n;
            if (!(ls >> n) || n < 0 || (ls >> extra)) fail("expected '" + head + " <non-negative int>'");
            if (head == "b1") g.b1 = int(n), have_b1 = true;
            else g.dim_codazzi = int(n), have_codazzi = true;
            continue;
        }
        OperatorKind kind = OperatorKind::ScalarHodge;
        try {
            kind = operator_kind_from_string(head);
        } catch (const SpectrumError&) {
            fail("unknown record '" + head + "'");
        }
        SpectrumEntry e{kind, 0, 0.0, 0};
        if (!(ls >> e.j >> e.eigenvalue >> e.multiplicity) || (ls >> extra))
            fail("expected '<kind> <j> <eigenvalue> <multiplicity>'");
        if (!std::isfinite(e.eigenvalue)) fail("eigenvalue is not finite");
        if (e.multiplicity <= 0) fail("multiplicity must be positive");
        if (e.j < 0) fail("index j must be non-negative");
        if (e.eigenvalue < -1e-12) fail("eigenvalue must be non-negative");
        if (kind == OperatorKind::DivFreeTTRough && e.eigenvalue < 3.0 - 1e-12)
            fail("TT eigenvalue below 3 is impossible on a hyperbolic 3-manifold");
        g.entries.push_back(e);
    }
    if (!have_b1) throw SpectrumFileError(source + ": missing 'b1' record");
    if (!have_codazzi) throw SpectrumFileError(source + ": missing 'codazzi' record");

    std::map<OperatorKind, std::vector<SpectrumEntry>> by_kind;
    for (auto& e : g.entries) by_kind[e.kind].push_back(e);
    for (auto& [kind, list] : by_kind) {
        std::sort(list.begin(), list.end(), [](auto& a, auto& b) { return a.j < b.j; });
        for (size_t i = 1; i < list.size(); ++i) {
            if (list[i].j == list[i - 1].j)
                throw SpectrumFileError(source + ": duplicate index j=" + std::to_string(list[i].j) +
                                        " for " + to_string(kind));
            if (list[i].eigenvalue < list[i - 1].eigenvalue)
                throw SpectrumFileError(source + ": eigenvalues of " + std::string(to_string(kind)) +
                                        " are not sorted by j");
        }
    }
    long tt_at_3 = 0;
    for (auto& e : g.entries)
        if (e.kind == OperatorKind::DivFreeTTRough && std::abs(e.eigenvalue - 3.0) <= 1e-12)
            tt_at_3 += e.multiplicity;
    if (tt_at_3 != g.dim_codazzi)
        throw SpectrumFileError(source + ": codazzi=" + std::to_string(g.dim_codazzi) +
                                " disagrees with TT multiplicity at eigenvalue 3 (" +
                                std::to_string(tt_at_3) + ")");
    for (auto& e : g.entries)
        if (e.kind == OperatorKind::CoclosedOneFormHodge && std::abs(e.eigenvalue) <= 1e-12 &&
            e.multiplicity != g.b1)
            throw SpectrumFileError(source + ": harmonic 1-form multiplicity disagrees with b1");
    for (auto& e : g.entries)
        if (e.kind == OperatorKind::ScalarHodge && std::abs(e.eigenvalue) <= 1e-12 && e.multiplicity != 1)
            throw SpectrumFileError(source + ": constants must have multiplicity 1 (connected Y)");
    return g;
}

HyperbolicGeometry load_hyperbolic_spectrum(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SpectrumFileError(path + ": cannot open spectrum file");
    std::stringstream ss;
    ss << f.rdbuf();
    if (f.bad()) throw SpectrumFileError(path + ": read error");
    return parse_hyperbolic_spectrum(ss.str(), path);
}

std::vector<SpectrumEntry> hyperbolic_spectrum(const HyperbolicGeometry& geom, OperatorKind kind,
                                               int j_max) {
    std::vector<SpectrumEntry> out;
    for (auto& e : geom.entries)
        if (e.kind == kind && e.j <= j_max) out.push_back(e);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.j < b.j; });
    // Harmonic forms are implied by b1 even if not listed.
    if (kind == OperatorKind::CoclosedOneFormHodge && geom.b1 > 0 &&
        std::none_of(out.begin(), out.end(), [](auto& e) { return std::abs(e.eigenvalue) <= 1e-12; }))
        out.insert(out.begin(), SpectrumEntry{kind, 0, 0.0, geom.b1});
    if (kind == OperatorKind::ScalarHodge &&
        std::none_of(out.begin(), out.end(), [](auto& e) { return std::abs(e.eigenvalue) <= 1e-12; }))
        out.insert(out.begin(), SpectrumEntry{kind, 0, 0.0, 1});
    return out;
}

// ---- misc -------------------------------------------------------------------

double parse_length_token(const std::string& raw) {
    std::string tok;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) tok += c;
    if (tok.empty()) throw SpectrumError("empty length");
    double factor = 1.0;
    std::string num = tok;
    if (tok.size() >= 2 && tok.compare(tok.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        num = tok.substr(0, tok.size() - 2);
        if (!num.empty() && num.back() == '*') num.pop_back();
        if (num.empty()) num = "1";
    }
    size_t used = 0;
    double v;
    try {
        v = std::stod(num, &used);
    } catch (const std::exception&) {
        throw SpectrumError("cannot parse length '" + raw + "'");
    }
    if (used != num.size()) throw SpectrumError("cannot parse length '" + raw + "'");
    return v * factor;
}

}  // namespace sdroots
