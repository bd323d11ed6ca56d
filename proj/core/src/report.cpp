#include "sdroots/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace sdroots {
namespace {

using nlohmann::json;

// Serializer with fixed 17-digit floats; objects keep insertion order through ordered_json.
void emit(std::ostringstream& os, const nlohmann::ordered_json& j, int indent, int depth) {
    auto pad = [&](int d) { os << '\n' << std::string(size_t(indent * d), ' '); };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                pad(depth + 1);
                os << nlohmann::ordered_json(it.key()).dump() << ": ";
                emit(os, it.value(), indent, depth + 1);
            }
            pad(depth);
            os << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (auto& v : j) {
                if (!first) os << ',';
                first = false;
                pad(depth + 1);
                emit(os, v, indent, depth + 1);
            }
            pad(depth);
            os << ']';
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

std::string dump17(const nlohmann::ordered_json& j) {
    std::ostringstream os;
    emit(os, j, 2, 0);
    os << '\n';
    return os.str();
}

nlohmann::ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

nlohmann::ordered_json record_json(const RootRecord& r) {
    nlohmann::ordered_json o;
    o["re"] = r.re;
    o["im"] = r.im;
    o["case"] = r.case_tag;
    o["origin_kind"] = r.origin_kind;
    o["j"] = r.j;
    o["eigenvalue"] = r.eigenvalue;
    o["side"] = r.side;
    o["solution_form"] = r.solution_form;
    o["jordan"] = r.jordan;
    o["conformal_killing"] = r.conformal_killing;
    o["multiplicity"] = r.multiplicity;
    o["descent_candidate"] = r.descent_candidate;
    return o;
}

const char* kCsvHeader =
    "re,im,case,origin_kind,j,eigenvalue,side,solution_form,jordan,conformal_killing,multiplicity,descent_candidate";

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ReportError("bad number '" + s + "'");
    }
    if (pos != s.size()) throw ReportError("bad number '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ReportError("bad integer '" + s + "'");
    }
    if (pos != s.size()) throw ReportError("bad integer '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ReportError("bad boolean '" + s + "'");
}

nlohmann::ordered_json describe_json(const CrossSectionSpec& cs) {
    nlohmann::ordered_json o;
    o["description"] = cs.describe();
    o["kappa"] = cs.kappa;
    return o;
}

}  // namespace

bool RootRecord::operator<(const RootRecord& o) const {
    return std::tie(re, im, case_tag, origin_kind, j, eigenvalue, side, solution_form, jordan, conformal_killing,
                    multiplicity, descent_candidate) <
           std::tie(o.re, o.im, o.case_tag, o.origin_kind, o.j, o.eigenvalue, o.side, o.solution_form, o.jordan,
                    o.conformal_killing, o.multiplicity, o.descent_candidate);
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return "0";  // folds −0 so output is stable
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RootRecord to_record(const IndicialRoot& r) {
    RootRecord o;
    o.re = r.value.real() == 0.0 ? 0.0 : r.value.real();
    o.im = r.value.imag() == 0.0 ? 0.0 : r.value.imag();
    o.case_tag = int(r.case_tag);
    o.origin_kind = to_string(r.origin.kind);
    o.j = r.origin.j;
    o.eigenvalue = r.origin.eigenvalue;
    o.side = to_string(r.side);
    o.solution_form = to_string(r.solution_form);
    o.jordan = r.jordan;
    o.conformal_killing = r.conformal_killing;
    o.multiplicity = r.multiplicity;
    o.descent_candidate = r.descent_candidate;
    return o;
}

std::vector<RootRecord> catalog_records(const RootCatalog& cat, const std::optional<Window>& window) {
    std::vector<RootRecord> out;
    for (auto& r : cat.roots) {
        if (window && !(r.value.real() > window->first && r.value.real() < window->second)) continue;
        out.push_back(to_record(r));
    }
    return out;
}

std::string catalog_to_json(const RootCatalog& cat, const std::optional<Window>& window) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["cross_section"] = describe_json(cat.cross_section);
    j["j_max"] = cat.j_max;
    j["kernel_dim_at_zero"] = cat.kernel_dim_at_zero;
    j["cokernel_dim_at_zero"] = cat.cokernel_dim_at_zero;
    j["complete_below"] = num(cat.complete_below);
    j["window"] = window ? nlohmann::ordered_json::array({num(window->first), num(window->second)})
                         : nlohmann::ordered_json(nullptr);
    j["notes"] = cat.notes;
    auto rows = nlohmann::ordered_json::array();
    for (auto& r : catalog_records(cat, window)) rows.push_back(record_json(r));
    j["roots"] = std::move(rows);
    return dump17(j);
}

std::string catalog_to_csv(const RootCatalog& cat, const std::optional<Window>& window) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (auto& r : catalog_records(cat, window)) {
        os << format_double(r.re) << ',' << format_double(r.im) << ',' << r.case_tag << ',' << r.origin_kind << ','
           << r.j << ',' << format_double(r.eigenvalue) << ',' << r.side << ',' << r.solution_form << ','
           << (r.jordan ? "true" : "false") << ',' << (r.conformal_killing ? "true" : "false") << ','
           << r.multiplicity << ',' << (r.descent_candidate ? "true" : "false") << '\n';
    }
    return os.str();
}

std::vector<RootRecord> records_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ReportError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kSchemaVersion)
        throw ReportError("missing or unsupported schema version");
    if (!j.contains("roots") || !j["roots"].is_array()) throw ReportError("missing roots array");
    std::vector<RootRecord> out;
    try {
        for (auto& o : j["roots"]) {
            RootRecord r;
            r.re = o.at("re").get<double>();
            r.im = o.at("im").get<double>();
            r.case_tag = o.at("case").get<int>();
            r.origin_kind = o.at("origin_kind").get<std::string>();
            r.j = o.at("j").get<int>();
            r.eigenvalue = o.at("eigenvalue").get<double>();
            r.side = o.at("side").get<std::string>();
            r.solution_form = o.at("solution_form").get<std::string>();
            r.jordan = o.at("jordan").get<bool>();
            r.conformal_killing = o.at("conformal_killing").get<bool>();
            r.multiplicity = o.at("multiplicity").get<long>();
            r.descent_candidate = o.value("descent_candidate", false);
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ReportError(std::string("malformed root record: ") + e.what());
    }
    return out;
}

std::vector<RootRecord> records_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw ReportError("unexpected CSV header");
    std::vector<RootRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) throw ReportError("CSV row has wrong field count");
        RootRecord r;
        r.re = parse_double(f[0]);
        r.im = parse_double(f[1]);
        r.case_tag = int(parse_long(f[2]));
        r.origin_kind = f[3];
        r.j = int(parse_long(f[4]));
        r.eigenvalue = parse_double(f[5]);
        r.side = f[6];
        r.solution_form = f[7];
        r.jordan = parse_bool(f[8]);
        r.conformal_killing = parse_bool(f[9]);
        r.multiplicity = parse_long(f[10]);
        r.descent_candidate = parse_bool(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string identity_report_json(const std::vector<IdentityResult>& results, int N, unsigned long long seed) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = "identities";
    j["N"] = N;
    j["seed"] = seed;
    bool all = true;
    auto rows = nlohmann::ordered_json::array();
    for (auto& r : results) {
        nlohmann::ordered_json o;
        o["identity_name"] = r.name;
        o["paper_ref"] = r.formula;
        o["residual"] = r.residual;
        o["tolerance"] = r.tolerance;
        o["pass"] = r.pass;
        all = all && r.pass;
        rows.push_back(std::move(o));
    }
    j["pass"] = all;
    j["results"] = std::move(rows);
    return dump17(j);
}

std::string fd_report_json(const std::vector<FdCase>& cases, const FdBatteryConfig& cfg) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = "linearization";
    j["N"] = cfg.N;
    j["eps"] = cfg.eps;
    j["seed"] = cfg.seed;
    j["tolerance"] = cfg.tolerance;
    j["min_order_ratio"] = cfg.min_ratio;
    bool all = true;
    auto rows = nlohmann::ordered_json::array();
    for (auto& c : cases) {
        nlohmann::ordered_json o;
        o["case"] = c.name;
        o["rel_error"] = c.at_eps.rel_error;
        o["rel_error_half_eps"] = c.at_half_eps.rel_error;
        o["order_ratio"] = c.order_ratio;
        o["d_norm"] = c.at_eps.d_norm;
        o["pass"] = c.pass;
        all = all && c.pass;
        rows.push_back(std::move(o));
    }
    j["pass"] = all;
    j["results"] = std::move(rows);
    return dump17(j);
}

std::string oracle_report_json(const std::vector<OracleCheck>& checks, const std::vector<PencilModeCheck>& pencil,
                               int j_max) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["suite"] = "oracle";
    j["j_max"] = j_max;
    bool all = true;
    auto rows = nlohmann::ordered_json::array();
    for (auto& c : checks) {
        nlohmann::ordered_json o;
        o["label"] = c.label;
        o["expected"] = c.cmp.expected.size();
        o["max_mismatch"] = c.cmp.max_mismatch;
        o["matched"] = c.cmp.matched;
        all = all && c.cmp.matched;
        rows.push_back(std::move(o));
    }
    auto modes = nlohmann::ordered_json::array();
    for (auto& m : pencil) {
        nlohmann::ordered_json o;
        o["xi"] = m.xi;
        o["eigenvalue"] = m.eigenvalue;
        o["catalog_dim"] = m.catalog_dim;
        o["pencil_dim"] = m.pencil_dim;
        o["max_value_error"] = m.max_value_error;
        o["jordan_agrees"] = m.jordan_agrees;
        o["chains_agree"] = m.chains_agree;
        o["ok"] = m.ok;
        all = all && m.ok;
        modes.push_back(std::move(o));
    }
    j["pass"] = all;
    j["catalog_checks"] = std::move(rows);
    j["flat_pencil"] = std::move(modes);
    return dump17(j);
}

std::string gap_json(const CrossSectionSpec& cs, const GapReport& gap, const std::optional<WeightWindow>& window) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["cross_section"] = describe_json(cs);
    j["spectral_gap"] = num(gap.gap);
    j["gap_above_exceptional"] = num(gap.gap_above_exceptional);
    // The weight window is only defined for spherical cross-sections.
    if (window) {
        j["window"] = nlohmann::ordered_json::array({num(window->lower), num(window->upper)});
        j["caveats"] = window->caveats;
    } else {
        j["window"] = nullptr;
        j["caveats"] = nlohmann::ordered_json::array();
    }
    return dump17(j);
}

std::string h2plus_json(const CrossSectionSpec& cs, const H2PlusReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["cross_section"] = describe_json(cs);
    j["h2plus_vanishes"] = r.vanishes;
    j["b1"] = r.b1;
    j["dim_codazzi"] = r.dim_codazzi;
    j["rational_homology_sphere"] = r.rational_homology_sphere;
    j["cokernel_dim_at_zero"] = r.cokernel_dim_at_zero;
    j["cokernel_dim_formula"] = "1 + b1 + 2*dim_codazzi";
    return dump17(j);
}

std::string lens_json(const LensAction& a, const std::vector<LensRow>& rows, bool case1_present) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["action"] = {{"p", a.p}, {"q1", a.q1}, {"q2", a.q2}};
    auto arr = nlohmann::ordered_json::array();
    for (auto& r : rows) {
        nlohmann::ordered_json o;
        o["j"] = r.j;
        o["multiplicity"] = r.multiplicity;
        o["harmonic_dim"] = r.harmonic_dim;
        o["projector_trace"] = r.projector_trace;
        o["idempotency_residual"] = r.idempotency_residual;
        arr.push_back(std::move(o));
    }
    j["scalar_multiplicities"] = std::move(arr);
    j["case1_roots_present"] = case1_present;
    return dump17(j);
}

}  // namespace sdroots
