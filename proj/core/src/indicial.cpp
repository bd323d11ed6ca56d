#include "sdroots/indicial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace sdroots {

const char* to_string(Side s) {
    switch (s) {
        case Side::Kernel: return "kernel";
        case Side::Cokernel: return "cokernel";
        case Side::Both: return "both";
    }
    return "?";
}

const char* to_string(SolutionForm f) {
    switch (f) {
        case SolutionForm::ZOnly: return "Z_only";
        case SolutionForm::OmegaOnly: return "omega_only";
        case SolutionForm::Mixed: return "mixed";
    }
    return "?";
}

Side side_from_string(const std::string& s) {
    if (s == "kernel") return Side::Kernel;
    if (s == "cokernel") return Side::Cokernel;
    if (s == "both") return Side::Both;
    throw IndicialError("unknown side '" + s + "'");
}

SolutionForm solution_form_from_string(const std::string& s) {
    if (s == "Z_only") return SolutionForm::ZOnly;
    if (s == "omega_only") return SolutionForm::OmegaOnly;
    if (s == "mixed") return SolutionForm::Mixed;
    throw IndicialError("unknown solution form '" + s + "'");
}

namespace {

constexpr double kZeroTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

void check_kappa(int kappa) {
    if (kappa < -1 || kappa > 1) throw IndicialError("kappa must be -1, 0 or +1");
}

}  // namespace

// ---- closed forms -----------------------------------------------------------

std::vector<RawRoot> type3_roots(double lambda, int kappa) {
    check_kappa(kappa);
    const double bound = kappa == 1 ? 6.0 : kappa == -1 ? 3.0 : 0.0;
    if (!(lambda >= bound - 1e-12)) {
        std::ostringstream os;
        os << "TT eigenvalue " << lambda << " violates the lower bound " << bound << " for kappa=" << kappa;
        throw IndicialError(os.str());
    }
    const double beta = std::sqrt(std::max(0.0, lambda + 3.0 * kappa));
    if (kappa == 1) {
        // helicity + gives β±1, helicity − gives −β±1
        return {{beta + 1.0, false, true}, {beta - 1.0, false, true},
                {-beta + 1.0, false, true}, {-beta - 1.0, false, true}};
    }
    if (kappa == 0) {
        if (beta <= kZeroTol) return {{0.0, true, false}};
        return {{beta, true, true}, {-beta, true, true}};
    }
    const cplx I(0.0, 1.0);
    if (beta <= kZeroTol) return {{I, false, false}, {-I, false, false}};
    return {{beta + I, false, true}, {beta - I, false, true}, {-beta + I, false, true}, {-beta - I, false, true}};
}

std::vector<RawRoot> type2_roots(double nu, int kappa) {
    check_kappa(kappa);
    if (nu < -1e-12) throw IndicialError("co-closed eigenvalue must be non-negative");
    if (nu <= kZeroTol) return {{0.0, false, false}};
    const double r = std::sqrt(nu);
    return {{r, false, true}, {-r, false, true}};
}

std::vector<RawRoot> mixed_a_roots(double mu, int kappa) {
    check_kappa(kappa);
    if (mu < -1e-12) throw IndicialError("scalar eigenvalue must be non-negative");
    const double k = kappa;
    const cplx d = std::sqrt(cplx(k * k - mu * k / 3.0));
    const cplx ap = std::sqrt(cplx(mu - 2.0 * k) + 2.0 * d);
    const cplx am = std::sqrt(cplx(mu - 2.0 * k) - 2.0 * d);
    if (std::abs(d) <= 1e-12) return {{ap, true, false}, {-ap, true, false}};
    return {{ap, false, false}, {-ap, false, false}, {am, false, false}, {-am, false, false}};
}

std::vector<RawRoot> mixed_b_roots(double nu, int kappa) {
    check_kappa(kappa);
    if (nu < -1e-12) throw IndicialError("co-closed eigenvalue must be non-negative");
    const cplx r = std::sqrt(cplx(nu - 4.0 * kappa));
    if (std::abs(r) <= 1e-12) return {{0.0, true, false}};
    return {{r, false, false}, {-r, false, false}};
}

cplx case4_closed_form(int j, int sign) {
    const double re = double(j) * j + 2.0 * j - 2.0;
    const double im = (2.0 / 3.0) * std::sqrt(3.0 * (j - 1.0) * (j + 3.0));
    return std::sqrt(cplx(re, sign >= 0 ? im : -im));
}

// ---- exclusions -------------------------------------------------------------

ExclusionResult apply_exclusions(int kappa, const RootOrigin& origin, Branch branch,
                                 const std::vector<RawRoot>& roots, long multiplicity) {
    ExclusionResult res;
    auto ck_root = [&](cplx v, CaseTag tag) {
        IndicialRoot r;
        r.value = v;
        r.case_tag = tag;
        r.origin = origin;
        r.solution_form = SolutionForm::OmegaOnly;
        r.conformal_killing = true;
        r.jordan = false;
        r.multiplicity = multiplicity;
        return r;
    };

    const bool scalar = origin.kind == OperatorKind::ScalarHodge;
    const bool oneform = origin.kind == OperatorKind::CoclosedOneFormHodge;
    // Killing eigenvalue of co-closed forms: ν = 4 on S^3/Γ, ν = 0 (parallel) on T^3.
    const bool killing_nu = oneform && ((kappa == 1 && near(origin.eigenvalue, 4.0)) ||
                                        (kappa == 0 && std::abs(origin.eigenvalue) <= kZeroTol));

    if (scalar && branch == Branch::MixedA && std::abs(origin.eigenvalue) <= kZeroTol) {
        // only ω̃ = c·dt survives; the rest is not in the image of D*
        res.kept.push_back(ck_root(0.0, CaseTag::Case0));
        return res;
    }
    if (scalar && branch == Branch::MixedA && kappa == 1 && near(origin.eigenvalue, 3.0)) {
        res.kept.push_back(ck_root(1.0, CaseTag::Case1));
        res.kept.push_back(ck_root(-1.0, CaseTag::Case1));
        return res;
    }
    if (killing_nu && branch == Branch::MixedB) {
        res.kept.push_back(ck_root(0.0, CaseTag::Case0));
        return res;
    }
    if (killing_nu && branch == Branch::Type2) {
        res.removed_all = true;  // K(ω) = 0 so Z = f·K(ω) vanishes
        return res;
    }

    CaseTag tag{};
    SolutionForm form{};
    switch (branch) {
        case Branch::Type3: tag = CaseTag::Case2, form = SolutionForm::ZOnly; break;
        case Branch::Type2: tag = CaseTag::Case3, form = SolutionForm::ZOnly; break;
        case Branch::MixedA: tag = CaseTag::Case4, form = SolutionForm::Mixed; break;
        case Branch::MixedB: tag = CaseTag::Case5, form = SolutionForm::Mixed; break;
    }
    for (const RawRoot& raw : roots) {
        IndicialRoot r;
        r.value = raw.value;
        r.case_tag = tag;
        r.origin = origin;
        r.solution_form = form;
        r.jordan = raw.jordan;
        r.multiplicity = raw.helicity ? (multiplicity + 1) / 2 : multiplicity;
        // merge exact coincidences within the branch (same ODE)
        auto it = std::find_if(res.kept.begin(), res.kept.end(), [&](const IndicialRoot& o) {
            return std::abs(o.value - r.value) < 1e-9 * std::max(1.0, std::abs(r.value));
        });
        if (it != res.kept.end()) {
            it->multiplicity += r.multiplicity;
            it->jordan = it->jordan || r.jordan;
        } else {
            res.kept.push_back(r);
        }
    }
    return res;
}

// ---- catalog ----------------------------------------------------------------

std::vector<IndicialRoot> RootCatalog::kernel_roots() const {
    std::vector<IndicialRoot> out;
    for (auto r : roots)
        if (r.side != Side::Cokernel) out.push_back(r);
    return out;
}

std::vector<IndicialRoot> RootCatalog::cokernel_roots() const {
    std::vector<IndicialRoot> out;
    for (auto r : roots)
        if (r.side != Side::Kernel) out.push_back(r);
    return out;
}

namespace {

struct EntrySource {
    std::vector<SpectrumEntry> included;
    std::vector<SpectrumEntry> next;  // first omitted entry per kind (may be empty)
};

std::vector<Branch> branches_for(OperatorKind k) {
    switch (k) {
        case OperatorKind::ScalarHodge: return {Branch::MixedA};
        case OperatorKind::CoclosedOneFormHodge: return {Branch::Type2, Branch::MixedB};
        case OperatorKind::DivFreeTTRough: return {Branch::Type3};
    }
    return {};
}

std::vector<RawRoot> raw_roots(Branch b, double ev, int kappa) {
    switch (b) {
        case Branch::Type3: return type3_roots(ev, kappa);
        case Branch::Type2: return type2_roots(ev, kappa);
        case Branch::MixedA: return mixed_a_roots(ev, kappa);
        case Branch::MixedB: return mixed_b_roots(ev, kappa);
    }
    return {};
}

std::vector<IndicialRoot> roots_for_entry(const SpectrumEntry& e, int kappa) {
    std::vector<IndicialRoot> out;
    const RootOrigin origin{e.kind, e.j, e.eigenvalue};
    for (Branch b : branches_for(e.kind)) {
        auto ex = apply_exclusions(kappa, origin, b, raw_roots(b, e.eigenvalue, kappa), e.multiplicity);
        out.insert(out.end(), ex.kept.begin(), ex.kept.end());
    }
    return out;
}

const OperatorKind kAllKinds[] = {OperatorKind::ScalarHodge, OperatorKind::CoclosedOneFormHodge,
                                  OperatorKind::DivFreeTTRough};

long killing_dimension(const SphereGeometry& g, bool& defaulted) {
    defaulted = false;
    if (g.action.trivial()) return kSphereKillingDim;
    for (auto& [j, m] : g.descent.oneform_multiplicity)
        if (j == 1) return m;
    if (g.descent.killing_dim) return *g.descent.killing_dim;
    defaulted = true;
    return kSphereKillingDim;
}

}  // namespace

RootCatalog assemble_catalog(const CrossSectionSpec& cs, int j_max) {
    check_kappa(cs.kappa);
    if (j_max < 0) throw IndicialError("j_max must be non-negative");

    RootCatalog cat;
    cat.cross_section = cs;
    cat.j_max = j_max;
    const int kappa = cs.kappa;

    std::map<OperatorKind, EntrySource> src;
    bool killing_defaulted = false;
    bool any_candidate = false;
    bool odd_helicity = false;

    if (auto* s = std::get_if<SphereGeometry>(&cs.geometry)) {
        if (kappa != 1) throw IndicialError("spherical cross-section requires kappa = +1");
        const long kdim = killing_dimension(*s, killing_defaulted);
        for (OperatorKind k : kAllKinds) {
            src[k].included = sphere_spectrum(*s, k, j_max);
            for (auto& e : src[k].included)
                if (k == OperatorKind::CoclosedOneFormHodge && e.j == 1) e.multiplicity = kdim;
            const int jn = std::max(j_max + 1, sphere_min_degree(k));
            SphereGeometry trivial{};
            auto nxt = sphere_spectrum(trivial, k, jn);
            if (!nxt.empty()) src[k].next.push_back(nxt.back());
        }
        // j=1 Killing entry may have been dropped if the lens data says 0; keep consistent
        cat.kernel_dim_at_zero = 1 + kdim;
        cat.notes.push_back(
            "Case 4 roots use sqrt(j^2+2j-2 +/- i*(2/3)*sqrt(3(j-1)(j+3))), the direct evaluation of the "
            "characteristic roots of the 4x4 mode system; the variant coefficient (2/9)*sqrt((j+3)(j-1)) "
            "does not satisfy that system and is not used");
    } else if (auto* t = std::get_if<TorusGeometry>(&cs.geometry)) {
        if (kappa != 0) throw IndicialError("torus cross-section requires kappa = 0");
        for (OperatorKind k : kAllKinds) {
            auto all = torus_spectrum_by_index(t->lengths, k, j_max + 1);
            src[k].next.push_back(all.back());
            all.pop_back();
            src[k].included = all;
        }
        long m1 = 0, mtt = 0;
        for (auto& e : src[OperatorKind::CoclosedOneFormHodge].included)
            if (std::abs(e.eigenvalue) <= kZeroTol) m1 = e.multiplicity;
        for (auto& e : src[OperatorKind::DivFreeTTRough].included)
            if (std::abs(e.eigenvalue) <= kZeroTol) mtt = e.multiplicity;
        // 3dt²−g, dt⊙ω (ω parallel), B and tB (B parallel traceless)
        cat.kernel_dim_at_zero = 1 + m1 + 2 * mtt;
        cat.notes.push_back(
            "per nonzero mode, the co-closed roots +/-sqrt(nu) (type-2 and mixed) coincide; the full mode system "
            "joins one of them into a t-polynomial chain, so chain counts there are 4 per sign, not 5 "
            "(solution dimensions are unaffected)");
    } else if (auto* h = std::get_if<HyperbolicGeometry>(&cs.geometry)) {
        if (kappa != -1) throw IndicialError("hyperbolic cross-section requires kappa = -1");
        for (OperatorKind k : kAllKinds) {
            src[k].included = hyperbolic_spectrum(*h, k, j_max);
            std::vector<SpectrumEntry> omitted;
            for (auto& e : h->entries)
                if (e.kind == k && e.j > j_max) omitted.push_back(e);
            std::sort(omitted.begin(), omitted.end(), [](auto& a, auto& b) { return a.j < b.j; });
            if (!omitted.empty())
                src[k].next.push_back(omitted.front());
            else if (!src[k].included.empty())
                src[k].next.push_back(src[k].included.back());  // spectrum beyond the file: bounded below
        }
        cat.kernel_dim_at_zero = 1 + h->b1 + 2L * h->dim_codazzi;
        cat.notes.push_back("hyperbolic spectrum is user-supplied; completeness holds relative to the file");
    }

    for (OperatorKind k : kAllKinds) {
        for (const SpectrumEntry& e : src[k].included) {
            if (e.multiplicity <= 0) continue;
            auto rs = roots_for_entry(e, kappa);
            bool candidate = false;
            if (auto* s = std::get_if<SphereGeometry>(&cs.geometry); s && !s->action.trivial()) {
                const auto& table = k == OperatorKind::CoclosedOneFormHodge ? s->descent.oneform_multiplicity
                                                                             : s->descent.tt_multiplicity;
                const bool supplied = std::any_of(table.begin(), table.end(),
                                                  [&](auto& p) { return p.first == e.j; });
                candidate = k != OperatorKind::ScalarHodge && !supplied &&
                            !(k == OperatorKind::CoclosedOneFormHodge && e.j == 1);
            }
            if (k != OperatorKind::ScalarHodge && e.multiplicity % 2 == 1) {
                for (auto& r : rs)
                    if (!r.conformal_killing && r.case_tag != CaseTag::Case4 && r.case_tag != CaseTag::Case5 &&
                        std::abs(r.value.real()) > kZeroTol)
                        odd_helicity = true;
            }
            for (auto& r : rs) {
                r.descent_candidate = candidate;
                any_candidate = any_candidate || candidate;
                cat.roots.push_back(r);
            }
        }
    }

    std::sort(cat.roots.begin(), cat.roots.end(), [](const IndicialRoot& a, const IndicialRoot& b) {
        return std::make_tuple(a.value.real(), a.value.imag(), int(a.case_tag), int(a.origin.kind), a.origin.j) <
               std::make_tuple(b.value.real(), b.value.imag(), int(b.case_tag), int(b.origin.kind), b.origin.j);
    });

    for (auto& r : cat.roots)
        if (std::abs(r.value.real()) <= kZeroTol) cat.cokernel_dim_at_zero += r.solution_dim();

    double bound = std::numeric_limits<double>::infinity();
    for (OperatorKind k : kAllKinds)
        for (const SpectrumEntry& e : src[k].next)
            for (auto& r : roots_for_entry(SpectrumEntry{e.kind, e.j, e.eigenvalue, 1}, kappa))
                bound = std::min(bound, std::abs(r.value.real()));
    cat.complete_below = bound;

    if (killing_defaulted)
        cat.notes.push_back("Killing-field dimension of the quotient not supplied; using 6 (round S^3 value)");
    if (any_candidate)
        cat.notes.push_back(
            "1-form/TT descent to the quotient not supplied; roots from those modes are candidates");
    if (odd_helicity)
        cat.notes.push_back("odd eigenspace multiplicity: helicity split assumed balanced (rounded up)");
    return cat;
}

// ---- predicates -------------------------------------------------------------

GapReport spectral_gap(const RootCatalog& cat) {
    if (cat.roots.empty()) throw IndicialError("empty catalog");
    GapReport g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (auto& r : cat.roots) {
        const double re = std::abs(r.value.real());
        if (re <= kZeroTol) continue;
        g.gap = std::min(g.gap, re);
        if (!r.conformal_killing) g.gap_above_exceptional = std::min(g.gap_above_exceptional, re);
    }
    return g;
}

WeightWindow gluing_window(const RootCatalog& cat) {
    if (!std::holds_alternative<SphereGeometry>(cat.cross_section.geometry))
        throw IndicialError("gluing window is defined for spherical cross-sections only");
    if (cat.roots.empty()) throw IndicialError("empty catalog");
    WeightWindow w;
    w.upper = std::numeric_limits<double>::infinity();
    bool from_candidate = false;
    for (auto& r : cat.roots) {
        const double re = std::abs(r.value.real());
        if (r.conformal_killing || re <= kZeroTol) continue;
        if (re < w.upper - 1e-12) {
            w.upper = re;
            from_candidate = r.descent_candidate;
        } else if (std::abs(re - w.upper) <= 1e-12 && !r.descent_candidate) {
            from_candidate = false;
        }
    }
    if (from_candidate) w.caveats.push_back("upper end attained by descent candidates (1-form/TT descent not supplied)");
    if (std::abs(w.upper - 2.0) > 1e-9) w.caveats.push_back("upper end differs from 2");
    if (cat.complete_below < w.upper) w.caveats.push_back("catalog truncated below the upper end; raise j_max");
    return w;
}

H2PlusReport h2plus_predicate(const CrossSectionSpec& cs) {
    auto* h = std::get_if<HyperbolicGeometry>(&cs.geometry);
    if (!h) throw IndicialError("H2+ predicate requires a hyperbolic cross-section");
    H2PlusReport r;
    r.b1 = h->b1;
    r.dim_codazzi = h->dim_codazzi;
    r.vanishes = h->dim_codazzi == 0;
    r.rational_homology_sphere = h->b1 == 0;
    r.cokernel_dim_at_zero = assemble_catalog(cs, std::numeric_limits<int>::max() / 2).cokernel_dim_at_zero;
    return r;
}

}  // namespace sdroots
