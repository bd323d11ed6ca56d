#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "sdroots/spectra.hpp"

namespace sdroots {

using cplx = std::complex<double>;

enum class CaseTag { Case0 = 0, Case1, Case2, Case3, Case4, Case5 };
enum class Side { Kernel, Cokernel, Both };
enum class SolutionForm { ZOnly, OmegaOnly, Mixed };

const char* to_string(Side s);
const char* to_string(SolutionForm f);
Side side_from_string(const std::string& s);
SolutionForm solution_form_from_string(const std::string& s);

struct RootOrigin {
    OperatorKind kind{};
    int j = 0;
    double eigenvalue = 0.0;
};

// A value produced by a closed-form root formula, before catalog bookkeeping.
struct RawRoot {
    cplx value;
    bool jordan = false;
    // root belongs to one helicity (±) half of the eigenspace
    bool helicity = false;
};

struct IndicialRoot {
    cplx value;
    CaseTag case_tag{};
    RootOrigin origin;
    Side side = Side::Both;
    SolutionForm solution_form = SolutionForm::ZOnly;
    bool jordan = false;
    bool conformal_killing = false;
    long multiplicity = 0;
    // Present only as a candidate: the eigenmode's descent to S^3/Γ was not supplied.
    bool descent_candidate = false;

    // Dimension of the solution space e^{λt}·(polynomial in t) this root accounts for.
    long solution_dim() const { return multiplicity * (jordan ? 2 : 1); }
};

struct RootCatalog {
    CrossSectionSpec cross_section;
    int j_max = 0;
    std::vector<IndicialRoot> roots;  // sorted by (Re, Im, case, kind, j)
    long kernel_dim_at_zero = 0;
    long cokernel_dim_at_zero = 0;
    // every root with |Re| below this bound is present (truncation at j_max)
    double complete_below = std::numeric_limits<double>::infinity();
    std::vector<std::string> notes;

    std::vector<IndicialRoot> kernel_roots() const;
    std::vector<IndicialRoot> cokernel_roots() const;
};

class IndicialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Closed forms. All use the principal square root; results are listed as ± pairs.
std::vector<RawRoot> type3_roots(double lambda, int kappa);  // ±β±√κ, β = √(λ+3κ)
std::vector<RawRoot> type2_roots(double nu, int kappa);      // ±√ν (ν = 0: constant only)
std::vector<RawRoot> mixed_a_roots(double mu, int kappa);    // ±α^±(μ)
std::vector<RawRoot> mixed_b_roots(double nu, int kappa);    // ±√(ν−4κ)

// Spherical Case 4 closed form in terms of the degree j of μ = j(j+2):
// √(j²+2j−2 ± i·(2/3)·√(3(j−1)(j+3))).
cplx case4_closed_form(int j, int sign);

// Marks roots originating from conformal Killing fields. `branch_is_mixed` selects
// the mixed (□_K) branch for the given origin; exclusions only touch that branch
// and the co-closed type-2 branch at a Killing eigenvalue, which is removed.
struct ExclusionResult {
    std::vector<IndicialRoot> kept;
    bool removed_all = false;
};
enum class Branch { Type3, Type2, MixedA, MixedB };
ExclusionResult apply_exclusions(int kappa, const RootOrigin& origin, Branch branch,
                                 const std::vector<RawRoot>& roots, long multiplicity);

RootCatalog assemble_catalog(const CrossSectionSpec& cs, int j_max);

struct GapReport {
    double gap = 0.0;                  // min |Re| over roots with Re ≠ 0
    double gap_above_exceptional = 0;  // ignoring the conformal Killing roots {0, ±1}
};
GapReport spectral_gap(const RootCatalog& cat);

struct WeightWindow {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<std::string> caveats;
};
WeightWindow gluing_window(const RootCatalog& cat);

struct H2PlusReport {
    bool vanishes = false;  // H²₊ = {0}
    int b1 = 0;
    int dim_codazzi = 0;
    long cokernel_dim_at_zero = 0;
    bool rational_homology_sphere = true;
};
H2PlusReport h2plus_predicate(const CrossSectionSpec& cs);

// Used for the fallback Killing dimension on quotients.
inline constexpr int kSphereKillingDim = 6;

}  // namespace sdroots
