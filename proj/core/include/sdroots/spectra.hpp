#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sdroots {

// Operators whose spectra feed the indicial analysis.
//   ScalarHodge          : Δ_H on functions (μ)
//   CoclosedOneFormHodge : Δ_H on co-closed 1-forms (ν)
//   DivFreeTTRough       : rough Laplacian on TT tensors (λ)
enum class OperatorKind { ScalarHodge, CoclosedOneFormHodge, DivFreeTTRough };

const char* to_string(OperatorKind k);
OperatorKind operator_kind_from_string(const std::string& s);

struct SpectrumEntry {
    OperatorKind kind{};
    int j = 0;
    double eigenvalue = 0.0;
    long multiplicity = 0;
};

class SpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user-supplied spectrum file (missing, unreadable, malformed, inconsistent).
class SpectrumFileError : public SpectrumError {
public:
    using SpectrumError::SpectrumError;
};

// Free cyclic action on S^3 ⊂ C^2: (z1, z2) -> (ζ^q1 z1, ζ^q2 z2), ζ = e^{2πi/p}.
struct LensAction {
    int p = 1;
    int q1 = 1;
    int q2 = 1;
    bool trivial() const { return p == 1; }
};

// Descent data for quotients S^3/Γ that the library cannot derive by itself.
// Missing entries fall back to the round-S^3 multiplicities and mark the
// affected roots as candidates.
struct DescentData {
    std::optional<int> killing_dim;
    std::vector<std::pair<int, long>> oneform_multiplicity;  // (j, mult)
    std::vector<std::pair<int, long>> tt_multiplicity;       // (j, mult)
};

struct SphereGeometry {
    LensAction action;
    DescentData descent;
};

struct TorusGeometry {
    std::array<double, 3> lengths{};
};

struct HyperbolicGeometry {
    std::vector<SpectrumEntry> entries;
    int b1 = 0;
    int dim_codazzi = 0;
    std::string source;
};

struct CrossSectionSpec {
    int kappa = 1;
    std::variant<SphereGeometry, TorusGeometry, HyperbolicGeometry> geometry;

    static CrossSectionSpec sphere(LensAction action = {}, DescentData descent = {});
    static CrossSectionSpec torus(std::array<double, 3> lengths);
    static CrossSectionSpec hyperbolic(HyperbolicGeometry geom);

    std::string describe() const;
};

// Closed forms on the round unit S^3 (degree j).
double sphere_scalar_eigenvalue(int j);       // j(j+2),    j >= 0
double sphere_coclosed_eigenvalue(int j);     // (j+1)^2,   j >= 1
double sphere_tt_eigenvalue(int j);           // j^2+2j-2,  j >= 2
long sphere_scalar_multiplicity(int j);       // (j+1)^2
long sphere_coclosed_multiplicity(int j);     // 2 j (j+2)
long sphere_tt_multiplicity(int j);           // 2 (j-1)(j+3)
int sphere_min_degree(OperatorKind k);

// Entries of the given operator for degrees min..j_max, honouring the lens action
// for scalars (projector trace) and descent data for the other kinds.
std::vector<SpectrumEntry> sphere_spectrum(const SphereGeometry& geom, OperatorKind kind, int j_max);

// Flat torus R^3 / (L1 Z × L2 Z × L3 Z). Entries are distinct eigenvalues
// <= cutoff in increasing order, j = rank.
std::vector<SpectrumEntry> torus_spectrum(const std::array<double, 3>& lengths, OperatorKind kind,
                                          double cutoff);

// Same, but stopping after the first j_max+1 distinct eigenvalues.
std::vector<SpectrumEntry> torus_spectrum_by_index(const std::array<double, 3>& lengths,
                                                   OperatorKind kind, int j_max);

// Multiplicity of each torus lattice mode ξ ≠ 0 for the given operator
// (scalar 1, co-closed forms 2, TT 2) and at ξ = 0 (1, 3, 5).
int torus_mode_multiplicity(OperatorKind kind, bool zero_mode);

// Text format: "b1 <n>", "codazzi <n>", "<kind> <j> <eigenvalue> <mult>", '#' comments.
HyperbolicGeometry load_hyperbolic_spectrum(const std::string& path);
HyperbolicGeometry parse_hyperbolic_spectrum(const std::string& text, const std::string& source);
std::vector<SpectrumEntry> hyperbolic_spectrum(const HyperbolicGeometry& geom, OperatorKind kind,
                                               int j_max);

// dim of Γ-invariant harmonic polynomials of degree j on R^4 (= scalar eigenspace
// multiplicity on S^3/Γ). Computed from the trace of the group-averaging projector.
long lens_scalar_multiplicity(const LensAction& action, int j);

// Diagnostics from the same construction; used by tests.
struct LensProjectorReport {
    long harmonic_dim = 0;       // expected (j+1)^2
    double projector_trace = 0;  // before rounding
    double idempotency_residual = 0;
};
LensProjectorReport lens_projector_report(const LensAction& action, int j);

// Parses "2pi", "pi", "1.5*pi", "3.0" etc.
double parse_length_token(const std::string& tok);

}  // namespace sdroots
