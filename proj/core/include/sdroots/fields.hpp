#pragma once

// Spectral tensor calculus on the flat torus T^3 = R^3 / (L1 Z × L2 Z × L3 Z).
// Every operator is a polynomial in ∂_j → i k_j, k_j = 2π ξ_j / L_j, so it acts mode
// by mode and is exact on band-limited fields. Conventions: ε_123 = +1; δ is the
// divergence; Δ = −|k|² is the rough Laplacian and Δ_H = |k|² the Hodge Laplacian.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <cmath>
#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sdroots {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec3c = std::array<cplx, 3>;
using Sym6c = std::array<cplx, 6>;  // (11, 12, 13, 22, 23, 33)

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int sym_index(int i, int j) {
    constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
}
// weight of each stored component in the full double sum Σ_ij h_ij k_ij
inline constexpr std::array<double, 6> kSymWeight{1, 2, 2, 1, 2, 1};

// Pointwise (single-mode) symbols. k is the real wave vector.
namespace symbol {

Vec3c grad(const Vec3& k, cplx u);
cplx div(const Vec3& k, const Vec3c& w);
Vec3c div(const Vec3& k, const Sym6c& h);
Vec3c curl(const Vec3& k, const Vec3c& w);  // *d
Sym6c hessian(const Vec3& k, cplx u);
Sym6c traceless_hessian(const Vec3& k, cplx u);
cplx trace(const Sym6c& h);
Sym6c trace_free(const Sym6c& h);
Sym6c metric_times(cplx u);
Sym6c lie(const Vec3& k, const Vec3c& w);
Sym6c conf_killing(const Vec3& k, const Vec3c& w);
Sym6c slash_d(const Vec3& k, const Sym6c& h);
Sym6c e_prime(const Vec3& k, const Sym6c& h);
double k2(const Vec3& k);

}  // namespace symbol

// Cube of modes ξ ∈ [−band, band]^3 on a given lattice.
struct ModeSpace {
    Vec3 lengths{};
    int band = 0;

    int side() const { return 2 * band + 1; }
    size_t size() const { return size_t(side()) * side() * side(); }
    size_t index(int a, int b, int c) const {
        return (size_t(a + band) * side() + size_t(b + band)) * side() + size_t(c + band);
    }
    std::array<int, 3> mode(size_t idx) const;
    Vec3 wavevector(size_t idx) const;
    bool operator==(const ModeSpace& o) const { return lengths == o.lengths && band == o.band; }
};

template <int C>
class FourierField {
public:
    using Value = std::array<cplx, C>;

    FourierField() = default;
    explicit FourierField(ModeSpace space) : space_(space), coeff_(space.size(), Value{}) {}

    const ModeSpace& space() const { return space_; }
    size_t size() const { return coeff_.size(); }
    Value& operator[](size_t i) { return coeff_[i]; }
    const Value& operator[](size_t i) const { return coeff_[i]; }
    Value& at(int a, int b, int c) { return coeff_[space_.index(a, b, c)]; }
    const Value& at(int a, int b, int c) const { return coeff_[space_.index(a, b, c)]; }

    FourierField zeros_like() const { return FourierField(space_); }

    FourierField& operator+=(const FourierField& o) {
        check(o);
        for (size_t i = 0; i < coeff_.size(); ++i)
            for (int c = 0; c < C; ++c) coeff_[i][c] += o.coeff_[i][c];
        return *this;
    }
    FourierField& operator-=(const FourierField& o) {
        check(o);
        for (size_t i = 0; i < coeff_.size(); ++i)
            for (int c = 0; c < C; ++c) coeff_[i][c] -= o.coeff_[i][c];
        return *this;
    }
    FourierField& operator*=(cplx s) {
        for (auto& v : coeff_)
            for (auto& x : v) x *= s;
        return *this;
    }
    friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
    friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
    friend FourierField operator*(cplx s, FourierField a) { return a *= s; }
    friend FourierField operator*(double s, FourierField a) { return a *= cplx(s); }

    // Hermitian L² product per unit volume; symmetric tensors use the full double sum.
    cplx inner(const FourierField& o) const {
        check(o);
        cplx acc = 0;
        for (size_t i = 0; i < coeff_.size(); ++i)
            for (int c = 0; c < C; ++c) acc += weight(c) * std::conj(coeff_[i][c]) * o.coeff_[i][c];
        return acc;
    }
    double norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

    // Largest |c(ξ) − conj(c(−ξ))|: zero for real fields.
    double reality_defect() const {
        double m = 0;
        const int B = space_.band;
        for (int a = -B; a <= B; ++a)
            for (int b = -B; b <= B; ++b)
                for (int c = -B; c <= B; ++c)
                    for (int q = 0; q < C; ++q)
                        m = std::max(m, std::abs(at(a, b, c)[q] - std::conj(at(-a, -b, -c)[q])));
        return m;
    }

    static double weight(int c) {
        if constexpr (C == 6) return kSymWeight[c];
        return 1.0;
    }

private:
    void check(const FourierField& o) const {
        if (!(space_ == o.space_)) throw FieldError("mode-space mismatch");
    }
    ModeSpace space_;
    std::vector<Value> coeff_;
};

using FourierScalar = FourierField<1>;
using FourierOneForm = FourierField<3>;
using FourierSymTensor = FourierField<6>;

// Mode-wise application of a symbol.
template <int Out, int In, class Fn>
FourierField<Out> apply_symbol(const FourierField<In>& f, Fn&& fn) {
    FourierField<Out> out(f.space());
    for (size_t i = 0; i < f.size(); ++i) out[i] = fn(f.space().wavevector(i), f[i]);
    return out;
}

// Field-level operators on T^3 (κ = 0).
FourierOneForm grad(const FourierScalar& u);
FourierScalar div(const FourierOneForm& w);
FourierOneForm div(const FourierSymTensor& h);
FourierScalar laplacian(const FourierScalar& u);        // rough Δ = −Δ_H on functions
FourierOneForm laplacian(const FourierOneForm& w);      // rough Δ
FourierSymTensor laplacian(const FourierSymTensor& h);  // rough Δ
FourierOneForm hodge_laplacian(const FourierOneForm& w);
FourierOneForm hodge_star_d(const FourierOneForm& w);
FourierSymTensor hessian(const FourierScalar& u);
FourierSymTensor traceless_hessian(const FourierScalar& u);
FourierScalar trace(const FourierSymTensor& h);
FourierSymTensor trace_free(const FourierSymTensor& h);
FourierSymTensor metric_times(const FourierScalar& u);
FourierSymTensor lie_3d(const FourierOneForm& w);
FourierSymTensor conf_killing_3d(const FourierOneForm& w);
FourierSymTensor slash_d(const FourierSymTensor& h);
FourierSymTensor e_prime(const FourierSymTensor& h);
FourierOneForm box_k_3d(const FourierOneForm& w);  // δ K on Y

// Real band-limited random fields: coefficients on |ξ|∞ ≤ max_mode, reality-symmetrized.
using FieldRng = std::mt19937_64;
FourierScalar random_scalar(const ModeSpace& s, int max_mode, FieldRng& rng);
FourierOneForm random_oneform(const ModeSpace& s, int max_mode, FieldRng& rng);
FourierSymTensor random_sym(const ModeSpace& s, int max_mode, FieldRng& rng);

// ---- cylinder fields: Σ t^d e^{λt} · (T^3 field) -----------------------------

struct TermKey {
    double re = 0, im = 0;
    int degree = 0;
    cplx rate() const { return {re, im}; }
    bool operator<(const TermKey& o) const {
        return std::tie(re, im, degree) < std::tie(o.re, o.im, o.degree);
    }
};

// h̃ = h00 dt² + α⊙dt + h  (α⊙dt = α⊗dt + dt⊗α)
struct SplitTensor {
    FourierScalar h00;
    FourierOneForm alpha;
    FourierSymTensor h;

    static SplitTensor zeros(const ModeSpace& s) { return {FourierScalar(s), FourierOneForm(s), FourierSymTensor(s)}; }
    SplitTensor zeros_like() const { return zeros(h.space()); }
    SplitTensor& operator+=(const SplitTensor& o) { h00 += o.h00, alpha += o.alpha, h += o.h; return *this; }
    SplitTensor& operator*=(cplx s) { h00 *= s, alpha *= s, h *= s; return *this; }
    // 4D pairing: h00 h00' + 2 α·α' + h:h'
    cplx inner(const SplitTensor& o) const { return h00.inner(o.h00) + 2.0 * alpha.inner(o.alpha) + h.inner(o.h); }
};

// ω̃ = f dt + ω
struct SplitOneForm {
    FourierScalar f;
    FourierOneForm omega;

    static SplitOneForm zeros(const ModeSpace& s) { return {FourierScalar(s), FourierOneForm(s)}; }
    SplitOneForm zeros_like() const { return zeros(f.space()); }
    SplitOneForm& operator+=(const SplitOneForm& o) { f += o.f, omega += o.omega; return *this; }
    SplitOneForm& operator*=(cplx s) { f *= s, omega *= s; return *this; }
    cplx inner(const SplitOneForm& o) const { return f.inner(o.f) + omega.inner(o.omega); }
};

struct SymValue {
    FourierSymTensor h;
    SymValue zeros_like() const { return {h.zeros_like()}; }
    SymValue& operator+=(const SymValue& o) { h += o.h; return *this; }
    SymValue& operator*=(cplx s) { h *= s; return *this; }
    cplx inner(const SymValue& o) const { return h.inner(o.h); }
};

template <class V>
class ExpPoly {
public:
    using Terms = std::map<TermKey, V>;

    ExpPoly() = default;
    static ExpPoly single(cplx rate, int degree, V value) {
        ExpPoly p;
        p.add(rate, degree, std::move(value));
        return p;
    }

    void add(cplx rate, int degree, V value) {
        if (degree < 0) throw FieldError("negative polynomial degree");
        TermKey key{rate.real(), rate.imag(), degree};
        auto it = terms_.find(key);
        if (it == terms_.end())
            terms_.emplace(key, std::move(value));
        else
            it->second += value;
    }
    ExpPoly& operator+=(const ExpPoly& o) {
        for (auto& [k, v] : o.terms_) add(k.rate(), k.degree, v);
        return *this;
    }
    ExpPoly& operator*=(cplx s) {
        for (auto& [k, v] : terms_) v *= s;
        return *this;
    }
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, ExpPoly b) { return a += (b *= -1.0); }
    friend ExpPoly operator*(cplx s, ExpPoly a) { return a *= s; }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // exact: d/dt (t^d e^{λt}) = λ t^d e^{λt} + d t^{d−1} e^{λt}
    ExpPoly dt() const {
        ExpPoly out;
        for (auto& [k, v] : terms_) {
            if (k.rate() != cplx(0.0)) {
                V a = v;
                a *= k.rate();
                out.add(k.rate(), k.degree, std::move(a));
            }
            if (k.degree > 0) {
                V b = v;
                b *= cplx(double(k.degree));
                out.add(k.rate(), k.degree - 1, std::move(b));
            }
        }
        return out;
    }

    template <class Fn>
    auto map(Fn&& fn) const {
        using W = std::decay_t<decltype(fn(std::declval<const V&>()))>;
        ExpPoly<W> out;
        for (auto& [k, v] : terms_) out.add(k.rate(), k.degree, fn(v));
        return out;
    }

    // Sum over terms of the per-term value norms (a cheap scale).
    double coefficient_norm() const {
        double s = 0;
        for (auto& [k, v] : terms_) s += std::sqrt(std::max(0.0, v.inner(v).real()));
        return s;
    }

private:
    Terms terms_;
};

using CylTensor = ExpPoly<SplitTensor>;
using CylOneForm = ExpPoly<SplitOneForm>;
using CylSym = ExpPoly<SymValue>;

// Cylinder operators on R × T^3 with the product metric dt² + g_Y (κ = 0).
CylSym linearized_weyl(const CylTensor& ht, double kappa = 0.0);
CylTensor adjoint_D(const CylSym& Z, double kappa = 0.0);
CylTensor cyl_killing(const CylOneForm& w);
CylOneForm cyl_div(const CylTensor& ht);
CylOneForm cyl_box_k(const CylOneForm& w);  // closed form of δ_g K_g

// t-periodic Hermitian pairing over one period 2π/ω0 for terms with purely imaginary
// rates i·m·ω0 and degree 0 (per unit period length).
template <class V>
cplx periodic_inner(const ExpPoly<V>& a, const ExpPoly<V>& b) {
    cplx acc = 0;
    for (auto& [ka, va] : a.terms()) {
        if (ka.degree != 0 || ka.re != 0.0) throw FieldError("periodic pairing needs degree-0 imaginary rates");
        auto it = b.terms().find(ka);
        if (it != b.terms().end()) acc += va.inner(it->second);
    }
    for (auto& [kb, vb] : b.terms())
        if (kb.degree != 0 || kb.re != 0.0) throw FieldError("periodic pairing needs degree-0 imaginary rates");
    return acc;
}

// Evaluate a real field at a point (used to sample onto grids and in tests).
cplx evaluate(const FourierScalar& f, const Vec3& y);
Vec3c evaluate(const FourierOneForm& f, const Vec3& y);
Sym6c evaluate(const FourierSymTensor& f, const Vec3& y);

}  // namespace sdroots
