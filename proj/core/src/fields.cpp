#include "sdroots/fields.hpp"

#include <numbers>

namespace sdroots {
namespace {

const cplx I(0.0, 1.0);

int eps(int i, int j, int k) {
    // ε_123 = +1 (0-based indices)
    return ((i - j) * (j - k) * (k - i)) / 2;
}

cplx comp(const Sym6c& h, int i, int j) { return h[sym_index(i, j)]; }

Sym6c from_full(const std::array<std::array<cplx, 3>, 3>& m) {
    Sym6c s{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) s[sym_index(i, j)] = m[i][j];
    return s;
}

Sym6c add(Sym6c a, const Sym6c& b, cplx s = 1.0) {
    for (int c = 0; c < 6; ++c) a[c] += s * b[c];
    return a;
}

}  // namespace

namespace symbol {

double k2(const Vec3& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

Vec3c grad(const Vec3& k, cplx u) { return {I * k[0] * u, I * k[1] * u, I * k[2] * u}; }

cplx div(const Vec3& k, const Vec3c& w) { return I * (k[0] * w[0] + k[1] * w[1] + k[2] * w[2]); }

Vec3c div(const Vec3& k, const Sym6c& h) {
    Vec3c out{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) out[j] += I * k[i] * comp(h, i, j);
    return out;
}

Vec3c curl(const Vec3& k, const Vec3c& w) {
    Vec3c out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                if (int e = eps(i, j, l)) out[i] += double(e) * I * k[j] * w[l];
    return out;
}

Sym6c hessian(const Vec3& k, cplx u) {
    Sym6c s{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) s[sym_index(i, j)] = -k[i] * k[j] * u;
    return s;
}

Sym6c traceless_hessian(const Vec3& k, cplx u) {
    // ∇²u − ⅓(Δu)g, Δu = −|k|²u
    return add(hessian(k, u), metric_times(-k2(k) * u), -1.0 / 3.0);
}

cplx trace(const Sym6c& h) { return h[0] + h[3] + h[5]; }

Sym6c metric_times(cplx u) { return {u, 0.0, 0.0, u, 0.0, u}; }

Sym6c trace_free(const Sym6c& h) { return add(h, metric_times(trace(h)), -1.0 / 3.0); }

Sym6c lie(const Vec3& k, const Vec3c& w) {
    Sym6c s{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) s[sym_index(i, j)] = I * (k[i] * w[j] + k[j] * w[i]);
    return s;
}

Sym6c conf_killing(const Vec3& k, const Vec3c& w) {
    return add(lie(k, w), metric_times(div(k, w)), -2.0 / 3.0);
}

Sym6c slash_d(const Vec3& k, const Sym6c& h) {
    // (ḏ/h)_ij = Σ ε_ikl ∂_k h_lj + Σ ε_jkl ∂_k h_li
    std::array<std::array<cplx, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int kk = 0; kk < 3; ++kk)
                for (int l = 0; l < 3; ++l)
                    if (int e = eps(i, kk, l)) a[i][j] += double(e) * I * k[kk] * comp(h, l, j);
    std::array<std::array<cplx, 3>, 3> s{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s[i][j] = a[i][j] + a[j][i];
    return from_full(s);
}

Sym6c e_prime(const Vec3& k, const Sym6c& h) {
    // −½(Δ tf h + ∇̊² tr h) + ½ K(δh)
    Sym6c lap_tf = trace_free(h);
    for (auto& x : lap_tf) x *= -k2(k);
    Sym6c out = add(lap_tf, traceless_hessian(k, trace(h)));
    for (auto& x : out) x *= -0.5;
    return add(out, conf_killing(k, div(k, h)), 0.5);
}

}  // namespace symbol

std::array<int, 3> ModeSpace::mode(size_t idx) const {
    const size_t s = size_t(side());
    const int c = int(idx % s) - band;
    const int b = int((idx / s) % s) - band;
    const int a = int(idx / (s * s)) - band;
    return {a, b, c};
}

Vec3 ModeSpace::wavevector(size_t idx) const {
    const auto m = mode(idx);
    const double tp = 2.0 * std::numbers::pi;
    return {tp * m[0] / lengths[0], tp * m[1] / lengths[1], tp * m[2] / lengths[2]};
}

// ---- field-level operators ----------------------------------------------------

FourierOneForm grad(const FourierScalar& u) {
    return apply_symbol<3>(u, [](const Vec3& k, const auto& v) { return symbol::grad(k, v[0]); });
}
FourierScalar div(const FourierOneForm& w) {
    return apply_symbol<1>(w, [](const Vec3& k, const auto& v) { return std::array<cplx, 1>{symbol::div(k, v)}; });
}
FourierOneForm div(const FourierSymTensor& h) {
    return apply_symbol<3>(h, [](const Vec3& k, const auto& v) { return symbol::div(k, v); });
}
FourierScalar laplacian(const FourierScalar& u) {
    return apply_symbol<1>(u, [](const Vec3& k, const auto& v) { return std::array<cplx, 1>{-symbol::k2(k) * v[0]}; });
}
FourierOneForm laplacian(const FourierOneForm& w) {
    return apply_symbol<3>(w, [](const Vec3& k, auto v) {
        for (auto& x : v) x *= -symbol::k2(k);
        return v;
    });
}
FourierSymTensor laplacian(const FourierSymTensor& h) {
    return apply_symbol<6>(h, [](const Vec3& k, auto v) {
        for (auto& x : v) x *= -symbol::k2(k);
        return v;
    });
}
FourierOneForm hodge_laplacian(const FourierOneForm& w) { return -1.0 * laplacian(w); }
FourierOneForm hodge_star_d(const FourierOneForm& w) {
    return apply_symbol<3>(w, [](const Vec3& k, const auto& v) { return symbol::curl(k, v); });
}
FourierSymTensor hessian(const FourierScalar& u) {
    return apply_symbol<6>(u, [](const Vec3& k, const auto& v) { return symbol::hessian(k, v[0]); });
}
FourierSymTensor traceless_hessian(const FourierScalar& u) {
    return apply_symbol<6>(u, [](const Vec3& k, const auto& v) { return symbol::traceless_hessian(k, v[0]); });
}
FourierScalar trace(const FourierSymTensor& h) {
    return apply_symbol<1>(h, [](const Vec3&, const auto& v) { return std::array<cplx, 1>{symbol::trace(v)}; });
}
FourierSymTensor trace_free(const FourierSymTensor& h) {
    return apply_symbol<6>(h, [](const Vec3&, const auto& v) { return symbol::trace_free(v); });
}
FourierSymTensor metric_times(const FourierScalar& u) {
    return apply_symbol<6>(u, [](const Vec3&, const auto& v) { return symbol::metric_times(v[0]); });
}
FourierSymTensor lie_3d(const FourierOneForm& w) {
    return apply_symbol<6>(w, [](const Vec3& k, const auto& v) { return symbol::lie(k, v); });
}
FourierSymTensor conf_killing_3d(const FourierOneForm& w) {
    return apply_symbol<6>(w, [](const Vec3& k, const auto& v) { return symbol::conf_killing(k, v); });
}
FourierSymTensor slash_d(const FourierSymTensor& h) {
    return apply_symbol<6>(h, [](const Vec3& k, const auto& v) { return symbol::slash_d(k, v); });
}
FourierSymTensor e_prime(const FourierSymTensor& h) {
    return apply_symbol<6>(h, [](const Vec3& k, const auto& v) { return symbol::e_prime(k, v); });
}
FourierOneForm box_k_3d(const FourierOneForm& w) {
    // (δd + 4/3 dδ)w on flat Y; δd = −Δ_H − dδ on 1-forms, so this is −Δ_H w + ⅓ dδw
    return -1.0 * hodge_laplacian(w) + (1.0 / 3.0) * grad(div(w));
}

// ---- random fields ------------------------------------------------------------

namespace {

template <int C>
FourierField<C> random_field(const ModeSpace& s, int max_mode, FieldRng& rng) {
    if (max_mode > s.band) throw FieldError("random modes exceed the band limit");
    std::normal_distribution<double> nd(0.0, 1.0);
    FourierField<C> f(s);
    for (int a = -max_mode; a <= max_mode; ++a)
        for (int b = -max_mode; b <= max_mode; ++b)
            for (int c = -max_mode; c <= max_mode; ++c)
                for (int q = 0; q < C; ++q) {
                    const double re = nd(rng);
                    const double im = nd(rng);
                    f.at(a, b, c)[q] = cplx(re, im);
                }
    FourierField<C> out(s);
    for (int a = -max_mode; a <= max_mode; ++a)
        for (int b = -max_mode; b <= max_mode; ++b)
            for (int c = -max_mode; c <= max_mode; ++c)
                for (int q = 0; q < C; ++q)
                    out.at(a, b, c)[q] = 0.5 * (f.at(a, b, c)[q] + std::conj(f.at(-a, -b, -c)[q]));
    return out;
}

}  // namespace

FourierScalar random_scalar(const ModeSpace& s, int max_mode, FieldRng& rng) {
    return random_field<1>(s, max_mode, rng);
}
FourierOneForm random_oneform(const ModeSpace& s, int max_mode, FieldRng& rng) {
    return random_field<3>(s, max_mode, rng);
}
FourierSymTensor random_sym(const ModeSpace& s, int max_mode, FieldRng& rng) {
    return random_field<6>(s, max_mode, rng);
}

// ---- cylinder operators ---------------------------------------------------------

namespace {

// Collects, for each term key, the coefficient of the field and of its first two
// t-derivatives, so that linear operators in (x, ẋ, ẍ) can be applied termwise.
template <class V>
struct Jet {
    V x, dx, ddx;
};

template <class V>
std::map<TermKey, Jet<V>> jets(const ExpPoly<V>& p) {
    const ExpPoly<V> d1 = p.dt();
    const ExpPoly<V> d2 = d1.dt();
    std::map<TermKey, Jet<V>> out;
    const V* proto = nullptr;
    for (auto& [k, v] : p.terms()) proto = &v;
    if (!proto) return out;
    auto slot = [&](const TermKey& k) -> Jet<V>& {
        auto it = out.find(k);
        if (it == out.end())
            it = out.emplace(k, Jet<V>{proto->zeros_like(), proto->zeros_like(), proto->zeros_like()}).first;
        return it->second;
    };
    for (auto& [k, v] : p.terms()) slot(k).x += v;
    for (auto& [k, v] : d1.terms()) slot(k).dx += v;
    for (auto& [k, v] : d2.terms()) slot(k).ddx += v;
    return out;
}

void require_trace_free(const FourierSymTensor& Z) {
    if (trace(Z).norm() > 1e-12 * std::max(1.0, Z.norm())) throw FieldError("Z must be trace-free");
}

}  // namespace

CylSym linearized_weyl(const CylTensor& ht, double kappa) {
    // D = ½K(−½dh00 − δh + α̇ − *dα + ½d tr h) − ½tf ḧ − κ tf h + ½ḏ/ḣ + ½Δ tf h
    CylSym out;
    for (auto& [key, j] : jets(ht)) {
        const SplitTensor& x = j.x;
        const SplitTensor& dx = j.dx;
        const SplitTensor& ddx = j.ddx;
        FourierOneForm w = -0.5 * grad(x.h00) - div(x.h) + dx.alpha - hodge_star_d(x.alpha) +
                           0.5 * grad(trace(x.h));
        FourierSymTensor D = 0.5 * conf_killing_3d(w) - 0.5 * trace_free(ddx.h) - kappa * trace_free(x.h) +
                             0.5 * slash_d(dx.h) + 0.5 * laplacian(trace_free(x.h));
        out.add(key.rate(), key.degree, SymValue{std::move(D)});
    }
    return out;
}

CylTensor adjoint_D(const CylSym& Z, double kappa) {
    // D*Z = {−½δ²Z, ½δŻ + ½*d δZ, −½Z̈ − κZ − ½ḏ/Ż + ½ΔZ − ½L(δZ) + ½(δ²Z)g}
    CylTensor out;
    for (auto& [key, j] : jets(Z)) {
        require_trace_free(j.x.h);
        const FourierSymTensor& z = j.x.h;
        const FourierOneForm dz = div(z);
        const FourierScalar ddz = div(dz);
        SplitTensor r;
        r.h00 = -0.5 * ddz;
        r.alpha = 0.5 * div(j.dx.h) + 0.5 * hodge_star_d(dz);
        r.h = -0.5 * j.ddx.h - kappa * z - 0.5 * slash_d(j.dx.h) + 0.5 * laplacian(z) - 0.5 * lie_3d(dz) +
              0.5 * metric_times(ddz);
        out.add(key.rate(), key.degree, std::move(r));
    }
    return out;
}

CylTensor cyl_killing(const CylOneForm& w) {
    // K_g(f dt + ω) = (3/2 ḟ − ½δω)dt² + (ω̇ + df)⊙dt + L(ω) − ½(ḟ + δω)g
    CylTensor out;
    for (auto& [key, j] : jets(w)) {
        const FourierScalar dw = div(j.x.omega);
        SplitTensor r;
        r.h00 = 1.5 * j.dx.f - 0.5 * dw;
        r.alpha = j.dx.omega + grad(j.x.f);
        r.h = lie_3d(j.x.omega) - 0.5 * metric_times(j.dx.f + dw);
        out.add(key.rate(), key.degree, std::move(r));
    }
    return out;
}

CylOneForm cyl_div(const CylTensor& ht) {
    // δh̃ = (ḣ00 + δα)dt + α̇ + δh
    CylOneForm out;
    for (auto& [key, j] : jets(ht)) {
        SplitOneForm r;
        r.f = j.dx.h00 + div(j.x.alpha);
        r.omega = j.dx.alpha + div(j.x.h);
        out.add(key.rate(), key.degree, std::move(r));
    }
    return out;
}

CylOneForm cyl_box_k(const CylOneForm& w) {
    // (3/2 f̈ + ½δω̇ − Δ_H f)dt + ω̈ − Δ_H ω + ½dδω + ½dḟ   (κ = 0)
    CylOneForm out;
    for (auto& [key, j] : jets(w)) {
        SplitOneForm r;
        r.f = 1.5 * j.ddx.f + 0.5 * div(j.dx.omega) + laplacian(j.x.f);
        r.omega = j.ddx.omega + laplacian(j.x.omega) + 0.5 * grad(div(j.x.omega)) + 0.5 * grad(j.dx.f);
        out.add(key.rate(), key.degree, std::move(r));
    }
    return out;
}

// ---- point evaluation -----------------------------------------------------------

namespace {

template <int C>
std::array<cplx, C> eval_field(const FourierField<C>& f, const Vec3& y) {
    std::array<cplx, C> out{};
    for (size_t i = 0; i < f.size(); ++i) {
        const Vec3 k = f.space().wavevector(i);
        const cplx ph = std::polar(1.0, k[0] * y[0] + k[1] * y[1] + k[2] * y[2]);
        for (int q = 0; q < C; ++q) out[q] += f[i][q] * ph;
    }
    return out;
}

}  // namespace

cplx evaluate(const FourierScalar& f, const Vec3& y) { return eval_field(f, y)[0]; }
Vec3c evaluate(const FourierOneForm& f, const Vec3& y) { return eval_field(f, y); }
Sym6c evaluate(const FourierSymTensor& f, const Vec3& y) { return eval_field(f, y); }

}  // namespace sdroots
