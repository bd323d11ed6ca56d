#include "sdroots/identities.hpp"

#include <algorithm>
#include <cmath>

namespace sdroots {
namespace {

template <class F>
double rel(const F& lhs, const F& rhs, double input_scale) {
    const double scale = std::max({lhs.norm(), rhs.norm(), input_scale, 1e-300});
    return (lhs - rhs).norm() / scale;
}

template <class V>
double poly_norm(const ExpPoly<V>& p) { return p.coefficient_norm(); }

// Co-closed projection, mode by mode: ω − k(k·ω)/|k|².
FourierOneForm coclosed_part(const FourierOneForm& w) {
    return apply_symbol<3>(w, [](const Vec3& k, Vec3c v) {
        const double kk = symbol::k2(k);
        if (kk == 0) return v;
        const cplx kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        for (int i = 0; i < 3; ++i) v[i] -= k[i] * kv / kk;
        return v;
    });
}

double kmax(const ModeSpace& s, int max_mode) {
    const double tp = 2.0 * 3.141592653589793;
    double m = 0;
    for (double L : s.lengths) m = std::max(m, tp * max_mode / L);
    return std::max(1.0, std::sqrt(3.0) * m);
}

}  // namespace

std::vector<IdentityResult> run_identity_suite(const IdentitySuiteConfig& cfg) {
    if (cfg.N < 4 || (cfg.N & (cfg.N - 1)) != 0 || cfg.N > 32)
        throw FieldError("N must be a power of two in [4, 32]");
    const ModeSpace S{cfg.lengths, cfg.N / 2};
    const int mm = std::min(3, S.band - 1);
    FieldRng rng(cfg.seed);

    const FourierSymTensor h = random_sym(S, mm, rng);
    const FourierSymTensor h2 = random_sym(S, mm, rng);
    const FourierOneForm w = random_oneform(S, mm, rng);
    const FourierScalar u = random_scalar(S, mm, rng);
    const double K = kmax(S, mm);
    const double nh = h.norm(), nw = w.norm(), nu = u.norm();

    std::vector<IdentityResult> out;
    auto push = [&](std::string name, std::string formula, double r) {
        out.push_back({std::move(name), std::move(formula), r, cfg.tolerance, r < cfg.tolerance});
    };

    // 1
    {
        const auto lhs = slash_d(slash_d(h));
        const auto rhs = -4.0 * laplacian(trace_free(h)) - 2.0 * traceless_hessian(trace(h)) + 3.0 * conf_killing_3d(div(h));
        push("slash_d_squared", "sd(sd h) = -4 Lap tf h - 2 Hess0 tr h + 3 K(div h)", rel(lhs, rhs, nh * K * K));
    }
    // 2
    push("div_slash_d", "div(sd h) = *d(div h)", rel(div(slash_d(h)), hodge_star_d(div(h)), nh * K * K));
    // 3
    push("slash_d_commutes_with_laplacian", "sd(Lap h) = Lap(sd h)",
         rel(slash_d(laplacian(h)), laplacian(slash_d(h)), nh * K * K * K));
    // 4
    {
        const double r1 = rel(div(conf_killing_3d(w)), laplacian(w) + (1.0 / 3.0) * grad(div(w)), nw * K * K);
        const double r2 = rel(laplacian(conf_killing_3d(w)), conf_killing_3d(laplacian(w)), nw * K * K * K);
        const double r3 = rel(box_k_3d(w), div(conf_killing_3d(w)), nw * K * K);
        push("div_conformal_killing", "div K(w) = Lap w + 1/3 d div w; Lap K = K Lap", std::max({r1, r2, r3}));
    }
    // 5
    {
        const cplx a = slash_d(h).inner(h2), b = h.inner(slash_d(h2));
        const double scale = std::max({std::abs(a), std::abs(b), slash_d(h).norm() * h2.norm(), 1e-300});
        push("slash_d_self_adjoint", "<sd h, h'> = <h, sd h'>", std::abs(a - b) / scale);
    }
    // 6
    {
        const double r1 = trace(slash_d(h)).norm() / std::max(slash_d(h).norm(), nh * K);
        const double r2 = slash_d(metric_times(u)).norm() / std::max(1e-300, nu * K);
        push("slash_d_trace_free_and_conformal", "tr(sd h) = 0; sd(u g) = 0", std::max(r1, r2));
    }
    // 7
    push("slash_d_of_lie", "sd(L w) = K(*d w)", rel(slash_d(lie_3d(w)), conf_killing_3d(hodge_star_d(w)), nw * K * K));
    // 8
    {
        const auto rhs = 0.125 * slash_d(slash_d(h)) - 0.25 * traceless_hessian(trace(h)) + 0.125 * conf_killing_3d(div(h));
        push("e_prime_via_slash_d", "E'(h) = 1/8 sd^2 h - 1/4 Hess0 tr h + 1/8 K(div h)", rel(e_prime(h), rhs, nh * K * K));
    }
    // 9
    {
        CylOneForm wt;
        const cplx rates[] = {0.0, 0.7, cplx(0, 1.3), cplx(-0.4, 0.9)};
        for (cplx r : rates)
            for (int d = 0; d <= 2; ++d)
                wt.add(r, d, SplitOneForm{random_scalar(S, mm, rng), random_oneform(S, mm, rng)});
        const double in = poly_norm(wt) * K * K * 4.0;
        const CylSym DK = linearized_weyl(cyl_killing(wt));
        const double r1 = poly_norm(DK) / in;
        const CylOneForm a = cyl_box_k(wt), b = cyl_div(cyl_killing(wt));
        const double r2 = poly_norm(a - b) / std::max({poly_norm(a), poly_norm(b), in});
        push("weyl_kills_conformal_killing", "D(K_g w) = 0; box_K w = div_g K_g w", std::max(r1, r2));
    }
    // 10
    {
        const FourierOneForm c = coclosed_part(w);
        push("curl_squared_coclosed", "(*d)^2 w = Lap_H w for div w = 0",
             rel(hodge_star_d(hodge_star_d(c)), hodge_laplacian(c), c.norm() * K * K));
    }
    // 11
    {
        double worst = 0;
        auto track = [&](double v) { worst = std::max(worst, v); };
        FourierScalar one(S);
        one.at(0, 0, 0)[0] = 1.0;
        FourierOneForm w0(S);
        w0.at(0, 0, 0) = {0.3, -1.1, 0.7};
        FourierSymTensor B(S);
        B.at(0, 0, 0) = {0.5, 0.2, -0.4, -1.3, 0.9, 0.8};  // traceless
        const double in = 1.0 + w0.norm() + B.norm();

        auto check_F = [&](const CylTensor& ht) {
            track(poly_norm(linearized_weyl(ht)) / in);
            track(poly_norm(cyl_div(ht)) / in);
        };
        // 3dt² − g
        check_F(CylTensor::single(0.0, 0, SplitTensor{3.0 * one, FourierOneForm(S), -1.0 * metric_times(one)}));
        // dt⊙ω0
        check_F(CylTensor::single(0.0, 0, SplitTensor{FourierScalar(S), w0, FourierSymTensor(S)}));
        // B, tB
        check_F(CylTensor::single(0.0, 0, SplitTensor{FourierScalar(S), FourierOneForm(S), B}));
        check_F(CylTensor::single(0.0, 1, SplitTensor{FourierScalar(S), FourierOneForm(S), B}));
        // F*(Z, ω̃) = D*Z − K_g ω̃
        track(poly_norm(cyl_killing(CylOneForm::single(0.0, 0, SplitOneForm{one, FourierOneForm(S)}))) / in);
        track(poly_norm(cyl_killing(CylOneForm::single(0.0, 0, SplitOneForm{FourierScalar(S), w0}))) / in);
        track(poly_norm(adjoint_D(CylSym::single(0.0, 0, SymValue{B}))) / in);
        track(poly_norm(adjoint_D(CylSym::single(0.0, 1, SymValue{B}))) / in);
        push("flat_kernel_cokernel_elements", "F and F* vanish on the 14 flat kernel/cokernel elements", worst);
    }
    return out;
}

}  // namespace sdroots
