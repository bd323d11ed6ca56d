#include "sdroots/curvature.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include "json.hpp"

namespace sdroots {
namespace {

constexpr double kTwoPi = 6.283185307179586;

// Bivector basis (01, 02, 03, 23, 31, 12).
constexpr int kBiv[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

// (a, b) → (bivector index, sign); sign 0 when a == b.
std::pair<int, int> biv_of(int a, int b) {
    for (int I = 0; I < 6; ++I) {
        if (kBiv[I][0] == a && kBiv[I][1] == b) return {I, 1};
        if (kBiv[I][0] == b && kBiv[I][1] == a) return {I, -1};
    }
    return {0, 0};
}

double biv_component(const Bivector6& B, int a, int b, int c, int d) {
    const auto [I, s1] = biv_of(a, b);
    const auto [J, s2] = biv_of(c, d);
    return s1 * s2 == 0 ? 0.0 : s1 * s2 * B(I, J);
}

class Fft4 {
public:
    explicit Fft4(std::array<int, 4> n) : n_(n), size_(size_t(n[0]) * n[1] * n[2] * n[3]) {
        buf_ = fftw_alloc_complex(size_);
        if (!buf_) throw CurvatureError("FFT buffer allocation failed");
        fwd_ = fftw_plan_dft(4, n_.data(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(4, n_.data(), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft4() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Fft4(const Fft4&) = delete;
    Fft4& operator=(const Fft4&) = delete;

    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }
    size_t size() const { return size_; }
    void forward() { fftw_execute(fwd_); }
    void backward() { fftw_execute(bwd_); }

private:
    std::array<int, 4> n_;
    size_t size_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_{}, bwd_{};
};

int signed_mode(int i, int N) { return i <= (N - 1) / 2 ? i : i - N; }
bool is_nyquist(int i, int N) { return N % 2 == 0 && i == N / 2; }

void check_grid(const std::array<int, 4>& n, const std::array<double, 4>& period) {
    for (int a = 0; a < 4; ++a) {
        if (n[a] < 4) throw CurvatureError("grid needs at least 4 points per direction");
        if (!(period[a] > 0) || !std::isfinite(period[a])) throw CurvatureError("periods must be positive");
    }
}

void tf3(Eigen::Matrix3d& m) { m -= (m.trace() / 3.0) * Eigen::Matrix3d::Identity(); }

std::array<double, 6> pack(const Eigen::Matrix3d& m) {
    return {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
}

// Walks a CylTensor/CylSym term list and fills the 4D spectrum of each component.
// `get(v, comp, i)` reads coefficient i of component comp; the lattice comes from `space(v)`.
template <int C, class V, class Space, class Get>
std::vector<std::array<double, C>> sample_components(const ExpPoly<V>& f, std::array<int, 4> n,
                                                     std::array<double, 4> period, Space&& space, Get&& get) {
    check_grid(n, period);
    Fft4 fft(n);
    const size_t total = fft.size();
    std::vector<std::array<double, C>> out(total);
    auto idx = [&](int m0, int a, int b, int c) {
        auto wrap = [](int v, int N) { return ((v % N) + N) % N; };
        return ((size_t(wrap(m0, n[0])) * n[1] + wrap(a, n[1])) * n[2] + wrap(b, n[2])) * n[3] + wrap(c, n[3]);
    };
    for (int comp = 0; comp < C; ++comp) {
        std::fill(fft.data(), fft.data() + total, std::complex<double>(0.0));
        for (auto& [key, v] : f.terms()) {
            if (key.degree != 0 || key.re != 0.0)
                throw CurvatureError("grid sampling needs t-periodic terms (imaginary rates, degree 0)");
            const double mr = key.im * period[0] / kTwoPi;
            const int m0 = int(std::lround(mr));
            if (std::abs(mr - m0) > 1e-9) throw CurvatureError("rate is not commensurate with the t period");
            const ModeSpace& s = space(v);
            for (int a = 0; a < 3; ++a)
                if (std::abs(s.lengths[a] - period[a + 1]) > 1e-12 * period[a + 1])
                    throw CurvatureError("field lattice does not match grid periods");
            for (size_t i = 0; i < s.size(); ++i) {
                const cplx c = get(v, comp, i);
                if (c == cplx(0.0)) continue;
                const auto xi = s.mode(i);
                if (2 * std::abs(m0) >= n[0] || 2 * std::abs(xi[0]) >= n[1] || 2 * std::abs(xi[1]) >= n[2] ||
                    2 * std::abs(xi[2]) >= n[3])
                    throw CurvatureError("field is not resolved by the grid");
                fft.data()[idx(m0, xi[0], xi[1], xi[2])] += c;
            }
        }
        fft.backward();
        double re_max = 0, im_max = 0;
        for (size_t p = 0; p < total; ++p) {
            re_max = std::max(re_max, std::abs(fft.data()[p].real()));
            im_max = std::max(im_max, std::abs(fft.data()[p].imag()));
            out[p][comp] = fft.data()[p].real();
        }
        if (im_max > 1e-9 * std::max(1.0, re_max)) throw CurvatureError("sampled field is not real");
    }
    return out;
}

}  // namespace

MetricGrid4D MetricGrid4D::flat(std::array<int, 4> n, std::array<double, 4> period) {
    check_grid(n, period);
    MetricGrid4D m;
    m.n = n;
    m.period = period;
    m.g.assign(m.size(), std::array<double, 10>{1, 0, 0, 0, 1, 0, 0, 1, 0, 1});
    return m;
}

std::array<double, 4> MetricGrid4D::coords(size_t p) const {
    std::array<double, 4> x{};
    for (int a = 3; a >= 0; --a) {
        x[a] = period[a] * double(p % n[a]) / n[a];
        p /= n[a];
    }
    return x;
}

Eigen::Matrix4d MetricGrid4D::at(size_t p) const {
    Eigen::Matrix4d G;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) G(a, b) = g[p][pair4(a, b)];
    return G;
}

void MetricGrid4D::validate() const {
    check_grid(n, period);
    if (g.size() != size()) throw CurvatureError("metric sample count does not match grid");
    for (size_t p = 0; p < g.size(); ++p) {
        for (double v : g[p])
            if (!std::isfinite(v)) throw CurvatureError("metric sample is not finite");
        Eigen::LLT<Eigen::Matrix4d> llt(at(p));
        if (llt.info() != Eigen::Success) throw CurvatureError("metric is not positive definite at a sample");
    }
}

double CurvatureGrid::riemann_at(size_t p, int a, int b, int c, int d) const {
    return biv_component(riemann[p], a, b, c, d);
}

CurvatureGrid christoffel_riemann(const MetricGrid4D& m) {
    m.validate();
    const auto& n = m.n;
    Fft4 fft(n);
    const size_t total = fft.size();

    // Spectral first and second derivatives of each metric component.
    std::vector<std::array<double, 10>> dg[4];
    std::vector<std::array<double, 10>> ddg[10];
    for (auto& v : dg) v.resize(total);
    for (auto& v : ddg) v.resize(total);

    std::array<std::vector<double>, 4> k;
    std::array<std::vector<char>, 4> nyq;
    for (int a = 0; a < 4; ++a) {
        k[a].resize(n[a]);
        nyq[a].resize(n[a]);
        for (int i = 0; i < n[a]; ++i) {
            k[a][i] = kTwoPi * (is_nyquist(i, n[a]) ? n[a] / 2 : signed_mode(i, n[a])) / m.period[a];
            nyq[a][i] = is_nyquist(i, n[a]);
        }
    }
    std::vector<std::complex<double>> spec(total);
    std::vector<std::array<int, 4>> ix(total);
    for (size_t p = 0; p < total; ++p) {
        size_t q = p;
        for (int a = 3; a >= 0; --a) {
            ix[p][a] = int(q % n[a]);
            q /= n[a];
        }
    }
    const double inv = 1.0 / double(total);
    for (int comp = 0; comp < 10; ++comp) {
        for (size_t p = 0; p < total; ++p) fft.data()[p] = m.g[p][comp];
        fft.forward();
        std::copy(fft.data(), fft.data() + total, spec.begin());
        for (int a = 0; a < 4; ++a) {
            for (size_t p = 0; p < total; ++p) {
                const int i = ix[p][a];
                fft.data()[p] = nyq[a][i] ? 0.0 : spec[p] * std::complex<double>(0.0, k[a][i] * inv);
            }
            fft.backward();
            for (size_t p = 0; p < total; ++p) dg[a][p][comp] = fft.data()[p].real();
        }
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                for (size_t p = 0; p < total; ++p) {
                    const int i = ix[p][a], j = ix[p][b];
                    const bool zero = a != b && (nyq[a][i] || nyq[b][j]);
                    fft.data()[p] = zero ? 0.0 : spec[p] * (-k[a][i] * k[b][j] * inv);
                }
                fft.backward();
                for (size_t p = 0; p < total; ++p) ddg[pair4(a, b)][p][comp] = fft.data()[p].real();
            }
    }

    CurvatureGrid out;
    out.n = n;
    out.period = m.period;
    out.christoffel.resize(total);
    out.riemann.resize(total);
    out.frame.resize(total);
    double sym_res = 0, bianchi_res = 0, rmax = 0;

    for (size_t p = 0; p < total; ++p) {
        const Eigen::Matrix4d G = m.at(p);
        const Eigen::Matrix4d Gi = G.inverse();
        auto D1 = [&](int c, int a, int b) { return dg[c][p][pair4(a, b)]; };  // ∂_c g_ab
        auto D2 = [&](int c, int d, int a, int b) { return ddg[pair4(c, d)][p][pair4(a, b)]; };

        double low[4][10];  // Γ_{f,bc}
        for (int f = 0; f < 4; ++f)
            for (int b = 0; b < 4; ++b)
                for (int c = b; c < 4; ++c)
                    low[f][pair4(b, c)] = 0.5 * (D1(c, f, b) + D1(b, f, c) - D1(f, b, c));
        auto& Gam = out.christoffel[p];
        for (int e = 0; e < 4; ++e)
            for (int bc = 0; bc < 10; ++bc) {
                double s = 0;
                for (int f = 0; f < 4; ++f) s += Gi(e, f) * low[f][bc];
                Gam[e * 10 + bc] = s;
            }
        auto gam = [&](int e, int b, int c) { return Gam[e * 10 + pair4(b, c)]; };
        auto R = [&](int a, int b, int c, int d) {
            double v = 0.5 * (D2(b, c, a, d) + D2(a, d, b, c) - D2(b, d, a, c) - D2(a, c, b, d));
            for (int e = 0; e < 4; ++e)
                for (int f = 0; f < 4; ++f) v += G(e, f) * (gam(e, b, c) * gam(f, a, d) - gam(e, b, d) * gam(f, a, c));
            return v;
        };

        Bivector6& B = out.riemann[p];
        for (int I = 0; I < 6; ++I)
            for (int J = 0; J < 6; ++J) B(I, J) = R(kBiv[I][0], kBiv[I][1], kBiv[J][0], kBiv[J][1]);
        rmax = std::max(rmax, B.cwiseAbs().maxCoeff());
        // Pair symmetry and antisymmetry are checked on independently evaluated components.
        for (int I = 0; I < 6; ++I)
            for (int J = 0; J < 6; ++J) {
                const int a = kBiv[I][0], b = kBiv[I][1], c = kBiv[J][0], d = kBiv[J][1];
                sym_res = std::max({sym_res, std::abs(B(I, J) - B(J, I)), std::abs(B(I, J) + R(b, a, c, d))});
            }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = b + 1; c < 4; ++c)
                    for (int d = c + 1; d < 4; ++d)
                        if (b != a && c != a && d != a)
                            bianchi_res = std::max(bianchi_res, std::abs(R(a, b, c, d) + R(a, c, d, b) + R(a, d, b, c)));
                        else
                            bianchi_res = std::max(bianchi_res, std::abs(biv_component(B, a, b, c, d) +
                                                                         biv_component(B, a, c, d, b) +
                                                                         biv_component(B, a, d, b, c)));

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(G);
        out.frame[p] = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
    }
    out.max_riemann = rmax;
    const double scale = rmax > 0 ? rmax : 1.0;
    out.symmetry_residual = sym_res / scale;
    out.bianchi_residual = bianchi_res / scale;
    return out;
}

namespace {

Bivector6 frame_bivector(const CurvatureGrid& c, size_t p) {
    const Eigen::Matrix4d& e = c.frame[p];
    Bivector6 T;
    for (int I = 0; I < 6; ++I)
        for (int J = 0; J < 6; ++J) {
            const int a = kBiv[I][0], b = kBiv[I][1], mu = kBiv[J][0], nu = kBiv[J][1];
            T(I, J) = e(mu, a) * e(nu, b) - e(nu, a) * e(mu, b);
        }
    return T * c.riemann[p] * T.transpose();
}

}  // namespace

WMinusField wminus_bilinear(const CurvatureGrid& c) {
    const size_t total = c.riemann.size();
    WMinusField out;
    out.w.resize(total);
    out.phi.resize(total);
    out.psi.resize(total);
    out.omega.resize(total);
    double shortcut = 0, trace_def = 0, wtrace = 0, scale = 0;
    for (size_t p = 0; p < total; ++p) {
        const Bivector6 Rh = frame_bivector(c, p);
        Eigen::Matrix3d P = Rh.topLeftCorner<3, 3>();
        const Eigen::Matrix3d Q = Rh.topRightCorner<3, 3>();
        Eigen::Matrix3d S = Rh.bottomRightCorner<3, 3>();
        Eigen::Matrix3d Psi = Q + Q.transpose();

        const double raw_trace = P.trace() - Psi.trace() + S.trace();
        const double half_scal = Rh.diagonal().sum();
        trace_def = std::max(trace_def, std::abs(raw_trace - half_scal));

        // Hodge shortcut: −tf(c_Y R), (c_Y R)_jk = Σ_i R_ijik over spatial frame indices.
        Eigen::Matrix3d cy;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0;
                for (int i = 0; i < 3; ++i) s += biv_component(Rh, i + 1, j + 1, i + 1, k + 1);
                cy(j, k) = s;
            }
        Eigen::Matrix3d alt = -cy;
        tf3(alt);
        tf3(P);
        tf3(Psi);
        tf3(S);
        shortcut = std::max(shortcut, (S - alt).cwiseAbs().maxCoeff());
        scale = std::max(scale, Rh.cwiseAbs().maxCoeff());
        const Eigen::Matrix3d W = P - Psi + S;
        wtrace = std::max(wtrace, std::abs(W.trace()));
        out.w[p] = pack(W);
        out.phi[p] = pack(P);
        out.psi[p] = pack(Psi);
        out.omega[p] = pack(S);
    }
    const double s = scale > 0 ? scale : 1.0;
    out.omega_shortcut_residual = shortcut / s;
    out.max_raw_trace_defect = trace_def / s;
    out.max_trace = wtrace;
    return out;
}

std::vector<Eigen::Matrix4d> frame_ricci(const CurvatureGrid& c) {
    std::vector<Eigen::Matrix4d> out(c.riemann.size());
    for (size_t p = 0; p < out.size(); ++p) {
        const Bivector6 Rh = frame_bivector(c, p);
        Eigen::Matrix4d ric = Eigen::Matrix4d::Zero();
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d)
                for (int a = 0; a < 4; ++a) ric(b, d) += biv_component(Rh, a, b, a, d);
        out[p] = ric;
    }
    return out;
}

std::vector<std::array<double, 10>> sample_split_tensor(const CylTensor& ht, std::array<int, 4> n,
                                                        std::array<double, 4> period) {
    return sample_components<10>(
        ht, n, period, [](const SplitTensor& v) -> const ModeSpace& { return v.h.space(); },
        [](const SplitTensor& v, int comp, size_t i) {
            if (comp == 0) return v.h00[i][0];
            if (comp < 4) return v.alpha[i][comp - 1];
            return v.h[i][comp - 4];
        });
}

std::vector<std::array<double, 6>> sample_sym(const CylSym& z, std::array<int, 4> n, std::array<double, 4> period) {
    return sample_components<6>(
        z, n, period, [](const SymValue& v) -> const ModeSpace& { return v.h.space(); },
        [](const SymValue& v, int comp, size_t i) { return v.h[i][comp]; });
}

namespace {

WMinusField wminus_of_perturbation(const std::vector<std::array<double, 10>>& hs, double eps, std::array<int, 4> n,
                                   std::array<double, 4> period) {
    MetricGrid4D g = MetricGrid4D::flat(n, period);
    for (size_t p = 0; p < g.g.size(); ++p)
        for (int c = 0; c < 10; ++c) g.g[p][c] += eps * hs[p][c];
    return wminus_bilinear(christoffel_riemann(g));
}

}  // namespace

FdResult fd_linearization_check(const CylTensor& ht, double eps, int N, std::array<double, 4> period) {
    if (!(eps > 0)) throw CurvatureError("step must be positive");
    const std::array<int, 4> n{N, N, N, N};
    const auto hs = sample_split_tensor(ht, n, period);
    const auto Dg = sample_sym(linearized_weyl(ht), n, period);
    const WMinusField wp = wminus_of_perturbation(hs, eps, n, period);
    const WMinusField wm = wminus_of_perturbation(hs, -eps, n, period);
    double err2 = 0, d2 = 0;
    for (size_t p = 0; p < hs.size(); ++p)
        for (int c = 0; c < 6; ++c) {
            const double fd = (wp.w[p][c] - wm.w[p][c]) / (2 * eps);
            err2 += kSymWeight[c] * (fd - Dg[p][c]) * (fd - Dg[p][c]);
            d2 += kSymWeight[c] * Dg[p][c] * Dg[p][c];
        }
    FdResult r;
    const double np = double(hs.size());
    r.abs_error = std::sqrt(err2 / np);
    r.d_norm = std::sqrt(d2 / np);
    r.rel_error = r.d_norm > 0 ? r.abs_error / r.d_norm : r.abs_error;
    return r;
}

CylTensor random_periodic_variation(const ModeSpace& s, int max_mode, int max_t_mode, double t_period,
                                    unsigned mask, FieldRng& rng) {
    const double w0 = kTwoPi / t_period;
    CylTensor out;
    auto block = [&](bool on, auto make) {
        using F = decltype(make());
        F a = on ? make() : F(s), b = on ? make() : F(s);
        return std::make_pair(a, b);
    };
    for (int m = 0; m <= max_t_mode; ++m) {
        auto [u0, u1] = block(mask & 1u, [&] { return random_scalar(s, max_mode, rng); });
        auto [a0, a1] = block(mask & 2u, [&] { return random_oneform(s, max_mode, rng); });
        auto [h0, h1] = block(mask & 4u, [&] { return random_sym(s, max_mode, rng); });
        if (m == 0) {
            out.add(0.0, 0, SplitTensor{u0, a0, h0});
            continue;
        }
        // e^{imωt}(A + iB) + e^{−imωt}(A − iB) is real.
        const cplx I(0, 1);
        out.add(cplx(0, m * w0), 0, SplitTensor{u0 + I * u1, a0 + I * a1, h0 + I * h1});
        out.add(cplx(0, -m * w0), 0, SplitTensor{u0 - I * u1, a0 - I * a1, h0 - I * h1});
    }
    // Unit mean square per active block.
    double n00 = 0, na = 0, nh = 0;
    for (auto& [k, v] : out.terms()) {
        n00 += v.h00.inner(v.h00).real();
        na += v.alpha.inner(v.alpha).real();
        nh += v.h.inner(v.h).real();
    }
    CylTensor scaled;
    for (auto& [k, v] : out.terms()) {
        SplitTensor t = v;
        if (n00 > 0) t.h00 *= 1.0 / std::sqrt(n00);
        if (na > 0) t.alpha *= 1.0 / std::sqrt(na);
        if (nh > 0) t.h *= 1.0 / std::sqrt(nh);
        scaled.add(k.rate(), k.degree, std::move(t));
    }
    return scaled;
}

std::vector<FdCase> run_fd_battery(const FdBatteryConfig& cfg) {
    const Vec3 L{kTwoPi, kTwoPi, kTwoPi};
    const ModeSpace S{L, 2};
    FieldRng rng(cfg.seed);
    const std::array<double, 4> period{kTwoPi, kTwoPi, kTwoPi, kTwoPi};

    std::vector<std::pair<std::string, CylTensor>> cases;
    {
        // single spatial mode in the h block, one t-frequency
        FourierSymTensor h(S);
        h.at(1, 0, 0) = {0.0, 0.3, cplx(0, 0.2), 0.5, 0.1, -0.5};
        h.at(-1, 0, 0) = {0.0, 0.3, cplx(0, -0.2), 0.5, 0.1, -0.5};
        CylTensor t;
        t.add(cplx(0, 1), 0, SplitTensor{FourierScalar(S), FourierOneForm(S), h});
        t.add(cplx(0, -1), 0, SplitTensor{FourierScalar(S), FourierOneForm(S), h});
        cases.emplace_back("single_mode_h", t);
    }
    cases.emplace_back("h00_only", random_periodic_variation(S, 1, 1, kTwoPi, 1u, rng));
    cases.emplace_back("alpha_only", random_periodic_variation(S, 1, 1, kTwoPi, 2u, rng));
    cases.emplace_back("h_only", random_periodic_variation(S, 2, 1, kTwoPi, 4u, rng));
    cases.emplace_back("h00_alpha", random_periodic_variation(S, 1, 2, kTwoPi, 3u, rng));
    cases.emplace_back("alpha_h", random_periodic_variation(S, 1, 1, kTwoPi, 6u, rng));
    cases.emplace_back("h00_h", random_periodic_variation(S, 1, 1, kTwoPi, 5u, rng));
    cases.emplace_back("all_blocks", random_periodic_variation(S, 1, 1, kTwoPi, 7u, rng));
    {
        // conformal-type: h00 = u, h = −u g/3
        const CylTensor base = random_periodic_variation(S, 1, 1, kTwoPi, 1u, rng);
        CylTensor t;
        for (auto& [k, v] : base.terms())
            t.add(k.rate(), k.degree, SplitTensor{v.h00, FourierOneForm(S), (-1.0 / 3.0) * metric_times(v.h00)});
        cases.emplace_back("conformal_type", t);
    }
    cases.emplace_back("all_blocks_high", random_periodic_variation(S, 2, 2, kTwoPi, 7u, rng));

    std::vector<FdCase> out;
    for (auto& [name, ht] : cases) {
        FdCase c;
        c.name = name;
        c.at_eps = fd_linearization_check(ht, cfg.eps, cfg.N, period);
        c.at_half_eps = fd_linearization_check(ht, cfg.eps / 2, cfg.N, period);
        c.order_ratio = c.at_half_eps.rel_error > 0 ? c.at_eps.rel_error / c.at_half_eps.rel_error : 0.0;
        c.pass = c.at_eps.rel_error <= cfg.tolerance && c.order_ratio >= cfg.min_ratio;
        out.push_back(std::move(c));
    }
    return out;
}

std::string curvature_norms_json(const CurvatureGrid& c, const WMinusField& w) {
    double wmax = 0, w2 = 0;
    for (auto& v : w.w)
        for (int i = 0; i < 6; ++i) {
            wmax = std::max(wmax, std::abs(v[i]));
            w2 += kSymWeight[i] * v[i] * v[i];
        }
    nlohmann::json j;
    j["grid"] = c.n;
    j["period"] = c.period;
    j["max_riemann"] = c.max_riemann;
    j["symmetry_residual"] = c.symmetry_residual;
    j["bianchi_residual"] = c.bianchi_residual;
    j["omega_shortcut_residual"] = w.omega_shortcut_residual;
    j["wminus_max"] = wmax;
    j["wminus_rms"] = w.w.empty() ? 0.0 : std::sqrt(w2 / double(w.w.size()));
    return j.dump(2);
}

}  // namespace sdroots
