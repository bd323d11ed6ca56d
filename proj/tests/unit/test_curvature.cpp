#include <cmath>

#include "doctest.h"
#include "sdroots/curvature.hpp"

using namespace sdroots;

namespace {

const double kTwoPi = 2 * M_PI;
const std::array<double, 4> kPeriod{kTwoPi, kTwoPi, kTwoPi, kTwoPi};

MetricGrid4D perturbed(int N, double amp, std::uint64_t seed, unsigned mask = 7u, int t_modes = 1) {
    FieldRng rng(seed);
    const ModeSpace s{{kTwoPi, kTwoPi, kTwoPi}, 1};
    const auto h = sample_split_tensor(random_periodic_variation(s, 1, t_modes, kTwoPi, mask, rng), {N, N, N, N}, kPeriod);
    MetricGrid4D g = MetricGrid4D::flat({N, N, N, N}, kPeriod);
    for (size_t p = 0; p < g.g.size(); ++p)
        for (int c = 0; c < 10; ++c) g.g[p][c] += amp * h[p][c];
    return g;
}

MetricGrid4D warped(int N, double eps) {
    MetricGrid4D g = MetricGrid4D::flat({N, N, N, N}, kPeriod);
    for (size_t p = 0; p < g.g.size(); ++p) {
        const double t = g.coords(p)[0];
        for (int i = 1; i < 4; ++i) g.g[p][pair4(i, i)] = 1 + eps * std::sin(t);
    }
    return g;
}

// Frame-component Riemann as a full 4-index accessor.
double frame_R(const CurvatureGrid& c, size_t p, int a, int b, int cc, int d) {
    const auto& e = c.frame[p];
    double s = 0;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int r = 0; r < 4; ++r)
                for (int q = 0; q < 4; ++q) s += e(m, a) * e(n, b) * e(r, cc) * e(q, d) * c.riemann_at(p, m, n, r, q);
    return s;
}

}  // namespace

TEST_CASE("flat product metric has no curvature") {
    const auto c = christoffel_riemann(MetricGrid4D::flat({8, 8, 8, 8}, kPeriod));
    CHECK(c.max_riemann < 1e-12);
    const auto w = wminus_bilinear(c);
    for (auto& v : w.w)
        for (double x : v) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("metric validation") {
    auto g = MetricGrid4D::flat({8, 8, 8, 8}, kPeriod);
    g.g[17][pair4(1, 1)] = -1.0;
    CHECK_THROWS_AS(christoffel_riemann(g), CurvatureError);
    CHECK_THROWS_AS(MetricGrid4D::flat({2, 8, 8, 8}, kPeriod), CurvatureError);
}

TEST_CASE("warped metric: block Christoffel entries and R_0101") {
    const double eps = 0.1;
    const auto g = warped(16, eps);
    const auto c = christoffel_riemann(g);
    for (size_t p = 0; p < g.g.size(); p += 97) {
        const double t = g.coords(p)[0];
        const double gd = eps * std::cos(t), gdd = -eps * std::sin(t), gy = 1 + eps * std::sin(t);
        CHECK(c.christoffel_at(p, 0, 1, 1) == doctest::Approx(-0.5 * gd).epsilon(1e-12));
        CHECK(c.christoffel_at(p, 1, 1, 0) == doctest::Approx(0.5 * gd / gy).epsilon(1e-12));
        // a² = g_11: R_0101 = −aä = −½g̈ + ¼ġ²/g
        CHECK(std::abs(c.riemann_at(p, 0, 1, 0, 1) - (-0.5 * gdd + 0.25 * gd * gd / gy)) < 1e-12);
        CHECK(std::abs(c.riemann_at(p, 0, 1, 2, 3)) < 1e-12);
    }
}

TEST_CASE("warped metric: R_0i0j − (−½ g̈) is second order in ε") {
    auto defect = [](double eps) {
        const auto g = warped(8, eps);
        const auto c = christoffel_riemann(g);
        double m = 0;
        for (size_t p = 0; p < g.g.size(); ++p) {
            const double t = g.coords(p)[0];
            m = std::max(m, std::abs(c.riemann_at(p, 0, 2, 0, 2) - 0.5 * eps * std::sin(t)));
        }
        return m;
    };
    const double ratio = defect(0.02) / defect(0.01);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("t-independent product: mixed Riemann components vanish") {
    const auto g = perturbed(8, 0.1, 3, 4u, 0);
    const auto c = christoffel_riemann(g);
    CHECK(c.max_riemann > 1e-3);
    double m = 0;
    for (size_t p = 0; p < g.g.size(); ++p)
        for (int i = 1; i < 4; ++i)
            for (int j = 1; j < 4; ++j)
                for (int k = 1; k < 4; ++k) {
                    m = std::max(m, std::abs(c.riemann_at(p, 0, i, j, k)));
                    m = std::max(m, std::abs(c.riemann_at(p, 0, i, 0, k)));
                }
    CHECK(m < 1e-12);
}

TEST_CASE("Riemann symmetries, Bianchi, trace-free W⁻ and the Ω shortcut") {
    const auto c = christoffel_riemann(perturbed(8, 0.15, 21));
    CHECK(c.max_riemann > 1e-2);
    CHECK(c.symmetry_residual < 1e-10);
    CHECK(c.bianchi_residual < 1e-10);
    const auto w = wminus_bilinear(c);
    CHECK(w.max_trace < 1e-10);
    CHECK(w.omega_shortcut_residual < 1e-10);
    CHECK(w.max_raw_trace_defect < 1e-10);
}

TEST_CASE("Ω equals −E(g_Y) for t-independent g_Y") {
    const auto c = christoffel_riemann(perturbed(8, 0.1, 8, 4u, 0));
    const auto w = wminus_bilinear(c);
    const auto ric = frame_ricci(c);
    double m = 0, scale = 0;
    for (size_t p = 0; p < ric.size(); ++p) {
        Eigen::Matrix3d E = ric[p].bottomRightCorner<3, 3>();
        E -= (E.trace() / 3) * Eigen::Matrix3d::Identity();
        const auto& o = w.omega[p];
        const double om[6] = {o[0], o[1], o[2], o[3], o[4], o[5]};
        const double e[6] = {E(0, 0), E(0, 1), E(0, 2), E(1, 1), E(1, 2), E(2, 2)};
        for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(om[i] + e[i])), scale = std::max(scale, std::abs(e[i]));
    }
    CHECK(scale > 1e-3);
    CHECK(m < 1e-10 * scale);
}

TEST_CASE("W⁻ read from the Weyl tensor equals W⁻ read from Riemann") {
    const auto c = christoffel_riemann(perturbed(8, 0.15, 4));
    const auto w = wminus_bilinear(c);
    const auto ric = frame_ricci(c);
    const int eps3[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}, {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                               {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    double m = 0;
    for (size_t p = 0; p < c.riemann.size(); p += 61) {
        const double scal = ric[p].trace();
        auto R = [&](int a, int b, int cc, int d) { return frame_R(c, p, a, b, cc, d); };
        auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
        auto W = [&](int a, int b, int cc, int dd) {
            // 4D Weyl tensor in an orthonormal frame
            return R(a, b, cc, dd) -
                   0.5 * (ric[p](a, cc) * d(b, dd) - ric[p](a, dd) * d(b, cc) + ric[p](b, dd) * d(a, cc) -
                          ric[p](b, cc) * d(a, dd)) +
                   scal / 6.0 * (d(a, cc) * d(b, dd) - d(a, dd) * d(b, cc));
        };
        Eigen::Matrix3d M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double phi = W(0, i + 1, 0, j + 1), psi = 0, om = 0;
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) {
                        psi += 0.5 * eps3[j][k][l] * W(0, i + 1, k + 1, l + 1) +
                               0.5 * eps3[i][k][l] * W(0, j + 1, k + 1, l + 1);
                        for (int a = 0; a < 3; ++a)
                            for (int b = 0; b < 3; ++b)
                                om += 0.25 * eps3[i][k][l] * eps3[j][a][b] * W(k + 1, l + 1, a + 1, b + 1);
                    }
                M(i, j) = phi - psi + om;
            }
        M -= (M.trace() / 3) * Eigen::Matrix3d::Identity();
        const auto& v = w.w[p];
        const double got[6] = {v[0], v[1], v[2], v[3], v[4], v[5]};
        const double exp[6] = {M(0, 0), M(0, 1), M(0, 2), M(1, 1), M(1, 2), M(2, 2)};
        for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(got[i] - exp[i]));
    }
    CHECK(m < 1e-10);
}

TEST_CASE("conformal invariance of W⁻") {
    const auto g = perturbed(16, 0.15, 12);
    const ModeSpace s{{kTwoPi, kTwoPi, kTwoPi}, 1};
    FieldRng rng(77);
    const auto f = sample_split_tensor(random_periodic_variation(s, 1, 1, kTwoPi, 1u, rng), g.n, kPeriod);
    MetricGrid4D gf = g;
    for (size_t p = 0; p < g.g.size(); ++p)
        for (int c = 0; c < 10; ++c) gf.g[p][c] *= std::exp(2 * 0.05 * f[p][0]);
    const auto w0 = wminus_bilinear(christoffel_riemann(g));
    const auto w1 = wminus_bilinear(christoffel_riemann(gf));
    double m = 0, scale = 0;
    for (size_t p = 0; p < g.g.size(); ++p) {
        const double e2f = std::exp(2 * 0.05 * f[p][0]);
        for (int i = 0; i < 6; ++i) {
            m = std::max(m, std::abs(e2f * w1.w[p][i] - w0.w[p][i]));
            scale = std::max(scale, std::abs(w0.w[p][i]));
        }
    }
    CHECK(scale > 1e-2);
    CHECK(m < 1e-8 * scale);
}

TEST_CASE("sampling rejects non-periodic or unresolved fields") {
    const ModeSpace s{{kTwoPi, kTwoPi, kTwoPi}, 1};
    FourierScalar u(s);
    u.at(0, 0, 0)[0] = 1.0;
    const SplitTensor v{u, FourierOneForm(s), FourierSymTensor(s)};
    CHECK_THROWS_AS(sample_split_tensor(CylTensor::single(0.5, 0, v), {8, 8, 8, 8}, kPeriod), CurvatureError);
    CHECK_THROWS_AS(sample_split_tensor(CylTensor::single(cplx(0, 0.5), 0, v), {8, 8, 8, 8}, kPeriod),
                    CurvatureError);
    CHECK_THROWS_AS(sample_split_tensor(CylTensor::single(cplx(0, 4), 0, v), {8, 8, 8, 8}, kPeriod),
                    CurvatureError);
    const auto ok = sample_split_tensor(CylTensor::single(0.0, 0, v), {8, 8, 8, 8}, kPeriod);
    CHECK(ok[5][0] == doctest::Approx(1.0));
}

TEST_CASE("finite-difference linearization: single h mode and α variation") {
    const ModeSpace s{{kTwoPi, kTwoPi, kTwoPi}, 1};
    FourierSymTensor h(s);
    h.at(0, 1, 0) = {0.4, 0.0, 0.2, -0.1, 0.3, -0.3};
    h.at(0, -1, 0) = h.at(0, 1, 0);
    CylTensor ht;
    ht.add(cplx(0, 1), 0, SplitTensor{FourierScalar(s), FourierOneForm(s), h});
    ht.add(cplx(0, -1), 0, SplitTensor{FourierScalar(s), FourierOneForm(s), h});
    const auto r = fd_linearization_check(ht, 1e-4, 8, kPeriod);
    CHECK(r.d_norm > 0.1);
    CHECK(r.rel_error < 1e-6);

    FieldRng rng(9);
    const auto a = random_periodic_variation(s, 1, 1, kTwoPi, 2u, rng);
    const auto ra = fd_linearization_check(a, 1e-4, 8, kPeriod);
    const auto rb = fd_linearization_check(a, 5e-5, 8, kPeriod);
    CHECK(ra.rel_error < 1e-6);
    CHECK(ra.rel_error / rb.rel_error > 3.5);
}

TEST_CASE("norm dump is valid JSON text") {
    const auto c = christoffel_riemann(MetricGrid4D::flat({4, 4, 4, 4}, kPeriod));
    const auto s = curvature_norms_json(c, wminus_bilinear(c));
    CHECK(s.find("\"bianchi_residual\"") != std::string::npos);
}
