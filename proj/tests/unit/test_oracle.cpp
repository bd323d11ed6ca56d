#include <cmath>

#include "doctest.h"
#include "sdroots/oracle.hpp"

using namespace sdroots;

namespace {
std::vector<cplx> values(const std::vector<RawRoot>& r) {
    std::vector<cplx> out;
    for (auto& x : r) {
        out.push_back(x.value);
        if (x.jordan) out.push_back(x.value);
    }
    return out;
}
const std::array<double, 3> kCube{2 * M_PI, 2 * M_PI, 2 * M_PI};
}  // namespace

TEST_CASE("companion matrix of a scalar quadratic") {
    OdeSystem s;
    s.order = 2;
    s.coefficients = {Eigen::MatrixXcd::Constant(1, 1, -4.0), Eigen::MatrixXcd::Zero(1, 1),
                      Eigen::MatrixXcd::Identity(1, 1)};
    const auto r = companion_roots(s);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] + 2.0) < 1e-12);
    CHECK(std::abs(r[1] - 2.0) < 1e-12);
    s.coefficients.back().setZero();
    CHECK_THROWS_AS(companion_matrix(s), OracleError);
}

TEST_CASE("clusters detect a Jordan block") {
    OdeSystem s;  // (d/dt − 1)² : f̈ − 2ḟ + f
    s.order = 2;
    s.coefficients = {Eigen::MatrixXcd::Constant(1, 1, 1.0), Eigen::MatrixXcd::Constant(1, 1, -2.0),
                      Eigen::MatrixXcd::Identity(1, 1)};
    const auto c = companion_clusters(s, 1e-6);
    REQUIRE(c.size() == 1);
    CHECK(c[0].algebraic == 2);
    CHECK(c[0].geometric == 1);
    CHECK(c[0].jordan());
}

TEST_CASE("matrix A reproduces the mixed scalar closed forms") {
    for (int kappa : {-1, 0, 1})
        for (double mu : {0.0, 1.0, 3.0, 8.0, 15.0, 48.0}) {
            const auto cmp = compare_root_sets(values(mixed_a_roots(mu, kappa)), companion_roots(matrixA(mu, kappa)),
                                               1e-6);
            CHECK_MESSAGE(cmp.matched, "mu=" << mu << " kappa=" << kappa);
        }
    // frozen entries of the printed matrix for μ = 8, κ = 1
    const auto A = matrixA_entries(8.0, 1);
    CHECK(A.rows() == 4);
    CHECK(std::isfinite(A.norm()));
}

TEST_CASE("type-3 and mixed-b ODEs") {
    for (int kappa : {-1, 0, 1}) {
        const double lam = kappa == 1 ? 13.0 : 7.0;
        std::vector<cplx> num;
        for (int h : {+1, -1})
            for (auto v : companion_roots(type3_ode(lam, kappa, h))) num.push_back(v);
        CHECK(compare_root_sets(values(type3_roots(lam, kappa)), num, 1e-6).matched);
        CHECK(compare_root_sets(values(mixed_b_roots(9.0, kappa)), companion_roots(mixed_b_ode(9.0, kappa)), 1e-9)
                  .matched);
    }
}

TEST_CASE("root-set matching") {
    CHECK(compare_root_sets({1.0, 2.0}, {2.0, 1.0}, 1e-9).matched);
    CHECK_FALSE(compare_root_sets({1.0, 2.0}, {1.0}, 1e-9).matched);
    CHECK_FALSE(compare_root_sets({1.0}, {1.0, 5.0}, 1e-9).matched);
    CHECK(compare_root_sets({1.0}, {1.0, 5.0}, 1e-9, 4.0).matched);  // 5 is beyond the truncation bound
    // greedy would pair 1.0 with 1.05 and strand 1.1; augmenting paths recover
    CHECK(compare_root_sets({1.0, 1.1}, {1.05, 0.96}, 0.08).matched);
}

TEST_CASE("catalogs agree with the ODE oracle") {
    for (const auto& cs : {CrossSectionSpec::sphere(), CrossSectionSpec::torus(kCube)})
        for (auto& c : verify_catalog_with_oracle(assemble_catalog(cs, 8))) CHECK_MESSAGE(c.cmp.matched, c.label);
}

TEST_CASE("flat pencil at the zero mode has 14 solutions at 0") {
    const auto cl = companion_clusters(flat_mode_pencil({0, 0, 0}, kCube), 1e-6, 1e-7);
    REQUIRE(cl.size() == 1);
    CHECK(std::abs(cl[0].value) < 1e-12);
    CHECK(cl[0].algebraic == 14);
    CHECK(cl[0].geometric == 9);  // 3dt²−g, dt⊙ω (3), B (5); tB gives 5 chains of length 2
}

TEST_CASE("flat pencil sweep") {
    const auto modes = flat_pencil_sweep(kCube, 9);
    CHECK(modes.size() == 123);
    for (auto& m : modes) {
        CHECK(m.ok);
        CHECK(m.pencil_dim == 14);
        if (m.eigenvalue > 0) {
            // observed structure: 3 chains of length 2 and one simple root at each of ±√s
            REQUIRE(m.clusters.size() == 2);
            for (auto& c : m.clusters) {
                CHECK(c.algebraic == 7);
                CHECK(c.geometric == 4);
            }
            CHECK_FALSE(m.chains_agree);
        } else {
            CHECK(m.chains_agree);
        }
    }
}
