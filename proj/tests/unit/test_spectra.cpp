#include <cmath>
#include <map>

#include "doctest.h"
#include "sdroots/spectra.hpp"

using namespace sdroots;

TEST_CASE("sphere closed forms") {
    CHECK(sphere_scalar_eigenvalue(0) == 0);
    CHECK(sphere_scalar_eigenvalue(2) == 8);
    CHECK(sphere_scalar_eigenvalue(3) == 15);
    CHECK(sphere_coclosed_eigenvalue(1) == 4);
    CHECK(sphere_coclosed_eigenvalue(2) == 9);
    CHECK(sphere_coclosed_eigenvalue(5) == 36);
    CHECK(sphere_tt_eigenvalue(2) == 6);
    CHECK(sphere_tt_eigenvalue(3) == 13);
    CHECK(sphere_tt_eigenvalue(4) == 22);
    CHECK_THROWS_AS(sphere_coclosed_eigenvalue(0), SpectrumError);
    CHECK_THROWS_AS(sphere_tt_eigenvalue(1), SpectrumError);
    CHECK_THROWS_AS(sphere_scalar_eigenvalue(-1), SpectrumError);
}

TEST_CASE("tt eigenvalue plus three is a perfect square") {
    for (int j = 2; j <= 60; ++j) CHECK(sphere_tt_eigenvalue(j) + 3 == double((j + 1) * (j + 1)));
}

TEST_CASE("sphere multiplicities") {
    CHECK(sphere_scalar_multiplicity(3) == 16);
    CHECK(sphere_coclosed_multiplicity(1) == 6);
    CHECK(sphere_tt_multiplicity(2) == 10);
    const auto tt = sphere_spectrum(SphereGeometry{}, OperatorKind::DivFreeTTRough, 5);
    REQUIRE(tt.size() == 4);
    CHECK(tt.front().j == 2);
    CHECK(tt.back().multiplicity == 2 * 4 * 8);
}

TEST_CASE("torus spectrum on the 2π cube") {
    const std::array<double, 3> L{2 * M_PI, 2 * M_PI, 2 * M_PI};
    const auto s = torus_spectrum(L, OperatorKind::ScalarHodge, 4.5);
    REQUIRE(s.size() == 5);
    const long mult[] = {1, 6, 12, 8, 6};
    for (int i = 0; i < 5; ++i) {
        CHECK(s[i].eigenvalue == doctest::Approx(i).epsilon(1e-12));
        CHECK(s[i].multiplicity == mult[i]);
    }
    const auto tt = torus_spectrum(L, OperatorKind::DivFreeTTRough, 0.5);
    REQUIRE(tt.size() == 1);
    CHECK(tt[0].multiplicity == 5);
    const auto one = torus_spectrum(L, OperatorKind::CoclosedOneFormHodge, 0.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].multiplicity == 3);
}

TEST_CASE("torus multiplicities match brute-force lattice counts up to 30") {
    const std::array<double, 3> L{2 * M_PI, 2 * M_PI, 2 * M_PI};
    std::map<int, long> count;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int c = -6; c <= 6; ++c)
                if (a * a + b * b + c * c <= 30) ++count[a * a + b * b + c * c];
    const auto s = torus_spectrum(L, OperatorKind::ScalarHodge, 30.0);
    REQUIRE(s.size() == count.size());
    size_t i = 0;
    for (auto& [n2, m] : count) {
        CHECK(std::lround(s[i].eigenvalue) == n2);
        CHECK(s[i].multiplicity == m);
        ++i;
    }
    const auto tt = torus_spectrum(L, OperatorKind::DivFreeTTRough, 30.0);
    for (size_t k = 1; k < tt.size(); ++k) CHECK(tt[k].multiplicity == 2 * s[k].multiplicity);
}

TEST_CASE("non-cubic lattice and index-based enumeration") {
    const std::array<double, 3> L{2 * M_PI, M_PI, 4 * M_PI};
    const auto s = torus_spectrum_by_index(L, OperatorKind::ScalarHodge, 3);
    REQUIRE(s.size() == 4);
    CHECK(s[1].eigenvalue == doctest::Approx(0.25));  // (1/2)²
    CHECK(s[1].multiplicity == 2);
    CHECK(torus_mode_multiplicity(OperatorKind::DivFreeTTRough, true) == 5);
    CHECK(torus_mode_multiplicity(OperatorKind::CoclosedOneFormHodge, false) == 2);
}

TEST_CASE("lens scalar multiplicities") {
    for (int j = 0; j <= 10; ++j) CHECK(lens_scalar_multiplicity({1, 1, 1}, j) == (j + 1) * (j + 1));
    CHECK(lens_scalar_multiplicity({2, 1, 1}, 1) == 0);
    CHECK(lens_scalar_multiplicity({2, 1, 1}, 2) == 9);
    // frozen from the projector construction
    CHECK(lens_scalar_multiplicity({3, 1, 1}, 3) == 8);
    CHECK(lens_scalar_multiplicity({5, 1, 2}, 4) == 5);
}

TEST_CASE("lens projector is idempotent with full harmonic space") {
    for (int j = 0; j <= 8; ++j) {
        const auto r = lens_projector_report({3, 1, 2}, j);
        CHECK(r.harmonic_dim == (j + 1) * (j + 1));
        CHECK(r.idempotency_residual < 1e-9);
        CHECK(std::abs(r.projector_trace - std::round(r.projector_trace)) < 1e-9);
    }
}

TEST_CASE("diagonal lens actions follow the (a,b)-bidegree count") {
    // for q1 = q2 = 1 the invariant harmonics are the bidegrees (a, b) with a − b ≡ 0 (mod p),
    // each of dimension j + 1; j = 14 goes through the projector, j = 15 through the fallback
    auto expected = [](int p, int j) {
        long n = 0;
        for (int a = 0; a <= j; ++a)
            if (((2 * a - j) % p + p) % p == 0) n += j + 1;
        return n;
    };
    for (int j : {3, 7, 14, 15, 17}) CHECK(lens_scalar_multiplicity({3, 1, 1}, j) == expected(3, j));
    CHECK(lens_scalar_multiplicity({2, 1, 1}, 15) == 0);
    CHECK(lens_scalar_multiplicity({2, 1, 1}, 16) == 17 * 17);
}

TEST_CASE("cross-section validation") {
    CHECK_THROWS_AS(CrossSectionSpec::sphere({4, 2, 1}), SpectrumError);
    CHECK_THROWS_AS(CrossSectionSpec::torus({1.0, -1.0, 1.0}), SpectrumError);
    CHECK(CrossSectionSpec::sphere().kappa == 1);
    CHECK(CrossSectionSpec::torus({1, 1, 1}).kappa == 0);
}

TEST_CASE("length tokens") {
    CHECK(parse_length_token("2pi") == doctest::Approx(2 * M_PI));
    CHECK(parse_length_token("pi") == doctest::Approx(M_PI));
    CHECK(parse_length_token("1.5*pi") == doctest::Approx(1.5 * M_PI));
    CHECK(parse_length_token("3.0") == 3.0);
    CHECK_THROWS_AS(parse_length_token("abc"), SpectrumError);
}

TEST_CASE("hyperbolic spectrum files") {
    SUBCASE("TT below 3 rejected, naming the entry") {
        try {
            parse_hyperbolic_spectrum("b1 0\ncodazzi 0\ntt 1 2.9 2\n", "mem");
            FAIL("expected rejection");
        } catch (const SpectrumFileError& e) {
            CHECK(std::string(e.what()).find("mem:3") != std::string::npos);
        }
    }
    SUBCASE("Codazzi consistency") {
        const auto g = parse_hyperbolic_spectrum("b1 0\ncodazzi 2\ntt 0 3 2\n", "mem");
        CHECK(g.dim_codazzi == 2);
        CHECK_THROWS_AS(parse_hyperbolic_spectrum("b1 0\ncodazzi 1\ntt 0 3 2\n", "mem"), SpectrumFileError);
    }
    SUBCASE("rational homology sphere without Codazzi") {
        const auto g = parse_hyperbolic_spectrum("b1 0\ncodazzi 0\nscalar 1 1.5 2\n", "mem");
        CHECK(g.dim_codazzi == 0);
        const auto sc = hyperbolic_spectrum(g, OperatorKind::ScalarHodge, 10);
        REQUIRE(sc.size() == 2);  // constants implied
        CHECK(sc[0].eigenvalue == 0);
    }
    SUBCASE("malformed input") {
        CHECK_THROWS_AS(parse_hyperbolic_spectrum("codazzi 0\n", "mem"), SpectrumFileError);
        CHECK_THROWS_AS(parse_hyperbolic_spectrum("b1 0\ncodazzi 0\nfoo 1 2 3\n", "mem"), SpectrumFileError);
        CHECK_THROWS_AS(parse_hyperbolic_spectrum("b1 0\ncodazzi 0\nscalar 1 2\n", "mem"), SpectrumFileError);
        CHECK_THROWS_AS(parse_hyperbolic_spectrum("b1 0\ncodazzi 0\nscalar 1 2 1\nscalar 1 3 1\n", "mem"),
                        SpectrumFileError);
        CHECK_THROWS_AS(load_hyperbolic_spectrum("/nonexistent/spectrum.txt"), SpectrumFileError);
    }
}
