#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "sdroots/report.hpp"

using namespace sdroots;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int c = cli::run(args, o, e);
    return {c, o.str(), e.str()};
}

std::string data(const std::string& name) { return std::string(SDROOTS_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("17-digit doubles") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1.0 / 0.0) == "null");
}

TEST_CASE("catalog JSON and CSV round-trip the same records") {
    for (const auto& cs : {CrossSectionSpec::sphere(), CrossSectionSpec::torus({2 * M_PI, 3.0, 4.0}),
                           CrossSectionSpec::sphere({5, 1, 2})}) {
        const auto cat = assemble_catalog(cs, 6);
        auto recs = catalog_records(cat);
        auto js = records_from_json(catalog_to_json(cat));
        auto cv = records_from_csv(catalog_to_csv(cat));
        CHECK(js == recs);
        std::sort(js.begin(), js.end());
        std::sort(cv.begin(), cv.end());
        CHECK(js == cv);
    }
}

TEST_CASE("schema field and window filter") {
    const auto cat = assemble_catalog(CrossSectionSpec::sphere(), 4);
    const auto j = catalog_to_json(cat, Window{-2.0, 2.0});
    CHECK(j.find("\"schema\": 1") != std::string::npos);
    const auto rows = records_from_json(j);
    CHECK(rows.size() == 4);
    for (auto& r : rows) CHECK(std::abs(r.re) < 2);
    CHECK_THROWS_AS(records_from_json("{\"schema\": 2, \"roots\": []}"), ReportError);
    CHECK_THROWS_AS(records_from_json("not json"), ReportError);
    CHECK_THROWS_AS(records_from_csv("a,b\n"), ReportError);
}

TEST_CASE("cli roots: sphere low rows are {0, ±1}") {
    const auto r = run({"roots", "--sphere", "--jmax", "4", "--window=-2,2"});
    REQUIRE(r.code == 0);
    std::vector<double> re;
    for (auto& x : records_from_json(r.out)) re.push_back(x.re);
    std::sort(re.begin(), re.end());
    re.erase(std::unique(re.begin(), re.end()), re.end());
    CHECK(re == std::vector<double>{-1, 0, 1});
}

TEST_CASE("cli roots: torus has dims 14/14 and deterministic output") {
    const auto a = run({"roots", "--torus", "2pi,2pi,2pi", "--jmax", "2"});
    const auto b = run({"roots", "--torus", "2pi,2pi,2pi", "--jmax", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"kernel_dim_at_zero\": 14") != std::string::npos);
    CHECK(a.out.find("\"cokernel_dim_at_zero\": 14") != std::string::npos);
    const auto csv = run({"roots", "--torus", "2pi,2pi,2pi", "--jmax", "2", "--format", "csv"});
    auto x = records_from_json(a.out), y = records_from_csv(csv.out);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
}

TEST_CASE("cli gap, ks, lens") {
    CHECK(run({"gap", "--sphere"}).out == "(0, 2)\n");
    CHECK(run({"gap", "--lens", "3,1,1"}).out.rfind("(0, 2)", 0) == 0);
    const auto ks1 = run({"ks", "--hyperbolic", data("hyperbolic_codazzi.txt")});
    CHECK(ks1.code == 0);
    CHECK(ks1.out.rfind("H2+ nonzero; cokernel dim at 0 = 1+b1+2·dimC", 0) == 0);
    CHECK(ks1.out.find("= 6\n") != std::string::npos);
    const auto ks0 = run({"ks", "--hyperbolic", data("hyperbolic_rhs.txt")});
    CHECK(ks0.out.rfind("H2+ = 0", 0) == 0);
    const auto lens = run({"lens", "--lens", "2,1,1", "--jmax", "4", "--format", "json"});
    CHECK(lens.code == 0);
    CHECK(lens.out.find("\"case1_roots_present\": false") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == cli::kBadArguments);
    CHECK(run({"roots"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--sphere", "--torus", "1,1,1"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--lens", "4,2,1"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--torus", "1,x,1"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--sphere", "--format", "xml"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--hyperbolic", "/nonexistent.txt"}).code == cli::kFileError);
    CHECK(run({"roots", "--hyperbolic", data("hyperbolic_bad_bound.txt")}).code == cli::kFileError);
    CHECK(run({"ks", "--sphere"}).code == cli::kBadArguments);
    CHECK(run({"verify", "identities", "--N", "12"}).code == cli::kBadArguments);
    CHECK(run({"roots", "--sphere", "--out", "/nonexistent-dir/x.json"}).code == cli::kFileError);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("cli verify identities and oracle") {
    const auto id = run({"verify", "identities", "--N", "8", "--seed", "7"});
    CHECK(id.code == 0);
    CHECK(std::count(id.out.begin(), id.out.end(), '{') == 12);  // report + 11 identities
    const auto orc = run({"verify", "oracle", "--jmax", "6"});
    CHECK(orc.code == 0);
}

TEST_CASE("cli --out writes the same bytes") {
    const std::string path = "cli_out_test.json";
    REQUIRE(run({"roots", "--sphere", "--jmax", "3", "--out", path}).code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == run({"roots", "--sphere", "--jmax", "3"}).out);
    std::remove(path.c_str());
}
