#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "reinhardt/reinhardt.hpp"

using namespace reinhardt;

namespace {

DomainConfig quick(const std::string& name)
{
    auto c = preset_config(name);
    c.check.samples = 200;
    return c;
}

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string section(const std::string& report, const std::string& title)
{
    const auto start = report.find("== " + title + " ==");
    if (start == std::string::npos) return {};
    const auto end = report.find("\n== ", start + 1);
    return report.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

} // namespace

TEST_CASE("validate passes on the worked examples and controls", "[commands]")
{
    for (const std::string name : {"ball", "ellipsoid", "theorem1-poly", "example5", "example6"}) {
        const auto r = cmd_validate(quick(name));
        CAPTURE(name, r.output);
        CHECK(r.status == kExitPass);
        CHECK(r.output.rfind("domain: " + name + "\n", 0) == 0);
        for (const std::string title : {"weights", "homogeneity", "normalization", "non-negativity", "boundedness",
                                        "invariance", "summary"})
            CHECK(section(r.output, title).find("PASS") != std::string::npos);
    }
}

TEST_CASE("validate reports an inadmissible weight", "[commands]")
{
    auto c = quick("ellipsoid:3");
    c.weights.k = 2;
    const auto r = cmd_validate(c);
    CHECK(r.status == kExitCheckFailure);
    CHECK(section(r.output, "weights").find("FAIL") != std::string::npos);
    CHECK(section(r.output, "summary").find("FAIL") != std::string::npos);
}

TEST_CASE("validate reports a negative defining function", "[commands]")
{
    const auto r = cmd_validate(quick("negative-coefficient"));
    CHECK(r.status == kExitCheckFailure);
    CHECK(section(r.output, "non-negativity").find("FAIL") != std::string::npos);
    CHECK(section(r.output, "boundedness").find("refused") != std::string::npos);
}

TEST_CASE("validate skips invariance for a vector first group", "[commands]")
{
    auto c = quick("ball");
    c.weights = {3, {2, 1}, {4}, 1};
    const auto r = cmd_validate(c);
    CHECK(r.status == kExitPass);
    CHECK(section(r.output, "invariance").find("SKIPPED") != std::string::npos);
}

TEST_CASE("enumerate-m listings", "[commands][fixture]")
{
    CHECK(cmd_enumerate_m(quick("example5")).output == "segment [(4, 5), (5, 4)]\npoint (2, 7)\npoint (7, 2)\n");
    CHECK(cmd_enumerate_m(quick("example6")).output == "point (2, 6)\npoint (4, 4)\npoint (6, 2)\n");
    auto c = quick("ellipsoid");
    c.weights = {3, {1, 1, 1}, {2, 2}, 1};
    CHECK(cmd_enumerate_m(c).output == "empty\n");
    c.weights.alphas = {0, 2};
    CHECK_THROWS_AS(cmd_enumerate_m(c), ConfigError);
}

TEST_CASE("orbit schedules", "[commands]")
{
    const auto r = cmd_orbit(quick("example5"), "dyadic:20");
    CHECK(r.status == kExitPass);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == "step,a,re_z1,im_z1,gap");
    const auto last = rows.back();
    const double gap = std::stod(last.substr(last.rfind(',') + 1));
    CHECK(std::abs(gap - oracle::dyadic_gap(20)) <= 1e-12);

    const auto flat = lines_of(cmd_orbit(quick("ball"), "constant:0:10").output);
    REQUIRE(flat.size() == 11);
    for (std::size_t i = 1; i < flat.size(); ++i) CHECK(flat[i].substr(flat[i].rfind(',') + 1) == "1");

    CHECK(lines_of(cmd_orbit(quick("ball"), "list:0.1,0.2,0.3").output).size() == 4);
    for (const std::string bad : {"list:0.5,1.0", "dyadic:0", "dyadic:60", "constant:1.5:3", "constant:0.5",
                                  "spiral:3", "list:", "list:0.1,x"})
        CHECK_THROWS_AS(parse_schedule(bad), RejectionError);
    CHECK_THROWS_AS(cmd_orbit(quick("ball"), "dyadic:3", ComplexVector(2)), RejectionError);
}

TEST_CASE("smoothness command", "[commands]")
{
    const auto ok = cmd_smoothness(quick("example5"));
    CHECK(ok.status == kExitPass);
    CHECK(ok.output.find("consistent with C^2") != std::string::npos);
    CHECK(ok.output.find("[locus diagonal |z2|=|z3|, order 2]") != std::string::npos);
    const auto bad = cmd_smoothness(quick("corner"));
    CHECK(bad.status == kExitCheckFailure);
    CHECK(bad.output.find("not consistent with C^1") != std::string::npos);
}

TEST_CASE("slice and sample commands", "[commands]")
{
    const auto s = cmd_slice(quick("example5"), 1, 2, 11, 1.0);
    const auto rows = lines_of(s.output);
    CHECK(rows.size() == 1 + 121);
    CHECK(rows[0] == "x_a,x_b,psi,inside");

    const auto sample = cmd_sample(quick("example6"), 25);
    CHECK(sample.status == kExitPass);
    const auto pts = lines_of(sample.output);
    REQUIRE(pts.size() == 26);
    CHECK(pts[0] == "re_z1,im_z1,re_z2,im_z2,re_z3,im_z3");

    CHECK(cmd_sample(quick("negative-coefficient"), 5).status == kExitCheckFailure);
}
