#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "reinhardt/reinhardt.hpp"

using namespace reinhardt;

namespace {

std::string error_path(const std::string& text)
{
    try {
        const auto c = parse_config_text(text);
        build_domain(c);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

std::filesystem::path scratch_dir()
{
    auto d = std::filesystem::temp_directory_path() / "reinhardt_config_test";
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("every preset round-trips through JSON with identical reports", "[config]")
{
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        auto c = preset_config(name);
        c.check.samples = 100;
        const auto back = from_json(json::parse(to_json(c).dump()));
        CHECK(back == c);
        CHECK(cmd_validate(back).output == cmd_validate(c).output);
        CHECK(cmd_enumerate_m(back).output == cmd_enumerate_m(c).output);
    }
}

TEST_CASE("preset names and parameterized ellipsoid", "[config]")
{
    CHECK(preset_config("ellipsoid:12").weights.alphas == std::vector<double>{12});
    CHECK_THROWS_AS(preset_config("nope"), RejectionError);
    CHECK(error_path(R"({"preset": "nope"})") == "/preset");
}

TEST_CASE("preset blocks can be overridden", "[config]")
{
    const auto c = parse_config_text(R"({
        // comments are allowed
        "preset": "example5",
        "name": "tweaked",
        "check": {"samples": 7, "seed": 9, "moebius": [0.25, [0.1, -0.2]]}
    })");
    CHECK(c.name == "tweaked");
    CHECK(c.terms == preset_config("example5").terms);
    CHECK(c.check.samples == 7);
    CHECK(c.check.seed == 9);
    REQUIRE(c.check.moebius.size() == 2);
    CHECK(c.check.moebius[1] == std::complex<double>(0.1, -0.2));
    CHECK(c.check.smoothness.loci == preset_config("example5").check.smoothness.loci);
}

TEST_CASE("diagnostics name the offending field", "[config]")
{
    CHECK(error_path("{") == "");
    CHECK(error_path("{}") == "");
    CHECK(error_path(R"({"weights": {"n": "three", "group_sizes": [1], "alphas": [], "k": 1}})") == "/weights/n");
    CHECK(error_path(R"({"weights": {"n": 2, "group_sizes": [1, 1], "alphas": [4], "k": 1, "extra": 0}})") ==
          "/weights/extra");
    CHECK(error_path(R"({"weights": {"n": 2, "group_sizes": [1, 1], "alphas": [-4], "k": 1}})") == "/weights");
    CHECK(error_path(R"({"preset": "ball", "colour": "red"})") == "/colour");
    CHECK(error_path(R"({"preset": "example5", "terms": [{"kind": "monomial", "s": [1, 2]}, {"kind": "wedge"}]})") ==
          "/terms/1/kind");
    CHECK(error_path(R"({"preset": "example5", "terms": [{"kind": "monomial", "s": [1, 2]}]})") == "/terms/0");
    CHECK(error_path(R"({"preset": "example5", "check": {"moebius": [1.5]}})") == "/check/moebius/0");
    CHECK(error_path(R"({"preset": "example5", "check": {"samples": 0}})") == "/check/samples");
    CHECK(error_path(R"({"preset": "example6", "terms": [{"kind": "profile", "prefactor": [8, 0],
        "quotients": [{"num": [0, 2], "den": [2, 0]}], "profile": {"values": [[0, 0]]}}]})") ==
          "/terms/0/profile/values");
    CHECK(error_path(R"({"preset": "ball", "hermitian": [{"K": [1], "L": [1], "re": 1}]})") == "/hermitian");
    CHECK(error_path(R"({"preset": "example5", "mode": "polar"})") == "/mode");
    CHECK(error_path(R"({"preset": "example5", "s1_profile": "wobbly", "terms": []})") == "/s1_profile");
}

TEST_CASE("locus names are checked when the probe is resolved", "[config]")
{
    const auto c = parse_config_text(R"({"preset": "example5", "check": {"smoothness": {"loci": ["axis:9"]}}})");
    const auto d = build_domain(c);
    try {
        resolve_loci(c, d.weights);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "/check/smoothness/loci/0");
    }
    auto all = preset_config("ball");
    CHECK(resolve_loci(all, build_domain(all).weights).size() == 3);
    all.weights.k = 7;
    CHECK(resolve_probe(all).k == 3);
}

TEST_CASE("inline and file tables", "[config]")
{
    const auto dir = scratch_dir();
    {
        std::ofstream out(dir / "g.csv");
        out << "# x,g(x)\n0,0\n0.5,0.3\n1,1\n";
    }
    {
        std::ofstream out(dir / "domain.json");
        out << R"({"preset": "example6", "terms": [{"kind": "profile", "prefactor": [8, 0],
                  "quotients": [{"num": [0, 2], "den": [2, 0]}], "profile": {"table": "g.csv"}}]})";
    }
    const auto from_file = load_config(dir / "domain.json");
    const auto d = build_domain(from_file);
    const std::vector<double> x{0.5, 0.5};
    CHECK(d.reinhardt->psi()(x) == Catch::Approx(3 * std::pow(0.5, 8)));

    const auto inline_cfg = parse_config_text(R"({"preset": "example5", "terms": [{"kind": "segment",
        "base": [9, 0], "direction": [-1, 1], "u_lo": 4, "u_hi": 5, "density": {"values": [[4, 1], [5, 1]]}}]})");
    const auto di = build_domain(inline_cfg);
    const auto de = build_domain(preset_config("example5"));
    const std::vector<double> y{0.6, 0.7};
    CHECK(di.reinhardt->psi()(y) == Catch::Approx(de.reinhardt->psi()(y)).epsilon(1e-12));
    CHECK(from_json(json::parse(to_json(inline_cfg).dump())) == inline_cfg);

    CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
}

TEST_CASE("general mode with a Hermitian extra part", "[config]")
{
    const auto c = parse_config_text(R"({"name": "mixed", "mode": "general",
        "weights": {"n": 3, "group_sizes": [1, 1, 1], "alphas": [4, 4], "k": 1},
        "hermitian": [{"K": [2, 0], "L": [0, 2], "re": 0.25}, {"K": [0, 2], "L": [2, 0], "re": 0.25}],
        "check": {"samples": 200}})");
    const auto d = build_domain(c);
    REQUIRE(d.general);
    CHECK(from_json(json::parse(to_json(c).dump())) == c);
    const auto r = cmd_validate(c);
    CAPTURE(r.output);
    CHECK(r.status == kExitPass);

    auto grouped = c;
    grouped.weights = {3, {1, 2}, {4}, 1};
    CHECK_THROWS_AS(build_domain(grouped), ConfigError);
}
