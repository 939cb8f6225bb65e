#include <catch_amalgamated.hpp>

#include "reinhardt/config.hpp"
#include "reinhardt/smoothness.hpp"

using namespace reinhardt;

namespace {

BuiltDomain preset(const std::string& name) { return build_domain(preset_config(name)); }

SmoothnessReport probe_preset(const std::string& name, int k)
{
    const auto c = preset_config(name);
    const auto d = build_domain(c);
    auto cfg = resolve_probe(c);
    cfg.k = k;
    return smoothness_probe(d.reinhardt->psi(), resolve_loci(c, d.weights), cfg);
}

double worst(const SmoothnessReport& r, int order)
{
    double m = 0.0;
    for (const auto& b : r.blocks)
        if (b.order == order) m = std::max(m, b.mismatch);
    return m;
}

} // namespace

TEST_CASE("central stencils reproduce polynomial derivatives", "[smoothness]")
{
    const RealFunction cubic = [](std::span<const double> x) { return x[0] * x[0] * x[0] + 2 * x[0] * x[1]; };
    const std::vector<double> x{0.25, 0.5};
    CHECK(detail::finite_difference(cubic, x, {1, 0}, 0.125) == Catch::Approx(3 * 0.0625 + 1.0 + 3 * 0.125 * 0.125 / 6 * 2));
    CHECK(detail::finite_difference(cubic, x, {1, 1}, 0.125) == Catch::Approx(2.0));
    CHECK(detail::finite_difference(cubic, x, {3, 0}, 0.125) == Catch::Approx(6.0));
}

TEST_CASE("probe configuration validation", "[smoothness]")
{
    ProbeConfig c;
    CHECK_NOTHROW(c.validate());
    c.k = 4;
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = ProbeConfig{};
    c.steps = {1e-3, 1e-2};
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = ProbeConfig{};
    c.approach_offsets = {};
    CHECK_THROWS_AS(c.validate(), ContractViolation);
    c = ProbeConfig{};
    c.k = 3;
    c.tolerances = {1e-4, 1e-3};
    CHECK_THROWS_AS(c.validate(), ContractViolation);
}

TEST_CASE("soundness on the quadratic control", "[smoothness][property]")
{
    const auto d = preset("ball");
    const std::vector<Locus> loci{axis_locus(d.weights, 2), axis_locus(d.weights, 3), diagonal_locus(d.weights, 2, 3)};
    for (int k = 1; k <= 3; ++k) {
        ProbeConfig cfg;
        cfg.k = k;
        const auto r = smoothness_probe(d.reinhardt->psi(), loci, cfg);
        CAPTURE(k);
        CHECK(r.consistent);
        REQUIRE(r.blocks.size() == 3 * static_cast<std::size_t>(k));
        for (const auto& b : r.blocks) CHECK(b.mismatch <= 1e-8);
        CHECK(r.render().find("consistent with C^" + std::to_string(k)) != std::string::npos);
    }
}

TEST_CASE("discrimination on the corner control", "[smoothness]")
{
    const auto r = probe_preset("corner", 1);
    CHECK_FALSE(r.consistent);
    REQUIRE(r.blocks.size() == 1);
    CHECK(r.blocks[0].order == 1);
    CHECK(r.blocks[0].mismatch >= 0.1);
    CHECK_FALSE(r.blocks[0].consistent);
    CHECK(r.render().find("not consistent with C^1") != std::string::npos);
}

TEST_CASE("order-specific jumps are found at the right order", "[smoothness]")
{
    const Locus l{"x0=0", {0.0, 0.3}, {1.0, 0.0}};
    ProbeConfig cfg;
    cfg.k = 3;
    const RealFunction c1 = [](std::span<const double> x) { return x[0] * std::abs(x[0]) + x[1]; };
    const auto r1 = smoothness_probe(c1, 2, {l}, cfg);
    CHECK(worst(r1, 1) <= 1e-8);
    CHECK(worst(r1, 2) >= 0.1);

    const RealFunction c2 = [](std::span<const double> x) { return std::pow(std::abs(x[0]), 3); };
    const auto r2 = smoothness_probe(c2, 2, {l}, cfg);
    for (const auto& b : r2.blocks)
        if (b.order < 3) CHECK(b.consistent);
    CHECK(worst(r2, 3) >= 1.0);
    CHECK_FALSE(r2.consistent);
}

TEST_CASE("worked examples are consistent with C^2 at every configured locus", "[smoothness][fixture]")
{
    for (const std::string name : {"example5", "example6"}) {
        const auto r = probe_preset(name, 2);
        CAPTURE(name, r.render());
        CHECK(r.consistent);
        CHECK(r.blocks.size() == 6);
        for (const auto& b : r.blocks) CHECK(b.mismatch <= b.tolerance);
    }
}

TEST_CASE("a profile that is only C^1 is flagged at order 2", "[smoothness]")
{
    const WeightSystem ws(3, {1, 1, 1}, {8, 8}, 2);
    const Profile c1("c1-only", [](std::span<const double> q) {
        const double x2 = q[0] * q[0];
        return x2 >= 1.0 ? x2 : x2 + x2 * (1.0 - x2);
    }, 1);
    const InvariantProfile term{ExponentTuple({8, 0}), {Quotient{ExponentTuple({0, 2}), ExponentTuple({2, 0})}}, c1};
    const DefiningFunction psi(ws, {term});
    ProbeConfig cfg;
    cfg.k = 2;
    const auto r = smoothness_probe(psi, {diagonal_locus(ws, 2, 3)}, cfg);
    CHECK_FALSE(r.consistent);
    CHECK(worst(r, 2) > 0.1);
}

TEST_CASE("locus parsing", "[smoothness]")
{
    const WeightSystem ws(3, {1, 1, 1}, {9, 9}, 2);
    CHECK(parse_locus("axis:2", ws).name == "axis z2=0");
    CHECK(parse_locus("diagonal:2:3", ws).name == "diagonal |z2|=|z3|");
    for (const std::string bad : {"axis:1", "axis:4", "axis:x", "diagonal:2:2", "diagonal:2", "ring:2", ""})
        CHECK_THROWS_AS(parse_locus(bad, ws), RejectionError);
    const auto l = diagonal_locus(ws, 2, 3);
    double norm = 0.0;
    for (double v : l.normal) norm += v * v;
    CHECK(norm == Catch::Approx(1.0));
}
