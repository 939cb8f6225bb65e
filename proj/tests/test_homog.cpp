#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "reinhardt/homog.hpp"

using namespace reinhardt;
using Catch::Approx;

namespace {

const WeightSystem& ws99()
{
    static const WeightSystem ws(3, {1, 1, 1}, {9, 9}, 2);
    return ws;
}

DefiningFunction example5_quadrature(int nodes = kDefaultQuadratureNodes)
{
    return DefiningFunction(ws99(), {SegmentIntegral(ExponentTuple{9, 0}, {-1, 1}, 4, 5, Density::builtin("uniform"), nodes)});
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("Gauss-Legendre nodes and weights", "[quadrature]")
{
    for (int n : {1, 2, 5, 16, 32}) {
        const GaussLegendreRule r(n);
        double wsum = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            wsum += r.weights[i];
            CHECK(r.nodes[i] == Approx(-r.nodes[r.nodes.size() - 1 - i]).margin(1e-15));
            if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
        }
        CHECK(wsum == Approx(2.0).epsilon(1e-14));
        // Exact for polynomials of degree 2n - 1.
        const int deg = 2 * n - 1;
        const double got = r.integrate([&](double x) { return std::pow(x, deg) + std::pow(x, deg - 1); }, 0.0, 1.0);
        const double want = 1.0 / (deg + 1) + (deg >= 1 ? 1.0 / deg : 0.0);
        CHECK(got == Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("example5 closed form at exact points", "[homog][fixture]")
{
    CHECK(example5_closed_form(0, 0) == 0.0);
    CHECK(example5_closed_form(1, 1) == 3.0);
    CHECK(example5_closed_form(0, 0.5) == std::pow(0.5, 9));
    CHECK(example5_closed_form(0.5, 0) == std::pow(0.5, 9));
    // integral over [4, 5] of 2^s ds = (2^5 - 2^4) / ln 2
    CHECK(rel(example5_closed_form(1, 2), 1 + 512 + 16 / std::numbers::ln2) < 1e-14);
    CHECK(rel(oracle::integrate([](double s) { return std::pow(2.0, s); }, 4, 5), 16 / std::numbers::ln2) < 1e-13);
    CHECK_THROWS_AS(example5_closed_form(-1, 1), ContractViolation);
}

TEST_CASE("example5 closed form agrees with an independent integral", "[homog][oracle]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double x2 = u(rng), x3 = u(rng);
        CAPTURE(x2, x3);
        CHECK(rel(example5_closed_form(x2, x3), oracle::example5(x2, x3)) < 1e-12);
    }
}

TEST_CASE("example5 closed form is continuous across the diagonal band", "[homog]")
{
    for (double x : {0.1, 0.7, 1.3}) {
        for (double d : {1e-3, 1e-5, 1e-6, 0.99e-6, 1e-7, 1e-9, 1e-12, 0.0}) {
            const double x3 = x * (1 + d);
            CAPTURE(x, d);
            CHECK(rel(example5_closed_form(x, x3), oracle::example5(x, x3)) < 1e-12);
        }
    }
}

TEST_CASE("segment quadrature reproduces the closed form", "[homog][oracle]")
{
    const auto psi = example5_quadrature();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double x2 = u(rng), x3 = u(rng);
        CHECK(rel(psi({x2, x3}), example5_closed_form(x2, x3)) < 1e-12);
    }
    CHECK(psi.uses_quadrature());
}

TEST_CASE("densities and tabulated inputs", "[homog]")
{
    CHECK(Density::builtin("uniform")(4.5, 4, 5) == 1.0);
    CHECK(Density::builtin("linear")(4.25, 4, 5) == 0.25);
    CHECK(Density::builtin("tent")(4.5, 4, 5) == 1.0);
    CHECK(Density::builtin("tent")(4.0, 4, 5) == 0.0);
    CHECK_THROWS_AS(Density::builtin("gaussian"), RejectionError);

    std::istringstream in("# node value\n4 0\n4.5, 2\n5 0\n");
    const auto table = LinearTable::parse(in);
    CHECK(table(4.25) == 1.0);
    CHECK_THROWS_AS(table(5.5), EvaluationError);
    std::istringstream neg("4 -1\n5 1\n");
    CHECK_THROWS_AS(Density::tabulated(LinearTable::parse(neg)), RejectionError);

    // Tent-shaped table against the builtin tent: identical integrands.
    const SegmentIntegral a(ExponentTuple{9, 0}, {-1, 1}, 4, 5, Density::builtin("tent"));
    std::istringstream tent("4 0\n4.5 1\n5 0\n");
    const SegmentIntegral b(ExponentTuple{9, 0}, {-1, 1}, 4, 5, Density::tabulated(LinearTable::parse(tent)));
    const std::vector<double> x{0.6, 0.9};
    // The kink at 4.5 limits Gauss-Legendre accuracy; both see the same kink.
    CHECK(rel(a.evaluate(x), b.evaluate(x)) < 1e-14);
    const double want = oracle::integrate(
        [](double s) { return (1 - std::abs(2 * (s - 4.5))) * std::pow(0.6, 9 - s) * std::pow(0.9, s); }, 4, 5);
    CHECK(rel(a.evaluate(x), want) < 1e-3);
}

TEST_CASE("term validation", "[homog]")
{
    const auto& ws = ws99();
    CHECK_THROWS_AS(DefiningFunction(ws, {Monomial{1.0, ExponentTuple{4, 4}}}), RejectionError); // weight 8/9
    CHECK_THROWS_AS(DefiningFunction(ws, {Monomial{1.0, ExponentTuple{9, 0}}}), RejectionError); // one non-zero
    CHECK_THROWS_AS(DefiningFunction(ws, {Monomial{1.0, ExponentTuple{1, 2, 3}}}), ContractViolation);
    CHECK_THROWS_AS(SegmentIntegral(ExponentTuple{9, 0}, {-1, 1}, 5, 4), ContractViolation);
    CHECK_THROWS_AS(SegmentIntegral(ExponentTuple{9, 0}, {-1, 1}, 4, 10), RejectionError); // leaves orthant
    const InvariantProfile bad_quotient{ExponentTuple{9, 0}, {Quotient{ExponentTuple{0, 2}, ExponentTuple{1, 0}}}};
    CHECK_THROWS_AS(DefiningFunction(ws, {bad_quotient}), RejectionError);
}

TEST_CASE("evaluation contract", "[homog]")
{
    const auto psi = example5_quadrature();
    CHECK_THROWS_AS(psi({1.0}), ContractViolation);
    CHECK_THROWS_AS(psi({-0.1, 0.2}), ContractViolation);
    CHECK_THROWS_AS(psi({std::nan(""), 0.2}), ContractViolation);

    // A tabulated profile evaluated outside its range names the failing term.
    const WeightSystem ws(3, {1, 1, 1}, {8, 8}, 2);
    std::istringstream in("0 0\n1 1\n2 4\n3 9\n");
    const InvariantProfile prof{ExponentTuple{8, 0},
                                {Quotient{ExponentTuple{0, 2}, ExponentTuple{2, 0}}},
                                Profile::tabulated(LinearTable::parse(in))};
    // Axis checks probe u = 0 only, so construction succeeds.
    const DefiningFunction f(ws, {prof});
    try {
        (void)f({0.5, 1.0});
        FAIL("expected an evaluation error");
    } catch (const EvaluationError& e) {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("term #0 (profile)"));
    }
}

TEST_CASE("axis normalization is enforced at construction", "[homog]")
{
    const WeightSystem ws(3, {1, 1, 1}, {8, 8}, 2);
    // A profile that does not vanish at 0 adds x2^8 * g(0) on the x2 axis.
    const Profile shifted("shifted", [](std::span<const double> u) { return u[0] * u[0] + 0.5; }, 1);
    const InvariantProfile prof{ExponentTuple{8, 0}, {Quotient{ExponentTuple{0, 2}, ExponentTuple{2, 0}}}, shifted};
    CHECK_THROWS_AS(DefiningFunction(ws, {prof}), RejectionError);
}

TEST_CASE("invariant-profile term vanishes with its prefactor", "[homog]")
{
    const WeightSystem ws(3, {1, 1, 1}, {8, 8}, 2);
    const InvariantProfile prof{ExponentTuple{8, 0}, {Quotient{ExponentTuple{0, 2}, ExponentTuple{2, 0}}}};
    const DefiningFunction f(ws, {prof});
    CHECK(f({0.0, 0.7}) == std::pow(0.7, 8));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double x2 = u(rng), x3 = u(rng);
        CHECK(rel(f({x2, x3}), example6(x2, x3, c2_bump_profile)) < 1e-14);
    }
}

TEST_CASE("example6 with the square profile", "[homog]")
{
    const auto sq = [](double t) { return t * t; };
    CHECK(example6(1, 1, sq) == 3.0);
    CHECK(rel(example6(0.5, 0.8, sq), std::pow(0.5, 8) + std::pow(0.8, 8) + std::pow(0.5, 4) * std::pow(0.8, 4)) <
          1e-14);
    CHECK_THROWS_AS(example6(1, 1, [](double t) { return t * t + 1; }), ContractViolation);
    CHECK_THROWS_AS(example6(1, 1, [](double t) { return std::abs(t); }), ContractViolation);
}

TEST_CASE("default profile is C^2 and non-negative", "[homog]")
{
    CHECK(c2_bump_profile(0) == 0.0);
    for (double x : {-3.0, -1.0, 1.0, 1.5}) CHECK(c2_bump_profile(x) == x * x);
    for (double x = -2; x <= 2; x += 0.01) CHECK(c2_bump_profile(x) >= 0.0);
    // One-sided second differences at the joint agree; third derivatives do not.
    const double h = 1e-4;
    auto d2 = [&](double x) { return (c2_bump_profile(x + h) - 2 * c2_bump_profile(x) + c2_bump_profile(x - h)) / (h * h); };
    CHECK(d2(1 - 2 * h) == Approx(d2(1 + 2 * h)).margin(1e-2));
    auto d3 = [&](double x) { return (d2(x + h) - d2(x - h)) / (2 * h); };
    CHECK(std::abs(d3(1 - 3 * h) - d3(1 + 3 * h)) > 1.0);
}

TEST_CASE("construction from a measure", "[homog]")
{
    const WeightSystem ws(3, {1, 1, 1}, {4, 4}, 2);
    const auto psi = construct_from_measure(ws, {Atom{ExponentTuple{2, 2}, 1.0}}, {});
    CHECK(psi({1, 1}) == 3.0);
    CHECK(psi({0.5, 2}) == Approx(std::pow(0.5, 4) + 16 + 0.25 * 4).epsilon(1e-15));
    CHECK_THROWS_AS(construct_from_measure(ws, {Atom{ExponentTuple{2, 2}, -1.0}}, {}), RejectionError);
    CHECK_THROWS_AS(construct_from_measure(ws, {Atom{ExponentTuple{1, 3}, 1.0}}, {}), RejectionError);

    // Segment through odd values below 2k is rejected even though its endpoints are even.
    const SegmentIntegral seg(ExponentTuple{4, 0}, {-1, 1}, 2, 2.5);
    CHECK_THROWS_AS(construct_from_measure(ws, {}, {seg}), RejectionError);

    const auto e5 = construct_from_measure(ws99(), {}, {SegmentIntegral(ExponentTuple{9, 0}, {-1, 1}, 4, 5)});
    CHECK(rel(e5({0.3, 0.8}), example5_closed_form(0.3, 0.8)) < 1e-12);
}

TEST_CASE("S1 profile extension", "[homog]")
{
    const auto& ws = ws99();
    const ModuliFunction leading = [](std::span<const double> x) { return std::pow(x[0], 9) + std::pow(x[1], 9); };
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> x{u(rng), u(rng)};
        CHECK(rel(eval_from_s1_profile(leading, x, ws), leading(x)) < 1e-13);
    }
    CHECK(eval_from_s1_profile(leading, std::vector<double>{0, 0}, ws) == 0.0);
    const auto f = DefiningFunction::from_s1_profile(ws, S1Profile{"leading", leading});
    CHECK(rel(f({0.4, 1.1}), leading(std::vector<double>{0.4, 1.1})) < 1e-13);
}

TEST_CASE("germ extension reproduces homogeneous functions", "[homog][property]")
{
    const auto psi = example5_quadrature();
    const auto& ws = ws99();
    const double delta = 0.5;
    const auto global = psi.as_function();
    // Germ: psi where sum x^alpha <= delta, garbage elsewhere.
    const ModuliFunction germ = [&](std::span<const double> x) {
        const double r = std::pow(x[0], 9) + std::pow(x[1], 9);
        return r <= delta * (1 + 1e-12) ? global(x) : 1e6;
    };
    const auto ext = extend_from_germ(germ, delta, ws);
    CHECK(ext(std::vector<double>{0, 0}) == 0.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const std::vector<double> x{u(rng), u(rng)};
        CHECK(rel(ext(x), global(x)) < 1e-9);
    }
    CHECK_THROWS_AS(extend_from_germ(germ, 0.0, ws), ContractViolation);
}
