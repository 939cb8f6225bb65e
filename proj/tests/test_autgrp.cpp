#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "reinhardt/autgrp.hpp"
#include "reinhardt/config.hpp"

using namespace reinhardt;
using cd = std::complex<double>;

namespace {

ReinhardtDomain preset_domain(const std::string& name) { return *build_domain(preset_config(name)).reinhardt; }

} // namespace

TEST_CASE("principal branch of fractional powers", "[autgrp][branch]")
{
    CHECK(principal_arg(cd(-1.0, 0.0)) == std::numbers::pi);
    CHECK(principal_arg(cd(-1.0, -0.0)) == std::numbers::pi);
    const auto r = frac_pow(cd(-1.0, 0.0), 2.0);
    CHECK(std::abs(r - cd(0, 1)) < 1e-15);
    CHECK(frac_pow(cd(0, 0), 3.0) == cd(0, 0));
    CHECK(std::abs(frac_pow(cd(8, 0), 3.0) - cd(2, 0)) < 1e-15);
    CHECK_THROWS_AS(frac_pow(cd(1, 0), 0.0), ContractViolation);
}

TEST_CASE("parameter validation", "[autgrp]")
{
    CHECK_THROWS_AS(MoebiusParams(cd(1.0, 0.0)), ContractViolation);
    CHECK_THROWS_AS(MoebiusParams(cd(0.6, 0.8)), ContractViolation);
    CHECK_NOTHROW(MoebiusParams(cd(0.999, 0.0)));
    const RotationParams rot(0.3, 3 * std::numbers::pi);
    CHECK(rot.gamma() == Catch::Approx(std::numbers::pi));
    CHECK(RotationParams(0, -std::numbers::pi).gamma() == Catch::Approx(std::numbers::pi));
}

TEST_CASE("a = 0 is the identity", "[autgrp]")
{
    const std::vector<double> alphas{9, 8};
    const ComplexVector z{{0.2, 0.1}, {0.3, -0.4}, {-0.1, 0.2}};
    const auto w = moebius_map(MoebiusParams(0.0), z, alphas);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(w[i] - z[i]) < 1e-15);
}

TEST_CASE("Moebius map needs the first coordinate in the disc", "[autgrp]")
{
    const std::vector<double> alphas{9};
    CHECK_THROWS_AS(moebius_map(MoebiusParams(0.5), ComplexVector{{3, 0}, {0, 0}}, alphas), EvaluationError);
    const WeightSystem ws(3, {2, 1}, {4}, 1);
    CHECK_THROWS_AS(moebius_map(MoebiusParams(0.5), ComplexVector(3), ws), UnsupportedConfiguration);
}

TEST_CASE("transformation identity and membership on every preset", "[autgrp][property]")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> r(0.0, 0.95), th(-std::numbers::pi, std::numbers::pi);
    for (const std::string name : {"ball", "ellipsoid", "theorem1-poly", "example5", "example6"}) {
        const auto d = preset_domain(name);
        const double tol = d.psi().uses_quadrature() ? 1e-6 : 1e-9;
        for (int i = 0; i < 10; ++i) {
            const cd a = std::polar(r(rng), th(rng));
            const auto rep = check_invariance(d, MoebiusParams(a), 300, 100 + i);
            CAPTURE(name, a);
            CHECK(rep.violations == 0);
            CHECK(rep.max_residual <= tol);
            CHECK(rep.interior > 0);
            CHECK(rep.interior < rep.checked);
        }
    }
}

TEST_CASE("composition with the inverse parameter returns the point", "[autgrp][property]")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (const auto& alphas : std::vector<std::vector<double>>{{9, 9}, {8, 8}, {3, 5}}) {
        for (int i = 0; i < 200; ++i) {
            const cd a(u(rng), u(rng));
            const ComplexVector z{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
            const auto res = inverse_check(MoebiusParams(a), z, alphas);
            CHECK(res.first_residual <= 1e-12);
            CHECK(res.moduli_residual <= 1e-12);
            CHECK(res.full_residual <= 1e-12);
            CHECK(res.pass);
        }
    }
}

TEST_CASE("rotations preserve moduli", "[autgrp]")
{
    const WeightSystem ws(4, {1, 2, 1}, {4, 9}, 2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 100; ++i) {
        const ComplexVector z{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        const auto w = rotation_map(RotationParams(u(rng) * 4, u(rng) * 4), z, ws);
        for (std::size_t j = 0; j < z.size(); ++j) CHECK(std::abs(std::abs(w[j]) - std::abs(z[j])) <= 1e-15);
    }
}

TEST_CASE("orbit of the origin under a_m = 1 - 2^-m", "[autgrp][fixture]")
{
    const auto d = preset_domain("example5");
    std::vector<double> as;
    for (int m = 1; m <= 20; ++m) as.push_back(1.0 - std::ldexp(1.0, -m));
    const auto o = orbit(d, ComplexVector(3), as);
    REQUIRE(o.points.size() == 20);
    for (int m = 1; m <= 20; ++m) CHECK(std::abs(o.points[m - 1].gap - oracle::dyadic_gap(m)) <= 1e-12);
    CHECK(o.points.back().gap < 1e-5);
    CHECK(o.noncompactness_witness);
    const auto csv = orbit_csv(o);
    CHECK(csv.rfind("step,a,re_z1,im_z1,gap\n1,0.5,", 0) == 0);
}

TEST_CASE("orbit edge cases", "[autgrp]")
{
    const auto d = preset_domain("ball");
    const std::vector<double> zeros(10, 0.0);
    const auto o = orbit(d, ComplexVector(3), zeros);
    for (const auto& p : o.points) CHECK(p.gap == 1.0);
    CHECK_FALSE(o.noncompactness_witness);
    const std::vector<double> touching{0.5, 1.0};
    CHECK_THROWS_AS(orbit(d, ComplexVector(3), touching), RejectionError);
    CHECK_THROWS_AS(orbit(d, ComplexVector{{0.9, 0}, {0.9, 0}, {0, 0}}, zeros), RejectionError);
}
