#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "branch.hpp"
#include "errors.hpp"
#include "homog.hpp"
#include "sampling.hpp"
#include "weights.hpp"

namespace reinhardt {

/// Real-valued function of complex variables (z_2, ..., z_n).
using ComplexFunction = std::function<double(std::span<const std::complex<double>>)>;

/// Max over random x and the given t of |psi(t^{1/alpha} x) - t psi(x)| / max(1, t |psi(x)|).
inline double check_homogeneity(const ModuliFunction& psi, const WeightSystem& ws, std::size_t samples,
                                std::span<const double> t_values, std::uint64_t seed = 1, double box = 1.5)
{
    for (double t : t_values) detail::require(t >= 0.0, "check_homogeneity: t must be non-negative");
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, box);
    const std::size_t d = ws.tail_count();
    std::vector<double> x(d), y(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        for (double& v : x) v = u(rng);
        const double base = psi(x);
        for (double t : t_values) {
            for (std::size_t j = 0; j < d; ++j) y[j] = std::pow(t, 1.0 / ws.alpha(j)) * x[j];
            const double r = std::abs(psi(y) - t * base) / std::max(1.0, t * std::abs(base));
            worst = std::max(worst, r);
        }
    }
    return worst;
}

/// Residual of psi(t^{1/alpha_j} z_j) = |t| psi(z) for complex t on the principal branch.
inline double check_complex_homogeneity(const ComplexFunction& psi, std::span<const double> alphas,
                                        std::size_t samples, std::span<const std::complex<double>> t_values,
                                        std::uint64_t seed = 1)
{
    Rng rng(seed);
    std::uniform_real_distribution<double> radius(0.0, 1.2);
    std::vector<std::complex<double>> z(alphas.size()), w(alphas.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        for (auto& c : z) c = std::polar(radius(rng), random_phase(rng));
        const double base = psi(z);
        for (auto t : t_values) {
            for (std::size_t j = 0; j < z.size(); ++j) w[j] = frac_pow(t, alphas[j]) * z[j];
            const double at = std::abs(t);
            worst = std::max(worst, std::abs(psi(w) - at * base) / std::max(1.0, at * std::abs(base)));
        }
    }
    return worst;
}

struct NormalizationReport {
    std::vector<double> axis_error; ///< max relative error per tail coordinate
    bool pass = true;
};

/// Checks psi(0, ..., x_j, ..., 0) = x_j^{alpha_j} at x_j in {0.1, 0.5, 1}.
inline NormalizationReport check_normalization(const ModuliFunction& psi, const WeightSystem& ws)
{
    NormalizationReport rep;
    std::vector<double> x(ws.tail_count(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        double worst = 0.0;
        for (double t : {0.1, 0.5, 1.0}) {
            x[j] = t;
            const double expect = std::pow(t, ws.alpha(j));
            const double err = std::abs(psi(x) - expect) / std::max(1.0, expect);
            worst = std::max(worst, err);
            if (err > 1e-12) rep.pass = false;
        }
        x[j] = 0.0;
        rep.axis_error.push_back(worst);
    }
    return rep;
}

struct NonnegativityReport {
    double min_value = 0.0;
    std::vector<double> argmin;
    bool pass = true;
};

/// Minimum of psi over the origin, the S_1 grid, weighted dilations of S_1 points, and a
/// random box. Passes iff the minimum is >= -1e-12.
inline NonnegativityReport check_nonnegativity(const ModuliFunction& psi, const WeightSystem& ws,
                                               std::size_t samples, std::uint64_t seed = 1)
{
    const std::size_t d = ws.tail_count();
    NonnegativityReport rep;
    rep.argmin.assign(d, 0.0);
    rep.min_value = psi(rep.argmin);
    auto consider = [&](const std::vector<double>& x) {
        const double v = psi(x);
        if (v < rep.min_value) {
            rep.min_value = v;
            rep.argmin = x;
        }
    };
    if (d > 0) {
        for (const auto& x : s1_grid(ws.alphas(), std::max<std::size_t>(samples / 2, 2))) consider(x);
        Rng rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.5);
        std::vector<double> x(d);
        for (std::size_t i = 0; i < samples; ++i) {
            for (double& v : x) v = u(rng);
            consider(x);
            auto s = random_s1_point(ws.alphas(), rng);
            const double t = u(rng);
            for (std::size_t j = 0; j < d; ++j) s[j] *= std::pow(t, 1.0 / ws.alpha(j));
            consider(s);
        }
    }
    rep.pass = rep.min_value >= -1e-12;
    return rep;
}

struct RigidityResult {
    double c = 0.0;
    double max_deviation = 0.0; ///< max |ratio - c| / |c|
    bool rigid = false;         ///< deviation <= 1e-6
};

/// Estimates c in psi(z) = c |z|^alpha from psi(z) / |z|^alpha over the non-zero sample points.
inline RigidityResult check_n2_rigidity(const std::function<double(std::complex<double>)>& psi, double alpha,
                                        std::span<const std::complex<double>> points)
{
    std::vector<double> ratios;
    for (auto z : points) {
        if (z == std::complex<double>{0.0, 0.0}) continue;
        ratios.push_back(psi(z) / std::pow(std::abs(z), alpha));
    }
    if (ratios.empty()) throw RejectionError("check_n2_rigidity: every sample is at the origin");
    RigidityResult r;
    for (double v : ratios) r.c += v;
    r.c /= static_cast<double>(ratios.size());
    for (double v : ratios)
        r.max_deviation = std::max(r.max_deviation, std::abs(v - r.c) / std::max(std::abs(r.c), 1e-300));
    r.rigid = r.max_deviation <= 1e-6;
    return r;
}

inline RigidityResult check_n2_rigidity(const std::function<double(std::complex<double>)>& psi, double alpha,
                                        std::size_t samples, std::uint64_t seed = 1)
{
    Rng rng(seed);
    std::uniform_real_distribution<double> radius(0.1, 2.0);
    std::vector<std::complex<double>> pts(samples);
    for (auto& z : pts) z = std::polar(radius(rng), random_phase(rng));
    return check_n2_rigidity(psi, alpha, pts);
}

} // namespace reinhardt
