#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "weights.hpp"

namespace reinhardt {

using Rng = std::mt19937_64;

/// Radical inverse of i in the given base (Halton coordinate).
inline double radical_inverse(std::uint64_t i, std::uint64_t base)
{
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

/// Deterministic low-discrepancy points on the non-negative part of
/// S_1 = {sum x_j^alpha_j = 1}. Coordinate vertices are always included.
inline std::vector<std::vector<double>> s1_grid(const std::vector<double>& alphas, std::size_t count)
{
    const std::size_t d = alphas.size();
    std::vector<std::vector<double>> out;
    if (d == 0) return out;
    auto lift = [&](const std::vector<double>& y) {
        std::vector<double> x(d);
        for (std::size_t j = 0; j < d; ++j) x[j] = std::pow(std::max(0.0, y[j]), 1.0 / alphas[j]);
        return x;
    };
    if (d == 1) {
        out.push_back({1.0});
        return out;
    }
    if (d == 2) {
        const std::size_t n = std::max<std::size_t>(count, 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = static_cast<double>(i) / static_cast<double>(n - 1);
            out.push_back(lift({y, 1.0 - y}));
        }
        return out;
    }
    static constexpr std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    for (std::size_t j = 0; j < d && out.size() < count; ++j) {
        std::vector<double> y(d, 0.0);
        y[j] = 1.0;
        out.push_back(lift(y));
    }
    for (std::uint64_t i = 1; out.size() < count; ++i) {
        // Sorted uniform spacings map the unit cube to the simplex.
        std::vector<double> cuts{0.0, 1.0};
        for (std::size_t c = 0; c + 1 < d; ++c) cuts.push_back(radical_inverse(i, primes[c % 16]));
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> y(d);
        for (std::size_t j = 0; j < d; ++j) y[j] = cuts[j + 1] - cuts[j];
        out.push_back(lift(y));
    }
    return out;
}

/// Uniform random point on the non-negative part of S_1.
inline std::vector<double> random_s1_point(const std::vector<double>& alphas, Rng& rng)
{
    std::exponential_distribution<double> e(1.0);
    std::vector<double> y(alphas.size());
    double total = 0.0;
    for (double& v : y) total += (v = e(rng));
    std::vector<double> x(alphas.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::pow(y[j] / total, 1.0 / alphas[j]);
    return x;
}

/// Uniform random point on the unit sphere of C^m, returned as m complex numbers.
inline std::vector<std::complex<double>> random_unit_vector(std::size_t m, Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::complex<double>> v(m);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& c : v) {
            c = {g(rng), g(rng)};
            norm += std::norm(c);
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& c : v) c /= norm;
    return v;
}

inline double random_phase(Rng& rng)
{
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    return u(rng);
}

} // namespace reinhardt
