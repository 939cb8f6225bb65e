#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace reinhardt {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendreRule(int n)
    {
        detail::require(n >= 1, "GaussLegendreRule: need at least one node");
        nodes.resize(static_cast<std::size_t>(n));
        weights.resize(static_cast<std::size_t>(n));
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            // Tricomi initial guess, then Newton on P_n.
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            // Recompute the derivative at the converged node.
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[static_cast<std::size_t>(i)] = -x;
            nodes[static_cast<std::size_t>(n - 1 - i)] = x;
            weights[static_cast<std::size_t>(i)] = w;
            weights[static_cast<std::size_t>(n - 1 - i)] = w;
        }
        if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }

    /// Integral of f over [lo, hi].
    template <class F>
    double integrate(F&& f, double lo, double hi) const
    {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

} // namespace reinhardt
