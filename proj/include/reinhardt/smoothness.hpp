#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "domain.hpp"
#include "errors.hpp"
#include "homog.hpp"
#include "weights.hpp"

namespace reinhardt {

/// Function of the real coordinates (Re z_2, Im z_2, ..., Re z_n, Im z_n).
using RealFunction = std::function<double(std::span<const double>)>;

/// Where a smoothness claim is tested: probes sit at base +- offset * normal.
struct Locus {
    std::string name;
    std::vector<double> base;
    std::vector<double> normal; ///< unit vector
};

struct ProbeConfig {
    int k = 2;
    std::vector<double> steps{1e-2, 1e-3, 1e-4};
    std::vector<double> approach_offsets{1e-1, 1e-2, 1e-3};
    /// Mismatch tolerance for orders 1, 2, 3 before scaling by the local derivative magnitude.
    std::vector<double> tolerances{1e-4, 1e-3, 1e-2};

    void validate() const
    {
        detail::require(k >= 1 && k <= 3, "ProbeConfig: k must be 1, 2 or 3");
        auto strictly_decreasing = [](const std::vector<double>& v) {
            if (v.empty()) return false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(v[i] > 0.0)) return false;
                if (i && !(v[i] < v[i - 1])) return false;
            }
            return true;
        };
        detail::require(strictly_decreasing(steps), "ProbeConfig: steps must be positive and strictly decreasing");
        detail::require(strictly_decreasing(approach_offsets),
                        "ProbeConfig: approach offsets must be positive and strictly decreasing");
        detail::require(tolerances.size() >= static_cast<std::size_t>(k), "ProbeConfig: need a tolerance per order");
    }
};

/// Result for one (locus, order) pair.
struct ProbeBlock {
    std::string locus;
    int order = 0;
    std::string derivative;           ///< multi-index with the worst mismatch
    double estimate_plus = 0.0;       ///< its estimate on the + side at the finest offset
    double estimate_minus = 0.0;      ///< and on the - side
    double mismatch = 0.0;            ///< extrapolated two-sided jump
    double tolerance = 0.0;           ///< after scaling by the local derivative magnitude
    double stability = 0.0;           ///< max |Richardson estimate - finest raw estimate|
    std::vector<double> offsets_used;
    std::vector<double> jump_by_offset; ///< max extrapolated jump at each used offset
    bool consistent = false;
};

struct SmoothnessReport {
    int k = 0;
    std::vector<ProbeBlock> blocks;
    bool consistent = false;

    std::string render() const
    {
        std::ostringstream os;
        for (const auto& b : blocks) {
            os << "[locus " << b.locus << ", order " << b.order << "]\n";
            os << "  jump by offset:";
            for (std::size_t i = 0; i < b.offsets_used.size(); ++i)
                os << ' ' << format17(b.offsets_used[i]) << '=' << format17(b.jump_by_offset[i]);
            os << "\n  worst derivative: " << b.derivative << "\n";
            os << "  estimates at finest probe (+/-): " << format17(b.estimate_plus) << " / " << format17(b.estimate_minus) << "\n";
            os << "  mismatch: " << format17(b.mismatch) << "\n";
            os << "  tolerance: " << format17(b.tolerance) << "\n";
            os << "  step stability: " << format17(b.stability) << "\n";
            os << "  verdict: " << (b.consistent ? "consistent" : "INCONSISTENT") << "\n";
        }
        os << (consistent ? "consistent with C^" : "not consistent with C^") << k << '\n';
        return os.str();
    }
};

namespace detail {

struct StencilPoint {
    int offset;
    double weight;
};

/// Central O(h^2) stencil for a pure derivative of the given order, unscaled by h.
inline std::vector<StencilPoint> central_stencil(int order)
{
    switch (order) {
    case 0: return {{0, 1.0}};
    case 1: return {{-1, -0.5}, {1, 0.5}};
    case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
    default: throw ContractViolation("central_stencil: orders above 3 are not supported");
    }
}

inline void multi_indices(std::size_t dim, int order, std::size_t j, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out)
{
    if (j + 1 == dim) {
        cur[j] = order;
        out.push_back(cur);
        cur[j] = 0;
        return;
    }
    for (int v = order; v >= 0; --v) {
        cur[j] = v;
        multi_indices(dim, order - v, j + 1, cur, out);
    }
    cur[j] = 0;
}

/// Tensor-product central difference of f at x for the multi-index beta.
inline double finite_difference(const RealFunction& f, const std::vector<double>& x, const std::vector<int>& beta,
                                double h)
{
    std::vector<std::size_t> dims;
    std::vector<std::vector<StencilPoint>> stencils;
    int order = 0;
    for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i] > 0) {
            dims.push_back(i);
            stencils.push_back(central_stencil(beta[i]));
            order += beta[i];
        }
    std::vector<std::size_t> idx(dims.size(), 0);
    std::vector<double> y = x;
    double sum = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const auto& sp = stencils[d][idx[d]];
            y[dims[d]] = x[dims[d]] + sp.offset * h;
            w *= sp.weight;
        }
        sum += w * f(y);
        std::size_t d = 0;
        for (; d < dims.size(); ++d) {
            if (++idx[d] < stencils[d].size()) break;
            idx[d] = 0;
        }
        if (d == dims.size()) break;
    }
    return sum / std::pow(h, order);
}

/// Smallest step at each order for which the worst-case cancellation error of the
/// stencil stays below about 1e-9 |f|.
inline double step_floor(int order)
{
    switch (order) {
    case 1: return 1e-6;
    case 2: return 2e-4;
    default: return 3e-3;
    }
}

inline int stencil_reach(int order) { return order >= 3 ? 2 : 1; }

/// Largest power of two not above h.
inline double dyadic_floor(double h) { return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(h)))); }

/// Rounds to a multiple of 2^-30, so x +- m h is exact for dyadic h >= 2^-30.
inline double dyadic_grid(double x) { return std::ldexp(std::nearbyint(std::ldexp(x, 30)), -30); }

/// Dyadic steps usable at offset delta: each configured step and the one-sided cap
/// delta / (2 reach), snapped down to a power of two, kept if the stencil stays on its
/// side of the locus and above the cancellation floor. Largest first, distinct.
inline std::vector<double> usable_steps(const std::vector<double>& configured, double delta, int order)
{
    const double cap = 0.5 * delta / stencil_reach(order);
    std::vector<double> out;
    auto consider = [&](double h) {
        const double d = dyadic_floor(std::min(h, cap));
        if (d >= step_floor(order) && d >= 0x1p-30) out.push_back(d);
    };
    for (double h : configured) consider(h);
    consider(cap);
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Estimate {
    double value = 0.0;
    double stability = 0.0;
};

/// Richardson-extrapolated derivative over the admissible steps (largest first).
inline Estimate richardson(const RealFunction& f, const std::vector<double>& x, const std::vector<int>& beta,
                           const std::vector<double>& steps)
{
    std::vector<double> raw;
    for (double h : steps) raw.push_back(finite_difference(f, x, beta, h));
    Estimate e;
    if (raw.size() == 1) {
        e.value = raw[0];
        return e;
    }
    std::vector<double> extrap;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        const double r2 = (steps[i] / steps[i + 1]) * (steps[i] / steps[i + 1]);
        extrap.push_back((r2 * raw[i + 1] - raw[i]) / (r2 - 1.0));
    }
    e.value = extrap.back();
    e.stability = std::abs(e.value - raw.back());
    return e;
}

inline std::string beta_string(const std::vector<int>& beta)
{
    std::string s = "d(";
    for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
    return s + ")";
}

} // namespace detail

/// Finite-difference probe of C^k behaviour across each locus. For every order q <= k,
/// all partial derivatives of order q are estimated on both sides of the locus at each
/// usable offset and at half of it; the two-sided difference is extrapolated linearly to
/// offset 0 from that pair. The verdict uses the finest usable offset and is "consistent"
/// iff every extrapolated jump is within tolerance[q-1] * max(1, |local derivative|). A probe can only ever be consistent with
/// C^k; it does not prove smoothness.
inline SmoothnessReport smoothness_probe(const RealFunction& f, std::size_t dim, const std::vector<Locus>& loci,
                                         const ProbeConfig& config)
{
    config.validate();
    SmoothnessReport rep;
    rep.k = config.k;
    rep.consistent = true;
    for (const auto& locus : loci) {
        detail::require(locus.base.size() == dim && locus.normal.size() == dim,
                        "smoothness_probe: locus '" + locus.name + "' has the wrong dimension");
        for (int q = 1; q <= config.k; ++q) {
            ProbeBlock block;
            block.locus = locus.name;
            block.order = q;
            std::vector<std::vector<int>> betas;
            std::vector<int> cur(dim, 0);
            detail::multi_indices(dim, q, 0, cur, betas);
            std::vector<double> plus_final, minus_final;

            // Estimates on both sides of the locus at distance d for every multi-index,
            // or nothing if no step keeps the stencil on one side.
            auto estimate_at = [&](double d, std::vector<double>& ep, std::vector<double>& em) {
                const auto steps = detail::usable_steps(config.steps, d, q);
                if (steps.empty()) return false;
                std::vector<double> xp(dim), xm(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    xp[i] = detail::dyadic_grid(locus.base[i] + d * locus.normal[i]);
                    xm[i] = detail::dyadic_grid(locus.base[i] - d * locus.normal[i]);
                }
                ep.clear();
                em.clear();
                for (const auto& beta : betas) {
                    const auto a = detail::richardson(f, xp, beta, steps);
                    const auto b = detail::richardson(f, xm, beta, steps);
                    ep.push_back(a.value);
                    em.push_back(b.value);
                    block.stability = std::max({block.stability, a.stability, b.stability});
                }
                return true;
            };

            // Jump per multi-index at each offset: 2 M(delta/2) - M(delta), which removes the
            // term linear in delta; the raw M(delta) when delta/2 admits no step.
            std::vector<double> jumps, ep, em, hp, hm;
            bool have = false;
            for (double delta : config.approach_offsets) {
                if (!estimate_at(delta, ep, em)) continue;
                const bool paired = estimate_at(0.5 * delta, hp, hm);
                if (have && !paired) continue;
                jumps.assign(betas.size(), 0.0);
                for (std::size_t c = 0; c < betas.size(); ++c) {
                    const double m = ep[c] - em[c];
                    jumps[c] = paired ? 2.0 * (hp[c] - hm[c]) - m : m;
                }
                block.offsets_used.push_back(delta);
                block.jump_by_offset.push_back(0.0);
                for (double j : jumps) block.jump_by_offset.back() = std::max(block.jump_by_offset.back(), std::abs(j));
                if (paired) {
                    ep = hp;
                    em = hm;
                }
                have = true;
                plus_final = ep;
                minus_final = em;
            }
            if (!have) {
                block.derivative = "none (no usable offset/step pair)";
                block.consistent = false;
                rep.consistent = false;
                rep.blocks.push_back(std::move(block));
                continue;
            }
            double magnitude = 1.0;
            for (std::size_t c = 0; c < betas.size(); ++c)
                magnitude = std::max({magnitude, std::abs(plus_final[c]), std::abs(minus_final[c])});
            for (std::size_t c = 0; c < betas.size(); ++c) {
                if (std::abs(jumps[c]) >= block.mismatch) {
                    block.mismatch = std::abs(jumps[c]);
                    block.derivative = detail::beta_string(betas[c]);
                    block.estimate_plus = plus_final[c];
                    block.estimate_minus = minus_final[c];
                }
            }
            block.tolerance = config.tolerances[static_cast<std::size_t>(q - 1)] * magnitude;
            block.consistent = block.mismatch <= block.tolerance;
            rep.consistent = rep.consistent && block.consistent;
            rep.blocks.push_back(std::move(block));
        }
    }
    return rep;
}

/// psi(|z^2|, ..., |z^p|) as a function of the real coordinates of the tail variables.
inline RealFunction real_coordinate_function(const DefiningFunction& psi)
{
    const auto& ws = psi.weights();
    std::vector<int> sizes(ws.group_sizes().begin() + 1, ws.group_sizes().end());
    return [psi, sizes](std::span<const double> r) {
        std::vector<double> norms(sizes.size());
        std::size_t at = 0;
        for (std::size_t g = 0; g < sizes.size(); ++g) {
            double s = 0.0;
            for (int i = 0; i < 2 * sizes[g]; ++i, ++at) s += r[at] * r[at];
            norms[g] = std::sqrt(s);
        }
        return psi(norms);
    };
}

namespace detail {

/// Real-coordinate offset of the first scalar of tail group g (0-based over the tail).
inline std::size_t tail_real_offset(const WeightSystem& ws, std::size_t g)
{
    std::size_t off = 0;
    for (std::size_t i = 0; i < g; ++i) off += 2 * static_cast<std::size_t>(ws.group_sizes()[i + 1]);
    return off;
}

inline std::size_t tail_real_dim(const WeightSystem& ws) { return 2 * static_cast<std::size_t>(ws.n() - ws.first_group_size()); }

inline void set_first(std::vector<double>& x, std::size_t off, std::complex<double> v)
{
    x[off] = v.real();
    x[off + 1] = v.imag();
}

} // namespace detail

/// Locus {z^j = 0} for tail group j (numbered 2..p). Other groups get a generic non-zero
/// first coordinate; the probe direction is Re of the first coordinate of group j.
inline Locus axis_locus(const WeightSystem& ws, std::size_t j, double radius = 0.5)
{
    detail::require(j >= 2 && j <= static_cast<std::size_t>(ws.p()), "axis_locus: group index must be in [2, p]");
    const std::size_t dim = detail::tail_real_dim(ws);
    Locus l{"axis z" + std::to_string(j) + "=0", std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
    for (std::size_t g = 0; g < ws.tail_count(); ++g)
        if (g + 2 != j) detail::set_first(l.base, detail::tail_real_offset(ws, g), std::polar(radius, 0.4 + 0.7 * g));
    l.normal[detail::tail_real_offset(ws, j - 2)] = 1.0;
    return l;
}

/// Locus {|z^a| = |z^b|}; the probe direction grows |z^a| and shrinks |z^b|.
inline Locus diagonal_locus(const WeightSystem& ws, std::size_t a, std::size_t b, double radius = 0.5)
{
    const auto p = static_cast<std::size_t>(ws.p());
    detail::require(a >= 2 && b >= 2 && a <= p && b <= p && a != b, "diagonal_locus: need distinct groups in [2, p]");
    const std::size_t dim = detail::tail_real_dim(ws);
    Locus l{"diagonal |z" + std::to_string(a) + "|=|z" + std::to_string(b) + "|", std::vector<double>(dim, 0.0),
            std::vector<double>(dim, 0.0)};
    for (std::size_t g = 0; g < ws.tail_count(); ++g)
        if (g + 2 != a && g + 2 != b)
            detail::set_first(l.base, detail::tail_real_offset(ws, g), std::polar(0.6 * radius, 0.4 + 0.7 * g));
    const auto za = std::polar(radius, 0.3), zb = std::polar(radius, 1.1);
    detail::set_first(l.base, detail::tail_real_offset(ws, a - 2), za);
    detail::set_first(l.base, detail::tail_real_offset(ws, b - 2), zb);
    const double s = 1.0 / std::sqrt(2.0);
    detail::set_first(l.normal, detail::tail_real_offset(ws, a - 2), s * za / std::abs(za));
    detail::set_first(l.normal, detail::tail_real_offset(ws, b - 2), -s * zb / std::abs(zb));
    return l;
}

/// Parses "axis:j" or "diagonal:a:b" (group numbers 2..p).
inline Locus parse_locus(const std::string& spec, const WeightSystem& ws)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    try {
        if (parts.size() == 2 && parts[0] == "axis") return axis_locus(ws, std::stoul(parts[1]));
        if (parts.size() == 3 && parts[0] == "diagonal")
            return diagonal_locus(ws, std::stoul(parts[1]), std::stoul(parts[2]));
    } catch (const std::logic_error&) {
    } catch (const ContractViolation&) {
    }
    throw RejectionError("invalid locus '" + spec + "' (expected axis:j or diagonal:a:b with 2 <= j, a, b <= p)");
}

inline SmoothnessReport smoothness_probe(const DefiningFunction& psi, const std::vector<Locus>& loci,
                                         const ProbeConfig& config)
{
    return smoothness_probe(real_coordinate_function(psi), detail::tail_real_dim(psi.weights()), loci, config);
}

} // namespace reinhardt
