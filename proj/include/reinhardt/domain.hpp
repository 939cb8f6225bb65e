#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "errors.hpp"
#include "homog.hpp"
#include "sampling.hpp"
#include "weights.hpp"

namespace reinhardt {

using ComplexVector = std::vector<std::complex<double>>;

/// Half-width of the band around the level set |z^1|^2 + psi = 1 reported as boundary.
inline constexpr double kBoundaryBand = 1e-14;

inline std::string format17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Membership {
    bool inside = false;
    bool boundary = false;
    double value = 0.0; ///< |z^1|^2 + psi(...)
};

inline Membership classify_value(double value)
{
    Membership m;
    m.value = value;
    m.boundary = std::abs(value - 1.0) <= kBoundaryBand;
    m.inside = !m.boundary && value < 1.0;
    return m;
}

/// {z in C^n : |z^1|^2 + psi(|z^2|, ..., |z^p|) < 1} with Euclidean group norms.
class ReinhardtDomain {
public:
    explicit ReinhardtDomain(DefiningFunction psi) : psi_(std::move(psi)) {}

    const WeightSystem& weights() const noexcept { return psi_.weights(); }
    const DefiningFunction& psi() const noexcept { return psi_; }

    /// Euclidean norm of each variable group; element 0 is |z^1|.
    std::vector<double> group_norms(std::span<const std::complex<double>> z) const
    {
        const auto& ws = weights();
        if (z.size() != static_cast<std::size_t>(ws.n()))
            throw ContractViolation("domain point has " + std::to_string(z.size()) + " coordinates, expected " +
                                    std::to_string(ws.n()));
        std::vector<double> norms;
        std::size_t at = 0;
        for (int g : ws.group_sizes()) {
            double s = 0.0;
            for (int i = 0; i < g; ++i) s += std::norm(z[at++]);
            norms.push_back(std::sqrt(s));
        }
        return norms;
    }

    /// |z^1|^2 + psi(tail moduli).
    double defining_value(std::span<const std::complex<double>> z) const
    {
        const auto norms = group_norms(z);
        return norms[0] * norms[0] + psi_(std::span<const double>(norms).subspan(1));
    }

private:
    DefiningFunction psi_;
};

/// {|z_1|^2 + psi(z_2, ..., z_n) < 1} for a psi that need not depend on moduli only.
class GeneralDomain {
public:
    GeneralDomain(std::vector<double> alphas, ComplexFunction psi) : alphas_(std::move(alphas)), psi_(std::move(psi))
    {
        for (double a : alphas_) detail::require(a > 0.0, "GeneralDomain: weights must be positive");
    }

    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const ComplexFunction& psi() const noexcept { return psi_; }

    double defining_value(std::span<const std::complex<double>> z) const
    {
        if (z.size() != alphas_.size() + 1)
            throw ContractViolation("domain point has " + std::to_string(z.size()) + " coordinates, expected " +
                                    std::to_string(alphas_.size() + 1));
        return std::norm(z[0]) + psi_(z.subspan(1));
    }

private:
    std::vector<double> alphas_;
    ComplexFunction psi_;
};

inline Membership contains_point(const ReinhardtDomain& d, std::span<const std::complex<double>> z)
{
    return classify_value(d.defining_value(z));
}

inline Membership contains_point(const GeneralDomain& d, std::span<const std::complex<double>> z)
{
    return classify_value(d.defining_value(z));
}

enum class BoundednessVerdict { Bounded, Inconclusive, Refused };

inline const char* to_string(BoundednessVerdict v)
{
    switch (v) {
    case BoundednessVerdict::Bounded: return "bounded";
    case BoundednessVerdict::Inconclusive: return "inconclusive";
    case BoundednessVerdict::Refused: return "refused";
    }
    return "?";
}

struct BoundednessReport {
    BoundednessVerdict verdict = BoundednessVerdict::Refused;
    double min_on_s1 = 0.0;
    std::vector<double> radius_bounds; ///< |z^j| <= (1/m)^{1/alpha_j} on the base domain
    NonnegativityReport nonnegativity;
    std::string reason;
};

/// Certifies boundedness of the base domain {psi < 1} from the minimum m of psi on an
/// S_1 grid: bounded iff m > 1e-6. A psi that fails non-negativity sampling is refused.
inline BoundednessReport check_bounded(const ReinhardtDomain& d, std::size_t sample_count)
{
    const auto& ws = d.weights();
    BoundednessReport rep;
    if (ws.tail_count() == 0) {
        rep.verdict = BoundednessVerdict::Bounded;
        rep.min_on_s1 = std::numeric_limits<double>::infinity();
        rep.reason = "no tail variables";
        return rep;
    }
    const auto psi = d.psi().as_function();
    rep.nonnegativity = check_nonnegativity(psi, ws, sample_count);
    if (!rep.nonnegativity.pass) {
        rep.verdict = BoundednessVerdict::Refused;
        rep.min_on_s1 = rep.nonnegativity.min_value;
        rep.reason = "psi takes the negative value " + format17(rep.nonnegativity.min_value);
        return rep;
    }
    rep.min_on_s1 = std::numeric_limits<double>::infinity();
    for (const auto& x : s1_grid(ws.alphas(), sample_count)) rep.min_on_s1 = std::min(rep.min_on_s1, psi(x));
    if (rep.min_on_s1 > 1e-6) {
        rep.verdict = BoundednessVerdict::Bounded;
        for (std::size_t j = 0; j < ws.tail_count(); ++j)
            rep.radius_bounds.push_back(std::pow(1.0 / rep.min_on_s1, 1.0 / ws.alpha(j)));
    } else if (rep.min_on_s1 >= 0.0) {
        rep.verdict = BoundednessVerdict::Inconclusive;
        rep.reason = "minimum of psi on S_1 is not above 1e-6";
    } else {
        rep.verdict = BoundednessVerdict::Refused;
        rep.reason = "psi is negative on S_1";
    }
    return rep;
}

namespace detail {

/// Writes a vector of norm `r` in C^size with a random direction into z starting at `at`.
inline void place_group(ComplexVector& z, std::size_t at, int size, double r, Rng& rng)
{
    const auto dir = random_unit_vector(static_cast<std::size_t>(size), rng);
    for (int i = 0; i < size; ++i) z[at + static_cast<std::size_t>(i)] = r * dir[static_cast<std::size_t>(i)];
}

/// Random point of C^n with prescribed group norms.
inline ComplexVector point_with_norms(const WeightSystem& ws, std::span<const double> norms, Rng& rng)
{
    ComplexVector z(static_cast<std::size_t>(ws.n()));
    for (std::size_t g = 0; g < norms.size(); ++g)
        place_group(z, static_cast<std::size_t>(ws.group_offset(g)), ws.group_sizes()[g], norms[g], rng);
    return z;
}

} // namespace detail

struct FiberReport {
    std::size_t checked = 0;
    std::size_t skipped_near_boundary = 0;
    std::size_t discrepancies = 0;
};

/// On the slice |z^1|^2 = 1 - sigma, checks z in D <=> (z^j sigma^{-1/alpha_j}) in the base domain.
inline FiberReport fiber_representation_check(const ReinhardtDomain& d, double sigma, std::size_t samples,
                                              std::uint64_t seed = 1)
{
    if (!(sigma > 0.0 && sigma < 1.0)) throw ContractViolation("fiber_representation_check: sigma must lie in (0, 1)");
    const auto& ws = d.weights();
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    FiberReport rep;
    std::vector<double> norms(static_cast<std::size_t>(ws.p()));
    norms[0] = std::sqrt(1.0 - sigma);
    for (std::size_t i = 0; i < samples; ++i) {
        if (ws.tail_count() > 0) {
            auto s = random_s1_point(ws.alphas(), rng);
            const double ps = d.psi()(s);
            const double t = u(rng) * sigma / (ps > 0.0 ? ps : 1.0);
            for (std::size_t j = 0; j < s.size(); ++j) norms[j + 1] = std::pow(t, 1.0 / ws.alpha(j)) * s[j];
        }
        const auto z = detail::point_with_norms(ws, norms, rng);
        const auto m = contains_point(d, z);
        if (std::abs(m.value - 1.0) < 1e-9) {
            ++rep.skipped_near_boundary;
            continue;
        }
        const auto zn = d.group_norms(z);
        std::vector<double> scaled(ws.tail_count());
        for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = zn[j + 1] * std::pow(sigma, -1.0 / ws.alpha(j));
        const bool in_base = d.psi()(scaled) < 1.0;
        ++rep.checked;
        if (in_base != m.inside) ++rep.discrepancies;
    }
    return rep;
}

/// Points on |z^1|^2 + psi = 1: tail moduli drawn with psi < 1, |z^1| = sqrt(1 - psi),
/// directions and phases random. Deterministic for a fixed seed.
inline std::vector<ComplexVector> boundary_sample(const ReinhardtDomain& d, std::size_t count, std::uint64_t seed)
{
    const auto cert = check_bounded(d, 1000);
    if (cert.verdict != BoundednessVerdict::Bounded)
        throw RejectionError(std::string("boundary_sample: domain not certified bounded (") + to_string(cert.verdict) +
                             (cert.reason.empty() ? "" : ": " + cert.reason) + ")");
    const auto& ws = d.weights();
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<ComplexVector> out;
    out.reserve(count);
    std::vector<double> norms(static_cast<std::size_t>(ws.p()), 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        ComplexVector z(static_cast<std::size_t>(ws.n()));
        double psi_value = 0.0;
        if (ws.tail_count() > 0) {
            auto s = random_s1_point(ws.alphas(), rng);
            const double rho = u(rng) / d.psi()(s);
            for (std::size_t j = 0; j < s.size(); ++j) norms[j + 1] = std::pow(rho, 1.0 / ws.alpha(j)) * s[j];
            for (std::size_t g = 1; g < norms.size(); ++g)
                detail::place_group(z, static_cast<std::size_t>(ws.group_offset(g)), ws.group_sizes()[g], norms[g], rng);
            const auto actual = d.group_norms(z);
            psi_value = d.psi()(std::span<const double>(actual).subspan(1));
        }
        detail::place_group(z, 0, ws.first_group_size(), std::sqrt(std::max(0.0, 1.0 - psi_value)), rng);
        out.push_back(std::move(z));
    }
    return out;
}

struct SliceRow {
    double xa, xb, psi;
    bool inside;
};

/// grid x grid table over the moduli plane (x_a, x_b), other moduli zero. Index 0 is
/// |z^1|; index j >= 1 is the tail modulus |z^{j+1}|. `psi` is the tail defining function
/// and `inside` tests |z^1|^2 + psi < 1. Rows are row-major (x_a outer).
inline std::vector<SliceRow> slice_table(const ReinhardtDomain& d, std::size_t a, std::size_t b, std::size_t grid,
                                         double extent = 1.25)
{
    const auto& ws = d.weights();
    const auto p = static_cast<std::size_t>(ws.p());
    if (a >= p || b >= p || a == b) throw ContractViolation("slice_export: plane needs two distinct moduli in [0, p)");
    detail::require(grid >= 1, "slice_export: grid must be positive");
    std::vector<SliceRow> rows;
    std::vector<double> m(p, 0.0);
    auto coord = [&](std::size_t i) { return grid == 1 ? 0.0 : extent * static_cast<double>(i) / static_cast<double>(grid - 1); };
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            m[a] = coord(i);
            m[b] = coord(j);
            const double psi = d.psi()(std::span<const double>(m).subspan(1));
            rows.push_back({m[a], m[b], psi, classify_value(m[0] * m[0] + psi).inside});
        }
    }
    return rows;
}

inline std::string slice_export(const ReinhardtDomain& d, std::size_t a, std::size_t b, std::size_t grid,
                                double extent = 1.25)
{
    std::ostringstream os;
    os << "x_a,x_b,psi,inside\n";
    for (const auto& r : slice_table(d, a, b, grid, extent))
        os << format17(r.xa) << ',' << format17(r.xb) << ',' << format17(r.psi) << ',' << (r.inside ? 1 : 0) << '\n';
    return os.str();
}

} // namespace reinhardt
