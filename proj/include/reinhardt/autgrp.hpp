#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "branch.hpp"
#include "domain.hpp"
#include "errors.hpp"
#include "sampling.hpp"
#include "weights.hpp"

namespace reinhardt {

/// Parameter a of the Moebius-type automorphism; |a| < 1 - 1e-15.
class MoebiusParams {
public:
    explicit MoebiusParams(std::complex<double> a) : a_(a)
    {
        if (!(std::abs(a) < 1.0 - 1e-15)) throw ContractViolation("MoebiusParams: need |a| < 1");
    }
    std::complex<double> a() const noexcept { return a_; }

private:
    std::complex<double> a_;
};

/// Angles of the special rotations; gamma is normalized into (-pi, pi].
class RotationParams {
public:
    RotationParams(double beta, double gamma) : beta_(beta), gamma_(std::remainder(gamma, 2.0 * std::numbers::pi))
    {
        if (gamma_ <= -std::numbers::pi) gamma_ += 2.0 * std::numbers::pi;
    }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }

private:
    double beta_, gamma_;
};

/// z_1 -> (z_1 - a)/(1 - conj(a) z_1),
/// z_j -> (1 - |a|^2)^{1/alpha_j} z_j / (1 - conj(a) z_1)^{2/alpha_j}.
/// `alphas` holds one weight per coordinate z_2..z_n.
inline ComplexVector moebius_map(const MoebiusParams& params, std::span<const std::complex<double>> z,
                                 std::span<const double> alphas)
{
    detail::require(z.size() == alphas.size() + 1, "moebius_map: need one weight per tail coordinate");
    const auto a = params.a();
    const auto denom = 1.0 - std::conj(a) * z[0];
    // On |z_1| <= 1 the base 1 - conj(a) z_1 has positive real part, so its principal
    // powers never cross the cut.
    if (!(denom.real() > 0.0))
        throw EvaluationError("moebius_map: 1 - conj(a) z_1 left the right half-plane");
    const double shrink = 1.0 - std::norm(a);
    ComplexVector w(z.size());
    w[0] = (z[0] - a) / denom;
    for (std::size_t j = 1; j < z.size(); ++j) {
        const double alpha = alphas[j - 1];
        w[j] = frac_pow(shrink, alpha) * z[j] / frac_pow(denom, alpha / 2.0);
    }
    return w;
}

inline void require_scalar_first_group(const WeightSystem& ws)
{
    if (ws.first_group_size() != 1)
        throw UnsupportedConfiguration("Moebius automorphisms are implemented only for a scalar first group (n_1 = 1)");
}

inline ComplexVector moebius_map(const MoebiusParams& params, std::span<const std::complex<double>> z,
                                 const WeightSystem& ws)
{
    require_scalar_first_group(ws);
    const auto alphas = ws.coordinate_alphas();
    return moebius_map(params, z, alphas);
}

/// z_1 -> e^{i beta} z_1, z_j -> e^{i gamma / alpha_j} z_j.
inline ComplexVector rotation_map(const RotationParams& params, std::span<const std::complex<double>> z,
                                  std::span<const double> alphas, std::size_t first_group = 1)
{
    detail::require(z.size() == alphas.size() + first_group, "rotation_map: need one weight per tail coordinate");
    ComplexVector w(z.begin(), z.end());
    const auto rot1 = std::polar(1.0, params.beta());
    for (std::size_t i = 0; i < first_group; ++i) w[i] *= rot1;
    for (std::size_t j = first_group; j < z.size(); ++j)
        w[j] *= std::polar(1.0, params.gamma() / alphas[j - first_group]);
    return w;
}

inline ComplexVector rotation_map(const RotationParams& params, std::span<const std::complex<double>> z,
                                  const WeightSystem& ws)
{
    const auto alphas = ws.coordinate_alphas();
    return rotation_map(params, z, alphas, static_cast<std::size_t>(ws.first_group_size()));
}

struct InvarianceReport {
    std::size_t checked = 0;
    std::size_t interior = 0;
    std::size_t violations = 0;
    double max_residual = 0.0;
};

namespace detail {

/// Samples points with |z_1| < 1 (also when psi < 0) on both sides of the boundary and compares membership
/// and the transformation law of 1 - |z_1|^2 - psi before and after the map.
template <class Value, class Sampler, class Map>
InvarianceReport run_invariance(const Value& value, const Sampler& sample, const Map& map, std::complex<double> a,
                                std::size_t samples)
{
    InvarianceReport rep;
    for (std::size_t i = 0; i < samples; ++i) {
        const ComplexVector z = sample();
        const double vz = value(z);
        if (std::abs(vz - 1.0) < 1e-10) continue;
        const ComplexVector w = map(z);
        const double vw = value(w);
        const double t = (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * z[0]);
        const double lhs = 1.0 - vw;
        const double rhs = t * (1.0 - vz);
        const double psi_z = vz - std::norm(z[0]);
        const double psi_w = vw - std::norm(w[0]);
        const double scale = std::max({1.0, t, t * std::abs(psi_z), std::abs(psi_w)});
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs) / scale);
        const bool in_z = vz < 1.0, in_w = vw < 1.0;
        if (in_z != in_w) ++rep.violations;
        if (in_z) ++rep.interior;
        ++rep.checked;
    }
    return rep;
}

} // namespace detail

/// Membership preservation and the identity
/// 1 - |w_1|^2 - psi(w) = t (1 - |z_1|^2 - psi(z)), t = (1 - |a|^2) / |1 - conj(a) z_1|^2.
inline InvarianceReport check_invariance(const ReinhardtDomain& d, const MoebiusParams& params, std::size_t samples,
                                         std::uint64_t seed = 1)
{
    const auto& ws = d.weights();
    require_scalar_first_group(ws);
    const auto alphas = ws.coordinate_alphas();
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> norms(static_cast<std::size_t>(ws.p()), 0.0);
    auto sample = [&]() {
        double psi = 0.0;
        if (ws.tail_count() > 0) {
            auto s = random_s1_point(ws.alphas(), rng);
            const double ps = d.psi()(s);
            const double t = 1.5 * u(rng) / (ps > 0.0 ? ps : 1.0);
            for (std::size_t j = 0; j < s.size(); ++j) norms[j + 1] = std::pow(t, 1.0 / ws.alpha(j)) * s[j];
            psi = d.psi()(std::span<const double>(norms).subspan(1));
        }
        norms[0] = (psi < 1.0 && u(rng) < 0.5) ? std::sqrt(u(rng) * std::min(1.0, 1.0 - psi)) : u(rng);
        return detail::point_with_norms(ws, norms, rng);
    };
    auto value = [&](const ComplexVector& z) { return d.defining_value(z); };
    auto map = [&](const ComplexVector& z) { return moebius_map(params, z, alphas); };
    return detail::run_invariance(value, sample, map, params.a(), samples);
}

inline InvarianceReport check_invariance(const GeneralDomain& d, const MoebiusParams& params, std::size_t samples,
                                         std::uint64_t seed = 1)
{
    const auto& alphas = d.alphas();
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sample = [&]() {
        ComplexVector z(alphas.size() + 1);
        const double t = 1.5 * u(rng);
        if (!alphas.empty()) {
            const auto s = random_s1_point(alphas, rng);
            for (std::size_t j = 0; j < s.size(); ++j)
                z[j + 1] = std::polar(std::pow(t, 1.0 / alphas[j]) * s[j], random_phase(rng));
        }
        const double psi = d.psi()(std::span<const std::complex<double>>(z).subspan(1));
        const double r1 = (psi < 1.0 && u(rng) < 0.5) ? std::sqrt(u(rng) * std::min(1.0, 1.0 - psi)) : u(rng);
        z[0] = std::polar(r1, random_phase(rng));
        return z;
    };
    auto value = [&](const ComplexVector& z) { return d.defining_value(z); };
    auto map = [&](const ComplexVector& z) { return moebius_map(params, z, alphas); };
    return detail::run_invariance(value, sample, map, params.a(), samples);
}

struct OrbitPoint {
    double a = 0.0;
    ComplexVector point;
    double gap = 0.0; ///< 1 - |z_1|^2 - psi, a proxy for the distance to the boundary
};

struct OrbitResult {
    std::vector<OrbitPoint> points;
    bool noncompactness_witness = false; ///< gaps strictly decreasing and the last one below 1e-5
};

/// Images of `start` under the Moebius maps with parameters a_m.
inline OrbitResult orbit(const ReinhardtDomain& d, std::span<const std::complex<double>> start,
                         std::span<const double> a_sequence)
{
    const auto& ws = d.weights();
    require_scalar_first_group(ws);
    if (!contains_point(d, start).inside) throw RejectionError("orbit: start point is not inside the domain");
    const auto alphas = ws.coordinate_alphas();
    OrbitResult res;
    for (double a : a_sequence) {
        if (!(a >= 0.0 && a < 1.0)) throw RejectionError("orbit: schedule value " + format17(a) + " is outside [0, 1)");
        const MoebiusParams params(a);
        auto w = moebius_map(params, start, alphas);
        const double gap = 1.0 - d.defining_value(w);
        res.points.push_back({a, std::move(w), gap});
    }
    bool decreasing = !res.points.empty();
    for (std::size_t i = 1; i < res.points.size(); ++i)
        if (!(res.points[i].gap < res.points[i - 1].gap)) decreasing = false;
    res.noncompactness_witness = decreasing && res.points.back().gap < 1e-5;
    return res;
}

/// CSV with header `step,a,re_z1,im_z1,gap`, steps numbered from 1.
inline std::string orbit_csv(const OrbitResult& r)
{
    std::ostringstream os;
    os << "step,a,re_z1,im_z1,gap\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& p = r.points[i];
        os << (i + 1) << ',' << format17(p.a) << ',' << format17(p.point[0].real()) << ','
           << format17(p.point[0].imag()) << ',' << format17(p.gap) << '\n';
    }
    return os.str();
}

struct InverseCheckResult {
    double first_residual = 0.0;  ///< |v_1 - z_1|
    double moduli_residual = 0.0; ///< max_j ||v_j| - |z_j||
    double full_residual = 0.0;   ///< max_j |v_j - z_j|
    bool all_even = false;
    bool pass = false;
    bool phase_discrepancy = false; ///< informational: full residual large while some alpha is not even
};

/// Applies moebius_map(-a) after moebius_map(a) and measures the return to z.
inline InverseCheckResult inverse_check(const MoebiusParams& params, std::span<const std::complex<double>> z,
                                        std::span<const double> alphas)
{
    detail::require(std::abs(z[0]) < 1.0, "inverse_check: need |z_1| < 1");
    const auto w = moebius_map(params, z, alphas);
    const auto v = moebius_map(MoebiusParams(-params.a()), w, alphas);
    InverseCheckResult r;
    r.all_even = std::all_of(alphas.begin(), alphas.end(), [](double a) { return is_even_integer(a); });
    r.first_residual = std::abs(v[0] - z[0]);
    for (std::size_t j = 1; j < z.size(); ++j) {
        r.moduli_residual = std::max(r.moduli_residual, std::abs(std::abs(v[j]) - std::abs(z[j])));
        r.full_residual = std::max(r.full_residual, std::abs(v[j] - z[j]));
    }
    r.full_residual = std::max(r.full_residual, r.first_residual);
    r.pass = r.first_residual <= 1e-12 && r.moduli_residual <= 1e-12 && (!r.all_even || r.full_residual <= 1e-12);
    r.phase_discrepancy = !r.all_even && r.full_residual > 1e-12;
    return r;
}

} // namespace reinhardt
