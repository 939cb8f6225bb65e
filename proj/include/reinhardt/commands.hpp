#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "autgrp.hpp"
#include "config.hpp"
#include "domain.hpp"
#include "smoothness.hpp"
#include "weights.hpp"

namespace reinhardt {

/// Process exit statuses of the command layer.
enum ExitStatus : int { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2 };

struct CommandResult {
    int status = kExitPass;
    std::string output;
};

inline constexpr double kClosedFormTolerance = 1e-9;
inline constexpr double kQuadratureTolerance = 1e-6;

namespace detail {

class Sections {
public:
    void begin(const std::string& title) { os_ << "== " << title << " ==\n"; }
    void line(const std::string& text) { os_ << "  " << text << '\n'; }
    void verdict(bool pass)
    {
        os_ << "  " << (pass ? "PASS" : "FAIL") << "\n\n";
        all_ = all_ && pass;
    }
    void skipped(const std::string& why) { os_ << "  SKIPPED: " << why << "\n\n"; }
    bool all() const { return all_; }
    std::string finish()
    {
        os_ << "== summary ==\n  " << (all_ ? "PASS" : "FAIL") << '\n';
        return os_.str();
    }

private:
    std::ostringstream os_;
    bool all_ = true;
};

inline std::string format_complex(std::complex<double> a)
{
    std::ostringstream os;
    os << format17(a.real());
    if (a.imag() != 0.0) os << (a.imag() < 0 ? "-" : "+") << format17(std::abs(a.imag())) << "i";
    return os.str();
}

inline std::vector<double> default_t_values() { return {0.0, 0.1, 0.5, 2.0, 10.0}; }

inline void validate_reinhardt(const DomainConfig& c, const ReinhardtDomain& d, Sections& out)
{
    const auto& ws = d.weights();
    const auto psi = d.psi().as_function();
    const double tol = d.psi().uses_quadrature() ? kQuadratureTolerance : kClosedFormTolerance;
    const std::size_t n = c.check.samples;
    const auto seed = c.check.seed;

    out.begin("homogeneity");
    const auto t_values = default_t_values();
    const double hres = check_homogeneity(psi, ws, n, t_values, seed);
    out.line("pairs: " + std::to_string(n * t_values.size()) + ", t in {0, 0.1, 0.5, 2, 10}");
    out.line("max residual: " + format17(hres) + " (tolerance " + format17(tol) + ")");
    out.verdict(hres <= tol);

    out.begin("normalization");
    const auto norm = check_normalization(psi, ws);
    for (std::size_t j = 0; j < norm.axis_error.size(); ++j)
        out.line("axis x" + std::to_string(j + 2) + ": max relative error " + format17(norm.axis_error[j]));
    out.verdict(norm.pass);

    out.begin("non-negativity");
    const auto nn = check_nonnegativity(psi, ws, n, seed);
    std::string at;
    for (double v : nn.argmin) at += (at.empty() ? "" : ", ") + format17(v);
    out.line("min value: " + format17(nn.min_value) + " at (" + at + ")");
    out.verdict(nn.pass);

    out.begin("boundedness");
    const auto b = check_bounded(d, 10 * n);
    out.line(std::string("verdict: ") + to_string(b.verdict));
    out.line("min of psi on S_1: " + format17(b.min_on_s1));
    for (std::size_t j = 0; j < b.radius_bounds.size(); ++j)
        out.line("|z" + std::to_string(j + 2) + "| <= " + format17(b.radius_bounds[j]));
    if (!b.reason.empty()) out.line("reason: " + b.reason);
    out.verdict(b.verdict == BoundednessVerdict::Bounded);

    out.begin("invariance");
    if (ws.first_group_size() != 1) {
        out.skipped("Moebius maps need a scalar first group (n_1 = 1)");
        return;
    }
    bool ok = true;
    for (auto a : c.check.moebius) {
        const auto r = check_invariance(d, MoebiusParams(a), n, seed);
        out.line("a = " + format_complex(a) + ": points " + std::to_string(r.checked) + ", inside " +
                 std::to_string(r.interior) + ", violations " + std::to_string(r.violations) + ", max residual " +
                 format17(r.max_residual));
        ok = ok && r.violations == 0 && r.max_residual <= tol;
    }
    out.line("tolerance: " + format17(tol));
    out.verdict(ok);
}

inline void validate_general(const DomainConfig& c, const GeneralDomain& d, Sections& out)
{
    const auto& alphas = d.alphas();
    const std::size_t n = c.check.samples;
    const auto seed = c.check.seed;
    const auto psi = d.psi();

    out.begin("homogeneity");
    std::vector<std::complex<double>> ts{0.0, 0.1, 2.0, {0.0, 1.0}, -1.0, std::polar(0.7, 2.0), std::polar(3.0, -1.0)};
    const double hres = check_complex_homogeneity(psi, alphas, n, ts, seed);
    out.line("max residual over complex t: " + format17(hres) + " (tolerance " + format17(kClosedFormTolerance) + ")");
    out.verdict(hres <= kClosedFormTolerance);

    out.begin("normalization");
    bool norm_ok = true;
    std::vector<std::complex<double>> z(alphas.size());
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        double worst = 0.0;
        for (double t : {0.1, 0.5, 1.0}) {
            z[j] = t;
            const double expect = std::pow(t, alphas[j]);
            worst = std::max(worst, std::abs(psi(z) - expect) / std::max(1.0, expect));
        }
        z[j] = 0.0;
        out.line("axis z" + std::to_string(j + 2) + ": max relative error " + format17(worst));
        norm_ok = norm_ok && worst <= 1e-12;
    }
    out.verdict(norm_ok);

    // psi is weight-one homogeneous, so its infimum on the torus-invariant unit set S_1
    // controls both sign and boundedness.
    out.begin("non-negativity and boundedness");
    Rng rng(seed);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 10 * n && !alphas.empty(); ++i) {
        const auto s = random_s1_point(alphas, rng);
        for (std::size_t j = 0; j < s.size(); ++j) z[j] = std::polar(s[j], random_phase(rng));
        m = std::min(m, psi(z));
    }
    out.line("min of psi over S_1 moduli with random phases: " + format17(m));
    out.verdict(alphas.empty() || m > 1e-6);

    out.begin("invariance");
    bool ok = true;
    for (auto a : c.check.moebius) {
        const auto r = check_invariance(d, MoebiusParams(a), n, seed);
        out.line("a = " + format_complex(a) + ": points " + std::to_string(r.checked) + ", violations " +
                 std::to_string(r.violations) + ", max residual " + format17(r.max_residual));
        ok = ok && r.violations == 0 && r.max_residual <= kClosedFormTolerance;
    }
    out.verdict(ok);
}

} // namespace detail

/// Sectioned report of every check; status 0 iff all pass.
inline CommandResult cmd_validate(const DomainConfig& c)
{
    detail::Sections out;
    const auto built = build_domain(c);
    out.begin("weights");
    const auto report = validate_weights(built.weights);
    std::istringstream lines(report.to_string(built.weights));
    for (std::string l; std::getline(lines, l);) out.line(l);
    out.verdict(report.pass);
    if (built.reinhardt)
        detail::validate_reinhardt(c, *built.reinhardt, out);
    else
        detail::validate_general(c, *built.general, out);
    CommandResult r;
    r.output = "domain: " + c.name + "\n\n" + out.finish();
    r.status = out.all() ? kExitPass : kExitCheckFailure;
    return r;
}

inline CommandResult cmd_enumerate_m(const DomainConfig& c)
{
    WeightSystem ws = [&] {
        try {
            return WeightSystem(c.weights.n, c.weights.group_sizes, c.weights.alphas, c.weights.k);
        } catch (const Error& e) {
            throw ConfigError("/weights", e.what());
        }
    }();
    return {kExitPass, enumerate_admissible_set(ws).to_string()};
}

/// "dyadic:N" (a_m = 1 - 2^-m, m = 1..N), "constant:A:N", or "list:a1,a2,...".
inline std::vector<double> parse_schedule(const std::string& spec)
{
    auto bad = [&](const std::string& why) {
        return RejectionError("invalid schedule '" + spec + "': " + why);
    };
    auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw bad("'" + s + "' is not a number");
        return v;
    };
    auto to_count = [&](const std::string& s) {
        const double v = to_double(s);
        if (!(v >= 1.0 && v <= 1e6 && std::floor(v) == v)) throw bad("count must be a positive integer");
        return static_cast<std::size_t>(v);
    };
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    std::vector<double> out;
    if (parts.size() == 2 && parts[0] == "dyadic") {
        const auto n = to_count(parts[1]);
        if (n > 52) throw bad("dyadic schedules reach a = 1 in double precision beyond m = 52");
        for (std::size_t m = 1; m <= n; ++m) out.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(m)));
    } else if (parts.size() == 3 && parts[0] == "constant") {
        out.assign(to_count(parts[2]), to_double(parts[1]));
    } else if (parts.size() == 2 && parts[0] == "list") {
        std::stringstream ls(parts[1]);
        for (std::string v; std::getline(ls, v, ',');) out.push_back(to_double(v));
    } else {
        throw bad("expected dyadic:N, constant:A:N or list:a1,a2,...");
    }
    if (out.empty()) throw bad("empty schedule");
    for (double a : out)
        if (!(a >= 0.0 && a < 1.0)) throw bad("value " + format17(a) + " is outside [0, 1)");
    return out;
}

/// Orbit of `start` (default: the origin) as CSV.
inline CommandResult cmd_orbit(const DomainConfig& c, const std::string& schedule,
                               std::optional<ComplexVector> start = std::nullopt)
{
    const auto built = build_domain(c);
    if (!built.reinhardt) throw UnsupportedConfiguration("orbit is implemented for Reinhardt-mode domains");
    const auto as = parse_schedule(schedule);
    const ComplexVector z = start.value_or(ComplexVector(static_cast<std::size_t>(built.weights.n())));
    if (z.size() != static_cast<std::size_t>(built.weights.n()))
        throw RejectionError("orbit: start point needs " + std::to_string(built.weights.n()) + " coordinates");
    return {kExitPass, orbit_csv(orbit(*built.reinhardt, z, as))};
}

/// Probe report; status 1 unless consistent with C^k at every locus.
inline CommandResult cmd_smoothness(const DomainConfig& c)
{
    const auto built = build_domain(c);
    if (!built.reinhardt) throw UnsupportedConfiguration("smoothness probes are implemented for Reinhardt-mode domains");
    const auto probe = resolve_probe(c);
    const auto loci = resolve_loci(c, built.weights);
    const auto report = smoothness_probe(built.reinhardt->psi(), loci, probe);
    return {report.consistent ? kExitPass : kExitCheckFailure, report.render()};
}

/// Moduli-plane table; plane indices are 0 for |z^1| and j - 1 for |z^j|.
inline CommandResult cmd_slice(const DomainConfig& c, std::size_t a, std::size_t b, std::size_t grid,
                               double extent = 1.25)
{
    const auto built = build_domain(c);
    if (!built.reinhardt) throw UnsupportedConfiguration("slices are implemented for Reinhardt-mode domains");
    return {kExitPass, slice_export(*built.reinhardt, a, b, grid, extent)};
}

/// Boundary points as CSV with columns re_z1,im_z1,...,re_zn,im_zn.
inline CommandResult cmd_sample(const DomainConfig& c, std::size_t count)
{
    const auto built = build_domain(c);
    if (!built.reinhardt) throw UnsupportedConfiguration("sampling is implemented for Reinhardt-mode domains");
    std::vector<ComplexVector> pts;
    try {
        pts = boundary_sample(*built.reinhardt, count, c.check.seed);
    } catch (const RejectionError& e) {
        return {kExitCheckFailure, std::string(e.what()) + "\n"};
    }
    std::ostringstream os;
    for (int i = 1; i <= built.weights.n(); ++i)
        os << (i > 1 ? "," : "") << "re_z" << i << ",im_z" << i;
    os << '\n';
    for (const auto& z : pts) {
        for (std::size_t i = 0; i < z.size(); ++i)
            os << (i ? "," : "") << format17(z[i].real()) << ',' << format17(z[i].imag());
        os << '\n';
    }
    return {kExitPass, os.str()};
}

} // namespace reinhardt
