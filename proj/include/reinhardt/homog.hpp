#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "tables.hpp"
#include "weights.hpp"

namespace reinhardt {

/// Real function of the tail moduli (x_2, ..., x_p).
using ModuliFunction = std::function<double(std::span<const double>)>;

inline constexpr int kDefaultQuadratureNodes = 32;

/// Default C^2 profile: x^2 outside [-1, 1], and x^2 + x^2 (1 - x^2)^3 inside.
/// The bump has value and first two derivatives zero at +-1, so the profile is C^2 and
/// not C^3 there. It is non-negative and vanishes at 0.
inline double c2_bump_profile(double x)
{
    const double x2 = x * x;
    if (x2 >= 1.0) return x2;
    const double c = 1.0 - x2;
    return x2 + x2 * c * c * c;
}

/// Non-negative density on the parameter interval of a segment.
class Density {
public:
    /// Built-ins: "uniform" (1), "linear" (0 at u_lo rising to 1 at u_hi), "tent" (peak 1 at the midpoint).
    static Density builtin(const std::string& name)
    {
        if (name != "uniform" && name != "linear" && name != "tent")
            throw RejectionError("unknown density '" + name + "' (expected uniform, linear or tent)");
        Density d;
        d.name_ = name;
        return d;
    }

    static Density tabulated(LinearTable table, std::string source = "table")
    {
        for (double v : table.values())
            if (v < 0.0) throw RejectionError("density table has a negative value");
        Density d;
        d.name_ = std::move(source);
        d.table_ = std::move(table);
        return d;
    }

    double operator()(double u, double lo, double hi) const
    {
        if (table_) return (*table_)(u);
        if (name_ == "linear") return (u - lo) / (hi - lo);
        if (name_ == "tent") return 1.0 - std::abs(2.0 * (u - 0.5 * (lo + hi)) / (hi - lo));
        return 1.0;
    }

    const std::string& name() const noexcept { return name_; }
    const std::optional<LinearTable>& table() const noexcept { return table_; }

private:
    std::string name_ = "uniform";
    std::optional<LinearTable> table_;
};

/// Scalar profile applied to the weight-zero quotients of an InvariantProfile term.
class Profile {
public:
    using Fn = std::function<double(std::span<const double>)>;

    /// Built-ins of one quotient: "c2-bump" (default), "square" (x^2), "zero".
    static Profile builtin(const std::string& name)
    {
        Fn fn;
        if (name == "c2-bump")
            fn = [](std::span<const double> u) { return c2_bump_profile(u[0]); };
        else if (name == "square")
            fn = [](std::span<const double> u) { return u[0] * u[0]; };
        else if (name == "zero")
            fn = [](std::span<const double>) { return 0.0; };
        else
            throw RejectionError("unknown profile '" + name + "' (expected c2-bump, square or zero)");
        return Profile(name, std::move(fn), 1);
    }

    static Profile tabulated(LinearTable table, std::string source = "table")
    {
        auto shared = std::make_shared<const LinearTable>(std::move(table));
        Profile p(std::move(source), [shared](std::span<const double> u) { return (*shared)(u[0]); }, 1);
        p.table_ = shared;
        return p;
    }

    Profile(std::string name, Fn fn, std::size_t arity) : name_(std::move(name)), fn_(std::move(fn)), arity_(arity) {}

    double operator()(std::span<const double> u) const { return fn_(u); }
    const std::string& name() const noexcept { return name_; }
    std::size_t arity() const noexcept { return arity_; }
    const LinearTable* table() const noexcept { return table_.get(); }

private:
    std::string name_;
    Fn fn_;
    std::size_t arity_;
    std::shared_ptr<const LinearTable> table_;
};

struct Monomial {
    double coeff = 1.0;
    ExponentTuple s;
};

/// Integral over u in [u_lo, u_hi] of prod_j x_j^{s_j(u)} density(u) du with the affine
/// path s(u) = base + u * direction.
class SegmentIntegral {
public:
    SegmentIntegral(ExponentTuple base, std::vector<double> direction, double u_lo, double u_hi,
                    Density density = Density::builtin("uniform"), int nodes = kDefaultQuadratureNodes)
        : base_(std::move(base)), direction_(std::move(direction)), u_lo_(u_lo), u_hi_(u_hi),
          density_(std::move(density)), nodes_(nodes)
    {
        detail::require(direction_.size() == base_.size(), "SegmentIntegral: base and direction differ in length");
        detail::require(std::isfinite(u_lo_) && std::isfinite(u_hi_) && u_lo_ < u_hi_,
                        "SegmentIntegral: need finite u_lo < u_hi");
        detail::require(nodes_ >= 1, "SegmentIntegral: need at least one quadrature node");
        rule_ = std::make_shared<const GaussLegendreRule>(nodes_);
        for (double u : {u_lo_, 0.5 * (u_lo_ + u_hi_), u_hi_})
            for (std::size_t j = 0; j < base_.size(); ++j)
                if (base_[j] + u * direction_[j] < -1e-12)
                    throw RejectionError("SegmentIntegral: path leaves the non-negative orthant at u = " +
                                         format_number(u));
    }

    ExponentTuple at(double u) const
    {
        std::vector<double> s(base_.size());
        for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::max(0.0, base_[j] + u * direction_[j]);
        return ExponentTuple(std::move(s));
    }

    double evaluate(std::span<const double> x) const
    {
        return rule_->integrate(
            [&](double u) {
                double prod = density_(u, u_lo_, u_hi_);
                for (std::size_t j = 0; j < x.size() && prod != 0.0; ++j) {
                    const double sj = std::max(0.0, base_[j] + u * direction_[j]);
                    prod *= std::pow(x[j], sj);
                }
                return prod;
            },
            u_lo_, u_hi_);
    }

    const ExponentTuple& base() const noexcept { return base_; }
    const std::vector<double>& direction() const noexcept { return direction_; }
    double u_lo() const noexcept { return u_lo_; }
    double u_hi() const noexcept { return u_hi_; }
    const Density& density() const noexcept { return density_; }
    int nodes() const noexcept { return nodes_; }

private:
    ExponentTuple base_;
    std::vector<double> direction_;
    double u_lo_, u_hi_;
    Density density_;
    int nodes_;
    std::shared_ptr<const GaussLegendreRule> rule_;
};

/// x^numerator / x^denominator, required to have weight zero.
struct Quotient {
    ExponentTuple numerator, denominator;
};

/// prefactor monomial (weight one) times profile(quotients), zero where the prefactor vanishes.
struct InvariantProfile {
    ExponentTuple prefactor;
    std::vector<Quotient> quotients;
    Profile profile = Profile::builtin("c2-bump");
};

using HomogeneousTerm = std::variant<Monomial, SegmentIntegral, InvariantProfile>;

inline const char* term_kind(const HomogeneousTerm& t)
{
    switch (t.index()) {
    case 0: return "monomial";
    case 1: return "segment";
    default: return "profile";
    }
}

namespace detail {

inline double monomial_value(const ExponentTuple& s, std::span<const double> x)
{
    double v = 1.0;
    for (std::size_t j = 0; j < s.size(); ++j) v *= std::pow(x[j], s[j]);
    return v;
}

inline bool close_to_one(double w) { return std::abs(w - 1.0) <= kWeightTolerance; }

inline void validate_term(const HomogeneousTerm& term, const WeightSystem& ws)
{
    if (const auto* m = std::get_if<Monomial>(&term)) {
        check_arity(m->s, ws);
        if (!close_to_one(weight_of(m->s, ws)))
            throw RejectionError("monomial " + m->s.to_string() + " does not have weight 1");
        if (m->s.nonzero_count() < 2)
            throw RejectionError("monomial " + m->s.to_string() + " needs at least two non-zero exponents");
        if (!std::isfinite(m->coeff)) throw RejectionError("monomial coefficient is not finite");
    } else if (const auto* seg = std::get_if<SegmentIntegral>(&term)) {
        check_arity(seg->base(), ws);
        const double mid = 0.5 * (seg->u_lo() + seg->u_hi());
        for (double u : {seg->u_lo(), mid, seg->u_hi()})
            if (!close_to_one(weight_of(seg->at(u), ws)))
                throw RejectionError("segment point " + seg->at(u).to_string() + " does not have weight 1");
        if (seg->at(mid).nonzero_count() < 2)
            throw RejectionError("segment interior point " + seg->at(mid).to_string() +
                                 " needs at least two non-zero exponents");
    } else {
        const auto& prof = std::get<InvariantProfile>(term);
        check_arity(prof.prefactor, ws);
        if (!close_to_one(weight_of(prof.prefactor, ws)))
            throw RejectionError("profile prefactor " + prof.prefactor.to_string() + " does not have weight 1");
        if (prof.quotients.size() != prof.profile.arity())
            throw RejectionError("profile '" + prof.profile.name() + "' takes " +
                                 std::to_string(prof.profile.arity()) + " quotient(s), got " +
                                 std::to_string(prof.quotients.size()));
        for (const auto& q : prof.quotients) {
            const double w = weight_of(q.numerator, ws) - weight_of(q.denominator, ws);
            if (std::abs(w) > kWeightTolerance)
                throw RejectionError("quotient " + q.numerator.to_string() + "/" + q.denominator.to_string() +
                                     " does not have weight 0");
        }
    }
}

inline double evaluate_term(const HomogeneousTerm& term, std::span<const double> x)
{
    if (const auto* m = std::get_if<Monomial>(&term)) return m->coeff * monomial_value(m->s, x);
    if (const auto* seg = std::get_if<SegmentIntegral>(&term)) return seg->evaluate(x);
    const auto& prof = std::get<InvariantProfile>(term);
    const double pre = monomial_value(prof.prefactor, x);
    if (pre == 0.0) return 0.0;
    std::vector<double> u;
    u.reserve(prof.quotients.size());
    for (const auto& q : prof.quotients) u.push_back(monomial_value(q.numerator, x) / monomial_value(q.denominator, x));
    return pre * prof.profile(u);
}

} // namespace detail

/// Weight-one profile on S_1 = {sum |x_j|^alpha_j = 1}, extended to all space by homogeneity.
struct S1Profile {
    std::string name;
    ModuliFunction fn;
};

/// r * profile(x_j / r^{1/alpha_j}) with r = sum |x_j|^{alpha_j}; 0 at the origin.
inline double eval_from_s1_profile(const ModuliFunction& profile, std::span<const double> x, const WeightSystem& ws)
{
    detail::require(x.size() == ws.tail_count(), "eval_from_s1_profile: arity mismatch");
    double r = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) r += std::pow(std::abs(x[j]), ws.alpha(j));
    if (r == 0.0) return 0.0;
    if (r == 1.0) return profile(x);
    std::vector<double> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] / std::pow(r, 1.0 / ws.alpha(j));
    return r * profile(y);
}

/// A weight-one homogeneous defining function psi on the tail moduli: either
/// sum_j x_j^{alpha_j} plus extra terms, or the homogeneous extension of an S_1 profile.
class DefiningFunction {
public:
    explicit DefiningFunction(WeightSystem ws, std::vector<HomogeneousTerm> extra = {})
        : ws_(std::move(ws)), terms_(std::move(extra))
    {
        for (const auto& t : terms_) detail::validate_term(t, ws_);
        check_axes();
    }

    static DefiningFunction from_s1_profile(WeightSystem ws, S1Profile profile)
    {
        DefiningFunction f(std::move(ws), std::vector<HomogeneousTerm>{});
        f.s1_ = std::move(profile);
        f.check_axes();
        return f;
    }

    double operator()(std::span<const double> x) const
    {
        if (x.size() != ws_.tail_count())
            throw ContractViolation("eval_defining: expected " + std::to_string(ws_.tail_count()) +
                                    " moduli, got " + std::to_string(x.size()));
        for (double v : x)
            if (!(v >= 0.0)) throw ContractViolation("eval_defining: moduli must be non-negative");
        if (s1_) {
            const double v = eval_from_s1_profile(s1_->fn, x, ws_);
            if (!std::isfinite(v)) throw EvaluationError("S1 profile '" + s1_->name + "' produced a non-finite value");
            return v;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) sum += std::pow(x[j], ws_.alpha(j));
        if (!std::isfinite(sum)) throw EvaluationError("leading part produced a non-finite value");
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            double v = 0.0;
            try {
                v = detail::evaluate_term(terms_[i], x);
            } catch (const EvaluationError& e) {
                throw EvaluationError("term #" + std::to_string(i) + " (" + term_kind(terms_[i]) + "): " + e.what());
            }
            if (!std::isfinite(v))
                throw EvaluationError("term #" + std::to_string(i) + " (" + term_kind(terms_[i]) +
                                      ") produced a non-finite value");
            sum += v;
        }
        return sum;
    }

    double operator()(std::initializer_list<double> x) const
    {
        return (*this)(std::span<const double>(x.begin(), x.size()));
    }

    const WeightSystem& weights() const noexcept { return ws_; }
    const std::vector<HomogeneousTerm>& terms() const noexcept { return terms_; }
    const std::optional<S1Profile>& s1_profile() const noexcept { return s1_; }

    bool uses_quadrature() const
    {
        return std::any_of(terms_.begin(), terms_.end(),
                           [](const HomogeneousTerm& t) { return std::holds_alternative<SegmentIntegral>(t); });
    }

    /// Copy as a plain callable on |x| (accepts negative reals by taking moduli).
    ModuliFunction as_function() const
    {
        auto self = std::make_shared<const DefiningFunction>(*this);
        return [self](std::span<const double> x) {
            std::vector<double> a(x.begin(), x.end());
            for (double& v : a) v = std::abs(v);
            return (*self)(a);
        };
    }

private:
    void check_axes() const
    {
        std::vector<double> x(ws_.tail_count(), 0.0);
        for (std::size_t j = 0; j < x.size(); ++j) {
            for (double t : {0.25, 0.5, 1.0, 2.0}) {
                x[j] = t;
                const double expect = std::pow(t, ws_.alpha(j));
                const double got = (*this)(x);
                if (std::abs(got - expect) > 1e-12 * std::max(1.0, expect))
                    throw RejectionError("defining function does not reduce to x_" + std::to_string(j + 2) +
                                         "^alpha on its axis (x = " + format_number(t) + ": got " +
                                         format_number(got) + ", expected " + format_number(expect) + ")");
            }
            x[j] = 0.0;
        }
    }

    WeightSystem ws_;
    std::vector<HomogeneousTerm> terms_;
    std::optional<S1Profile> s1_;
};

inline double eval_defining(const DefiningFunction& f, std::span<const double> x) { return f(x); }

struct Atom {
    ExponentTuple s;
    double mass = 1.0;
};

/// psi = sum_j x_j^{alpha_j} + sum over atoms of mass * x^s + sum over segments of the
/// integral of x^{s(u)} density(u) du. Every atom and every segment point must lie in M.
inline DefiningFunction construct_from_measure(const WeightSystem& ws, const std::vector<Atom>& atoms,
                                               const std::vector<SegmentIntegral>& segments)
{
    std::vector<HomogeneousTerm> terms;
    for (const auto& a : atoms) {
        check_arity(a.s, ws);
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
            throw RejectionError("atom " + a.s.to_string() + " has a negative or non-finite mass");
        if (!in_admissible_set(a.s, ws)) throw RejectionError("atom " + a.s.to_string() + " is not in M");
        terms.emplace_back(Monomial{a.mass, a.s});
    }
    for (const auto& seg : segments) {
        check_arity(seg.base(), ws);
        const auto lo = seg.at(seg.u_lo()), hi = seg.at(seg.u_hi()), mid = seg.at(0.5 * (seg.u_lo() + seg.u_hi()));
        for (const auto* pt : {&lo, &mid, &hi})
            if (!in_admissible_set(*pt, ws)) throw RejectionError("segment point " + pt->to_string() + " is not in M");
        // Coordinates that move along the path take non-even values in between, so they
        // must stay at or above 2k at both ends.
        for (std::size_t j = 0; j < lo.size(); ++j)
            if (seg.direction()[j] != 0.0 && (lo[j] < 2.0 * ws.k() || hi[j] < 2.0 * ws.k()))
                throw RejectionError("segment from " + lo.to_string() + " to " + hi.to_string() + " leaves M in s_" +
                                     std::to_string(j + 2));
        for (double v : seg.density().table() ? seg.density().table()->values() : std::vector<double>{})
            if (v < 0.0) throw RejectionError("segment density is negative");
        terms.emplace_back(seg);
    }
    return DefiningFunction(ws, std::move(terms));
}

/// x2^9 + x3^9 + x2^9 * integral_4^5 (x3/x2)^s ds in closed form. The last term is zero
/// when x2 = 0 or x3 = 0 and equals x2^9 on the diagonal; within a relative band of 1e-6
/// of the diagonal it is evaluated from the integral instead of the 0/0-prone quotient.
inline double example5_closed_form(double x2, double x3)
{
    detail::require(x2 >= 0.0 && x3 >= 0.0, "example5_closed_form: moduli must be non-negative");
    const double lead = std::pow(x2, 9) + std::pow(x3, 9);
    if (x2 == 0.0 || x3 == 0.0) return lead;
    if (x2 == x3) return lead + std::pow(x2, 9);
    const double diff = x3 - x2;
    if (std::abs(diff) < 1e-6 * std::max(x2, x3)) {
        static const GaussLegendreRule rule(16);
        const double log_ratio = std::log1p(diff / x2);
        return lead + std::pow(x2, 9) * rule.integrate([&](double s) { return std::exp(s * log_ratio); }, 4.0, 5.0);
    }
    // (x2^4 x3^5 - x2^5 x3^4) / log(x3 / x2)
    const double num = std::pow(x2, 4) * std::pow(x3, 4) * diff;
    return lead + num / std::log1p(diff / x2);
}

/// x2^8 + x3^8 + x2^8 g(x3^2 / x2^2), last term zero when x2 = 0.
inline double example6(double x2, double x3, const std::function<double(double)>& g)
{
    detail::require(x2 >= 0.0 && x3 >= 0.0, "example6: moduli must be non-negative");
    detail::require(g(0.0) == 0.0, "example6: profile must vanish at 0");
    for (double t : {-3.0, -1.5, 1.5, 2.0, 10.0})
        detail::require(std::abs(g(t) - t * t) <= 1e-12 * t * t, "example6: profile must equal x^2 for |x| > 1");
    const double lead = std::pow(x2, 8) + std::pow(x3, 8);
    if (x2 == 0.0) return lead;
    return lead + std::pow(x2, 8) * g((x3 * x3) / (x2 * x2));
}

/// Extends a germ phi given on S_delta^- = {sum |x_j|^alpha_j <= delta} to all of R^{p-1}
/// by weighted dilation. The returned callable vanishes at the origin.
inline ModuliFunction extend_from_germ(ModuliFunction germ, double delta, const WeightSystem& ws)
{
    detail::require(delta > 0.0 && std::isfinite(delta), "extend_from_germ: delta must be positive");
    std::vector<double> alphas = ws.alphas();
    return [germ = std::move(germ), delta, alphas](std::span<const double> x) {
        detail::require(x.size() == alphas.size(), "extend_from_germ: arity mismatch");
        double r = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) r += std::pow(std::abs(x[j]), alphas[j]);
        if (r == 0.0) return 0.0;
        if (r <= delta) return germ(x);
        std::vector<double> y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] * std::pow(delta / r, 1.0 / alphas[j]);
        return (r / delta) * germ(y);
    };
}

} // namespace reinhardt
