#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace reinhardt {

/// Relative tolerance for treating a floating value as an even integer.
inline constexpr double kEvenSnapTolerance = 1e-12;
/// Tolerance on the weight-one hyperplane sum s_j / alpha_j = 1.
inline constexpr double kWeightTolerance = 1e-12;

/// Shortest decimal string that round-trips to the same double.
inline std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Returns the nearest even integer when v is within kEvenSnapTolerance (relative) of one.
inline std::optional<long long> as_even_integer(double v)
{
    if (!std::isfinite(v)) return std::nullopt;
    const double nearest = 2.0 * std::round(v / 2.0);
    if (std::abs(v - nearest) <= kEvenSnapTolerance * std::max(1.0, std::abs(v)))
        return static_cast<long long>(nearest);
    return std::nullopt;
}

inline bool is_even_integer(double v) { return as_even_integer(v).has_value(); }

/// Partition of C^n into p variable groups, the weights alpha_2..alpha_p of the
/// tail groups, and the smoothness order k.
///
/// Indices into `alphas()` are zero-based over the tail groups: alphas()[0] is alpha_2.
class WeightSystem {
public:
    WeightSystem(int n, std::vector<int> group_sizes, std::vector<double> alphas, int k)
        : n_(n), group_sizes_(std::move(group_sizes)), alphas_(std::move(alphas)), k_(k)
    {
        detail::require(n_ >= 1, "WeightSystem: n must be positive");
        detail::require(!group_sizes_.empty(), "WeightSystem: at least one variable group is required");
        int total = 0;
        for (int g : group_sizes_) {
            detail::require(g >= 1, "WeightSystem: every group size must be >= 1");
            total += g;
        }
        detail::require(total == n_, "WeightSystem: group sizes must sum to n");
        detail::require(alphas_.size() + 1 == group_sizes_.size(),
                        "WeightSystem: need exactly one weight per tail group (p - 1 weights)");
        detail::require(k_ >= 1, "WeightSystem: smoothness order k must be >= 1");
        for (double& a : alphas_) {
            detail::require(std::isfinite(a) && a > 0.0, "WeightSystem: weights must be positive and finite");
            if (auto e = as_even_integer(a)) a = static_cast<double>(*e);
        }
    }

    int n() const noexcept { return n_; }
    int p() const noexcept { return static_cast<int>(group_sizes_.size()); }
    std::size_t tail_count() const noexcept { return alphas_.size(); }
    int k() const noexcept { return k_; }
    const std::vector<int>& group_sizes() const noexcept { return group_sizes_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    double alpha(std::size_t tail_index) const { return alphas_.at(tail_index); }
    int first_group_size() const noexcept { return group_sizes_.front(); }

    /// m_j = alpha_j / 2 when alpha_j is an even integer.
    std::optional<long long> m(std::size_t tail_index) const
    {
        if (auto e = as_even_integer(alphas_.at(tail_index))) return *e / 2;
        return std::nullopt;
    }

    /// Offset of the first scalar coordinate of group g (0 = first group).
    int group_offset(std::size_t g) const
    {
        int off = 0;
        for (std::size_t i = 0; i < g; ++i) off += group_sizes_.at(i);
        return off;
    }

    /// Weight attached to each scalar coordinate z_2..z_n (tail coordinates only),
    /// expanding each tail group's alpha over its members.
    std::vector<double> coordinate_alphas() const
    {
        std::vector<double> out;
        for (std::size_t j = 0; j < alphas_.size(); ++j)
            out.insert(out.end(), static_cast<std::size_t>(group_sizes_[j + 1]), alphas_[j]);
        return out;
    }

    bool operator==(const WeightSystem&) const = default;

private:
    int n_;
    std::vector<int> group_sizes_;
    std::vector<double> alphas_;
    int k_;
};

enum class Admissibility { EvenInteger, ExceedsTwiceK, Inadmissible };

inline const char* to_string(Admissibility a)
{
    switch (a) {
    case Admissibility::EvenInteger: return "even integer";
    case Admissibility::ExceedsTwiceK: return "exceeds 2k";
    case Admissibility::Inadmissible: return "inadmissible";
    }
    return "?";
}

struct ValidationReport {
    std::vector<Admissibility> per_alpha;
    bool pass = true;

    std::string to_string(const WeightSystem& ws) const
    {
        std::ostringstream os;
        for (std::size_t j = 0; j < per_alpha.size(); ++j) {
            os << "alpha_" << (j + 2) << " = " << format_number(ws.alpha(j)) << ": "
               << reinhardt::to_string(per_alpha[j]);
            if (per_alpha[j] == Admissibility::Inadmissible)
                os << " (not an even integer and <= 2k = " << 2 * ws.k() << ")";
            os << '\n';
        }
        os << (pass ? "weights: PASS" : "weights: FAIL") << '\n';
        return os.str();
    }
};

inline Admissibility classify_entry(double v, int k)
{
    if (is_even_integer(v)) return Admissibility::EvenInteger;
    if (v > 2.0 * k) return Admissibility::ExceedsTwiceK;
    return Admissibility::Inadmissible;
}

inline ValidationReport validate_weights(const WeightSystem& ws)
{
    ValidationReport r;
    for (double a : ws.alphas()) {
        r.per_alpha.push_back(classify_entry(a, ws.k()));
        if (r.per_alpha.back() == Admissibility::Inadmissible) r.pass = false;
    }
    return r;
}

/// An exponent tuple (s_2, ..., s_p) of non-negative reals.
class ExponentTuple {
public:
    ExponentTuple() = default;
    explicit ExponentTuple(std::vector<double> s) : s_(std::move(s))
    {
        for (double v : s_)
            detail::require(std::isfinite(v) && v >= 0.0, "ExponentTuple: entries must be finite and >= 0");
    }
    ExponentTuple(std::initializer_list<double> s) : ExponentTuple(std::vector<double>(s)) {}

    std::size_t size() const noexcept { return s_.size(); }
    double operator[](std::size_t i) const { return s_[i]; }
    const std::vector<double>& values() const noexcept { return s_; }

    /// True when every entry is a non-negative integer (multi-index).
    bool integer_flag() const
    {
        return std::all_of(s_.begin(), s_.end(), [](double v) { return v == std::floor(v); });
    }

    std::size_t nonzero_count() const
    {
        return static_cast<std::size_t>(std::count_if(s_.begin(), s_.end(), [](double v) { return v != 0.0; }));
    }

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < s_.size(); ++i) {
            if (i) out += ", ";
            out += format_number(s_[i]);
        }
        return out + ")";
    }

    bool operator==(const ExponentTuple&) const = default;
    auto operator<=>(const ExponentTuple&) const = default;

private:
    std::vector<double> s_;
};

inline void check_arity(const ExponentTuple& s, const WeightSystem& ws)
{
    if (s.size() != ws.tail_count())
        throw ContractViolation("exponent tuple has " + std::to_string(s.size()) + " entries, weight system expects " +
                                std::to_string(ws.tail_count()));
}

/// Weighted degree sum_j s_j / alpha_j.
inline double weight_of(const ExponentTuple& s, const WeightSystem& ws)
{
    check_arity(s, ws);
    double w = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) w += s[j] / ws.alpha(j);
    return w;
}

/// Membership in the admissible exponent set M.
inline bool in_admissible_set(const ExponentTuple& s, const WeightSystem& ws)
{
    check_arity(s, ws);
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] < 0.0) return false;
        if (classify_entry(s[j], ws.k()) == Admissibility::Inadmissible) return false;
    }
    if (s.nonzero_count() < 2) return false;
    return std::abs(weight_of(s, ws) - 1.0) <= kWeightTolerance;
}

/// A relatively open piece of M: some coordinates fixed to even integers, the rest
/// free with s_j > 2k, all on the hyperplane sum s_j / alpha_j = 1.
struct Face {
    /// One entry per tail coordinate; nullopt marks a free coordinate.
    std::vector<std::optional<long long>> fixed;

    std::vector<std::size_t> free_indices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < fixed.size(); ++j)
            if (!fixed[j]) out.push_back(j);
        return out;
    }

    /// Dimension of the face as a subset of the hyperplane.
    std::size_t dimension() const { return free_indices().size() - 1; }

    /// Weight left for the free coordinates after the fixed ones.
    double residual_weight(const WeightSystem& ws) const
    {
        double w = 0.0;
        for (std::size_t j = 0; j < fixed.size(); ++j)
            if (fixed[j]) w += static_cast<double>(*fixed[j]) / ws.alpha(j);
        return 1.0 - w;
    }

    /// Point with the excess weight spread evenly over the free coordinates.
    ExponentTuple generic_point(const WeightSystem& ws) const
    {
        std::vector<double> barycentre(free_indices().size(), 1.0 / static_cast<double>(free_indices().size()));
        return point_at(ws, barycentre);
    }

    /// Interior point for barycentric coordinates `lambda` (positive, summing to 1) over the free indices.
    ExponentTuple point_at(const WeightSystem& ws, std::span<const double> lambda) const
    {
        const auto free = free_indices();
        detail::require(lambda.size() == free.size(), "Face::point_at: one barycentric weight per free index");
        const double twok = 2.0 * ws.k();
        double excess = residual_weight(ws);
        for (std::size_t j : free) excess -= twok / ws.alpha(j);
        std::vector<double> s(fixed.size());
        for (std::size_t j = 0; j < fixed.size(); ++j)
            if (fixed[j]) s[j] = static_cast<double>(*fixed[j]);
        for (std::size_t i = 0; i < free.size(); ++i) s[free[i]] = twok + ws.alpha(free[i]) * excess * lambda[i];
        return ExponentTuple(std::move(s));
    }

    template <class Rng>
    ExponentTuple sample_interior(const WeightSystem& ws, Rng& rng) const
    {
        std::exponential_distribution<double> e(1.0);
        std::vector<double> lambda(free_indices().size());
        double total = 0.0;
        for (double& l : lambda) total += (l = e(rng) + 1e-9);
        for (double& l : lambda) l /= total;
        return point_at(ws, lambda);
    }

    bool contains(const ExponentTuple& s, const WeightSystem& ws) const
    {
        if (s.size() != fixed.size()) return false;
        for (std::size_t j = 0; j < fixed.size(); ++j) {
            if (fixed[j]) {
                if (s[j] != static_cast<double>(*fixed[j])) return false;
            } else if (!(s[j] > 2.0 * ws.k())) {
                return false;
            }
        }
        return std::abs(weight_of(s, ws) - 1.0) <= kWeightTolerance;
    }

    std::string to_string() const
    {
        std::string fixed_part, free_part;
        for (std::size_t j = 0; j < fixed.size(); ++j) {
            const std::string name = "s" + std::to_string(j + 2);
            if (fixed[j]) {
                if (!fixed_part.empty()) fixed_part += ", ";
                fixed_part += name + "=" + std::to_string(*fixed[j]);
            } else {
                if (!free_part.empty()) free_part += ", ";
                free_part += name;
            }
        }
        return "face fixed{" + fixed_part + "} free{" + free_part + "}";
    }

    bool operator==(const Face&) const = default;
};

/// Closed (or half-open) segment of M in the two-coordinate case.
struct Segment {
    ExponentTuple lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(const ExponentTuple& s) const
    {
        // s lies on the segment when it is a convex combination of lo and hi.
        const double dx = hi[0] - lo[0], dy = hi[1] - lo[1];
        const double len2 = dx * dx + dy * dy;
        const double t = ((s[0] - lo[0]) * dx + (s[1] - lo[1]) * dy) / len2;
        const double ex = lo[0] + t * dx - s[0], ey = lo[1] + t * dy - s[1];
        const double scale = std::max({1.0, std::abs(s[0]), std::abs(s[1])});
        if (std::hypot(ex, ey) > 1e-12 * scale) return false;
        const double tol = 1e-12;
        const bool above_lo = lo_closed ? t >= -tol : t > tol;
        const bool below_hi = hi_closed ? t <= 1 + tol : t < 1 - tol;
        return above_lo && below_hi;
    }

    std::string to_string() const
    {
        return std::string("segment ") + (lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() +
               (hi_closed ? "]" : ")");
    }
};

struct CanonicalView {
    std::vector<Segment> segments;
    std::vector<ExponentTuple> points;
};

struct AdmissibleSet {
    std::vector<ExponentTuple> points;
    std::vector<Face> faces;
    /// Present only when there are exactly two tail coordinates.
    std::optional<CanonicalView> canonical;

    bool empty() const { return points.empty() && faces.empty(); }

    /// Deterministic listing: the merged view when available, else faces then points.
    std::string to_string() const
    {
        std::ostringstream os;
        if (empty()) {
            os << "empty\n";
            return os.str();
        }
        if (canonical) {
            for (const auto& seg : canonical->segments) os << seg.to_string() << '\n';
            for (const auto& pt : canonical->points) os << "point " << pt.to_string() << '\n';
            return os.str();
        }
        for (const auto& f : faces) os << f.to_string() << '\n';
        for (const auto& pt : points) os << "point " << pt.to_string() << '\n';
        return os.str();
    }
};

namespace detail {

inline void enumerate_faces(const WeightSystem& ws, std::size_t j, double used_weight,
                            std::vector<std::optional<long long>>& choice, AdmissibleSet& out)
{
    const std::size_t d = ws.tail_count();
    if (used_weight > 1.0 + kWeightTolerance) return;
    if (j < d) {
        const double a = ws.alpha(j);
        for (long long v = 0; static_cast<double>(v) <= a * (1.0 + kWeightTolerance); v += 2) {
            choice[j] = v;
            enumerate_faces(ws, j + 1, used_weight + static_cast<double>(v) / a, choice, out);
        }
        choice[j] = std::nullopt;
        enumerate_faces(ws, j + 1, used_weight, choice, out);
        return;
    }

    Face face{choice};
    const auto free = face.free_indices();
    const double residual = 1.0 - used_weight;
    const double twok = 2.0 * ws.k();
    std::size_t fixed_nonzero = 0;
    for (const auto& c : choice)
        if (c && *c != 0) ++fixed_nonzero;

    if (free.empty()) {
        if (std::abs(residual) > kWeightTolerance || fixed_nonzero < 2) return;
        std::vector<double> s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = static_cast<double>(*choice[i]);
        out.points.emplace_back(std::move(s));
        return;
    }
    double min_weight = 0.0;
    for (std::size_t i : free) min_weight += twok / ws.alpha(i);
    if (!(residual - min_weight > kWeightTolerance)) return;
    if (fixed_nonzero + free.size() < 2) return;
    if (free.size() == 1) {
        std::vector<double> s(d);
        for (std::size_t i = 0; i < d; ++i) s[i] = choice[i] ? static_cast<double>(*choice[i]) : 0.0;
        double v = ws.alpha(free[0]) * residual;
        if (auto e = as_even_integer(v)) v = static_cast<double>(*e);
        s[free[0]] = v;
        out.points.emplace_back(std::move(s));
        return;
    }
    out.faces.push_back(std::move(face));
}

inline bool same_point(const ExponentTuple& a, const ExponentTuple& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(a[i]))) return false;
    return true;
}

inline std::vector<ExponentTuple> dedupe_sorted(std::vector<ExponentTuple> pts)
{
    std::sort(pts.begin(), pts.end());
    std::vector<ExponentTuple> out;
    for (auto& p : pts)
        if (out.empty() || !same_point(out.back(), p)) out.push_back(std::move(p));
    return out;
}

inline CanonicalView merge_planar(const AdmissibleSet& set, const WeightSystem& ws)
{
    CanonicalView view;
    const double twok = 2.0 * ws.k();
    for (const auto& f : set.faces) {
        // With two tail coordinates the only positive-dimensional face has both free.
        ExponentTuple a{twok, ws.alpha(1) * (1.0 - twok / ws.alpha(0))};
        ExponentTuple b{ws.alpha(0) * (1.0 - twok / ws.alpha(1)), twok};
        (void)f;
        if (b < a) std::swap(a, b);
        view.segments.push_back(Segment{a, b, in_admissible_set(a, ws), in_admissible_set(b, ws)});
    }
    for (const auto& p : set.points) {
        const bool absorbed = std::any_of(view.segments.begin(), view.segments.end(),
                                          [&](const Segment& s) { return s.contains(p); });
        if (!absorbed) view.points.push_back(p);
    }
    return view;
}

} // namespace detail

/// Enumerates M as isolated points plus relatively open faces. Output ordering is
/// lexicographic and deterministic.
inline AdmissibleSet enumerate_admissible_set(const WeightSystem& ws)
{
    AdmissibleSet out;
    std::vector<std::optional<long long>> choice(ws.tail_count());
    if (ws.tail_count() > 0) detail::enumerate_faces(ws, 0, 0.0, choice, out);
    out.points = detail::dedupe_sorted(std::move(out.points));
    std::sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) {
        const auto key = [](const Face& f) {
            std::vector<long long> k;
            for (const auto& c : f.fixed) k.push_back(c ? *c : -1);
            return k;
        };
        return key(a) < key(b);
    });
    if (ws.tail_count() == 2) out.canonical = detail::merge_planar(out, ws);
    return out;
}

} // namespace reinhardt
