#pragma once

#include <complex>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "domain.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "homog.hpp"
#include "smoothness.hpp"
#include "tables.hpp"
#include "weights.hpp"

namespace reinhardt {

using json = nlohmann::json;

/// Invalid configuration; `path` is a JSON pointer to the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error("config error at " + (path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path))
    {
    }
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A builtin name, a table file, or inline (node, value) rows. Exactly one is set.
struct TableSource {
    std::string name;
    std::string path;
    std::vector<std::pair<double, double>> rows;
    bool operator==(const TableSource&) const = default;

    static TableSource named(std::string n) { return TableSource{std::move(n), {}, {}}; }
};

struct WeightsSpec {
    int n = 0;
    std::vector<int> group_sizes;
    std::vector<double> alphas;
    int k = 1;
    bool operator==(const WeightsSpec&) const = default;
};

struct MonomialSpec {
    double coeff = 1.0;
    std::vector<double> s;
    bool operator==(const MonomialSpec&) const = default;
};

struct SegmentSpec {
    std::vector<double> base, direction;
    double u_lo = 0.0, u_hi = 1.0;
    TableSource density = TableSource::named("uniform");
    int nodes = kDefaultQuadratureNodes;
    bool operator==(const SegmentSpec&) const = default;
};

struct QuotientSpec {
    std::vector<double> num, den;
    bool operator==(const QuotientSpec&) const = default;
};

struct ProfileSpec {
    std::vector<double> prefactor;
    std::vector<QuotientSpec> quotients;
    TableSource profile = TableSource::named("c2-bump");
    bool operator==(const ProfileSpec&) const = default;
};

using TermSpec = std::variant<MonomialSpec, SegmentSpec, ProfileSpec>;

struct HermitianSpec {
    std::vector<int> K, L;
    double re = 0.0, im = 0.0;
    bool operator==(const HermitianSpec&) const = default;
};

struct SmoothnessSpec {
    std::optional<int> k; ///< defaults to min(weights.k, 3)
    std::vector<std::string> loci;
    ProbeConfig probe;
    bool operator==(const SmoothnessSpec& o) const
    {
        return k == o.k && loci == o.loci && probe.steps == o.probe.steps &&
               probe.approach_offsets == o.probe.approach_offsets && probe.tolerances == o.probe.tolerances;
    }
};

struct CheckSpec {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::vector<std::complex<double>> moebius{{0.5, 0.0}, {0.3, 0.6}, {-0.9, 0.0}};
    SmoothnessSpec smoothness;
    bool operator==(const CheckSpec&) const = default;
};

enum class Mode { Reinhardt, General };

/// Declarative description of a domain and the checks run on it.
struct DomainConfig {
    std::string name = "custom";
    WeightsSpec weights;
    Mode mode = Mode::Reinhardt;
    std::vector<TermSpec> terms;
    std::optional<std::string> s1_profile;
    std::vector<HermitianSpec> hermitian;
    CheckSpec check;
    std::filesystem::path base_dir; ///< resolves relative table paths; not serialized
    bool operator==(const DomainConfig& o) const
    {
        return name == o.name && weights == o.weights && mode == o.mode && terms == o.terms &&
               s1_profile == o.s1_profile && hermitian == o.hermitian && check == o.check;
    }
};

// ---------------------------------------------------------------- serialization

namespace detail {

inline json table_to_json(const TableSource& t)
{
    if (!t.path.empty()) return json{{"table", t.path}};
    if (!t.rows.empty()) {
        json rows = json::array();
        for (const auto& [u, v] : t.rows) rows.push_back({u, v});
        return json{{"values", rows}};
    }
    return t.name;
}

} // namespace detail

inline json to_json(const DomainConfig& c)
{
    json j;
    j["name"] = c.name;
    j["weights"] = {{"n", c.weights.n},
                    {"group_sizes", c.weights.group_sizes},
                    {"alphas", c.weights.alphas},
                    {"k", c.weights.k}};
    j["mode"] = c.mode == Mode::Reinhardt ? "reinhardt" : "general";
    json terms = json::array();
    for (const auto& t : c.terms) {
        if (const auto* m = std::get_if<MonomialSpec>(&t)) {
            terms.push_back({{"kind", "monomial"}, {"coeff", m->coeff}, {"s", m->s}});
        } else if (const auto* s = std::get_if<SegmentSpec>(&t)) {
            terms.push_back({{"kind", "segment"},
                             {"base", s->base},
                             {"direction", s->direction},
                             {"u_lo", s->u_lo},
                             {"u_hi", s->u_hi},
                             {"density", detail::table_to_json(s->density)},
                             {"nodes", s->nodes}});
        } else {
            const auto& p = std::get<ProfileSpec>(t);
            json qs = json::array();
            for (const auto& q : p.quotients) qs.push_back({{"num", q.num}, {"den", q.den}});
            terms.push_back({{"kind", "profile"},
                             {"prefactor", p.prefactor},
                             {"quotients", qs},
                             {"profile", detail::table_to_json(p.profile)}});
        }
    }
    j["terms"] = terms;
    if (c.s1_profile) j["s1_profile"] = *c.s1_profile;
    if (!c.hermitian.empty()) {
        json h = json::array();
        for (const auto& e : c.hermitian) h.push_back({{"K", e.K}, {"L", e.L}, {"re", e.re}, {"im", e.im}});
        j["hermitian"] = h;
    }
    json moebius = json::array();
    for (auto a : c.check.moebius) moebius.push_back({a.real(), a.imag()});
    json sm = {{"loci", c.check.smoothness.loci},
               {"steps", c.check.smoothness.probe.steps},
               {"offsets", c.check.smoothness.probe.approach_offsets},
               {"tolerances", c.check.smoothness.probe.tolerances}};
    if (c.check.smoothness.k) sm["k"] = *c.check.smoothness.k;
    j["check"] = {{"samples", c.check.samples}, {"seed", c.check.seed}, {"moebius", moebius}, {"smoothness", sm}};
    return j;
}

// ---------------------------------------------------------------- parsing

namespace detail {

/// A JSON value together with its pointer path, for diagnostics.
struct Field {
    const json& v;
    std::string path;

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(path, msg); }

    bool has(const char* key) const { return v.contains(key); }
    Field at(const char* key) const
    {
        if (!v.contains(key)) fail(std::string("missing field '") + key + "'");
        return {v.at(key), path + "/" + key};
    }
    Field at(std::size_t i) const { return {v.at(i), path + "/" + std::to_string(i)}; }

    void expect_object() const
    {
        if (!v.is_object()) fail("expected an object");
    }
    std::size_t array_size() const
    {
        if (!v.is_array()) fail("expected an array");
        return v.size();
    }
    double number() const
    {
        if (!v.is_number()) fail("expected a number");
        return v.get<double>();
    }
    long long integer() const
    {
        if (v.is_number_integer()) return v.get<long long>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
        }
        fail("expected an integer");
    }
    std::string string() const
    {
        if (!v.is_string()) fail("expected a string");
        return v.get<std::string>();
    }
    std::vector<double> numbers() const
    {
        std::vector<double> out;
        for (std::size_t i = 0; i < array_size(); ++i) out.push_back(at(i).number());
        return out;
    }
    std::vector<int> integers() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < array_size(); ++i) out.push_back(static_cast<int>(at(i).integer()));
        return out;
    }
    /// Rejects keys outside `allowed`, so typos do not pass silently.
    void only(std::initializer_list<const char*> allowed) const
    {
        expect_object();
        for (const auto& [key, _] : v.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) throw ConfigError(path + "/" + key, "unknown field");
        }
    }
};

inline TableSource parse_table(const Field& f)
{
    if (f.v.is_string()) return TableSource::named(f.string());
    f.only({"table", "values"});
    TableSource t;
    if (f.has("table") == f.has("values")) f.fail("expected exactly one of 'table' or 'values'");
    if (f.has("table")) {
        t.path = f.at("table").string();
        return t;
    }
    const auto rows = f.at("values");
    for (std::size_t i = 0; i < rows.array_size(); ++i) {
        const auto r = rows.at(i);
        if (r.array_size() != 2) r.fail("expected a [node, value] pair");
        t.rows.emplace_back(r.at(std::size_t{0}).number(), r.at(std::size_t{1}).number());
    }
    if (t.rows.size() < 2) rows.fail("need at least two rows");
    return t;
}

inline TermSpec parse_term(const Field& f)
{
    f.expect_object();
    const std::string kind = f.at("kind").string();
    if (kind == "monomial") {
        f.only({"kind", "coeff", "s"});
        MonomialSpec m;
        if (f.has("coeff")) m.coeff = f.at("coeff").number();
        m.s = f.at("s").numbers();
        return m;
    }
    if (kind == "segment") {
        f.only({"kind", "base", "direction", "u_lo", "u_hi", "density", "nodes"});
        SegmentSpec s;
        s.base = f.at("base").numbers();
        s.direction = f.at("direction").numbers();
        s.u_lo = f.at("u_lo").number();
        s.u_hi = f.at("u_hi").number();
        if (f.has("density")) s.density = parse_table(f.at("density"));
        if (f.has("nodes")) {
            s.nodes = static_cast<int>(f.at("nodes").integer());
            if (s.nodes < 1) f.at("nodes").fail("must be positive");
        }
        return s;
    }
    if (kind == "profile") {
        f.only({"kind", "prefactor", "quotients", "profile"});
        ProfileSpec p;
        p.prefactor = f.at("prefactor").numbers();
        const auto qs = f.at("quotients");
        for (std::size_t i = 0; i < qs.array_size(); ++i) {
            const auto q = qs.at(i);
            q.only({"num", "den"});
            p.quotients.push_back({q.at("num").numbers(), q.at("den").numbers()});
        }
        if (f.has("profile")) p.profile = parse_table(f.at("profile"));
        return p;
    }
    f.at("kind").fail("unknown term kind '" + kind + "' (expected monomial, segment or profile)");
}

} // namespace detail

/// Built-in domain by name; see presets.hpp.
inline DomainConfig preset_config(const std::string& name);

/// Parses a config tree. A `preset` field starts from that preset; any other top-level
/// block present replaces the preset's block wholesale.
inline DomainConfig from_json(const json& j, std::filesystem::path base_dir = {})
{
    const detail::Field root{j, ""};
    root.only({"preset", "name", "weights", "mode", "terms", "s1_profile", "hermitian", "check"});
    DomainConfig c;
    if (root.has("preset")) {
        try {
            c = preset_config(root.at("preset").string());
        } catch (const RejectionError& e) {
            root.at("preset").fail(e.what());
        }
    } else if (!root.has("weights")) {
        root.fail("need either 'preset' or 'weights'");
    }
    c.base_dir = std::move(base_dir);
    if (root.has("name")) c.name = root.at("name").string();
    if (root.has("weights")) {
        const auto w = root.at("weights");
        w.only({"n", "group_sizes", "alphas", "k"});
        c.weights.n = static_cast<int>(w.at("n").integer());
        c.weights.group_sizes = w.at("group_sizes").integers();
        c.weights.alphas = w.at("alphas").numbers();
        c.weights.k = static_cast<int>(w.at("k").integer());
    }
    if (root.has("mode")) {
        const auto m = root.at("mode").string();
        if (m == "reinhardt")
            c.mode = Mode::Reinhardt;
        else if (m == "general")
            c.mode = Mode::General;
        else
            root.at("mode").fail("expected 'reinhardt' or 'general'");
    }
    if (root.has("terms")) {
        c.terms.clear();
        const auto t = root.at("terms");
        for (std::size_t i = 0; i < t.array_size(); ++i) c.terms.push_back(detail::parse_term(t.at(i)));
    }
    if (root.has("s1_profile")) c.s1_profile = root.at("s1_profile").string();
    if (root.has("hermitian")) {
        c.hermitian.clear();
        const auto h = root.at("hermitian");
        for (std::size_t i = 0; i < h.array_size(); ++i) {
            const auto e = h.at(i);
            e.only({"K", "L", "re", "im"});
            HermitianSpec s{e.at("K").integers(), e.at("L").integers(), e.at("re").number(), 0.0};
            if (e.has("im")) s.im = e.at("im").number();
            c.hermitian.push_back(std::move(s));
        }
    }
    if (root.has("check")) {
        const auto ch = root.at("check");
        ch.only({"samples", "seed", "moebius", "smoothness"});
        if (ch.has("samples")) {
            const auto s = ch.at("samples").integer();
            if (s < 1) ch.at("samples").fail("must be positive");
            c.check.samples = static_cast<std::size_t>(s);
        }
        if (ch.has("seed")) {
            const auto s = ch.at("seed").integer();
            if (s < 0) ch.at("seed").fail("must be non-negative");
            c.check.seed = static_cast<std::uint64_t>(s);
        }
        if (ch.has("moebius")) {
            c.check.moebius.clear();
            const auto m = ch.at("moebius");
            for (std::size_t i = 0; i < m.array_size(); ++i) {
                const auto a = m.at(i);
                std::complex<double> v;
                if (a.v.is_number())
                    v = a.number();
                else if (a.array_size() == 2)
                    v = {a.at(std::size_t{0}).number(), a.at(std::size_t{1}).number()};
                else
                    a.fail("expected a number or a [re, im] pair");
                if (!(std::abs(v) < 1.0)) a.fail("Moebius parameter must satisfy |a| < 1");
                c.check.moebius.push_back(v);
            }
        }
        if (ch.has("smoothness")) {
            const auto sm = ch.at("smoothness");
            sm.only({"k", "loci", "steps", "offsets", "tolerances"});
            auto& spec = c.check.smoothness;
            if (sm.has("k")) spec.k = static_cast<int>(sm.at("k").integer());
            if (sm.has("loci")) {
                spec.loci.clear();
                const auto l = sm.at("loci");
                for (std::size_t i = 0; i < l.array_size(); ++i) spec.loci.push_back(l.at(i).string());
            }
            if (sm.has("steps")) spec.probe.steps = sm.at("steps").numbers();
            if (sm.has("offsets")) spec.probe.approach_offsets = sm.at("offsets").numbers();
            if (sm.has("tolerances")) spec.probe.tolerances = sm.at("tolerances").numbers();
        }
    }
    return c;
}

inline DomainConfig parse_config_text(const std::string& text, std::filesystem::path base_dir = {})
{
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return from_json(j, std::move(base_dir));
}

inline DomainConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.parent_path());
}

// ---------------------------------------------------------------- building

namespace detail {

inline LinearTable table_from_source(const TableSource& t, const std::filesystem::path& base_dir)
{
    if (!t.path.empty()) {
        std::filesystem::path p(t.path);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        return LinearTable::load(p.string());
    }
    std::vector<double> nodes, values;
    for (const auto& [u, v] : t.rows) {
        nodes.push_back(u);
        values.push_back(v);
    }
    return LinearTable(std::move(nodes), std::move(values));
}

inline Density build_density(const TableSource& t, const std::filesystem::path& base_dir)
{
    if (t.path.empty() && t.rows.empty()) return Density::builtin(t.name);
    return Density::tabulated(table_from_source(t, base_dir), t.path.empty() ? "inline table" : t.path);
}

inline Profile build_profile(const TableSource& t, const std::filesystem::path& base_dir)
{
    if (t.path.empty() && t.rows.empty()) return Profile::builtin(t.name);
    return Profile::tabulated(table_from_source(t, base_dir), t.path.empty() ? "inline table" : t.path);
}

/// Builtin profiles on S_1 by name.
inline S1Profile builtin_s1_profile(const std::string& name, const WeightSystem& ws)
{
    if (name == "leading") {
        const auto alphas = ws.alphas();
        return {name, [alphas](std::span<const double> x) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(std::abs(x[j]), alphas[j]);
                    return s;
                }};
    }
    throw RejectionError("unknown S1 profile '" + name + "' (expected leading)");
}

} // namespace detail

/// Resolved domain of a config: exactly one of `reinhardt` / `general` is set.
struct BuiltDomain {
    WeightSystem weights;
    std::optional<ReinhardtDomain> reinhardt;
    std::optional<GeneralDomain> general;
    std::optional<HermitianPolynomial> hermitian;
};

/// Errors are reported against the config field that caused them.
inline BuiltDomain build_domain(const DomainConfig& c)
{
    auto weights = [&] {
        try {
            return WeightSystem(c.weights.n, c.weights.group_sizes, c.weights.alphas, c.weights.k);
        } catch (const Error& e) {
            throw ConfigError("/weights", e.what());
        }
    }();
    BuiltDomain out{weights, std::nullopt, std::nullopt, std::nullopt};
    if (c.mode == Mode::General) {
        if (!c.terms.empty()) throw ConfigError("/terms", "general mode takes its extra part from 'hermitian'");
        if (c.s1_profile) throw ConfigError("/s1_profile", "not available in general mode");
        for (int s : c.weights.group_sizes)
            if (s != 1) throw ConfigError("/weights/group_sizes", "general mode needs every group of size 1");
        std::vector<HermitianEntry> entries;
        for (const auto& h : c.hermitian) entries.push_back({h.K, h.L, {h.re, h.im}});
        try {
            out.hermitian = HermitianPolynomial::with_alphas(weights.alphas(), std::move(entries));
        } catch (const Error& e) {
            throw ConfigError("/hermitian", e.what());
        }
        const auto alphas = weights.alphas();
        const auto poly = *out.hermitian;
        out.general = GeneralDomain(alphas, [alphas, poly](std::span<const std::complex<double>> z) {
            double s = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) s += std::pow(std::abs(z[j]), alphas[j]);
            return s + poly(z);
        });
        return out;
    }
    if (!c.hermitian.empty()) throw ConfigError("/hermitian", "only available in general mode");
    if (c.s1_profile) {
        if (!c.terms.empty()) throw ConfigError("/terms", "an S1 profile replaces the terms list; give one or the other");
        try {
            out.reinhardt = ReinhardtDomain(
                DefiningFunction::from_s1_profile(weights, detail::builtin_s1_profile(*c.s1_profile, weights)));
        } catch (const Error& e) {
            throw ConfigError("/s1_profile", e.what());
        }
        return out;
    }
    std::vector<HomogeneousTerm> terms;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        const std::string path = "/terms/" + std::to_string(i);
        try {
            if (const auto* m = std::get_if<MonomialSpec>(&c.terms[i])) {
                terms.emplace_back(Monomial{m->coeff, ExponentTuple(m->s)});
            } else if (const auto* s = std::get_if<SegmentSpec>(&c.terms[i])) {
                terms.emplace_back(SegmentIntegral(ExponentTuple(s->base), s->direction, s->u_lo, s->u_hi,
                                                   detail::build_density(s->density, c.base_dir), s->nodes));
            } else {
                const auto& p = std::get<ProfileSpec>(c.terms[i]);
                InvariantProfile ip{ExponentTuple(p.prefactor), {}, detail::build_profile(p.profile, c.base_dir)};
                for (const auto& q : p.quotients) ip.quotients.push_back({ExponentTuple(q.num), ExponentTuple(q.den)});
                terms.emplace_back(std::move(ip));
            }
            detail::validate_term(terms.back(), weights);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    }
    try {
        out.reinhardt = ReinhardtDomain(DefiningFunction(weights, std::move(terms)));
    } catch (const Error& e) {
        throw ConfigError("/terms", e.what());
    }
    return out;
}

/// Loci for the smoothness probe: configured names, or every axis and every diagonal.
inline std::vector<Locus> resolve_loci(const DomainConfig& c, const WeightSystem& ws)
{
    std::vector<std::string> names = c.check.smoothness.loci;
    if (names.empty()) {
        for (int j = 2; j <= ws.p(); ++j) names.push_back("axis:" + std::to_string(j));
        for (int a = 2; a <= ws.p(); ++a)
            for (int b = a + 1; b <= ws.p(); ++b) names.push_back("diagonal:" + std::to_string(a) + ":" + std::to_string(b));
    }
    std::vector<Locus> loci;
    for (std::size_t i = 0; i < names.size(); ++i) {
        try {
            loci.push_back(parse_locus(names[i], ws));
        } catch (const Error& e) {
            throw ConfigError("/check/smoothness/loci/" + std::to_string(i), e.what());
        }
    }
    return loci;
}

inline ProbeConfig resolve_probe(const DomainConfig& c)
{
    ProbeConfig p = c.check.smoothness.probe;
    p.k = c.check.smoothness.k.value_or(std::clamp(c.weights.k, 1, 3));
    try {
        p.validate();
    } catch (const Error& e) {
        throw ConfigError("/check/smoothness", e.what());
    }
    return p;
}

} // namespace reinhardt

#include "presets.hpp"
