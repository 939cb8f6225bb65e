// Command-line front end. Exit status: 0 pass, 1 check failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "reinhardt/reinhardt.hpp"

namespace {

using namespace reinhardt;

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& o)
{
    auto* cfg = cmd->add_option("--config", o.config_path, "JSON domain config");
    auto* pre = cmd->add_option("--preset", o.preset,
                                "built-in domain: ball, ellipsoid[:alpha], theorem1-poly, example5, example6, corner, "
                                "negative-coefficient");
    cfg->excludes(pre);
    cmd->add_option("--seed", o.seed, "override check.seed");
    cmd->add_option("--samples", o.samples, "override check.samples (boundary point count for `sample`)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out_path, "write output here instead of stdout");
}

DomainConfig resolve_config(const CommonOptions& o)
{
    DomainConfig c;
    if (!o.config_path.empty())
        c = load_config(o.config_path);
    else if (!o.preset.empty())
        c = preset_config(o.preset);
    else
        throw ConfigError("", "give --config PATH or --preset NAME");
    if (o.seed) c.check.seed = *o.seed;
    if (o.samples) c.check.samples = *o.samples;
    return c;
}

int emit(const CommandResult& r, const CommonOptions& o)
{
    if (o.out_path.empty()) {
        std::cout << r.output;
    } else {
        std::ofstream out(o.out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << o.out_path << "'\n";
            return kExitUsage;
        }
        out << r.output;
    }
    return r.status;
}

std::pair<std::size_t, std::size_t> parse_plane(const std::string& s)
{
    const auto comma = s.find(',');
    try {
        if (comma != std::string::npos) {
            std::size_t used_a = 0, used_b = 0;
            const auto a = std::stoul(s.substr(0, comma), &used_a);
            const auto b = std::stoul(s.substr(comma + 1), &used_b);
            if (used_a == comma && used_b == s.size() - comma - 1) return {a, b};
        }
    } catch (const std::logic_error&) {
    }
    throw RejectionError("invalid --plane '" + s + "' (expected a,b)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted-homogeneous Reinhardt domains: construction and numerical checks"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string schedule = "dyadic:20";
    std::string plane = "0,1";
    std::size_t grid = 41;
    double extent = 1.25;
    std::optional<int> k;
    std::vector<std::string> loci;

    auto* validate = app.add_subcommand("validate", "run every property check and print a sectioned report");
    auto* enumerate = app.add_subcommand("enumerate-m", "list the admissible exponent set M");
    auto* orbit_cmd = app.add_subcommand("orbit", "CSV orbit of the origin under Moebius maps");
    orbit_cmd->add_option("--schedule", schedule, "dyadic:N | constant:A:N | list:a1,a2,...");
    auto* smooth = app.add_subcommand("smoothness", "finite-difference C^k probe at singular loci");
    smooth->add_option("--k", k, "derivative order (1..3)");
    smooth->add_option("--locus", loci, "axis:j or diagonal:a:b; repeatable");
    auto* slice = app.add_subcommand("slice", "CSV table of psi over a moduli plane");
    slice->add_option("--plane", plane, "moduli indices a,b (0 is |z^1|)");
    slice->add_option("--grid", grid, "points per axis")->check(CLI::PositiveNumber);
    slice->add_option("--extent", extent, "max modulus")->check(CLI::PositiveNumber);
    auto* sample = app.add_subcommand("sample", "CSV of points on the boundary");
    for (auto* cmd : {validate, enumerate, orbit_cmd, smooth, slice, sample}) add_common(cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto config = resolve_config(common);
        if (validate->parsed()) return emit(cmd_validate(config), common);
        if (enumerate->parsed()) return emit(cmd_enumerate_m(config), common);
        if (orbit_cmd->parsed()) return emit(cmd_orbit(config, schedule), common);
        if (smooth->parsed()) {
            if (k) config.check.smoothness.k = *k;
            if (!loci.empty()) config.check.smoothness.loci = loci;
            return emit(cmd_smoothness(config), common);
        }
        if (slice->parsed()) {
            const auto [a, b] = parse_plane(plane);
            return emit(cmd_slice(config, a, b, grid, extent), common);
        }
        if (sample->parsed()) return emit(cmd_sample(config, common.samples.value_or(100)), common);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RejectionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedConfiguration& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitCheckFailure;
    }
    return kExitUsage;
}
