#include "fbq/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fbq/config.hpp"
#include "fbq/diagnostics_csv.hpp"
#include "fbq/errors.hpp"
#include "fbq/snapshot.hpp"
#include "fbq/spectral.hpp"

namespace fbq {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitBlowup = 3;

void print_usage(std::ostream& os, bool with_keys) {
    os << "usage: fbq <subcommand> [--config PATH] [--out DIR] [--resume PATH]\n"
          "           [--seed U64] [--quiet]\n"
          "\n"
          "subcommands:\n"
          "  simulate     integrate one trajectory; write diagnostics.csv and snapshot.fbq\n"
          "  decay        trajectory plus decay-envelope/budget/balance checks\n"
          "  absorb       ensemble entry into the explicit absorbing ball\n"
          "  continuity   two-trajectory continuous-dependence ladder\n"
          "  verify       full inequality battery (fuzzes, bounds, reference run)\n"
          "  refine       temporal/spatial self-convergence study\n"
          "  help         this text plus the config key table\n"
          "\n"
          "exit codes: 0 pass, 1 check failure, 2 configuration error, 3 blow-up\n";
    if (!with_keys) return;
    os << "\nconfig keys (defaults):\n";
    for (const auto& k : config_keys())
        os << "  " << k.key << " = " << k.default_value << "  # " << k.doc << '\n';
}

struct CliArgs {
    std::string subcommand;
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> resume_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

CliArgs parse_args(int argc, const char* const* argv) {
    CliArgs args;
    if (argc < 2) throw ConfigError("missing subcommand");
    args.subcommand = argv[1];
    for (int i = 2; i < argc; ++i) {
        const std::string a = argv[i];
        auto need_value = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) throw ConfigError(std::string(flag) + " needs a value");
            return argv[++i];
        };
        if (a == "--config")
            args.config_path = need_value("--config");
        else if (a == "--out")
            args.out_dir = need_value("--out");
        else if (a == "--resume")
            args.resume_path = need_value("--resume");
        else if (a == "--seed") {
            const std::string v = need_value("--seed");
            char* end = nullptr;
            args.seed = std::strtoull(v.c_str(), &end, 10);
            if (end == v.c_str() || *end != '\0')
                throw ConfigError("--seed: cannot parse '" + v + "'");
        } else if (a == "--quiet")
            args.quiet = true;
        else
            throw ConfigError("unknown flag '" + a + "'");
    }
    return args;
}

int run_simulate(const CliArgs& args, ScenarioConfig cfg, std::ostream& out) {
    State s0;
    PhysParams params = cfg.params;
    if (args.resume_path) {
        auto [state, stored] = read_snapshot(*args.resume_path);
        if (!(state.theta_hat.grid == cfg.grid))
            throw ConfigError("--resume: snapshot grid (n = " +
                              std::to_string(state.theta_hat.grid.n) +
                              ") does not match the configured grid (n = " +
                              std::to_string(cfg.grid.n) + ")");
        if (stored.nu != params.nu || stored.kappa != params.kappa ||
            stored.alpha != params.alpha || stored.beta != params.beta)
            throw ConfigError("--resume: snapshot parameters do not match the configuration");
        s0 = std::move(state);
    } else {
        s0.theta_hat = build_field(cfg.grid, cfg.theta0, cfg.seed * 0x9e3779b97f4a7c15ull + 1);
        s0.omega_hat = build_field(cfg.grid, cfg.omega0, cfg.seed * 0x9e3779b97f4a7c15ull + 2);
    }
    IntegrateOptions opts;
    opts.cfl = cfg.cfl;
    opts.s1 = cfg.s1;
    opts.s2 = cfg.s2;
    std::vector<DiagnosticsRow> rows;
    const double t_end = s0.t + cfg.t_end;
    const State final_state =
        integrate(s0, params, t_end, cfg.dt, cfg.sample_every,
                  [&rows](const DiagnosticsRow& r) { rows.push_back(r); }, opts);
    const auto dir = std::filesystem::path(cfg.out_dir);
    std::filesystem::create_directories(dir);
    write_diagnostics_csv(rows, (dir / "diagnostics.csv").string());
    write_snapshot(final_state, params, (dir / "snapshot.fbq").string());
    if (!args.quiet)
        out << "integrated to t = " << final_state.t << ", " << rows.size()
            << " samples -> " << (dir / "diagnostics.csv").string() << '\n';
    return kExitPass;
}

int run_scenario(const CliArgs& args, ScenarioConfig cfg, std::ostream& out) {
    ScenarioReport report;
    if (args.subcommand == "decay")
        report = run_decay(cfg);
    else if (args.subcommand == "absorb")
        report = run_absorbing_ball(cfg);
    else if (args.subcommand == "continuity")
        report = run_continuity(cfg);
    else if (args.subcommand == "verify")
        report = run_verify_inequalities(cfg);
    else if (args.subcommand == "refine")
        report = run_refinement(cfg);
    else
        throw ConfigError("unknown subcommand '" + args.subcommand + "'");

    const auto dir = std::filesystem::path(cfg.out_dir);
    std::filesystem::create_directories(dir);
    write_check_reports_csv(report, (dir / (report.name + "_checks.csv")).string());
    print_report(out, report, args.quiet);
    return report.pass() ? kExitPass : kExitCheckFailure;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    try {
        const CliArgs args = parse_args(argc, argv);
        if (args.subcommand == "help" || args.subcommand == "--help" || args.subcommand == "-h") {
            print_usage(std::cout, true);
            return kExitPass;
        }

        ResolvedConfig resolved;
        if (args.config_path) {
            std::ifstream in(*args.config_path);
            if (!in) throw ConfigError("cannot open config file '" + *args.config_path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            resolved = parse_config_verbose(ss.str());
        } else {
            resolved = parse_config_verbose("");
        }
        ScenarioConfig cfg = resolved.config;
        if (args.seed) cfg.seed = *args.seed;
        if (args.out_dir) cfg.out_dir = *args.out_dir;
        cfg.quiet = args.quiet;
        for (const auto& w : resolved.warnings) std::cerr << w << '\n';

        if (args.subcommand == "simulate") return run_simulate(args, cfg, std::cout);
        if (args.subcommand == "decay" && cfg.kind != ScenarioKind::linear_decay)
            cfg.kind = ScenarioKind::full_decay;
        return run_scenario(args, cfg, std::cout);
    } catch (const BlowupError& e) {
        std::cerr << "blow-up: " << e.what() << '\n';
        return kExitBlowup;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        print_usage(std::cerr, false);
        return kExitConfigError;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

} // namespace fbq
