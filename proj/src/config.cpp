#include "fbq/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fbq/errors.hpp"
#include "fbq/spectral.hpp"

namespace fbq {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Raw key/value pairs before resolution.
struct RawConfig {
    std::map<std::string, std::string> values;
};

double parse_double(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    return x;
}

long parse_int(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an integer");
    return x;
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
    return x;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a boolean");
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

FieldProfile::Kind parse_profile_kind(const std::string& v, const std::string& key) {
    if (v == "zero") return FieldProfile::Kind::Zero;
    if (v == "single_mode") return FieldProfile::Kind::SingleMode;
    if (v == "random_band") return FieldProfile::Kind::RandomBand;
    throw ConfigError("key '" + key + "': expected zero | single_mode | random_band, got '" + v +
                      "'");
}

const std::vector<ConfigKey> kKeys = {
    {"kind", "full", "decay scenario flavor: linear | full"},
    {"n", "64", "grid points per side (even, >= 8)"},
    {"l", "6.283185307179586", "domain side length"},
    {"nu", "0.05", "viscosity"},
    {"kappa", "0.05", "diffusivity"},
    {"alpha", "0.75", "velocity dissipation exponent"},
    {"beta", "0.75", "temperature dissipation exponent"},
    {"coupling", "true", "buoyancy feedback (the d1 theta vorticity source)"},
    {"strict_subcritical", "true", "restrict alpha, beta to (1/2, 1)"},
    {"s1", "0.6", "theta regularity diagnostic order"},
    {"s2", "1.0", "velocity regularity diagnostic order"},
    {"dt", "0.001", "time step"},
    {"t_end", "10", "integration end time"},
    {"sample_every", "10", "steps between diagnostics samples"},
    {"cfl", "0.5", "advective stability fraction"},
    {"window", "1", "budget/balance check window length"},
    {"seed", "1", "master random seed"},
    {"forcing", "random_band", "forcing profile: zero | single_mode | random_band"},
    {"forcing_kx", "1", "forcing mode k1"},
    {"forcing_ky", "0", "forcing mode k2"},
    {"forcing_amp", "0.1", "forcing single-mode amplitude"},
    {"forcing_phase", "0", "forcing single-mode phase"},
    {"forcing_l2", "0.2", "forcing random-band target norm"},
    {"forcing_norm_order", "0", "Sobolev order of the forcing target norm"},
    {"forcing_kmin", "1", "forcing band lower bound (max-norm)"},
    {"forcing_kmax", "4", "forcing band upper bound (max-norm)"},
    {"forcing_decay", "0.5", "forcing spectral slope"},
    {"forcing_seed", "97", "forcing random seed (independent of seed)"},
    {"theta0", "random_band", "theta initial profile: zero | single_mode | random_band"},
    {"theta0_kx", "1", "theta0 mode k1"},
    {"theta0_ky", "1", "theta0 mode k2"},
    {"theta0_amp", "1", "theta0 single-mode amplitude"},
    {"theta0_phase", "0", "theta0 single-mode phase"},
    {"theta0_l2", "1", "theta0 random-band target norm"},
    {"theta0_norm_order", "0", "Sobolev order of the theta0 target norm"},
    {"theta0_kmin", "1", "theta0 band lower bound"},
    {"theta0_kmax", "6", "theta0 band upper bound"},
    {"theta0_decay", "0.5", "theta0 spectral slope"},
    {"omega0", "random_band", "omega initial profile: zero | single_mode | random_band"},
    {"omega0_kx", "1", "omega0 mode k1"},
    {"omega0_ky", "0", "omega0 mode k2"},
    {"omega0_amp", "1", "omega0 single-mode amplitude"},
    {"omega0_phase", "0", "omega0 single-mode phase"},
    {"omega0_l2", "1", "omega0 random-band target norm"},
    {"omega0_norm_order", "0", "Sobolev order of the omega0 target norm"},
    {"omega0_kmin", "1", "omega0 band lower bound"},
    {"omega0_kmax", "6", "omega0 band upper bound"},
    {"omega0_decay", "0.5", "omega0 spectral slope"},
    {"ensemble_size", "20", "number of ensemble members"},
    {"ensemble_norm_min", "0.1", "smallest ||theta0|| in the ladder"},
    {"ensemble_norm_max", "10", "largest ||theta0|| in the ladder"},
    {"ensemble_omega_min", "0.1", "smallest ||omega0|| in the ladder"},
    {"ensemble_omega_max", "3", "largest ||omega0|| in the ladder"},
    {"radius_floor", "0.001", "absorbing-ball radius when unforced"},
    {"deltas", "0.01,0.001,0.0001", "continuity perturbation ladder (decreasing)"},
    {"continuity_t_end", "2", "continuity experiment horizon"},
    {"refine_dts", "0.004,0.002,0.001", "refinement dt ladder (factor-2 spaced)"},
    {"refine_t_end", "1", "refinement comparison time"},
    {"interpolation_fuzz_count", "1000", "interpolation fuzz sample count"},
    {"positivity_fuzz_count", "100", "positivity fuzz field count"},
    {"out_dir", ".", "output directory"},
};

RawConfig parse_raw(const std::string& text) {
    RawConfig raw;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool known = std::any_of(kKeys.begin(), kKeys.end(),
                                       [&](const ConfigKey& k) { return key == k.key; });
        if (!known)
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
        if (value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                              "' has no value");
        raw.values[key] = value;
    }
    return raw;
}

FieldProfile resolve_profile(const RawConfig& raw, const std::string& prefix,
                             const std::map<std::string, std::string>& defaults) {
    auto get = [&](const std::string& suffix) -> std::string {
        const std::string key = prefix + suffix;
        auto it = raw.values.find(key);
        if (it != raw.values.end()) return it->second;
        return defaults.at(key);
    };
    FieldProfile p;
    p.kind = parse_profile_kind(get(""), prefix);
    p.kx = static_cast<int>(parse_int(get("_kx"), prefix + "_kx"));
    p.ky = static_cast<int>(parse_int(get("_ky"), prefix + "_ky"));
    p.amp = parse_double(get("_amp"), prefix + "_amp");
    p.phase = parse_double(get("_phase"), prefix + "_phase");
    p.l2 = parse_double(get("_l2"), prefix + "_l2");
    p.norm_order = parse_double(get("_norm_order"), prefix + "_norm_order");
    p.kmin = static_cast<int>(parse_int(get("_kmin"), prefix + "_kmin"));
    p.kmax = static_cast<int>(parse_int(get("_kmax"), prefix + "_kmax"));
    p.decay = parse_double(get("_decay"), prefix + "_decay");
    return p;
}

} // namespace

const std::vector<ConfigKey>& config_keys() { return kKeys; }

ResolvedConfig parse_config_verbose(const std::string& text) {
    const RawConfig raw = parse_raw(text);
    std::map<std::string, std::string> defaults;
    for (const auto& k : kKeys) defaults[k.key] = k.default_value;
    auto get = [&](const std::string& key) -> std::string {
        auto it = raw.values.find(key);
        return it != raw.values.end() ? it->second : defaults.at(key);
    };

    ResolvedConfig resolved;
    RunConfig& cfg = resolved.config;

    const std::string kind = get("kind");
    if (kind == "linear" || kind == "linear_decay")
        cfg.kind = ScenarioKind::linear_decay;
    else if (kind == "full" || kind == "full_decay")
        cfg.kind = ScenarioKind::full_decay;
    else
        throw ConfigError("key 'kind': expected linear | full, got '" + kind + "'");

    cfg.grid = make_grid(static_cast<int>(parse_int(get("n"), "n")), parse_double(get("l"), "l"));
    cfg.params.nu = parse_double(get("nu"), "nu");
    cfg.params.kappa = parse_double(get("kappa"), "kappa");
    cfg.params.alpha = parse_double(get("alpha"), "alpha");
    cfg.params.beta = parse_double(get("beta"), "beta");
    cfg.params.coupling_on = parse_bool(get("coupling"), "coupling");
    cfg.strict_subcritical = parse_bool(get("strict_subcritical"), "strict_subcritical");
    cfg.s1 = parse_double(get("s1"), "s1");
    cfg.s2 = parse_double(get("s2"), "s2");
    cfg.dt = parse_double(get("dt"), "dt");
    cfg.t_end = parse_double(get("t_end"), "t_end");
    cfg.sample_every = static_cast<int>(parse_int(get("sample_every"), "sample_every"));
    cfg.cfl = parse_double(get("cfl"), "cfl");
    cfg.window = parse_double(get("window"), "window");
    cfg.seed = parse_u64(get("seed"), "seed");
    cfg.theta0 = resolve_profile(raw, "theta0", defaults);
    cfg.omega0 = resolve_profile(raw, "omega0", defaults);
    cfg.forcing_profile = resolve_profile(raw, "forcing", defaults);
    cfg.forcing_seed = parse_u64(get("forcing_seed"), "forcing_seed");
    cfg.ensemble_size = static_cast<int>(parse_int(get("ensemble_size"), "ensemble_size"));
    cfg.ensemble_norm_min = parse_double(get("ensemble_norm_min"), "ensemble_norm_min");
    cfg.ensemble_norm_max = parse_double(get("ensemble_norm_max"), "ensemble_norm_max");
    cfg.ensemble_omega_min = parse_double(get("ensemble_omega_min"), "ensemble_omega_min");
    cfg.ensemble_omega_max = parse_double(get("ensemble_omega_max"), "ensemble_omega_max");
    cfg.radius_floor = parse_double(get("radius_floor"), "radius_floor");
    cfg.deltas = parse_list(get("deltas"), "deltas");
    cfg.continuity_t_end = parse_double(get("continuity_t_end"), "continuity_t_end");
    cfg.refine_dts = parse_list(get("refine_dts"), "refine_dts");
    cfg.refine_t_end = parse_double(get("refine_t_end"), "refine_t_end");
    cfg.interpolation_fuzz_count =
        static_cast<int>(parse_int(get("interpolation_fuzz_count"), "interpolation_fuzz_count"));
    cfg.positivity_fuzz_count =
        static_cast<int>(parse_int(get("positivity_fuzz_count"), "positivity_fuzz_count"));
    cfg.out_dir = get("out_dir");

    // Build the forcing and revalidate everything.
    if (cfg.forcing_profile.kind != FieldProfile::Kind::Zero) {
        cfg.params.forcing = build_field(cfg.grid, cfg.forcing_profile, cfg.forcing_seed);
        if (!has_zero_mean(cfg.params.forcing)) {
            cfg.params.forcing = project_mean_zero(std::move(cfg.params.forcing));
            resolved.warnings.push_back("warning: nonzero forcing mean projected out");
        }
        cfg.params.forcing = dealias(std::move(cfg.params.forcing));
    }

    for (auto& w : validate_params(cfg.params, cfg.strict_subcritical))
        resolved.warnings.push_back(w);

    const double s1_min = 2.0 * std::max(1.0 - cfg.params.alpha, 1.0 - cfg.params.beta);
    if (!(cfg.s1 > s1_min))
        throw ConfigError("key 's1': must exceed 2*max(1-alpha, 1-beta) = " +
                          std::to_string(s1_min));
    if (!(cfg.s2 >= 1.0)) throw ConfigError("key 's2': must be >= 1");
    if (!(cfg.s2 - cfg.s1 >= 0.0 && cfg.s2 - cfg.s1 < cfg.params.alpha + cfg.params.beta))
        throw ConfigError("keys 's1','s2': need 0 <= s2 - s1 < alpha + beta");

    if (!(cfg.dt > 0.0)) throw ConfigError("key 'dt': must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("key 't_end': must be nonnegative");
    if (cfg.sample_every < 1) throw ConfigError("key 'sample_every': must be >= 1");
    if (!(cfg.cfl > 0.0)) throw ConfigError("key 'cfl': must be positive");
    if (!(cfg.window > 0.0)) throw ConfigError("key 'window': must be positive");
    if (cfg.ensemble_size < 1) throw ConfigError("key 'ensemble_size': must be >= 1");
    if (!(cfg.ensemble_norm_min > 0.0 && cfg.ensemble_norm_max >= cfg.ensemble_norm_min))
        throw ConfigError("ensemble norm ladder: need 0 < min <= max");
    if (!(cfg.ensemble_omega_min > 0.0 && cfg.ensemble_omega_max >= cfg.ensemble_omega_min))
        throw ConfigError("ensemble omega ladder: need 0 < min <= max");
    for (size_t i = 0; i < cfg.deltas.size(); ++i) {
        if (!(cfg.deltas[i] > 0.0)) throw ConfigError("key 'deltas': values must be positive");
        if (i > 0 && !(cfg.deltas[i] < cfg.deltas[i - 1]))
            throw ConfigError("key 'deltas': ladder must be strictly decreasing");
    }
    for (size_t i = 0; i < cfg.refine_dts.size(); ++i) {
        if (!(cfg.refine_dts[i] > 0.0))
            throw ConfigError("key 'refine_dts': values must be positive");
        if (i > 0 && !(cfg.refine_dts[i] < cfg.refine_dts[i - 1]))
            throw ConfigError("key 'refine_dts': ladder must be strictly decreasing");
    }

    // Effective config echo for report headers, in key-table order.
    for (const auto& k : kKeys) cfg.echo.emplace_back(k.key, get(k.key));
    return resolved;
}

RunConfig parse_config(const std::string& text) { return parse_config_verbose(text).config; }

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunConfig default_config() { return parse_config(""); }

} // namespace fbq
