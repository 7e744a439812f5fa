#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fbq/cli.hpp"
#include "fbq/config.hpp"
#include "fbq/diagnostics_csv.hpp"
#include "fbq/errors.hpp"
#include "fbq/rng.hpp"
#include "fbq/snapshot.hpp"
#include "fbq/spectral.hpp"
#include "test_helpers.hpp"

using namespace fbq;
using namespace fbq::test;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("fbq_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

State random_state(const Grid& g, std::uint64_t seed) {
    State s;
    s.theta_hat = make_random_band(g, seed, 1, 5, 1.0, 0.0, 0.4);
    s.omega_hat = make_random_band(g, seed + 1, 1, 5, 0.8, 0.0, 0.4);
    return s;
}

int run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv = {"fbq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("empty config text yields the documented defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.grid.n == 64);
    CHECK(cfg.grid.l == doctest::Approx(2.0 * kPi));
    CHECK(cfg.params.nu == 0.05);
    CHECK(cfg.params.kappa == 0.05);
    CHECK(cfg.params.alpha == 0.75);
    CHECK(cfg.params.beta == 0.75);
    CHECK(cfg.params.coupling_on);
    CHECK(cfg.strict_subcritical);
    CHECK(cfg.dt == 0.001);
    CHECK(cfg.sample_every == 10);
    CHECK(cfg.seed == 1);
    CHECK(cfg.deltas == std::vector<double>{1e-2, 1e-3, 1e-4});
    CHECK(cfg.echo.size() == config_keys().size());
}

TEST_CASE("grid keys resolve") {
    const RunConfig cfg = parse_config("n = 64\nl = 6.2831853\n");
    CHECK(cfg.grid.n == 64);
    CHECK(cfg.grid.base_wavenumber == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("subcritical range is enforced under strict mode") {
    CHECK_THROWS_WITH_AS(parse_config("alpha = 0.4\n"),
                         doctest::Contains("subcritical range (1/2, 1)"), ConfigError);
    CHECK_NOTHROW(parse_config("alpha = 1.0\nbeta = 1.0\nstrict_subcritical = false\n"));
}

TEST_CASE("config rejects unknown keys and malformed lines with line numbers") {
    CHECK_THROWS_WITH_AS(parse_config("# fine\nalpa = 0.7\n"), doctest::Contains("line 2"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("alpha\n"), doctest::Contains("line 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("alpha = zebra\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("dt = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sample_every = 0\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    CHECK_NOTHROW(parse_config("\n# comment only\n   \nnu = 0.07 # trailing\n"));
}

TEST_CASE("regularity orders are validated against the exponents") {
    CHECK_THROWS_WITH_AS(parse_config("s1 = 0.4\n"), doctest::Contains("2*max"), ConfigError);
    CHECK_THROWS_AS(parse_config("s2 = 0.9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("s1 = 0.6\ns2 = 2.2\n"), ConfigError); // gap >= alpha+beta
}

TEST_CASE("ladders must decrease") {
    CHECK_THROWS_AS(parse_config("deltas = 0.001,0.01\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("refine_dts = 0.001,0.002\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("deltas = 0.01,-0.001\n"), ConfigError);
}

TEST_CASE("forcing profile with a mean component is projected with a warning") {
    const auto resolved =
        parse_config_verbose("forcing = single_mode\nforcing_kx = 0\nforcing_ky = 0\n"
                             "forcing_amp = 2\n");
    CHECK(resolved.warnings.size() == 1);
    CHECK(sobolev_norm(resolved.config.params.forcing, 0.0) == 0.0);
}

TEST_CASE("snapshot round trip is bit exact") {
    TempDir tmp;
    const Grid g = grid_2pi(16);
    State s = random_state(g, 5);
    s.t = 1.375;
    PhysParams p;
    p.nu = 0.031;
    p.kappa = 0.052;
    p.alpha = 0.61;
    p.beta = 0.93;
    write_snapshot(s, p, tmp.file("state.fbq"));
    auto [rs, rp] = read_snapshot(tmp.file("state.fbq"));
    CHECK(rs.t == s.t);
    CHECK(rp.nu == p.nu);
    CHECK(rp.kappa == p.kappa);
    CHECK(rp.alpha == p.alpha);
    CHECK(rp.beta == p.beta);
    CHECK(rs.theta_hat.grid == g);
    REQUIRE(rs.theta_hat.coeffs.size() == s.theta_hat.coeffs.size());
    for (size_t j = 0; j < s.theta_hat.coeffs.size(); ++j) {
        CHECK(rs.theta_hat.coeffs[j] == s.theta_hat.coeffs[j]);
        CHECK(rs.omega_hat.coeffs[j] == s.omega_hat.coeffs[j]);
    }
}

TEST_CASE("snapshot reader rejects unknown versions and truncation") {
    TempDir tmp;
    const Grid g = grid_2pi(16);
    State s = random_state(g, 6);
    write_snapshot(s, PhysParams{}, tmp.file("good.fbq"));

    SUBCASE("future version magic") {
        std::ifstream in(tmp.file("good.fbq"), std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), {});
        bytes[3] = '2';
        std::ofstream out(tmp.file("v2.fbq"), std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        CHECK_THROWS_WITH_AS(read_snapshot(tmp.file("v2.fbq")), doctest::Contains("magic"),
                             FormatError);
    }
    SUBCASE("truncated payload") {
        std::ifstream in(tmp.file("good.fbq"), std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), {});
        bytes.resize(bytes.size() / 2);
        std::ofstream out(tmp.file("cut.fbq"), std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        CHECK_THROWS_AS(read_snapshot(tmp.file("cut.fbq")), FormatError);
    }
    SUBCASE("trailing garbage") {
        std::ofstream out(tmp.file("fat.fbq"), std::ios::binary | std::ios::app);
        std::ifstream in(tmp.file("good.fbq"), std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), {});
        std::ofstream o2(tmp.file("fat.fbq"), std::ios::binary);
        o2.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        o2.put('x');
        o2.close();
        CHECK_THROWS_AS(read_snapshot(tmp.file("fat.fbq")), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_snapshot(tmp.file("absent.fbq")), FormatError);
    }
}

TEST_CASE("diagnostics CSV round trips losslessly") {
    TempDir tmp;
    Rng rng(77);
    std::vector<DiagnosticsRow> rows;
    for (int i = 0; i < 25; ++i) {
        DiagnosticsRow r;
        r.t = i * 0.1 + rng.uniform01() * 1e-13;
        r.l2_theta = rng.gaussian();
        r.l2_u = std::abs(rng.gaussian());
        r.l2_omega = std::abs(rng.gaussian());
        r.lp_theta[4.0] = std::abs(rng.gaussian());
        r.lp_theta[8.0] = std::abs(rng.gaussian());
        r.hs1_theta = std::abs(rng.gaussian());
        r.hs2_u = std::abs(rng.gaussian());
        r.diss_beta = std::abs(rng.gaussian()) * 1e-7;
        r.diss_alpha_u = std::abs(rng.gaussian()) * 1e7;
        r.diss_alpha_omega = std::abs(rng.gaussian());
        r.f_inner_theta = rng.gaussian();
        rows.push_back(std::move(r));
    }
    write_diagnostics_csv(rows, tmp.file("d.csv"));
    const auto back = read_diagnostics_csv(tmp.file("d.csv"));
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].t == rows[i].t);
        CHECK(back[i].l2_theta == rows[i].l2_theta);
        CHECK(back[i].l2_u == rows[i].l2_u);
        CHECK(back[i].l2_omega == rows[i].l2_omega);
        CHECK(back[i].lp_theta.at(4.0) == rows[i].lp_theta.at(4.0));
        CHECK(back[i].lp_theta.at(8.0) == rows[i].lp_theta.at(8.0));
        CHECK(back[i].hs1_theta == rows[i].hs1_theta);
        CHECK(back[i].hs2_u == rows[i].hs2_u);
        CHECK(back[i].diss_beta == rows[i].diss_beta);
        CHECK(back[i].diss_alpha_u == rows[i].diss_alpha_u);
        CHECK(back[i].diss_alpha_omega == rows[i].diss_alpha_omega);
        CHECK(back[i].f_inner_theta == rows[i].f_inner_theta);
    }
}

TEST_CASE("empty and zero diagnostics rows") {
    TempDir tmp;
    write_diagnostics_csv({}, tmp.file("empty.csv"));
    std::ifstream in(tmp.file("empty.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == kDiagnosticsCsvHeader);
    std::string rest;
    CHECK_FALSE(std::getline(in, rest));

    DiagnosticsRow zero;
    zero.lp_theta = {{4.0, 0.0}, {8.0, 0.0}};
    write_diagnostics_csv({zero}, tmp.file("zero.csv"));
    const auto back = read_diagnostics_csv(tmp.file("zero.csv"));
    REQUIRE(back.size() == 1);
    CHECK(back[0].l2_theta == 0.0);
    CHECK(back[0].f_inner_theta == 0.0);
}

TEST_CASE("resume through a snapshot reproduces the unbroken run bit for bit") {
    TempDir tmp;
    const Grid g = grid_2pi(32);
    PhysParams p;
    p.forcing = make_random_band(g, 11, 1, 4, 0.2, 0.0, 0.5);
    const State s0 = random_state(g, 7);

    const State unbroken = integrate(s0, p, 0.2, 1e-3, 1 << 30, nullptr);

    const State half = integrate(s0, p, 0.1, 1e-3, 1 << 30, nullptr);
    write_snapshot(half, p, tmp.file("mid.fbq"));
    auto [resumed0, rp] = read_snapshot(tmp.file("mid.fbq"));
    PhysParams p2 = p; // forcing comes from the run config, scalars from the snapshot
    p2.nu = rp.nu;
    p2.kappa = rp.kappa;
    p2.alpha = rp.alpha;
    p2.beta = rp.beta;
    const State resumed = integrate(resumed0, p2, 0.2, 1e-3, 1 << 30, nullptr);

    CHECK(unbroken.t == resumed.t);
    CHECK(max_coeff_diff(unbroken.theta_hat, resumed.theta_hat) == 0.0);
    CHECK(max_coeff_diff(unbroken.omega_hat, resumed.omega_hat) == 0.0);
}

TEST_CASE("cli surface: usage, exit codes, artifacts") {
    TempDir tmp;
    const std::string cfg_path = tmp.file("small.cfg");
    {
        std::ofstream cfg(cfg_path);
        cfg << "n = 16\n"
               "t_end = 0.02\n"
               "dt = 0.001\n"
               "sample_every = 5\n"
               "theta0_kmax = 4\n"
               "omega0_kmax = 4\n"
               "forcing_kmax = 3\n";
    }

    SUBCASE("help exits cleanly") { CHECK(run_cli({"help"}) == 0); }
    SUBCASE("unknown subcommand exits 2") { CHECK(run_cli({"frobnicate"}) == 2); }
    SUBCASE("unknown flag exits 2") { CHECK(run_cli({"simulate", "--wat"}) == 2); }
    SUBCASE("missing config file exits 2") {
        CHECK(run_cli({"simulate", "--config", tmp.file("nope.cfg")}) == 2);
    }
    SUBCASE("simulate writes diagnostics and a snapshot") {
        CHECK(run_cli({"simulate", "--config", cfg_path, "--out", tmp.file("out"), "--quiet"}) ==
              0);
        CHECK(std::filesystem::exists(tmp.file("out") + "/diagnostics.csv"));
        CHECK(std::filesystem::exists(tmp.file("out") + "/snapshot.fbq"));
    }
    SUBCASE("resume with a mismatched grid exits 2") {
        REQUIRE(run_cli({"simulate", "--config", cfg_path, "--out", tmp.file("out"), "--quiet"}) ==
                0);
        // default config has n = 64; the snapshot was written at n = 16
        CHECK(run_cli({"simulate", "--resume", tmp.file("out") + "/snapshot.fbq", "--quiet"}) ==
              2);
    }
}
