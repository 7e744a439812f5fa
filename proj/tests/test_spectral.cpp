#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "fbq/errors.hpp"
#include "fbq/rng.hpp"
#include "fbq/spectral.hpp"
#include "test_helpers.hpp"

using namespace fbq;
using namespace fbq::test;

TEST_CASE("make_grid resolves wavenumber and cutoff") {
    const Grid g = make_grid(8, 2.0 * kPi);
    CHECK(g.base_wavenumber == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.dealias_cutoff == 2);

    const Grid h = make_grid(64, 1.0);
    CHECK(h.base_wavenumber == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(h.dealias_cutoff == 21);
}

TEST_CASE("make_grid rejects bad sizes") {
    CHECK_THROWS_AS(make_grid(7, 1.0), ConfigError);
    CHECK_THROWS_AS(make_grid(6, 1.0), ConfigError);
    CHECK_THROWS_AS(make_grid(64, 0.0), ConfigError);
    CHECK_THROWS_AS(make_grid(64, -2.0), ConfigError);
}

TEST_CASE("to_spectral of the zero field is zero") {
    const Grid g = grid_2pi(16);
    const SpectralField s = to_spectral(PhysicalField(g));
    for (const auto& c : s.coeffs) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("to_spectral matches the direct DFT sum") {
    const Grid g = grid_2pi(16);
    const PhysicalField f = random_physical(g, 42);
    CHECK(max_coeff_diff(to_spectral(f), dft_oracle(f)) < 1e-13);
}

TEST_CASE("cos(x) transforms to half-amplitude conjugate modes") {
    const Grid g = grid_2pi(32);
    PhysicalField f(g);
    for (int j1 = 0; j1 < g.n; ++j1)
        for (int j2 = 0; j2 < g.n; ++j2) f.at(j1, j2) = std::cos(g.dx() * j1);
    const SpectralField s = to_spectral(f);
    CHECK(std::abs(s.at(1, 0) - 0.5) < 1e-14);
    CHECK(std::abs(s.at(-1, 0) - 0.5) < 1e-14);
    double rest = 0.0;
    for (int k1 = -g.n / 2; k1 < g.n / 2; ++k1)
        for (int k2 = -g.n / 2; k2 < g.n / 2; ++k2)
            if (!(k2 == 0 && (k1 == 1 || k1 == -1))) rest = std::max(rest, std::abs(s.at(k1, k2)));
    CHECK(rest < 1e-15);
}

TEST_CASE("transform round trip is the identity") {
    const Grid g = grid_2pi(32);
    const PhysicalField f = random_physical(g, 7);
    CHECK(max_value_diff(to_physical(to_spectral(f)), f) < 1e-12);
    CHECK(max_hermitian_asymmetry(to_spectral(f)) < 1e-14);
}

TEST_CASE("transforms reject grid misuse") {
    CHECK_THROWS_AS(to_spectral(PhysicalField{}), std::invalid_argument);
    CHECK_THROWS_AS(to_physical(SpectralField{}), std::invalid_argument);
}

TEST_CASE("lambda power: s = 0 is the identity") {
    const Grid g = grid_2pi(16);
    const SpectralField f = to_spectral(random_physical(g, 3));
    CHECK(max_coeff_diff(apply_lambda_power(f, 0.0), f) == 0.0);
}

TEST_CASE("lambda power on eigenmodes") {
    const Grid g = grid_2pi(32);
    // cos(x) has |m| = 1: any power fixes it.
    const SpectralField c1 = make_mode(g, 1, 0, 1.0);
    CHECK(max_coeff_diff(apply_lambda_power(c1, 1.5), c1) < 1e-15);
    // cos(2x) has |m| = 2: first power doubles it.
    const SpectralField c2 = make_mode(g, 2, 0, 1.0);
    SpectralField doubled = c2;
    for (auto& c : doubled.coeffs) c *= 2.0;
    CHECK(max_coeff_diff(apply_lambda_power(c2, 1.0), doubled) < 1e-15);
}

TEST_CASE("lambda power with negative s needs zero mean") {
    const Grid g = grid_2pi(16);
    SpectralField f = make_mode(g, 1, 1, 2.0);
    f.coeffs[0] = 3.0;
    CHECK_THROWS_AS(apply_lambda_power(f, -0.5), std::domain_error);
    const SpectralField inv = apply_lambda_power(project_mean_zero(f), -0.5);
    CHECK(std::abs(inv.coeffs[0]) == 0.0);
    // Lambda^{-s} undoes Lambda^{s} on mean-zero fields.
    const SpectralField base = project_mean_zero(f);
    const SpectralField back = apply_lambda_power(apply_lambda_power(base, 0.7), -0.7);
    CHECK(max_coeff_diff(back, base) < 1e-14);
}

TEST_CASE("sobolev norm analytic values") {
    const Grid g = grid_2pi(32);
    CHECK(sobolev_norm(SpectralField(g), 1.3) == 0.0);
    const SpectralField c = make_mode(g, 1, 0, 1.0);
    CHECK(rel_err(sobolev_norm(c, 0.0), kPi * std::sqrt(2.0)) < 1e-14);
    CHECK(rel_err(sobolev_norm(c, 1.0), kPi * std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("lp norm analytic values") {
    const Grid g = grid_2pi(32);
    PhysicalField constant(g);
    for (auto& v : constant.values) v = -2.5;
    CHECK(rel_err(lp_norm(constant, 3.0), 2.5 * std::pow(2.0 * kPi, 2.0 / 3.0)) < 1e-14);

    PhysicalField cosx(g);
    for (int j1 = 0; j1 < g.n; ++j1)
        for (int j2 = 0; j2 < g.n; ++j2) cosx.at(j1, j2) = std::cos(g.dx() * j1);
    CHECK(rel_err(lp_norm(cosx, 4.0), std::pow(1.5 * kPi * kPi, 0.25)) < 1e-13);
    CHECK(lp_norm(cosx, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lp_norm(cosx, 0.5), std::domain_error);
}

TEST_CASE("mean-zero projection") {
    const Grid g = grid_2pi(16);
    PhysicalField constant(g);
    for (auto& v : constant.values) v = 3.0;
    const SpectralField projected = project_mean_zero(to_spectral(constant));
    for (const auto& c : projected.coeffs) CHECK(std::abs(c) < 1e-13);

    SpectralField shifted = make_mode(g, 1, 0, 1.0);
    const SpectralField pure = shifted;
    shifted.coeffs[0] = 3.0;
    CHECK(max_coeff_diff(project_mean_zero(shifted), pure) == 0.0);
}

TEST_CASE("dealias zeroes only beyond the cutoff and is idempotent") {
    const Grid g = grid_2pi(32); // cutoff 10
    const SpectralField low = make_mode(g, 7, -10, 0.8);
    CHECK(max_coeff_diff(dealias(low), low) == 0.0);

    SpectralField high(g);
    high.at(g.n / 2 - 1, 0) = 0.5;
    high.at(-(g.n / 2 - 1), 0) = 0.5;
    const SpectralField killed = dealias(high);
    for (const auto& c : killed.coeffs) CHECK(std::abs(c) == 0.0);

    const SpectralField f = to_spectral(random_physical(g, 11));
    CHECK(max_coeff_diff(dealias(dealias(f)), dealias(f)) == 0.0);
}

TEST_CASE("parseval holds for random dealiased fields") {
    const Grid g = grid_2pi(32);
    for (int i = 0; i < 1000; ++i) {
        const SpectralField f = dealias(to_spectral(random_physical(g, 1000 + i)));
        const PhysicalField p = to_physical(f);
        double quad = 0.0;
        for (double v : p.values) quad += v * v;
        quad *= g.cell_area();
        const double spectral = sobolev_norm(f, 0.0);
        CHECK(std::abs(spectral * spectral - quad) / quad < 1e-10);
    }
}

TEST_CASE("lambda powers compose additively") {
    const Grid g = grid_2pi(32);
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const SpectralField f = to_spectral(random_physical(g, 500 + i));
        const double a = 2.0 * rng.uniform01();
        const double b = 2.0 * rng.uniform01();
        const SpectralField two = apply_lambda_power(apply_lambda_power(f, a), b);
        const SpectralField one = apply_lambda_power(f, a + b);
        double worst = 0.0;
        for (size_t j = 0; j < f.coeffs.size(); ++j) {
            const double scale = std::max(std::abs(one.coeffs[j]), 1e-300);
            worst = std::max(worst, std::abs(two.coeffs[j] - one.coeffs[j]) / scale);
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("sobolev norms interpolate") {
    const Grid g = grid_2pi(32);
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        const SpectralField f =
            make_random_band(g, 2000 + i, 1, g.dealias_cutoff, 1.0, 0.0, 0.2 * (i % 4));
        const double s1 = 3.0 * rng.uniform01();
        const double s2 = s1 + (3.0 - s1) * rng.uniform01();
        const double s = s1 + (s2 - s1) * rng.uniform01();
        const double delta = (s2 == s1) ? 1.0 : (s2 - s) / (s2 - s1);
        const double bound =
            std::pow(sobolev_norm(f, s1), delta) * std::pow(sobolev_norm(f, s2), 1.0 - delta);
        CHECK(sobolev_norm(f, s) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("poincare lower bound for mean-zero fields") {
    const Grid g = make_grid(32, 3.0); // base wavenumber 2 pi / 3 > 1
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const SpectralField f = make_random_band(g, 3000 + i, 1, g.dealias_cutoff, 1.0);
        const double s = 3.0 * rng.uniform01();
        CHECK(sobolev_norm(f, s) >=
              std::pow(g.base_wavenumber, s) * sobolev_norm(f, 0.0) * (1.0 - 1e-12));
    }
}

TEST_CASE("random band profiles hit the requested norm and band") {
    const Grid g = grid_2pi(64);
    const SpectralField f = make_random_band(g, 99, 2, 9, 3.7, 0.0, 0.4);
    CHECK(rel_err(sobolev_norm(f, 0.0), 3.7) < 1e-12);
    CHECK(std::abs(f.coeffs[0]) == 0.0);
    CHECK(max_hermitian_asymmetry(f) == 0.0);
    for (int k1 = -g.n / 2 + 1; k1 < g.n / 2; ++k1)
        for (int k2 = -g.n / 2 + 1; k2 < g.n / 2; ++k2) {
            const int mag = std::max(std::abs(k1), std::abs(k2));
            if (mag < 2 || mag > 9) CHECK(std::abs(f.at(k1, k2)) == 0.0);
        }
    // H^s-normalized variant
    const SpectralField h = make_random_band(g, 99, 2, 9, 2.0, 1.3, 0.4);
    CHECK(rel_err(sobolev_norm(h, 1.3), 2.0) < 1e-12);

    CHECK_THROWS_AS(make_random_band(g, 1, 1, g.dealias_cutoff + 1, 1.0), ConfigError);
    CHECK_THROWS_AS(make_mode(g, g.dealias_cutoff + 1, 0, 1.0), ConfigError);
}

TEST_CASE("random band profiles are grid independent") {
    const Grid coarse = grid_2pi(32);
    const Grid fine = grid_2pi(64);
    const SpectralField a = make_random_band(coarse, 123, 1, 6, 1.5, 0.0, 0.7);
    const SpectralField b = make_random_band(fine, 123, 1, 6, 1.5, 0.0, 0.7);
    double worst = 0.0;
    for (int k1 = -8; k1 <= 8; ++k1)
        for (int k2 = -8; k2 <= 8; ++k2)
            worst = std::max(worst, std::abs(a.at(k1, k2) - b.at(k1, k2)));
    CHECK(worst == 0.0);
}
