#include "fbq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbq/errors.hpp"
#include "fbq/rng.hpp"
#include "fft_workspace.hpp"

namespace fbq {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* op) {
    if (!(a == b)) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

void require_zero_mean(const SpectralField& f, const char* op) {
    if (!has_zero_mean(f))
        throw std::domain_error(std::string(op) + ": field has nonzero mean (|c00| = " +
                                std::to_string(std::abs(f.mean_coeff())) + ")");
}

} // namespace

Grid make_grid(int n, double l) {
    if (n < 8) throw ConfigError("grid: n must be >= 8 (got " + std::to_string(n) + ")");
    if (n % 2 != 0) throw ConfigError("grid: n must be even (got " + std::to_string(n) + ")");
    if (!(l > 0.0)) throw ConfigError("grid: side length must be positive (got " + std::to_string(l) + ")");
    Grid g;
    g.n = n;
    g.l = l;
    g.base_wavenumber = 2.0 * 3.14159265358979323846264338327950288 / l;
    g.dealias_cutoff = n / 3;
    return g;
}

SpectralField to_spectral(const PhysicalField& f) {
    const int n = f.grid.n;
    if (n == 0) throw std::invalid_argument("to_spectral: empty field");
    auto* in = detail::fft_in(n);
    for (size_t j = 0; j < f.values.size(); ++j) in[j] = f.values[j];
    detail::fft_execute_forward(n);
    const auto* out = detail::fft_out(n);
    SpectralField s(f.grid);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (size_t j = 0; j < s.coeffs.size(); ++j) s.coeffs[j] = out[j] * scale;
    return s;
}

PhysicalField to_physical(const SpectralField& f) {
    const int n = f.grid.n;
    if (n == 0) throw std::invalid_argument("to_physical: empty field");
    auto* in = detail::fft_in(n);
    std::copy(f.coeffs.begin(), f.coeffs.end(), in);
    detail::fft_execute_backward(n);
    const auto* out = detail::fft_out(n);
    PhysicalField p(f.grid);
    for (size_t j = 0; j < p.values.size(); ++j) p.values[j] = out[j].real();
    return p;
}

double lambda_multiplier(const Grid& g, int k1, int k2, double s) {
    if (k1 == 0 && k2 == 0) return s == 0.0 ? 1.0 : 0.0;
    const double m = g.base_wavenumber * std::sqrt(static_cast<double>(k1) * k1 +
                                                   static_cast<double>(k2) * k2);
    return std::pow(m, s);
}

SpectralField apply_lambda_power(const SpectralField& f, double s) {
    if (s == 0.0) return f;
    if (s < 0.0) require_zero_mean(f, "apply_lambda_power");
    const Grid& g = f.grid;
    SpectralField r(g);
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int k1 = g.index_to_wave(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int k2 = g.index_to_wave(i2);
            r.coeffs[g.idx(i1, i2)] = f.coeffs[g.idx(i1, i2)] * lambda_multiplier(g, k1, k2, s);
        }
    }
    if (s < 0.0) r.coeffs[0] = 0.0;
    return r;
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < 0.0) require_zero_mean(f, "sobolev_norm");
    const Grid& g = f.grid;
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int k1 = g.index_to_wave(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int k2 = g.index_to_wave(i2);
            if (s < 0.0 && k1 == 0 && k2 == 0) continue;
            const double w = lambda_multiplier(g, k1, k2, s);
            sum += w * w * std::norm(f.coeffs[g.idx(i1, i2)]);
        }
    }
    return std::sqrt(g.area() * sum);
}

double lp_norm(const PhysicalField& f, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    for (double v : f.values) sum += std::pow(std::abs(v), p);
    return std::pow(f.grid.cell_area() * sum, 1.0 / p);
}

SpectralField project_mean_zero(SpectralField f) {
    if (!f.coeffs.empty()) f.coeffs[0] = 0.0;
    return f;
}

SpectralField dealias(SpectralField f) {
    const Grid& g = f.grid;
    const int cut = g.dealias_cutoff;
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int a1 = std::abs(g.index_to_wave(i1));
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int a2 = std::abs(g.index_to_wave(i2));
            if (std::max(a1, a2) > cut) f.coeffs[g.idx(i1, i2)] = 0.0;
        }
    }
    return f;
}

double l2_inner(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f.grid, g.grid, "l2_inner");
    double sum = 0.0;
    for (size_t j = 0; j < f.coeffs.size(); ++j)
        sum += f.coeffs[j].real() * g.coeffs[j].real() + f.coeffs[j].imag() * g.coeffs[j].imag();
    return f.grid.area() * sum;
}

double max_hermitian_asymmetry(const SpectralField& f) {
    const Grid& g = f.grid;
    double worst = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1) {
        const int j1 = (g.n - i1) % g.n;
        for (int i2 = 0; i2 < g.n; ++i2) {
            const int j2 = (g.n - i2) % g.n;
            // Nyquist rows have no representable mirror; skip them.
            if (g.index_to_wave(i1) == -g.n / 2 || g.index_to_wave(i2) == -g.n / 2) continue;
            const auto d = f.coeffs[g.idx(j1, j2)] - std::conj(f.coeffs[g.idx(i1, i2)]);
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

bool has_zero_mean(const SpectralField& f) {
    if (f.coeffs.empty()) return true;
    double sup = 0.0;
    for (const auto& c : f.coeffs) sup = std::max(sup, std::abs(c));
    return std::abs(f.coeffs[0]) <= 1e-12 * (1.0 + sup);
}

SpectralField make_mode(const Grid& g, int k1, int k2, double amp, double phase) {
    if (std::max(std::abs(k1), std::abs(k2)) > g.dealias_cutoff)
        throw ConfigError("make_mode: mode (" + std::to_string(k1) + "," + std::to_string(k2) +
                          ") exceeds the dealias cutoff " + std::to_string(g.dealias_cutoff) +
                          " of an n = " + std::to_string(g.n) + " grid");
    SpectralField f(g);
    if (k1 == 0 && k2 == 0) {
        f.coeffs[0] = amp * std::cos(phase);
        return f;
    }
    const std::complex<double> half(0.5 * amp * std::cos(phase), 0.5 * amp * std::sin(phase));
    f.at(k1, k2) += half;
    f.at(-k1, -k2) += std::conj(half);
    return f;
}

SpectralField make_random_band(const Grid& g, std::uint64_t seed, int kmin, int kmax,
                               double norm, double norm_order, double decay) {
    if (kmin < 1 || kmax < kmin)
        throw ConfigError("random band: need 1 <= kmin <= kmax");
    if (kmax > g.dealias_cutoff)
        throw ConfigError("random band: kmax = " + std::to_string(kmax) +
                          " exceeds the dealias cutoff " + std::to_string(g.dealias_cutoff) +
                          " of an n = " + std::to_string(g.n) + " grid");
    Rng rng(seed);
    SpectralField f(g);
    // Fill the half-plane k1 > 0 plus the half-line k1 = 0, k2 > 0 in a fixed
    // k order so draws are independent of n, then mirror.
    double weighted = 0.0; // sum of m^{2s}(|c_k|^2 + |c_-k|^2) over filled modes
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -kmax); k2 <= kmax; ++k2) {
            if (std::max(std::abs(k1), std::abs(k2)) < kmin) continue;
            const double kk = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            const double w = std::exp(-decay * kk);
            const std::complex<double> c(rng.gaussian() * w, rng.gaussian() * w);
            f.at(k1, k2) = c;
            f.at(-k1, -k2) = std::conj(c);
            const double mult = lambda_multiplier(g, k1, k2, norm_order);
            weighted += 2.0 * mult * mult * std::norm(c);
        }
    }
    const double current = std::sqrt(g.area() * weighted);
    if (current == 0.0) return f;
    const double scale = norm / current;
    for (auto& c : f.coeffs) c *= scale;
    return f;
}

} // namespace fbq
