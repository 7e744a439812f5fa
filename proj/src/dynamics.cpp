#include "fbq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbq/errors.hpp"
#include "fbq/spectral.hpp"
#include "fft_workspace.hpp"

namespace fbq {

std::vector<std::string> validate_params(const PhysParams& p, bool strict_subcritical) {
    if (!(p.nu > 0.0)) throw ConfigError("params: nu must be positive");
    if (!(p.kappa > 0.0)) throw ConfigError("params: kappa must be positive");
    auto check_exponent = [&](double e, const char* name) -> std::vector<std::string> {
        if (strict_subcritical) {
            if (!(e > 0.5 && e < 1.0))
                throw ConfigError(std::string("params: ") + name + " = " + std::to_string(e) +
                                  " outside the subcritical range (1/2, 1)");
            return {};
        }
        if (!(e > 0.0 && e <= 1.0))
            throw ConfigError(std::string("params: ") + name + " = " + std::to_string(e) +
                              " outside (0, 1]");
        if (!(e > 0.5 && e < 1.0))
            return {std::string("warning: ") + name + " = " + std::to_string(e) +
                    " outside the subcritical range (1/2, 1); accepted for oracle runs"};
        return {};
    };
    std::vector<std::string> warnings;
    for (auto& w : check_exponent(p.alpha, "alpha")) warnings.push_back(w);
    for (auto& w : check_exponent(p.beta, "beta")) warnings.push_back(w);
    if (!p.forcing.empty() && !has_zero_mean(p.forcing))
        throw ConfigError("params: forcing must be mean-zero");
    return warnings;
}

std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& omega_hat) {
    if (!has_zero_mean(omega_hat))
        throw std::domain_error("biot_savart: vorticity has nonzero mean");
    const Grid& g = omega_hat.grid;
    SpectralField u1(g), u2(g);
    const std::complex<double> iu(0.0, 1.0);
    for (int i1 = 0; i1 < g.n; ++i1) {
        const double m1 = g.base_wavenumber * g.index_to_wave(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            if (i1 == 0 && i2 == 0) continue;
            const double m2 = g.base_wavenumber * g.index_to_wave(i2);
            const auto q = omega_hat.coeffs[g.idx(i1, i2)] / (m1 * m1 + m2 * m2);
            u1.coeffs[g.idx(i1, i2)] = iu * m2 * q;
            u2.coeffs[g.idx(i1, i2)] = -iu * m1 * q;
        }
    }
    return {std::move(u1), std::move(u2)};
}

SpectralField advect(const SpectralField& u1_hat, const SpectralField& u2_hat,
                     const SpectralField& g_hat) {
    const Grid& g = g_hat.grid;
    if (!(u1_hat.grid == g) || !(u2_hat.grid == g))
        throw std::invalid_argument("advect: grid mismatch");
    SpectralField g1(g), g2(g);
    const std::complex<double> iu(0.0, 1.0);
    for (int i1 = 0; i1 < g.n; ++i1) {
        const double m1 = g.base_wavenumber * g.index_to_wave(i1);
        for (int i2 = 0; i2 < g.n; ++i2) {
            const double m2 = g.base_wavenumber * g.index_to_wave(i2);
            g1.coeffs[g.idx(i1, i2)] = iu * m1 * g_hat.coeffs[g.idx(i1, i2)];
            g2.coeffs[g.idx(i1, i2)] = iu * m2 * g_hat.coeffs[g.idx(i1, i2)];
        }
    }
    PhysicalField u1 = to_physical(u1_hat);
    PhysicalField u2 = to_physical(u2_hat);
    PhysicalField d1 = to_physical(g1);
    PhysicalField d2 = to_physical(g2);
    PhysicalField prod(g);
    for (size_t j = 0; j < prod.values.size(); ++j)
        prod.values[j] = u1.values[j] * d1.values[j] + u2.values[j] * d2.values[j];
    return project_mean_zero(dealias(to_spectral(prod)));
}

// ---------------------------------------------------------------------------
// Stepper internals

struct Stepper::Impl {
    Grid g;
    PhysParams p;
    double dt;
    double cfl;

    // Per-mode tables, FFT-order row-major. The exponential tables carry the
    // dealias mask and a zero at k = 0, so stepping keeps states dealiased
    // and mean-zero structurally.
    std::vector<double> lam2a, lam2b;     // m^{2 alpha}, m^{2 beta}
    std::vector<double> eth_full, eth_half, eom_full, eom_half;
    std::vector<std::complex<double>> ufac;  // (m1 + i m2)/|m|^2, velocity packing
    std::vector<std::complex<double>> gfac;  // (-m2 + i m1), gradient packing
    std::vector<double> im1;                 // m1 (vorticity source factor is i*m1)
    std::vector<unsigned char> keep;

    mutable std::vector<std::complex<double>> buf_u, buf_gt, buf_go;
    mutable std::vector<std::complex<double>> nth, nom; // nonlinear + source + forcing terms

    Impl(const Grid& grid, const PhysParams& params, double dt_, double cfl_)
        : g(grid), p(params), dt(dt_), cfl(cfl_) {
        if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
        if (!p.forcing.empty() && !(p.forcing.grid == g))
            throw std::invalid_argument("step: forcing grid mismatch");
        const size_t nn = static_cast<size_t>(g.n) * g.n;
        lam2a.resize(nn);
        lam2b.resize(nn);
        eth_full.resize(nn);
        eth_half.resize(nn);
        eom_full.resize(nn);
        eom_half.resize(nn);
        ufac.resize(nn);
        gfac.resize(nn);
        im1.resize(nn);
        keep.resize(nn);
        buf_u.resize(nn);
        buf_gt.resize(nn);
        buf_go.resize(nn);
        nth.resize(nn);
        nom.resize(nn);
        for (int i1 = 0; i1 < g.n; ++i1) {
            const int k1 = g.index_to_wave(i1);
            const double m1 = g.base_wavenumber * k1;
            for (int i2 = 0; i2 < g.n; ++i2) {
                const int k2 = g.index_to_wave(i2);
                const double m2 = g.base_wavenumber * k2;
                const size_t j = g.idx(i1, i2);
                const bool zero = (k1 == 0 && k2 == 0);
                const bool kept = !zero &&
                    std::max(std::abs(k1), std::abs(k2)) <= g.dealias_cutoff;
                keep[j] = kept ? 1 : 0;
                lam2a[j] = lambda_multiplier(g, k1, k2, 2.0 * p.alpha);
                lam2b[j] = lambda_multiplier(g, k1, k2, 2.0 * p.beta);
                eth_full[j] = kept ? std::exp(-p.kappa * lam2b[j] * dt) : 0.0;
                eth_half[j] = kept ? std::exp(-p.kappa * lam2b[j] * (0.5 * dt)) : 0.0;
                eom_full[j] = kept ? std::exp(-p.nu * lam2a[j] * dt) : 0.0;
                eom_half[j] = kept ? std::exp(-p.nu * lam2a[j] * (0.5 * dt)) : 0.0;
                ufac[j] = zero ? 0.0 : std::complex<double>(m1, m2) / (m1 * m1 + m2 * m2);
                gfac[j] = std::complex<double>(-m2, m1);
                im1[j] = m1;
            }
        }
    }

    // Advection, vorticity source and forcing terms of the right-hand side
    // (everything except the diagonal dissipation), written to nth/nom.
    // Velocity and gradient pairs ride in single complex transforms; the two
    // product spectra are split Hermitian/anti-Hermitian on the way back.
    void nonlinear(const SpectralField& th, const SpectralField& om, double* max_speed) const {
        const int n = g.n;
        const size_t nn = static_cast<size_t>(n) * n;
        auto* in = detail::fft_in(n);
        // u1 + i u2 from vorticity
        for (size_t j = 0; j < nn; ++j) in[j] = ufac[j] * om.coeffs[j];
        detail::fft_execute_backward(n);
        std::copy_n(detail::fft_out(n), nn, buf_u.begin());
        // d1 theta + i d2 theta
        for (size_t j = 0; j < nn; ++j) in[j] = gfac[j] * th.coeffs[j];
        detail::fft_execute_backward(n);
        std::copy_n(detail::fft_out(n), nn, buf_gt.begin());
        // d1 omega + i d2 omega
        for (size_t j = 0; j < nn; ++j) in[j] = gfac[j] * om.coeffs[j];
        detail::fft_execute_backward(n);
        std::copy_n(detail::fft_out(n), nn, buf_go.begin());
        // pointwise products, packed as (u.grad theta) + i (u.grad omega)
        double speed2 = 0.0;
        for (size_t j = 0; j < nn; ++j) {
            const double v1 = buf_u[j].real();
            const double v2 = buf_u[j].imag();
            speed2 = std::max(speed2, v1 * v1 + v2 * v2);
            in[j] = std::complex<double>(v1 * buf_gt[j].real() + v2 * buf_gt[j].imag(),
                                         v1 * buf_go[j].real() + v2 * buf_go[j].imag());
        }
        if (max_speed) *max_speed = std::sqrt(speed2);
        detail::fft_execute_forward(n);
        const auto* out = detail::fft_out(n);
        const double scale = 0.5 / (static_cast<double>(n) * n);
        const bool forced = !p.forcing.empty();
        const std::complex<double> iu(0.0, 1.0);
        for (int i1 = 0; i1 < n; ++i1) {
            const int r1 = (n - i1) % n;
            for (int i2 = 0; i2 < n; ++i2) {
                const size_t j = g.idx(i1, i2);
                if (!keep[j]) {
                    nth[j] = 0.0;
                    nom[j] = 0.0;
                    continue;
                }
                const size_t jm = g.idx(r1, (n - i2) % n);
                const auto z = out[j];
                const auto zm = std::conj(out[jm]);
                const auto conv_th = (z + zm) * scale;
                const auto conv_om = (z - zm) * (-iu * scale);
                nth[j] = -conv_th + (forced ? p.forcing.coeffs[j] : 0.0);
                nom[j] = -conv_om + (p.coupling_on ? iu * im1[j] * th.coeffs[j]
                                                   : std::complex<double>(0.0));
            }
        }
    }

    State advance(const State& s) const {
        if (!(s.theta_hat.grid == g) || !(s.omega_hat.grid == g))
            throw std::invalid_argument("step: state grid mismatch");
        const size_t nn = static_cast<size_t>(g.n) * g.n;

        double max_speed = 0.0;
        nonlinear(s.theta_hat, s.omega_hat, &max_speed);
        const double bound = cfl * g.dx() / std::max(1.0, max_speed);
        if (dt > bound)
            throw BlowupError("CFL violation: dt = " + std::to_string(dt) +
                                  " exceeds the advective bound " + std::to_string(bound),
                              s.t);

        State mid;
        mid.theta_hat = SpectralField(g);
        mid.omega_hat = SpectralField(g);
        const double hdt = 0.5 * dt;
        for (size_t j = 0; j < nn; ++j) {
            mid.theta_hat.coeffs[j] = eth_half[j] * (s.theta_hat.coeffs[j] + hdt * nth[j]);
            mid.omega_hat.coeffs[j] = eom_half[j] * (s.omega_hat.coeffs[j] + hdt * nom[j]);
        }

        nonlinear(mid.theta_hat, mid.omega_hat, nullptr);

        State next;
        next.theta_hat = SpectralField(g);
        next.omega_hat = SpectralField(g);
        double acc = 0.0;
        for (size_t j = 0; j < nn; ++j) {
            next.theta_hat.coeffs[j] =
                eth_full[j] * s.theta_hat.coeffs[j] + dt * eth_half[j] * nth[j];
            next.omega_hat.coeffs[j] =
                eom_full[j] * s.omega_hat.coeffs[j] + dt * eom_half[j] * nom[j];
            acc += std::norm(next.theta_hat.coeffs[j]) + std::norm(next.omega_hat.coeffs[j]);
        }
        if (!std::isfinite(acc))
            throw BlowupError("non-finite state after step", s.t + dt);
        next.t = s.t + dt;
        return next;
    }
};

Stepper::Stepper(const Grid& g, const PhysParams& p, double dt, double cfl)
    : impl_(std::make_unique<Impl>(g, p, dt, cfl)) {}
Stepper::~Stepper() = default;
State Stepper::advance(const State& s) const { return impl_->advance(s); }
double Stepper::dt() const { return impl_->dt; }

std::pair<SpectralField, SpectralField> tendency(const State& s, const PhysParams& p) {
    const Grid& g = s.theta_hat.grid;
    if (!(s.omega_hat.grid == g)) throw std::invalid_argument("tendency: grid mismatch");
    // dt is irrelevant for the right-hand side; any positive value builds the tables.
    Stepper::Impl impl(g, p, 1.0, 0.5);
    impl.nonlinear(s.theta_hat, s.omega_hat, nullptr);
    SpectralField dth(g), dom(g);
    for (size_t j = 0; j < dth.coeffs.size(); ++j) {
        dth.coeffs[j] = impl.nth[j] - p.kappa * impl.lam2b[j] * s.theta_hat.coeffs[j];
        dom.coeffs[j] = impl.nom[j] - p.nu * impl.lam2a[j] * s.omega_hat.coeffs[j];
    }
    return {project_mean_zero(std::move(dth)), project_mean_zero(std::move(dom))};
}

State step(const State& s, const PhysParams& p, double dt, double cfl) {
    return Stepper(s.theta_hat.grid, p, dt, cfl).advance(s);
}

namespace {

DiagnosticsRow make_row(const State& s, const PhysParams& p, const IntegrateOptions& opts) {
    DiagnosticsRow row;
    row.t = s.t;
    auto [u1, u2] = biot_savart(s.omega_hat);
    row.l2_theta = sobolev_norm(s.theta_hat, 0.0);
    row.l2_u = std::hypot(sobolev_norm(u1, 0.0), sobolev_norm(u2, 0.0));
    row.l2_omega = sobolev_norm(s.omega_hat, 0.0);
    PhysicalField theta_phys = to_physical(s.theta_hat);
    for (double q : opts.lp) row.lp_theta[q] = lp_norm(theta_phys, q);
    row.hs1_theta = sobolev_norm(s.theta_hat, opts.s1);
    row.hs2_u = std::hypot(sobolev_norm(u1, opts.s2), sobolev_norm(u2, opts.s2));
    const double db = sobolev_norm(s.theta_hat, p.beta);
    row.diss_beta = db * db;
    const double da1 = sobolev_norm(u1, p.alpha);
    const double da2 = sobolev_norm(u2, p.alpha);
    row.diss_alpha_u = da1 * da1 + da2 * da2;
    const double dw = sobolev_norm(s.omega_hat, p.alpha);
    row.diss_alpha_omega = dw * dw;
    row.f_inner_theta = p.forcing.empty() ? 0.0 : l2_inner(p.forcing, s.theta_hat);
    return row;
}

} // namespace

DiagnosticsRow diagnostics_row(const State& s, const PhysParams& p,
                               const IntegrateOptions& opts) {
    return make_row(s, p, opts);
}

State integrate(const State& s0, const PhysParams& p, double t_end, double dt,
                int sample_every, const DiagnosticsSink& sink,
                const IntegrateOptions& opts) {
    if (!(t_end >= s0.t)) throw std::invalid_argument("integrate: t_end before start time");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (sample_every < 1) throw std::invalid_argument("integrate: sample_every must be >= 1");

    State s = s0;
    s.theta_hat = dealias(project_mean_zero(std::move(s.theta_hat)));
    s.omega_hat = dealias(project_mean_zero(std::move(s.omega_hat)));
    if (sink) sink(make_row(s, p, opts));
    if (t_end == s.t) return s;

    const double span = t_end - s0.t;
    long n_full = static_cast<long>(std::floor(span / dt + 1e-9));
    double rem = span - static_cast<double>(n_full) * dt;
    if (rem <= 1e-12 * std::max(1.0, std::abs(t_end))) rem = 0.0;

    Stepper stepper(s.theta_hat.grid, p, dt, opts.cfl);
    bool fresh_sample = true; // initial row just emitted
    for (long k = 1; k <= n_full; ++k) {
        try {
            s = stepper.advance(s);
        } catch (BlowupError& e) {
            e.last_good = std::make_shared<State>(std::move(s));
            throw;
        }
        fresh_sample = false;
        if (sink && k % sample_every == 0) {
            sink(make_row(s, p, opts));
            fresh_sample = true;
        }
    }
    if (rem > 0.0) {
        Stepper tail(s.theta_hat.grid, p, rem, opts.cfl);
        try {
            s = tail.advance(s);
        } catch (BlowupError& e) {
            e.last_good = std::make_shared<State>(std::move(s));
            throw;
        }
        fresh_sample = false;
    }
    s.t = t_end;
    if (sink && !fresh_sample) sink(make_row(s, p, opts));
    return s;
}

} // namespace fbq
