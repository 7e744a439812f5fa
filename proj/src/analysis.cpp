#include "fbq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbq/errors.hpp"
#include "fbq/spectral.hpp"

namespace fbq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Trapezoid integral of value over series rows [i, j].
double trapezoid(const std::vector<DiagnosticsRow>& series, size_t i, size_t j,
                 const RowValue& value) {
    double acc = 0.0;
    for (size_t k = i; k + 1 <= j; ++k) {
        const double h = series[k + 1].t - series[k].t;
        acc += 0.5 * h * (value(series[k]) + value(series[k + 1]));
    }
    return acc;
}

// Index of the sample at t_i + window, or npos when no sample lands there.
size_t window_end(const std::vector<DiagnosticsRow>& series, size_t i, double window) {
    const double target = series[i].t + window;
    const double tol = 1e-6 * window;
    for (size_t j = i + 1; j < series.size(); ++j) {
        if (std::abs(series[j].t - target) <= tol) return j;
        if (series[j].t > target + tol) break;
    }
    return static_cast<size_t>(-1);
}

void require_nonempty(const std::vector<DiagnosticsRow>& series, const char* op) {
    if (series.empty()) throw std::invalid_argument(std::string(op) + ": empty series");
    for (size_t i = 1; i < series.size(); ++i)
        if (!(series[i].t > series[i - 1].t))
            throw std::invalid_argument(std::string(op) + ": sample times not increasing");
}

} // namespace

CheckReport make_check_report(std::string name, double worst_residual, double worst_t,
                              double tolerance) {
    CheckReport r;
    r.name = std::move(name);
    r.worst_residual = worst_residual;
    r.worst_t = worst_t;
    r.tolerance = tolerance;
    r.pass = worst_residual >= -tolerance;
    return r;
}

double l2_decay_envelope(double theta0_l2, double f_l2, const PhysParams& p, double lambda1,
                         double t) {
    if (!(p.kappa > 0.0) || !(lambda1 > 0.0))
        throw std::domain_error("l2_decay_envelope: kappa and lambda1 must be positive");
    const double rate = p.kappa * std::pow(lambda1, 2.0 * p.beta);
    const double floor = (f_l2 * f_l2) / (rate * rate);
    return std::exp(-rate * t) * (theta0_l2 * theta0_l2 - floor) + floor;
}

double velocity_decay_envelope(double u0_l2, double theta0_l2, double f_l2,
                               const PhysParams& p, double lambda1, double t) {
    if (!(p.nu > 0.0) || !(p.kappa > 0.0) || !(lambda1 > 0.0))
        throw std::domain_error("velocity_decay_envelope: nu, kappa, lambda1 must be positive");
    const double a = p.nu * std::pow(lambda1, 2.0 * p.alpha);   // velocity decay rate
    const double b = p.kappa * std::pow(lambda1, 2.0 * p.beta); // theta decay rate
    const double theta_gap = theta0_l2 * theta0_l2 - (f_l2 * f_l2) / (b * b);
    const double head = std::exp(-a * t) * (u0_l2 * u0_l2);
    const double tail = (f_l2 * f_l2) / (a * a * b * b);
    if (std::abs(a - b) < 1e-12)
        return head + std::exp(-a * t) * (t / a) * theta_gap + tail;
    const double kernel = std::abs((std::exp(-a * t) - std::exp(-b * t)) / (a - b));
    return head + (kernel / a) * theta_gap + tail;
}

double lp_decay_envelope(double theta0_lp, double f_lp, double p_exp, const PhysParams& p,
                         double lambda1, double t) {
    if (!(p_exp >= 2.0)) throw std::domain_error("lp_decay_envelope: p must be >= 2");
    const double rate = p.kappa * std::pow(lambda1, 2.0 * p.beta);
    const double floor = p_exp * f_lp / rate;
    return std::exp(-(rate / p_exp) * t) * (theta0_lp - floor) + floor;
}

double gronwall_envelope(double y0, double lambda, double a1, double t0, double t) {
    if (!(lambda > 0.0)) throw std::domain_error("gronwall_envelope: lambda must be positive");
    if (!(t >= t0)) throw std::domain_error("gronwall_envelope: t must be >= t0");
    return std::exp(-lambda * (t - t0)) * y0 +
           a1 * std::exp(2.0 * lambda) / (std::exp(lambda) - 1.0);
}

double uniform_gronwall_envelope(double a1, double a2, double a3, double r) {
    if (!(r > 0.0)) throw std::domain_error("uniform_gronwall_envelope: r must be positive");
    return (a3 / r + a2) * std::exp(a1);
}

CheckReport check_series_under_envelope(const std::vector<DiagnosticsRow>& series,
                                        const Envelope& envelope, const RowValue& value,
                                        std::string name, double tol) {
    require_nonempty(series, "check_series_under_envelope");
    if (tol < 0.0) tol = 1e-6 * envelope(series.front().t);
    double worst = kInf;
    double worst_t = series.front().t;
    for (const auto& row : series) {
        const double slack = envelope(row.t) - value(row);
        if (slack < worst) {
            worst = slack;
            worst_t = row.t;
        }
    }
    return make_check_report(std::move(name), worst, worst_t, tol);
}

CheckReport check_lp_envelope(const std::vector<DiagnosticsRow>& series, double p_exp,
                              const PhysParams& p, double lambda1, double f_lp) {
    if (!(p_exp >= 2.0)) throw std::domain_error("check_lp_envelope: p must be >= 2");
    require_nonempty(series, "check_lp_envelope");
    RowValue value = [p_exp](const DiagnosticsRow& r) {
        return p_exp == 2.0 ? r.l2_theta : r.lp_theta.at(p_exp);
    };
    const double theta0 = value(series.front());
    const double t0 = series.front().t;
    Envelope env = [=, &p](double t) {
        return lp_decay_envelope(theta0, f_lp, p_exp, p, lambda1, t - t0);
    };
    return check_series_under_envelope(series, env, value,
                                       "lp_envelope_p" + std::to_string(static_cast<int>(p_exp)));
}

CheckReport check_time_avg_dissipation(const std::vector<DiagnosticsRow>& series, double window,
                                       DissipationBudget which, const PhysParams& p,
                                       double lambda1, double f_l2) {
    require_nonempty(series, "check_time_avg_dissipation");
    if (!(window > 0.0)) throw std::invalid_argument("check_time_avg_dissipation: bad window");
    if (series.back().t - series.front().t + 1e-12 < window)
        throw std::invalid_argument("check_time_avg_dissipation: series shorter than window");

    RowValue sq_norm, diss;
    double diss_coef = 0.0;
    std::function<double(size_t, size_t)> rhs_budget;
    std::string name;
    switch (which) {
    case DissipationBudget::Theta: {
        name = "dissipation_budget_theta";
        sq_norm = [](const DiagnosticsRow& r) { return r.l2_theta * r.l2_theta; };
        diss = [](const DiagnosticsRow& r) { return r.diss_beta; };
        diss_coef = p.kappa;
        const double rate = p.kappa * std::pow(lambda1, 2.0 * p.beta);
        rhs_budget = [=](size_t, size_t) { return window * f_l2 * f_l2 / rate; };
        break;
    }
    case DissipationBudget::Velocity: {
        name = "dissipation_budget_velocity";
        sq_norm = [](const DiagnosticsRow& r) { return r.l2_u * r.l2_u; };
        diss = [](const DiagnosticsRow& r) { return r.diss_alpha_u; };
        diss_coef = p.nu;
        const double c = 1.0 / (p.nu * std::pow(lambda1, 2.0 * p.alpha));
        rhs_budget = [&series, c](size_t i, size_t j) {
            return c * trapezoid(series, i, j,
                                 [](const DiagnosticsRow& r) { return r.l2_theta * r.l2_theta; });
        };
        break;
    }
    case DissipationBudget::Vorticity: {
        name = "dissipation_budget_vorticity";
        if (p.alpha + p.beta < 1.0)
            throw std::domain_error(
                "check_time_avg_dissipation: vorticity budget needs alpha + beta >= 1");
        sq_norm = [](const DiagnosticsRow& r) { return r.l2_omega * r.l2_omega; };
        diss = [](const DiagnosticsRow& r) { return r.diss_alpha_omega; };
        diss_coef = p.nu;
        const double frac = (1.0 - p.alpha) / p.beta; // in [0,1]
        const double c = 1.0 / p.nu;
        rhs_budget = [&series, c, frac](size_t i, size_t j) {
            return c * trapezoid(series, i, j, [frac](const DiagnosticsRow& r) {
                       const double l2sq = r.l2_theta * r.l2_theta;
                       return std::pow(l2sq, 1.0 - frac) * std::pow(r.diss_beta, frac);
                   });
        };
        break;
    }
    }

    const double rel_tol = 1e-4;
    double worst = kInf;
    double worst_t = series.front().t;
    bool any_window = false;
    for (size_t i = 0; i < series.size(); ++i) {
        const size_t j = window_end(series, i, window);
        if (j == static_cast<size_t>(-1)) continue;
        any_window = true;
        const double lhs = sq_norm(series[j]) + diss_coef * trapezoid(series, i, j, diss);
        const double rhs = sq_norm(series[i]) + rhs_budget(i, j);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        const double slack = (rhs - lhs) / scale;
        if (slack < worst) {
            worst = slack;
            worst_t = series[i].t;
        }
    }
    if (!any_window)
        throw std::invalid_argument(
            "check_time_avg_dissipation: no sample pair spans the window (non-uniform sampling?)");
    return make_check_report(std::move(name), worst, worst_t, rel_tol);
}

CheckReport check_energy_balance(const std::vector<DiagnosticsRow>& series, double window,
                                 double kappa, double rel_tol) {
    require_nonempty(series, "check_energy_balance");
    if (series.back().t - series.front().t + 1e-12 < window)
        throw std::invalid_argument("check_energy_balance: series shorter than window");
    double worst = kInf;
    double worst_t = series.front().t;
    bool any_window = false;
    for (size_t i = 0; i < series.size(); ++i) {
        const size_t j = window_end(series, i, window);
        if (j == static_cast<size_t>(-1)) continue;
        any_window = true;
        const double dsq = series[j].l2_theta * series[j].l2_theta -
                           series[i].l2_theta * series[i].l2_theta;
        const double diss = 2.0 * kappa *
            trapezoid(series, i, j, [](const DiagnosticsRow& r) { return r.diss_beta; });
        const double work = 2.0 *
            trapezoid(series, i, j, [](const DiagnosticsRow& r) { return r.f_inner_theta; });
        const double scale = std::max(diss, 1e-300);
        const double slack = -std::abs(dsq + diss - work) / scale;
        if (slack < worst) {
            worst = slack;
            worst_t = series[i].t;
        }
    }
    if (!any_window)
        throw std::invalid_argument("check_energy_balance: no sample pair spans the window");
    return make_check_report("energy_balance", worst, worst_t, rel_tol);
}

CheckReport check_positivity(const PhysicalField& theta, double s, int p) {
    if (!(s >= 0.0 && s <= 2.0))
        throw std::domain_error("check_positivity: s must lie in [0,2]");
    if (p < 2 || p % 2 != 0)
        throw std::domain_error("check_positivity: p must be an even integer >= 2");

    // Work on a grid twice as fine: the pointwise powers are not band-limited,
    // and the finer grid keeps their quadrature error inside the tolerance.
    const Grid& coarse = theta.grid;
    const Grid fine = make_grid(2 * coarse.n, coarse.l);
    SpectralField th_hat = to_spectral(theta);
    SpectralField padded(fine);
    for (int i1 = 0; i1 < coarse.n; ++i1) {
        const int k1 = coarse.index_to_wave(i1);
        if (k1 == -coarse.n / 2) continue; // unrepresentable pair on the coarse grid
        for (int i2 = 0; i2 < coarse.n; ++i2) {
            const int k2 = coarse.index_to_wave(i2);
            if (k2 == -coarse.n / 2) continue;
            padded.at(k1, k2) = th_hat.at(k1, k2);
        }
    }
    const PhysicalField th_fine = to_physical(padded);
    const PhysicalField lam_s = to_physical(apply_lambda_power(padded, s));

    // LHS: quadrature of |theta|^{p-2} theta * Lambda^s theta on the fine grid.
    double lhs = 0.0;
    const double half_p = 0.5 * p;
    PhysicalField power(fine);
    for (size_t j = 0; j < th_fine.values.size(); ++j) {
        const double v = th_fine.values[j];
        lhs += std::pow(std::abs(v), p - 2) * v * lam_s.values[j];
        power.values[j] = std::pow(std::abs(v), half_p);
    }
    lhs *= fine.cell_area();

    // RHS: (2/p) || Lambda^{s/2} |theta|^{p/2} ||^2 via the fine-grid spectrum.
    const double nrm = sobolev_norm(to_spectral(power), 0.5 * s);
    const double rhs = (2.0 / p) * nrm * nrm;

    const double tol = 1e-8 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return make_check_report("positivity_s" + std::to_string(s) + "_p" + std::to_string(p),
                             lhs - rhs, 0.0, tol);
}

CheckReport check_interpolation(const SpectralField& g, double s1, double s, double s2) {
    if (!(s1 <= s && s <= s2))
        throw std::domain_error("check_interpolation: need s1 <= s <= s2");
    const double delta = (s2 == s1) ? 1.0 : (s2 - s) / (s2 - s1);
    const double mid = sobolev_norm(g, s);
    const double bound =
        std::pow(sobolev_norm(g, s1), delta) * std::pow(sobolev_norm(g, s2), 1.0 - delta);
    const double slack = bound * (1.0 + 1e-12) - mid;
    return make_check_report("interpolation", slack, 0.0, 0.0);
}

std::optional<double> detect_absorbing_entry(const std::vector<DiagnosticsRow>& series,
                                             const RowValue& value, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("detect_absorbing_entry: radius must be positive");
    require_nonempty(series, "detect_absorbing_entry");
    // Earliest suffix staying inside the ball.
    std::optional<double> entry;
    for (size_t i = series.size(); i-- > 0;) {
        if (value(series[i]) <= radius)
            entry = series[i].t;
        else
            break;
    }
    return entry;
}

double envelope_crossing_time(double theta0_l2, double f_l2, const PhysParams& p,
                              double lambda1, double radius) {
    const double r2 = radius * radius;
    const double y0 = theta0_l2 * theta0_l2;
    if (y0 <= r2) return 0.0;
    const double rate = p.kappa * std::pow(lambda1, 2.0 * p.beta);
    const double floor = (f_l2 * f_l2) / (rate * rate);
    if (r2 <= floor) return kInf;
    return std::log((y0 - floor) / (r2 - floor)) / rate;
}

} // namespace fbq
