#pragma once

#include <complex>
#include <cstdint>

#include "fbq/field.hpp"

namespace fbq {

/// Forward transform. Coefficients are normalized so that
/// f(x) = sum_k coeffs(k) exp(i * base_wavenumber * k.x); the forward DFT
/// therefore carries a 1/n^2 factor. Output of a real input is Hermitian
/// symmetric up to rounding.
SpectralField to_spectral(const PhysicalField& f);

/// Inverse transform; real parts of the synthesis. to_physical(to_spectral(f))
/// reproduces f to ~1e-15 relative.
PhysicalField to_physical(const SpectralField& f);

/// Fractional Laplacian power: multiplies coeffs(k) by m(k)^s with
/// m(k) = base_wavenumber * |k|. The k = 0 coefficient maps to 0 for s > 0
/// and is unchanged for s = 0. For s < 0 the input must be mean-zero
/// (throws std::domain_error otherwise) and the k = 0 output is 0.
SpectralField apply_lambda_power(const SpectralField& f, double s);

/// sqrt(L^2 * sum_k m(k)^{2s} |coeffs(k)|^2). At s = 0 this is the L^2 norm
/// with exact Parseval against the grid quadrature. Mean-zero required for
/// s < 0.
double sobolev_norm(const SpectralField& f, double s);

/// Grid quadrature L^p norm: ((L/n)^2 sum |f|^p)^{1/p}; max |f| for p = inf.
/// Throws std::domain_error for p < 1.
double lp_norm(const PhysicalField& f, double p);

/// Zeroes the k = 0 coefficient.
SpectralField project_mean_zero(SpectralField f);

/// Zeroes all coefficients with max(|k1|,|k2|) > dealias_cutoff. Idempotent.
SpectralField dealias(SpectralField f);

/// L^2 inner product <f,g> = integral of f*g over the domain, evaluated
/// spectrally (exact for band-limited fields).
double l2_inner(const SpectralField& f, const SpectralField& g);

/// Largest |coeffs(-k) - conj(coeffs(k))| over representable pairs; a
/// Hermitian-symmetry diagnostic.
double max_hermitian_asymmetry(const SpectralField& f);

/// True when the mean coefficient is negligible against the field scale
/// (|coeffs(0)| <= 1e-12 * (1 + max |coeffs|)).
bool has_zero_mean(const SpectralField& f);

/// m(k)^s with the k = 0 conventions of apply_lambda_power (0 for s > 0,
/// 1 for s = 0, 0 for s < 0).
double lambda_multiplier(const Grid& g, int k1, int k2, double s);

/// amp * cos(base_wavenumber * (k1 x1 + k2 x2) + phase) as a spectral field.
/// Throws ConfigError when the mode does not fit under the dealias cutoff.
SpectralField make_mode(const Grid& g, int k1, int k2, double amp, double phase = 0.0);

/// Random real field supported on the max-norm band kmin <= max|k_i| <= kmax
/// with independent Gaussian mode amplitudes weighted by exp(-decay*|k|),
/// scaled so that the H^norm_order norm equals `norm`. Mean-zero, dealiased,
/// exactly Hermitian. Mode amplitudes depend only on (seed, band, decay), not
/// on n, so refining the grid reproduces the same field.
/// Throws ConfigError when kmax exceeds the dealias cutoff.
SpectralField make_random_band(const Grid& g, std::uint64_t seed, int kmin, int kmax,
                               double norm, double norm_order = 0.0, double decay = 0.0);

} // namespace fbq
