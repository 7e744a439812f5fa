#pragma once

#include <complex>
#include <vector>

#include "fbq/grid.hpp"

namespace fbq {

/// Fourier coefficients of a real scalar field on a Grid.
///
/// coeffs[i1*n + i2] is the amplitude of exp(i * base_wavenumber * k.x) for
/// the signed wavevector k = (index_to_wave(i1), index_to_wave(i2)); storage
/// is FFT order, row-major in (k1,k2). Real-valued fields satisfy the
/// Hermitian symmetry coeffs(-k) = conj(coeffs(k)).
struct SpectralField {
    Grid grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coeffs(static_cast<size_t>(g.n) * g.n) {}

    std::complex<double>& at(int k1, int k2) {
        return coeffs[grid.idx(grid.wave_to_index(k1), grid.wave_to_index(k2))];
    }
    std::complex<double> at(int k1, int k2) const {
        return coeffs[grid.idx(grid.wave_to_index(k1), grid.wave_to_index(k2))];
    }
    std::complex<double> mean_coeff() const { return coeffs.empty() ? 0.0 : coeffs[0]; }
    bool empty() const { return coeffs.empty(); }
};

/// Point samples of a real scalar field at x_j = (L/n)*j, row-major in
/// (j1,j2).
struct PhysicalField {
    Grid grid;
    std::vector<double> values;

    PhysicalField() = default;
    explicit PhysicalField(const Grid& g) : grid(g), values(static_cast<size_t>(g.n) * g.n, 0.0) {}

    double& at(int j1, int j2) { return values[grid.idx(j1, j2)]; }
    double at(int j1, int j2) const { return values[grid.idx(j1, j2)]; }
};

} // namespace fbq
