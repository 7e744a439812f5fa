#pragma once

#include <cmath>

namespace fbq {

/// Uniform periodic lattice on the square [0,L]^2 with n points per side.
///
/// Wavevectors are integer pairs k = (k1,k2), k_i in {-n/2, ..., n/2-1};
/// the physical wavenumber of mode k is base_wavenumber * k, so the
/// smallest nonzero wavenumber magnitude equals base_wavenumber.
struct Grid {
    int n = 0;                    ///< points per side (even, >= 8)
    double l = 0.0;               ///< side length of the domain
    double base_wavenumber = 0.0; ///< 2*pi/l
    int dealias_cutoff = 0;       ///< floor(n/3), max-norm cutoff for quadratic products

    double dx() const { return l / n; }
    double cell_area() const { return (l / n) * (l / n); }
    double area() const { return l * l; }

    /// Signed wavevector component for FFT-order index i in [0,n).
    int index_to_wave(int i) const { return i < n / 2 ? i : i - n; }
    /// FFT-order index for signed wavevector component k in [-n/2, n/2).
    int wave_to_index(int k) const { return k >= 0 ? k : k + n; }
    /// Row-major storage offset for FFT-order indices (i1,i2).
    int idx(int i1, int i2) const { return i1 * n + i2; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.n == b.n && a.l == b.l;
    }
};

/// Builds a Grid, validating n (even, >= 8) and l (> 0).
Grid make_grid(int n, double l);

} // namespace fbq
