#pragma once

#include <string>
#include <utility>

#include "fbq/dynamics.hpp"

namespace fbq {

/// Binary state snapshot, magic "FBQ1". Little-endian layout:
///   u32 n; f64 l, nu, kappa, alpha, beta, t;
///   theta coefficients as n*n (f64 re, f64 im) pairs, row-major with wave
///   indices in FFT order 0..n-1 standing for {0..n/2-1, -n/2..-1};
///   omega coefficients in the same layout.
/// Round trips are bit exact.
void write_snapshot(const State& s, const PhysParams& p, const std::string& path);

/// Reads a snapshot. The returned PhysParams carries the stored scalars with
/// an empty (zero) forcing and coupling_on = true; forcing and coupling come
/// from the run configuration. Bad magic, unknown version, truncation or an
/// inconsistent header throw FormatError.
std::pair<State, PhysParams> read_snapshot(const std::string& path);

} // namespace fbq
