#pragma once

#include <complex>

namespace fbq::detail {

// Thread-local FFTW staging buffers of size n*n. Fill fft_in, call one of the
// execute functions, read fft_out before the next FFT call on this thread.
// Plans are cached per n (FFTW_ESTIMATE only, so the chosen algorithm and
// hence the rounding is identical across runs and processes).
std::complex<double>* fft_in(int n);
std::complex<double>* fft_out(int n);

// Unnormalized transforms: forward uses the exp(-ik.x) kernel, backward the
// exp(+ik.x) kernel. The caller owns normalization.
void fft_execute_forward(int n);
void fft_execute_backward(int n);

} // namespace fbq::detail
