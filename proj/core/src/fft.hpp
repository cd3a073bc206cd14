#pragma once

// Internal FFT layer: unnormalized forward/backward transforms on 1D and
// square 2D (row-major, x-major) complex arrays, plus the spectral
// wavenumber table. Plans are cached per (rank, n, sign) behind a mutex;
// execution runs on caller buffers and is safe to call concurrently.

#include <complex>
#include <vector>

namespace wmsim::detail {

// FFTW-layout wavenumbers k_m = 2*pi*f(m)/(n*spacing), f(m) = m for
// m < n/2, m - n otherwise (Nyquist at -pi/spacing).
std::vector<double> wavenumbers(int n, double spacing);

// In-place unnormalized DFT, sign = -1 forward / +1 backward.
void dft_1d(std::complex<double>* data, int n, int sign);
void dft_2d(std::complex<double>* data, int n, int sign);  // n x n

}  // namespace wmsim::detail
