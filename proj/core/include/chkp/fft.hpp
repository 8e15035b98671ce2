#pragma once

#include <complex>

namespace chkp::fft {

/// In-place complex DFT, unnormalized, FFTW sign convention
/// (sign = -1 forward: sum f_j exp(-2*pi*i*j*n/N)).
/// Plans are cached per (n, sign) and creation is mutex-guarded;
/// execution on caller buffers is safe to run concurrently.
void dft_1d(std::complex<double>* data, int n, int sign);

/// In-place 2D complex DFT on row-major data of shape (n0, n1).
void dft_2d(std::complex<double>* data, int n0, int n1, int sign);

} // namespace chkp::fft
