#pragma once

#include <complex>

namespace wrtkit {

using cdouble = std::complex<double>;

// In-place unnormalized complex FFT of length n (sign -1 forward, +1 inverse).
// Plans are cached per length; execution is safe from multiple threads and
// the result does not depend on the thread count.
void fft_1d(cdouble* data, int n, bool inverse);

// In-place 3D FFT on data[ix + nx*(iy + ny*iz)], decomposed into batched 1D
// passes so the rounding is identical for any number of threads.
void fft_3d(cdouble* data, int nx, int ny, int nz, bool inverse);

}  // namespace wrtkit
