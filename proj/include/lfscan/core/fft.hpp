#pragma once

#include <complex>
#include <vector>

namespace lfscan {

/// 2D complex DFT via FFTW, unnormalized. inverse = true applies the
/// backward transform (caller divides by rows*cols when needed). Plans are
/// created with FFTW_ESTIMATE so planning is deterministic; creation is
/// serialized internally, execution is concurrent-safe.
void fft2d(std::vector<std::complex<double>>& data, int rows, int cols, bool inverse);

} // namespace lfscan
