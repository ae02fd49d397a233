#include "lfscan/core/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace lfscan {

namespace {
std::mutex g_plan_mutex; // fftw plan create/destroy is not thread-safe
}

void fft2d(std::vector<std::complex<double>>& data, int rows, int cols, bool inverse) {
    if (static_cast<size_t>(rows) * cols != data.size())
        throw std::invalid_argument("fft2d: size mismatch");
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft_2d(rows, cols, buf, buf,
                                inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace lfscan
