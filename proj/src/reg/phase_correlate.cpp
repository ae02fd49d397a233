#include "lfscan/reg/phase_correlate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/fft.hpp"

namespace lfscan {

namespace {

// signed frequency index for an N-point DFT bin
inline int signed_freq(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

std::vector<double> hann_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
    return w;
}

// evaluate the upsampled inverse transform of the normalized spectrum on a
// (2*half+1)^2 grid centered at (cx, cy), spaced 1/upsample pixels
void upsampled_peak(const std::vector<std::complex<double>>& spectrum, int h, int w,
                    double cy, double cx, int half, int upsample,
                    double& best_dy, double& best_dx) {
    const int m = 2 * half + 1;
    const double step = 1.0 / upsample;
    // rows: E[i][ky] = exp(2*pi*i*ky*(cy + (i-half)*step)/h)
    std::vector<std::complex<double>> ey(static_cast<size_t>(m) * h);
    std::vector<std::complex<double>> ex(static_cast<size_t>(w) * m);
    for (int i = 0; i < m; ++i) {
        const double y = cy + (i - half) * step;
        for (int ky = 0; ky < h; ++ky) {
            const double ang = 2.0 * M_PI * signed_freq(ky, h) * y / h;
            ey[static_cast<size_t>(i) * h + ky] = {std::cos(ang), std::sin(ang)};
        }
    }
    for (int j = 0; j < m; ++j) {
        const double x = cx + (j - half) * step;
        for (int kx = 0; kx < w; ++kx) {
            const double ang = 2.0 * M_PI * signed_freq(kx, w) * x / w;
            ex[static_cast<size_t>(kx) * m + j] = {std::cos(ang), std::sin(ang)};
        }
    }
    // tmp = spectrum * Ex  (h x m)
    std::vector<std::complex<double>> tmp(static_cast<size_t>(h) * m, {0.0, 0.0});
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            const std::complex<double> s = spectrum[static_cast<size_t>(ky) * w + kx];
            if (s == std::complex<double>(0.0, 0.0)) continue;
            for (int j = 0; j < m; ++j)
                tmp[static_cast<size_t>(ky) * m + j] += s * ex[static_cast<size_t>(kx) * m + j];
        }
    }
    double best = -1.0;
    int bi = half, bj = half;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            std::complex<double> acc{0.0, 0.0};
            for (int ky = 0; ky < h; ++ky)
                acc += ey[static_cast<size_t>(i) * h + ky] * tmp[static_cast<size_t>(ky) * m + j];
            const double v = acc.real();
            if (v > best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    best_dy = cy + (bi - half) * step;
    best_dx = cx + (bj - half) * step;
}

} // namespace

PhaseCorrelationResult phase_correlate(const Image& a, const Image& b, int upsample) {
    if (!a.same_size(b)) throw RegistrationError("phase_correlate: size mismatch");
    const int h = a.height(), w = a.width();
    if (h < 16 || w < 16) throw RegistrationError("phase_correlate: images must be at least 16x16");
    if (upsample < 1) throw RegistrationError("phase_correlate: upsample must be >= 1");
    if (image_max(a) - image_min(a) < 1e-12 || image_max(b) - image_min(b) < 1e-12)
        throw RegistrationError("phase_correlate: constant input (degenerate signal)");

    const std::vector<double> wy = hann_window(h);
    const std::vector<double> wx = hann_window(w);
    const double mean_a = image_mean(a), mean_b = image_mean(b);

    std::vector<std::complex<double>> fa(static_cast<size_t>(h) * w), fb(fa.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double win = wy[y] * wx[x];
            fa[static_cast<size_t>(y) * w + x] = {(a.at(y, x) - mean_a) * win, 0.0};
            fb[static_cast<size_t>(y) * w + x] = {(b.at(y, x) - mean_b) * win, 0.0};
        }
    }
    fft2d(fa, h, w, false);
    fft2d(fb, h, w, false);

    // normalized cross-power spectrum conj(A).B
    std::vector<std::complex<double>> spectrum(fa.size());
    double max_mag = 0.0;
    for (size_t i = 0; i < fa.size(); ++i) {
        const std::complex<double> c = std::conj(fa[i]) * fb[i];
        max_mag = std::max(max_mag, std::abs(c));
        spectrum[i] = c;
    }
    const double floor_mag = std::max(1e-300, 1e-15 * max_mag);
    for (auto& c : spectrum) {
        const double mag = std::abs(c);
        c = mag > floor_mag ? c / mag : std::complex<double>(0.0, 0.0);
    }

    std::vector<std::complex<double>> corr = spectrum;
    fft2d(corr, h, w, true);

    int py = 0, px = 0;
    double peak = -1.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = corr[static_cast<size_t>(y) * w + x].real();
            if (v > peak) {
                peak = v;
                py = y;
                px = x;
            }
        }
    }
    // strongest secondary peak outside the 3x3 torus neighborhood of the main
    double second = 0.0;
    for (int y = 0; y < h; ++y) {
        const int ddy = std::min(std::abs(y - py), h - std::abs(y - py));
        for (int x = 0; x < w; ++x) {
            const int ddx = std::min(std::abs(x - px), w - std::abs(x - px));
            if (ddy <= 1 && ddx <= 1) continue;
            second = std::max(second, std::abs(corr[static_cast<size_t>(y) * w + x].real()));
        }
    }

    PhaseCorrelationResult res;
    res.peak_ratio = peak / std::max(second, 1e-12 * std::max(peak, 1.0));

    const double int_dy = signed_freq(py, h);
    const double int_dx = signed_freq(px, w);
    double dy = int_dy, dx = int_dx;
    if (upsample > 1)
        upsampled_peak(spectrum, h, w, int_dy, int_dx, upsample, upsample, dy, dx);
    res.dy_px = dy;
    res.dx_px = dx;
    return res;
}

} // namespace lfscan
