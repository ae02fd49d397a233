#include "lfscan/core/image.hpp"

#include <algorithm>
#include <cmath>

namespace lfscan {

double image_min(const Image& im) {
    double m = im.empty() ? 0.0 : im.data()[0];
    for (size_t i = 0; i < im.size(); ++i) m = std::min(m, im.data()[i]);
    return m;
}

double image_max(const Image& im) {
    double m = im.empty() ? 0.0 : im.data()[0];
    for (size_t i = 0; i < im.size(); ++i) m = std::max(m, im.data()[i]);
    return m;
}

double image_sum(const Image& im) {
    double s = 0.0;
    for (size_t i = 0; i < im.size(); ++i) s += im.data()[i];
    return s;
}

double image_mean(const Image& im) {
    return im.empty() ? 0.0 : image_sum(im) / static_cast<double>(im.size());
}

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

} // namespace

double bilinear_sample(const Image& im, double x, double y) {
    const int w = im.width();
    const int h = im.height();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = clampi(static_cast<int>(std::floor(x)), 0, w - 1);
    const int y0 = clampi(static_cast<int>(std::floor(y)), 0, h - 1);
    const int x1 = clampi(x0 + 1, 0, w - 1);
    const int y1 = clampi(y0 + 1, 0, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = im.at(y0, x0) * (1.0 - fx) + im.at(y0, x1) * fx;
    const double bot = im.at(y1, x0) * (1.0 - fx) + im.at(y1, x1) * fx;
    return top * (1.0 - fy) + bot * fy;
}

namespace {

// Catmull-Rom weights
inline void cubic_weights(double f, double w[4]) {
    const double f2 = f * f;
    const double f3 = f2 * f;
    w[0] = 0.5 * (-f3 + 2.0 * f2 - f);
    w[1] = 0.5 * (3.0 * f3 - 5.0 * f2 + 2.0);
    w[2] = 0.5 * (-3.0 * f3 + 4.0 * f2 + f);
    w[3] = 0.5 * (f3 - f2);
}

} // namespace

double bicubic_sample(const Image& im, double x, double y) {
    const int w = im.width();
    const int h = im.height();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    double wx[4], wy[4];
    cubic_weights(x - x0, wx);
    cubic_weights(y - y0, wy);
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        const int yy = clampi(y0 - 1 + j, 0, h - 1);
        double row = 0.0;
        for (int i = 0; i < 4; ++i) {
            const int xx = clampi(x0 - 1 + i, 0, w - 1);
            row += wx[i] * im.at(yy, xx);
        }
        acc += wy[j] * row;
    }
    return acc;
}

namespace {

// index under half-sample symmetric reflection: ..., x1, x0 | x0, x1, ...
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double s = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        s += k[i + radius];
    }
    for (double& v : k) v /= s;
    return k;
}

} // namespace

Image gaussian_blur(const Image& im, double sigma_px) {
    if (sigma_px <= 0.0 || im.empty()) return im;
    const std::vector<double> k = gaussian_kernel(sigma_px);
    const int radius = static_cast<int>(k.size() / 2);
    const int h = im.height();
    const int w = im.width();

    Image tmp(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * im.at(y, reflect_index(x + i, w));
            tmp.at(y, x) = acc;
        }
    }
    Image out(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * tmp.at(reflect_index(y + i, h), x);
            out.at(y, x) = acc;
        }
    }
    return out;
}

void clamp01(Image& im) {
    for (size_t i = 0; i < im.size(); ++i)
        im.data()[i] = std::clamp(im.data()[i], 0.0, 1.0);
}

} // namespace lfscan
