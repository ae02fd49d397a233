#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace lfscan {

/// Dense 2D scalar image, row-major, double precision throughout the pipeline.
class Image {
public:
    Image() = default;
    Image(int height, int width, double fill = 0.0)
        : h_(height), w_(width), v_(static_cast<size_t>(height) * width, fill) {}

    int height() const { return h_; }
    int width() const { return w_; }
    size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    double& at(int y, int x) {
        assert(y >= 0 && y < h_ && x >= 0 && x < w_);
        return v_[static_cast<size_t>(y) * w_ + x];
    }
    double at(int y, int x) const {
        assert(y >= 0 && y < h_ && x >= 0 && x < w_);
        return v_[static_cast<size_t>(y) * w_ + x];
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }

    bool same_size(const Image& o) const { return h_ == o.h_ && w_ == o.w_; }

    bool operator==(const Image& o) const { return h_ == o.h_ && w_ == o.w_ && v_ == o.v_; }

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<double> v_;
};

double image_min(const Image& im);
double image_max(const Image& im);
double image_mean(const Image& im);
double image_sum(const Image& im);

/// Bilinear sample at (x, y) in pixel coordinates; coordinates are clamped
/// to the valid range, so edge values extend outward.
double bilinear_sample(const Image& im, double x, double y);

/// Catmull-Rom bicubic sample, clamped at the borders.
double bicubic_sample(const Image& im, double x, double y);

/// Separable Gaussian blur with half-sample symmetric boundary handling.
/// sigma_px <= 0 returns the input unchanged.
Image gaussian_blur(const Image& im, double sigma_px);

void clamp01(Image& im);

} // namespace lfscan
