#include "lfscan/reg/lf_register.hpp"

#include <cmath>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/parallel.hpp"
#include "lfscan/reg/phase_correlate.hpp"

namespace lfscan {

ShiftEstimate estimate_lf_shift(const LightField& reference, const LightField& moving,
                                const RegistrationOptions& opts) {
    if (reference.ang_rows != moving.ang_rows || reference.ang_cols != moving.ang_cols ||
        reference.spat_rows != moving.spat_rows || reference.spat_cols != moving.spat_cols)
        throw RegistrationError("estimate_lf_shift: angular/spatial size mismatch");

    const int n = reference.num_perspectives();
    ShiftEstimate est;
    est.per_perspective.assign(n, Vec2{0.0, 0.0});
    est.accepted.assign(n, 0);

    std::vector<double> ratios(n, 0.0);
    parallel_for(n, opts.threads, [&](int i) {
        const PhaseCorrelationResult r =
            phase_correlate(reference.data[i], moving.data[i], opts.upsample);
        est.per_perspective[i] = Vec2{r.dx_px, r.dy_px};
        ratios[i] = r.peak_ratio;
    });

    double sx = 0.0, sy = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (ratios[i] >= opts.min_peak_ratio) {
            est.accepted[i] = 1;
            sx += est.per_perspective[i].x;
            sy += est.per_perspective[i].y;
            ++count;
        }
    }
    if (count == 0)
        throw RegistrationError("estimate_lf_shift: all perspectives rejected by the peak-quality gate");
    est.dx_px = sx / count;
    est.dy_px = sy / count;

    double var = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!est.accepted[i]) continue;
        const double ddx = est.per_perspective[i].x - est.dx_px;
        const double ddy = est.per_perspective[i].y - est.dy_px;
        var += ddx * ddx + ddy * ddy;
    }
    est.dispersion = std::sqrt(var / count);
    return est;
}

} // namespace lfscan
