#include <algorithm>
#include <cmath>
#include <limits>

#include "cardioload/kernels.hpp"

namespace cardioload::kernels {

void minute_loads_scalar(const MinuteKernelParams& p, MinuteColumns in, MinuteOutputs out)
{
    const std::size_t n = in.hr.size();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        out.load[i] = 0.0;
        out.pct[i] = nan;
        if (!in.worn[i]) {
            out.gate[i] = kGateNotWorn;
            continue;
        }
        const double hr = in.hr[i];
        if (std::isnan(hr)) {
            out.gate[i] = kGateNoHr;
            continue;
        }
        const double pct = std::clamp((hr - p.resting_hr) / p.heart_rate_reserve, 0.0, 1.0);
        out.pct[i] = pct;
        if (pct < p.hrr_floor) {
            out.gate[i] = kGateBelowFloor;
        } else if (!in.moving[i]) {
            out.gate[i] = kGateNoMovement;
        } else {
            const double banister = p.scale * pct * std::exp(p.k * pct);
            if (pct < p.band_end) {
                out.gate[i] = kGateDownweighted;
                out.load[i] = p.downweight_factor * banister;
            } else {
                out.gate[i] = kGateFull;
                out.load[i] = banister;
            }
        }
    }
}

} // namespace cardioload::kernels
