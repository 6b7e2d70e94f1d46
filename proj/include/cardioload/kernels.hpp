#pragma once

// Batch per-minute load kernels. The scalar kernel is the reference; wider
// variants must reproduce its gate decisions exactly and its loads to within
// a few ulps (they use their own vectorized exp).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cardioload::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Widest ISA the running CPU supports.
Isa best_isa();
std::vector<Isa> supported_isas();

/// Gate codes, same numbering as load_engine::Gate.
enum GateCode : std::uint8_t {
    kGateNotWorn = 0,
    kGateNoHr = 1,
    kGateBelowFloor = 2,
    kGateNoMovement = 3,
    kGateDownweighted = 4,
    kGateFull = 5,
};

struct MinuteKernelParams {
    double resting_hr;
    double heart_rate_reserve;
    double k;
    double scale;
    double hrr_floor;
    double band_end;
    double downweight_factor;
};

/// Structure-of-arrays input. An absent heart rate is NaN.
struct MinuteColumns {
    std::span<const double> hr;
    std::span<const std::uint8_t> moving;
    std::span<const std::uint8_t> worn;
};

/// pct is NaN wherever hr is absent or the minute is not worn.
struct MinuteOutputs {
    std::span<double> pct;
    std::span<double> load;
    std::span<std::uint8_t> gate;
};

void minute_loads_scalar(const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out);
#if defined(__x86_64__) || defined(__i386__)
void minute_loads_avx2(const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out);
#endif

/// Runs the kernel for `isa`; throws std::invalid_argument if unsupported.
void minute_loads(Isa isa, const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out);
/// Runs the best supported kernel.
void minute_loads(const MinuteKernelParams& params, MinuteColumns in, MinuteOutputs out);

} // namespace cardioload::kernels
