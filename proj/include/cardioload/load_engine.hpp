#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cardioload/domain.hpp"
#include "cardioload/kernels.hpp"

namespace cardioload {

/// Why a minute did or did not accrue load, in resolution order.
enum class Gate : std::uint8_t {
    not_worn = kernels::kGateNotWorn,
    no_hr = kernels::kGateNoHr,
    below_floor = kernels::kGateBelowFloor,
    no_movement = kernels::kGateNoMovement,
    downweighted = kernels::kGateDownweighted,
    full = kernels::kGateFull,
};

std::string_view to_string(Gate gate);

struct MinuteLoadDetail {
    Minute timestamp;
    /// Present whenever the minute carried a heart rate.
    std::optional<double> pct_hrr;
    Gate gate = Gate::not_worn;
    double load_points = 0.0;
    bool in_workout = false;
};

struct DailySummary {
    Date date;
    double total_load = 0.0;
    double workout_load = 0.0;
    double incidental_load = 0.0;
    int worn_minutes = 0;
    bool observed = false;

    friend bool operator==(const DailySummary&, const DailySummary&) = default;
};

inline constexpr int kMinutesPerDay = 1440;

/// (hr - RHR) / (HRmax - RHR), clamped into [0, 1].
double percent_hrr(double hr, const UserProfile& profile);

/// scale * pct * exp(k * pct), no gating.
double banister_load(double pct_hrr, double k, double scale);

/// Gate for a worn minute with a heart rate, given its %HRR and movement flag.
Gate classify_minute(double pct_hrr, bool moving, const LoadConfig& config);

/// Load of a worn, moving minute at `pct_hrr`: zero below the floor, downweighted inside the band.
double gated_load(double pct_hrr, double k, const LoadConfig& config);

MinuteLoadDetail minute_load(const MinuteSample& sample, const UserProfile& profile, const LoadConfig& config);

/// Batch form of minute_load over a stream, using the widest available kernel.
std::vector<MinuteLoadDetail> minute_loads(std::span<const MinuteSample> samples, const UserProfile& profile,
                                           const LoadConfig& config);
std::vector<MinuteLoadDetail> minute_loads(std::span<const MinuteSample> samples, const UserProfile& profile,
                                           const LoadConfig& config, kernels::Isa isa);

/// Sorts sessions by start and throws Error(overlapping_sessions) if any two overlap.
/// Touching sessions (end == next start) are fine.
std::vector<WorkoutSession> sorted_sessions(std::span<const WorkoutSession> sessions);

/// Marks in_workout for minutes whose timestamp lies in [start, end) of some session.
std::vector<MinuteLoadDetail> attribute_minutes(std::vector<MinuteLoadDetail> details,
                                                std::span<const WorkoutSession> sessions);

/// Sums one user-local day. Throws Error(mixed_dates) if any detail falls on another local date.
DailySummary daily_summary(Date date, std::span<const MinuteLoadDetail> details, const LocalZone& zone,
                           const TargetConfig& config);

/// Splits a timestamp-ordered stream into per-local-date summaries, in date order.
std::vector<DailySummary> summarize_days(std::span<const MinuteLoadDetail> details, const LocalZone& zone,
                                         const TargetConfig& config);

} // namespace cardioload
