#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "cardioload/domain.hpp"
#include "cardioload/target_engine.hpp"

namespace cardioload::synth {

/// Portable seeded source: mt19937_64 output is fixed by the standard, and the
/// mappings below avoid the implementation-defined std distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    /// Uniform integer in [lo, hi].
    int between(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

struct WorkoutBlock {
    int start_minute = 0;
    int duration_minutes = 0;
    double target_pct_hrr = 0.0;
};

struct DayPlan {
    Minute day_start;
    double resting_hr_level = 60.0;
    std::vector<WorkoutBlock> workout_blocks;
    /// Expected ambient (non-workout) active minutes per waking hour.
    double ambient_activity_rate = 0.0;
    std::uint64_t seed = 0;
    /// Half-width of the uniform HR noise; 0 turns noise off.
    double hr_noise_bpm = 3.0;
    int waking_start_minute = 7 * 60;
    int waking_end_minute = 22 * 60;
};

/// Throws Error(invalid_argument) for blocks outside the day or overlapping.
void validate_plan(const DayPlan& plan);

/// 1440 worn minutes starting at plan.day_start. Workout minutes track the
/// target %HRR; ambient bouts of 1-5 minutes sit at 35-55% HRR; everything else
/// stays below the load floor.
std::vector<MinuteSample> gen_day(const DayPlan& plan, const UserProfile& profile,
                                  const LoadConfig& config = LoadConfig{});

/// One auto-detected session per workout block.
std::vector<WorkoutSession> plan_sessions(const DayPlan& plan);

enum class PatternKind { constant, step_down, step_up, spike };

std::string_view to_string(PatternKind kind);
std::optional<PatternKind> parse_pattern_kind(std::string_view text);

struct WeekPattern {
    PatternKind kind = PatternKind::constant;
    double baseline = 0.0;
    double altered = 0.0;
    int change_week = 0;
    int duration_weeks = 1;
    /// step_down: weeks held at `altered` before recovering; spike: spike length.
    int hold_weeks = 2;
    /// step_down: weeks of linear recovery back to baseline.
    int ramp_weeks = 3;
    Date first_week_start = Date{std::chrono::year{2024} / std::chrono::January / 1};
    /// Multiplicative uniform jitter half-width; 0 disables it.
    double jitter = 0.0;
    std::uint64_t seed = 0;
};

/// Throws Error(invalid_argument).
void validate_pattern(const WeekPattern& pattern);

std::vector<WeeklyLoad> gen_week_series(const WeekPattern& pattern);

/// Desk-scale stand-ins for the published adaptation scenarios.
WeekPattern scenario_pattern(PatternKind kind, int weeks, std::uint64_t seed);

/// Profile and plan of the frozen one-day trace (total near 37, incidental near 45%).
UserProfile reference_day_profile();
inline constexpr std::uint64_t kReferenceDaySeed = 6;
DayPlan reference_day_plan(std::uint64_t seed = kReferenceDaySeed);

} // namespace cardioload::synth
