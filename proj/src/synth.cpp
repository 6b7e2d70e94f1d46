#include "cardioload/synth.hpp"

#include <algorithm>
#include <cmath>

namespace cardioload::synth {

namespace {

double round_centi(double hr)
{
    return std::round(hr * 100.0) / 100.0;
}

} // namespace

void validate_plan(const DayPlan& plan)
{
    std::vector<WorkoutBlock> blocks = plan.workout_blocks;
    std::sort(blocks.begin(), blocks.end(),
              [](const WorkoutBlock& a, const WorkoutBlock& b) { return a.start_minute < b.start_minute; });
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.start_minute < 0 || b.duration_minutes <= 0 || b.start_minute + b.duration_minutes > 1440) {
            throw Error(ErrorCode::invalid_argument, "workout block outside [0, 1440)");
        }
        if (!(b.target_pct_hrr >= 0.0 && b.target_pct_hrr <= 1.0)) {
            throw Error(ErrorCode::invalid_argument, "workout block target %HRR outside [0, 1]");
        }
        if (i > 0 && b.start_minute < blocks[i - 1].start_minute + blocks[i - 1].duration_minutes) {
            throw Error(ErrorCode::invalid_argument, "workout blocks overlap");
        }
    }
    if (!(plan.ambient_activity_rate >= 0.0 && plan.ambient_activity_rate <= 60.0) || !(plan.hr_noise_bpm >= 0.0) ||
        !(plan.resting_hr_level > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "invalid day plan parameters");
    }
    if (plan.waking_start_minute < 0 || plan.waking_end_minute > 1440 ||
        plan.waking_start_minute > plan.waking_end_minute) {
        throw Error(ErrorCode::invalid_argument, "invalid waking window");
    }
}

std::vector<MinuteSample> gen_day(const DayPlan& plan, const UserProfile& profile, const LoadConfig& config)
{
    validate_plan(plan);
    SeededRng rng(plan.seed);

    const double rhr = profile.resting_hr();
    const double reserve = profile.heart_rate_reserve();
    const double rest_ceiling = rhr + 0.9 * config.hrr_floor() * reserve;
    const bool noisy = plan.hr_noise_bpm > 0.0;

    // Per-minute target %HRR; negative marks a rest minute.
    std::vector<double> level(1440, -1.0);
    std::vector<bool> workout(1440, false);
    for (const auto& b : plan.workout_blocks) {
        for (int m = b.start_minute; m < b.start_minute + b.duration_minutes; ++m) {
            level[m] = b.target_pct_hrr;
            workout[m] = true;
        }
    }

    const double bout_start_probability = plan.ambient_activity_rate / 60.0 / 3.0;
    for (int m = plan.waking_start_minute; m < plan.waking_end_minute;) {
        if (workout[m] || rng.unit() >= bout_start_probability) {
            ++m;
            continue;
        }
        const int length = rng.between(1, 5);
        const double pct = rng.uniform(0.35, 0.55);
        int filled = 0;
        for (; filled < length && m < plan.waking_end_minute && !workout[m]; ++filled, ++m) {
            level[m] = pct;
        }
    }

    std::vector<MinuteSample> samples;
    samples.reserve(1440);
    for (int m = 0; m < 1440; ++m) {
        const double noise = rng.uniform(-1.0, 1.0) * plan.hr_noise_bpm;
        const bool waking = m >= plan.waking_start_minute && m < plan.waking_end_minute;
        const bool fidget = rng.unit() < 0.2;
        const Minute t = plan.day_start + std::chrono::minutes{m};
        double hr = 0.0;
        bool moving = false;
        if (level[m] >= 0.0) {
            hr = rhr + level[m] * reserve + noise;
            moving = true;
        } else {
            hr = std::min(plan.resting_hr_level + noise, rest_ceiling);
            moving = waking && fidget;
        }
        hr = std::max(hr, 0.0);
        samples.emplace_back(t, noisy ? round_centi(hr) : hr, moving, true);
    }
    return samples;
}

std::vector<WorkoutSession> plan_sessions(const DayPlan& plan)
{
    std::vector<WorkoutSession> sessions;
    for (const auto& b : plan.workout_blocks) {
        const Instant start = plan.day_start + std::chrono::minutes{b.start_minute};
        sessions.emplace_back(start, start + std::chrono::minutes{b.duration_minutes}, WorkoutSource::automatic,
                              "workout");
    }
    std::sort(sessions.begin(), sessions.end(),
              [](const WorkoutSession& a, const WorkoutSession& b) { return a.start() < b.start(); });
    return sessions;
}

std::string_view to_string(PatternKind kind)
{
    switch (kind) {
    case PatternKind::constant: return "constant";
    case PatternKind::step_down: return "step_down";
    case PatternKind::step_up: return "step_up";
    case PatternKind::spike: return "spike";
    }
    return "unknown";
}

std::optional<PatternKind> parse_pattern_kind(std::string_view text)
{
    for (auto kind : {PatternKind::constant, PatternKind::step_down, PatternKind::step_up, PatternKind::spike}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    return std::nullopt;
}

void validate_pattern(const WeekPattern& p)
{
    if (p.duration_weeks < 1 || p.change_week < 0 || p.change_week >= p.duration_weeks) {
        throw Error(ErrorCode::invalid_argument, "require 0 <= change_week < duration_weeks");
    }
    if (!(p.baseline >= 0.0) || !(p.altered >= 0.0) || p.hold_weeks < 0 || p.ramp_weeks < 0 ||
        !(p.jitter >= 0.0 && p.jitter < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "invalid week pattern parameters");
    }
}

std::vector<WeeklyLoad> gen_week_series(const WeekPattern& p)
{
    validate_pattern(p);
    SeededRng rng(p.seed);
    std::vector<WeeklyLoad> weeks;
    weeks.reserve(static_cast<std::size_t>(p.duration_weeks));
    for (int i = 0; i < p.duration_weeks; ++i) {
        double value = p.baseline;
        switch (p.kind) {
        case PatternKind::constant:
            break;
        case PatternKind::step_up:
            if (i >= p.change_week) {
                value = p.altered;
            }
            break;
        case PatternKind::spike:
            if (i >= p.change_week && i < p.change_week + p.hold_weeks) {
                value = p.altered;
            }
            break;
        case PatternKind::step_down: {
            const int recovery = p.change_week + p.hold_weeks;
            if (i >= p.change_week && i < recovery) {
                value = p.altered;
            } else if (i >= recovery && i < recovery + p.ramp_weeks) {
                value = p.altered + (p.baseline - p.altered) * (i - recovery + 1) / (p.ramp_weeks + 1);
            }
            break;
        }
        }
        if (p.jitter > 0.0) {
            value *= rng.uniform(1.0 - p.jitter, 1.0 + p.jitter);
        }
        weeks.push_back({p.first_week_start + std::chrono::days{7 * i}, value, 7});
    }
    return weeks;
}

WeekPattern scenario_pattern(PatternKind kind, int weeks, std::uint64_t seed)
{
    WeekPattern p{.kind = kind, .duration_weeks = weeks, .seed = seed};
    switch (kind) {
    case PatternKind::constant:
        p.baseline = p.altered = 400.0;
        break;
    case PatternKind::step_down:
        p.baseline = 400.0;
        p.altered = 150.0;
        p.change_week = 6;
        break;
    case PatternKind::step_up:
        p.baseline = 250.0;
        p.altered = 400.0;
        p.change_week = 10;
        break;
    case PatternKind::spike:
        p.baseline = 250.0;
        p.altered = 450.0;
        p.change_week = 7;
        break;
    }
    return p;
}

UserProfile reference_day_profile()
{
    return validate_profile({.user_id = "reference", .sex_coefficient_k = kMaleCoefficient, .resting_hr = 60.0,
                             .max_hr = 190.0});
}

DayPlan reference_day_plan(std::uint64_t seed)
{
    return DayPlan{
        .day_start = Minute{Date{std::chrono::year{2024} / std::chrono::May / 1}},
        .resting_hr_level = 62.0,
        .workout_blocks = {{.start_minute = 18 * 60, .duration_minutes = 30, .target_pct_hrr = 0.45}},
        .ambient_activity_rate = 1.8,
        .seed = seed,
    };
}

} // namespace cardioload::synth
