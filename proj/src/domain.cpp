#include "cardioload/domain.hpp"

#include <cmath>

namespace cardioload {

namespace {

bool finite_positive(double v)
{
    return std::isfinite(v) && v > 0.0;
}

} // namespace

UserProfile::UserProfile(const ProfileParams& params)
    : user_id_(params.user_id), k_(params.sex_coefficient_k), resting_hr_(params.resting_hr), max_hr_(params.max_hr)
{
    if (!finite_positive(resting_hr_) || !finite_positive(max_hr_)) {
        throw Error(ErrorCode::invalid_profile, "heart rates must be positive");
    }
    if (!(max_hr_ > resting_hr_)) {
        throw Error(ErrorCode::invalid_profile, "max_hr must exceed resting_hr");
    }
    if (!std::isfinite(k_) || k_ <= 0.0 || k_ > 4.0) {
        throw Error(ErrorCode::invalid_profile, "sex coefficient k must lie in (0, 4]");
    }
}

UserProfile validate_profile(const ProfileParams& params)
{
    return UserProfile(params);
}

MinuteSample::MinuteSample(Minute timestamp, std::optional<double> hr_bpm, bool moving, bool worn)
    : timestamp_(timestamp), hr_bpm_(hr_bpm), moving_(moving), worn_(worn)
{
    if (hr_bpm_ && (!std::isfinite(*hr_bpm_) || *hr_bpm_ < 0.0)) {
        throw Error(ErrorCode::invalid_sample, "heart rate must be a nonnegative finite number");
    }
    if (!worn_ && (hr_bpm_ || moving_)) {
        throw Error(ErrorCode::invalid_sample, "a not-worn minute cannot carry heart rate or movement");
    }
}

std::string_view to_string(WorkoutSource source)
{
    return source == WorkoutSource::manual ? "manual" : "auto";
}

std::optional<WorkoutSource> parse_workout_source(std::string_view text)
{
    if (text == "manual") {
        return WorkoutSource::manual;
    }
    if (text == "auto") {
        return WorkoutSource::automatic;
    }
    return std::nullopt;
}

WorkoutSession::WorkoutSession(Instant start, Instant end, WorkoutSource source, std::optional<std::string> label)
    : start_(start), end_(end), source_(source), label_(std::move(label))
{
    if (!(end_ > start_)) {
        throw Error(ErrorCode::end_before_start,
                    "session end " + format_utc_timestamp(end_) + " is not after start " + format_utc_timestamp(start_));
    }
}

LoadConfig::LoadConfig(const LoadParams& params) : p_(params)
{
    if (!std::isfinite(p_.hrr_floor) || !std::isfinite(p_.downweight_band_end) || !(p_.hrr_floor >= 0.0) ||
        !(p_.hrr_floor < p_.downweight_band_end) || !(p_.downweight_band_end <= 1.0)) {
        throw Error(ErrorCode::invalid_config, "require 0 <= hrr_floor < downweight_band_end <= 1");
    }
    if (!(p_.downweight_factor > 0.0 && p_.downweight_factor <= 1.0)) {
        throw Error(ErrorCode::invalid_config, "downweight_factor must lie in (0, 1]");
    }
    if (!finite_positive(p_.banister_scale)) {
        throw Error(ErrorCode::invalid_config, "banister_scale must be positive");
    }
}

TargetConfig::TargetConfig(const TargetParams& params) : p_(params)
{
    if (!(p_.ewma_alpha > 0.0 && p_.ewma_alpha < 1.0)) {
        throw Error(ErrorCode::invalid_config, "ewma_alpha must lie in (0, 1)");
    }
    if (p_.rm_window_weeks < 1) {
        throw Error(ErrorCode::invalid_config, "rm_window_weeks must be at least 1");
    }
    if (!std::isfinite(p_.min_target) || p_.min_target < 0.0) {
        throw Error(ErrorCode::invalid_config, "min_target must be nonnegative");
    }
    if (!std::isfinite(p_.overreach_ratio) || !(p_.overreach_ratio > 1.0)) {
        throw Error(ErrorCode::invalid_config, "overreach_ratio must exceed 1");
    }
    if (!p_.week_start_day.ok()) {
        throw Error(ErrorCode::invalid_config, "week_start_day is not a valid weekday");
    }
    if (!(p_.day_coverage_threshold >= 0.0 && p_.day_coverage_threshold <= 1.0)) {
        throw Error(ErrorCode::invalid_config, "day_coverage_threshold must lie in [0, 1]");
    }
}

} // namespace cardioload
