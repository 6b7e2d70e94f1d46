#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "cardioload/error.hpp"
#include "cardioload/time.hpp"

namespace cardioload {

inline constexpr double kMaleCoefficient = 1.92;
inline constexpr double kFemaleCoefficient = 1.67;

struct ProfileParams {
    std::string user_id;
    double sex_coefficient_k = kMaleCoefficient;
    double resting_hr = 0.0;
    double max_hr = 0.0;
};

/// Physiological parameters for one user. Always satisfies
/// 0 < resting_hr < max_hr and 0 < k <= 4.
class UserProfile {
public:
    /// Throws Error(invalid_profile).
    explicit UserProfile(const ProfileParams& params);

    const std::string& user_id() const { return user_id_; }
    double sex_coefficient_k() const { return k_; }
    double resting_hr() const { return resting_hr_; }
    double max_hr() const { return max_hr_; }
    double heart_rate_reserve() const { return max_hr_ - resting_hr_; }

private:
    std::string user_id_;
    double k_;
    double resting_hr_;
    double max_hr_;
};

UserProfile validate_profile(const ProfileParams& params);

/// One minute of observed data. A not-worn minute carries no heart rate and no movement.
class MinuteSample {
public:
    /// Throws Error(invalid_sample).
    MinuteSample(Minute timestamp, std::optional<double> hr_bpm, bool moving, bool worn);

    static MinuteSample not_worn(Minute timestamp) { return MinuteSample(timestamp, std::nullopt, false, false); }

    Minute timestamp() const { return timestamp_; }
    const std::optional<double>& hr_bpm() const { return hr_bpm_; }
    bool moving() const { return moving_; }
    bool worn() const { return worn_; }

    friend bool operator==(const MinuteSample&, const MinuteSample&) = default;

private:
    Minute timestamp_;
    std::optional<double> hr_bpm_;
    bool moving_;
    bool worn_;
};

enum class WorkoutSource { manual, automatic };

std::string_view to_string(WorkoutSource source);
std::optional<WorkoutSource> parse_workout_source(std::string_view text);

/// Labeled workout over the half-open interval [start, end).
class WorkoutSession {
public:
    /// Throws Error(end_before_start) unless end > start.
    WorkoutSession(Instant start, Instant end, WorkoutSource source, std::optional<std::string> label = {});

    Instant start() const { return start_; }
    Instant end() const { return end_; }
    WorkoutSource source() const { return source_; }
    const std::optional<std::string>& label() const { return label_; }
    bool contains(Instant t) const { return start_ <= t && t < end_; }

    friend bool operator==(const WorkoutSession&, const WorkoutSession&) = default;

private:
    Instant start_;
    Instant end_;
    WorkoutSource source_;
    std::optional<std::string> label_;
};

struct LoadParams {
    double hrr_floor = 0.30;
    double downweight_band_end = 0.40;
    double downweight_factor = 0.5;
    double banister_scale = 0.64;
};

class LoadConfig {
public:
    LoadConfig() : LoadConfig(LoadParams{}) {}
    /// Throws Error(invalid_config).
    explicit LoadConfig(const LoadParams& params);

    double hrr_floor() const { return p_.hrr_floor; }
    double downweight_band_end() const { return p_.downweight_band_end; }
    double downweight_factor() const { return p_.downweight_factor; }
    double banister_scale() const { return p_.banister_scale; }
    const LoadParams& params() const { return p_; }

private:
    LoadParams p_;
};

struct TargetParams {
    double ewma_alpha = 0.4;
    int rm_window_weeks = 4;
    // Placeholder floor; the published value is not available.
    double min_target = 50.0;
    double overreach_ratio = 1.5;
    std::chrono::weekday week_start_day = std::chrono::Monday;
    double day_coverage_threshold = 0.5;
};

class TargetConfig {
public:
    TargetConfig() : TargetConfig(TargetParams{}) {}
    /// Throws Error(invalid_config).
    explicit TargetConfig(const TargetParams& params);

    double ewma_alpha() const { return p_.ewma_alpha; }
    int rm_window_weeks() const { return p_.rm_window_weeks; }
    double min_target() const { return p_.min_target; }
    double overreach_ratio() const { return p_.overreach_ratio; }
    std::chrono::weekday week_start_day() const { return p_.week_start_day; }
    double day_coverage_threshold() const { return p_.day_coverage_threshold; }
    const TargetParams& params() const { return p_; }

private:
    TargetParams p_;
};

struct PipelineConfig {
    LoadConfig load;
    TargetConfig target;
};

} // namespace cardioload
