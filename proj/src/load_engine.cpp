#include "cardioload/load_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cardioload {

namespace {

kernels::MinuteKernelParams kernel_params(const UserProfile& profile, const LoadConfig& config)
{
    return {
        .resting_hr = profile.resting_hr(),
        .heart_rate_reserve = profile.heart_rate_reserve(),
        .k = profile.sex_coefficient_k(),
        .scale = config.banister_scale(),
        .hrr_floor = config.hrr_floor(),
        .band_end = config.downweight_band_end(),
        .downweight_factor = config.downweight_factor(),
    };
}

} // namespace

std::string_view to_string(Gate gate)
{
    switch (gate) {
    case Gate::not_worn: return "not_worn";
    case Gate::no_hr: return "no_hr";
    case Gate::below_floor: return "below_floor";
    case Gate::no_movement: return "no_movement";
    case Gate::downweighted: return "downweighted";
    case Gate::full: return "full";
    }
    return "unknown";
}

double percent_hrr(double hr, const UserProfile& profile)
{
    return std::clamp((hr - profile.resting_hr()) / profile.heart_rate_reserve(), 0.0, 1.0);
}

double banister_load(double pct_hrr, double k, double scale)
{
    return scale * pct_hrr * std::exp(k * pct_hrr);
}

Gate classify_minute(double pct_hrr, bool moving, const LoadConfig& config)
{
    if (pct_hrr < config.hrr_floor()) {
        return Gate::below_floor;
    }
    if (!moving) {
        return Gate::no_movement;
    }
    return pct_hrr < config.downweight_band_end() ? Gate::downweighted : Gate::full;
}

double gated_load(double pct_hrr, double k, const LoadConfig& config)
{
    switch (classify_minute(pct_hrr, true, config)) {
    case Gate::downweighted:
        return config.downweight_factor() * banister_load(pct_hrr, k, config.banister_scale());
    case Gate::full:
        return banister_load(pct_hrr, k, config.banister_scale());
    default:
        return 0.0;
    }
}

MinuteLoadDetail minute_load(const MinuteSample& sample, const UserProfile& profile, const LoadConfig& config)
{
    MinuteLoadDetail detail{.timestamp = sample.timestamp()};
    if (!sample.worn()) {
        detail.gate = Gate::not_worn;
        return detail;
    }
    if (!sample.hr_bpm()) {
        detail.gate = Gate::no_hr;
        return detail;
    }
    const double pct = percent_hrr(*sample.hr_bpm(), profile);
    detail.pct_hrr = pct;
    detail.gate = classify_minute(pct, sample.moving(), config);
    if (detail.gate == Gate::downweighted || detail.gate == Gate::full) {
        detail.load_points = gated_load(pct, profile.sex_coefficient_k(), config);
    }
    return detail;
}

std::vector<MinuteLoadDetail> minute_loads(std::span<const MinuteSample> samples, const UserProfile& profile,
                                           const LoadConfig& config, kernels::Isa isa)
{
    const std::size_t n = samples.size();
    std::vector<double> hr(n);
    std::vector<std::uint8_t> moving(n);
    std::vector<std::uint8_t> worn(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = samples[i];
        hr[i] = s.hr_bpm().value_or(std::numeric_limits<double>::quiet_NaN());
        moving[i] = s.moving() ? 1 : 0;
        worn[i] = s.worn() ? 1 : 0;
    }

    std::vector<double> pct(n);
    std::vector<double> load(n);
    std::vector<std::uint8_t> gate(n);
    kernels::minute_loads(isa, kernel_params(profile, config), {hr, moving, worn}, {pct, load, gate});

    std::vector<MinuteLoadDetail> details(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& d = details[i];
        d.timestamp = samples[i].timestamp();
        if (!std::isnan(pct[i])) {
            d.pct_hrr = pct[i];
        }
        d.gate = static_cast<Gate>(gate[i]);
        d.load_points = load[i];
    }
    return details;
}

std::vector<MinuteLoadDetail> minute_loads(std::span<const MinuteSample> samples, const UserProfile& profile,
                                           const LoadConfig& config)
{
    return minute_loads(samples, profile, config, kernels::best_isa());
}

std::vector<WorkoutSession> sorted_sessions(std::span<const WorkoutSession> sessions)
{
    std::vector<WorkoutSession> sorted(sessions.begin(), sessions.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const WorkoutSession& a, const WorkoutSession& b) { return a.start() < b.start(); });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].start() < sorted[i - 1].end()) {
            throw Error(ErrorCode::overlapping_sessions,
                        "session starting " + format_utc_timestamp(sorted[i].start()) +
                            " overlaps session ending " + format_utc_timestamp(sorted[i - 1].end()));
        }
    }
    return sorted;
}

std::vector<MinuteLoadDetail> attribute_minutes(std::vector<MinuteLoadDetail> details,
                                                std::span<const WorkoutSession> sessions)
{
    const auto sorted = sorted_sessions(sessions);
    for (auto& d : details) {
        const Instant t = d.timestamp;
        // Last session starting at or before t is the only candidate.
        auto it = std::upper_bound(sorted.begin(), sorted.end(), t,
                                   [](Instant value, const WorkoutSession& s) { return value < s.start(); });
        d.in_workout = it != sorted.begin() && std::prev(it)->contains(t);
    }
    return details;
}

DailySummary daily_summary(Date date, std::span<const MinuteLoadDetail> details, const LocalZone& zone,
                           const TargetConfig& config)
{
    DailySummary summary{.date = date};
    for (const auto& d : details) {
        if (zone.date_of(d.timestamp) != date) {
            throw Error(ErrorCode::mixed_dates, "minute " + format_utc_timestamp(d.timestamp) +
                                                    " does not fall on local date " + format_date(date));
        }
        if (d.in_workout) {
            summary.workout_load += d.load_points;
        } else {
            summary.incidental_load += d.load_points;
        }
        if (d.gate != Gate::not_worn) {
            ++summary.worn_minutes;
        }
    }
    summary.total_load = summary.workout_load + summary.incidental_load;
    summary.observed =
        static_cast<double>(summary.worn_minutes) / kMinutesPerDay >= config.day_coverage_threshold();
    return summary;
}

std::vector<DailySummary> summarize_days(std::span<const MinuteLoadDetail> details, const LocalZone& zone,
                                         const TargetConfig& config)
{
    std::vector<DailySummary> days;
    std::size_t begin = 0;
    while (begin < details.size()) {
        const Date date = zone.date_of(details[begin].timestamp);
        std::size_t end = begin + 1;
        while (end < details.size() && zone.date_of(details[end].timestamp) == date) {
            ++end;
        }
        if (!days.empty() && days.back().date >= date) {
            throw Error(ErrorCode::mixed_dates, "minutes are not in timestamp order around " + format_date(date));
        }
        days.push_back(daily_summary(date, details.subspan(begin, end - begin), zone, config));
        begin = end;
    }
    return days;
}

} // namespace cardioload
