#include "cardioload/target_engine.hpp"

#include <algorithm>
#include <cmath>

namespace cardioload {

namespace {

constexpr std::chrono::days kWeek{7};

TargetPhase phase_for(std::size_t occupancy, const TargetConfig& config)
{
    if (occupancy == 0) {
        return TargetPhase::onboarding_minimum;
    }
    if (occupancy >= static_cast<std::size_t>(config.rm_window_weeks())) {
        return TargetPhase::fully_personalized;
    }
    return TargetPhase::partial_personalized;
}

void check_aligned(Date week_start, const TargetConfig& config)
{
    if (std::chrono::weekday{week_start} != config.week_start_day()) {
        throw Error(ErrorCode::misaligned_week, "week " + format_date(week_start) + " does not start on " +
                                                    std::string(weekday_name(config.week_start_day())));
    }
}

} // namespace

std::string_view to_string(TargetPhase phase)
{
    switch (phase) {
    case TargetPhase::onboarding_minimum: return "onboarding_minimum";
    case TargetPhase::partial_personalized: return "partial_personalized";
    case TargetPhase::fully_personalized: return "fully_personalized";
    }
    return "unknown";
}

std::optional<TargetPhase> parse_target_phase(std::string_view text)
{
    for (auto phase : {TargetPhase::onboarding_minimum, TargetPhase::partial_personalized,
                       TargetPhase::fully_personalized}) {
        if (to_string(phase) == text) {
            return phase;
        }
    }
    return std::nullopt;
}

std::string_view to_string(StatusValue value)
{
    switch (value) {
    case StatusValue::below: return "below";
    case StatusValue::met: return "met";
    case StatusValue::overreached: return "overreached";
    }
    return "unknown";
}

TargetState TargetState::initial(const TargetConfig& config)
{
    TargetState state;
    state.current_target_ = config.min_target();
    return state;
}

TargetState TargetState::restore(std::optional<double> ewma, std::vector<WeeklyLoad> recent_weeks,
                                 TargetPhase phase, double current_target, const TargetConfig& config)
{
    if (recent_weeks.size() > static_cast<std::size_t>(config.rm_window_weeks())) {
        throw Error(ErrorCode::invalid_state, "window holds more weeks than rm_window_weeks");
    }
    if (phase != phase_for(recent_weeks.size(), config)) {
        throw Error(ErrorCode::invalid_state, "phase does not match window occupancy");
    }
    if (recent_weeks.empty() != !ewma.has_value()) {
        throw Error(ErrorCode::invalid_state, "ewma must be present exactly when the window is non-empty");
    }
    if (ewma && (!std::isfinite(*ewma) || *ewma < 0.0)) {
        throw Error(ErrorCode::invalid_state, "ewma must be a nonnegative number");
    }
    for (std::size_t i = 0; i < recent_weeks.size(); ++i) {
        const auto& w = recent_weeks[i];
        if (!std::isfinite(w.total_load) || w.total_load < 0.0 || w.observed_days < 0 || w.observed_days > 7) {
            throw Error(ErrorCode::invalid_state, "invalid weekly load for " + format_date(w.week_start));
        }
        if (std::chrono::weekday{w.week_start} != config.week_start_day()) {
            throw Error(ErrorCode::invalid_state, "window week " + format_date(w.week_start) +
                                                      " does not start on the configured weekday");
        }
        if (i > 0 && w.week_start != recent_weeks[i - 1].week_start + kWeek) {
            throw Error(ErrorCode::invalid_state, "window weeks are not consecutive");
        }
    }
    if (!std::isfinite(current_target) || current_target < config.min_target()) {
        throw Error(ErrorCode::invalid_state, "current_target is below min_target");
    }
    TargetState state;
    state.ewma_ = ewma;
    state.recent_weeks_ = std::move(recent_weeks);
    state.phase_ = phase;
    state.current_target_ = current_target;
    return state;
}

std::optional<Date> TargetState::last_week_start() const
{
    if (recent_weeks_.empty()) {
        return std::nullopt;
    }
    return recent_weeks_.back().week_start;
}

WeeklyLoad weekly_load(std::span<const DailySummary> days, Date week_start)
{
    WeeklyLoad week{.week_start = week_start};
    for (const auto& day : days) {
        if (day.date < week_start || day.date >= week_start + kWeek) {
            throw Error(ErrorCode::day_outside_week,
                        "day " + format_date(day.date) + " is outside week " + format_date(week_start));
        }
        week.total_load += day.total_load;
        if (day.observed) {
            ++week.observed_days;
        }
    }
    return week;
}

std::optional<double> rolling_mean(std::span<const WeeklyLoad> window)
{
    if (window.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (const auto& w : window) {
        sum += w.total_load;
    }
    return sum / static_cast<double>(window.size());
}

double ewma_update(std::optional<double> prev, double latest, double alpha)
{
    if (!prev) {
        return latest;
    }
    return alpha * latest + (1.0 - alpha) * *prev;
}

TargetState compute_target(const TargetState& state, const WeeklyLoad& new_week, const TargetConfig& config)
{
    check_aligned(new_week.week_start, config);
    if (const auto last = state.last_week_start(); last && new_week.week_start != *last + kWeek) {
        throw Error(ErrorCode::non_contiguous_week, "week " + format_date(new_week.week_start) +
                                                        " does not follow " + format_date(*last));
    }
    if (!std::isfinite(new_week.total_load) || new_week.total_load < 0.0) {
        throw Error(ErrorCode::invalid_argument, "weekly load must be a nonnegative number");
    }

    TargetState next;
    next.recent_weeks_ = state.recent_weeks_;
    next.recent_weeks_.push_back(new_week);
    const auto window = static_cast<std::size_t>(config.rm_window_weeks());
    if (next.recent_weeks_.size() > window) {
        next.recent_weeks_.erase(next.recent_weeks_.begin(),
                                 next.recent_weeks_.end() - static_cast<std::ptrdiff_t>(window));
    }
    next.ewma_ = ewma_update(state.ewma_, new_week.total_load, config.ewma_alpha());
    next.phase_ = phase_for(next.recent_weeks_.size(), config);
    next.current_target_ = std::max({*rolling_mean(next.recent_weeks_), *next.ewma_, config.min_target()});
    return next;
}

TargetState fill_gap_weeks(const TargetState& state, int gap, const TargetConfig& config)
{
    if (gap < 1) {
        throw Error(ErrorCode::invalid_argument, "gap must be at least one week");
    }
    const auto last = state.last_week_start();
    if (!last) {
        return state;
    }
    TargetState next = state;
    for (int i = 1; i <= gap; ++i) {
        next = compute_target(next, WeeklyLoad{.week_start = *last + i * kWeek}, config);
    }
    return next;
}

TargetStatus target_status(double accrued, double target, const TargetConfig& config)
{
    if (!(target > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "target must be positive");
    }
    const double ratio = accrued / target;
    StatusValue value = StatusValue::met;
    if (ratio < 1.0) {
        value = StatusValue::below;
    } else if (ratio > config.overreach_ratio()) {
        value = StatusValue::overreached;
    }
    return {value, ratio};
}

TargetState advance(const TargetState& state, std::span<const WeeklyLoad> weeks, const TargetConfig& config,
                    std::vector<TargetRow>* rows)
{
    TargetState current = state;
    auto fold = [&](const WeeklyLoad& week) {
        const double in_force = current.current_target();
        current = compute_target(current, week, config);
        if (rows) {
            TargetRow row{.week = week,
                          .rm = *rolling_mean(current.recent_weeks()),
                          .ewma = *current.ewma(),
                          .target = current.current_target(),
                          .phase = current.phase()};
            if (in_force > 0.0) {
                row.status = target_status(week.total_load, in_force, config);
            }
            rows->push_back(row);
        }
    };

    for (const auto& week : weeks) {
        check_aligned(week.week_start, config);
        if (const auto last = current.last_week_start()) {
            if (week.week_start <= *last) {
                throw Error(ErrorCode::non_contiguous_week, "week " + format_date(week.week_start) +
                                                                " overlaps history ending " + format_date(*last));
            }
            for (Date gap = *last + kWeek; gap < week.week_start; gap += kWeek) {
                fold(WeeklyLoad{.week_start = gap});
            }
        }
        fold(week);
    }
    return current;
}

nlohmann::json state_to_json(const TargetState& state)
{
    nlohmann::json weeks = nlohmann::json::array();
    for (const auto& w : state.recent_weeks()) {
        weeks.push_back({{"week_start", format_date(w.week_start)},
                         {"total_load", w.total_load},
                         {"observed_days", w.observed_days}});
    }
    return {
        {"ewma", state.ewma() ? nlohmann::json(*state.ewma()) : nlohmann::json(nullptr)},
        {"recent_weeks", weeks},
        {"phase", to_string(state.phase())},
        {"current_target", state.current_target()},
    };
}

TargetState state_from_json(const nlohmann::json& doc, const TargetConfig& config)
{
    try {
        if (!doc.is_object()) {
            throw Error(ErrorCode::invalid_state, "state must be a JSON object");
        }
        std::optional<double> ewma;
        if (!doc.at("ewma").is_null()) {
            ewma = doc.at("ewma").get<double>();
        }
        std::vector<WeeklyLoad> weeks;
        for (const auto& w : doc.at("recent_weeks")) {
            const auto date = parse_date(w.at("week_start").get<std::string>());
            if (!date) {
                throw Error(ErrorCode::invalid_state, "bad week_start in state");
            }
            weeks.push_back({*date, w.at("total_load").get<double>(), w.at("observed_days").get<int>()});
        }
        const auto phase = parse_target_phase(doc.at("phase").get<std::string>());
        if (!phase) {
            throw Error(ErrorCode::invalid_state, "unknown phase");
        }
        return TargetState::restore(ewma, std::move(weeks), *phase, doc.at("current_target").get<double>(), config);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_state, e.what());
    }
}

} // namespace cardioload
