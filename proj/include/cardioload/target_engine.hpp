#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cardioload/domain.hpp"
#include "cardioload/load_engine.hpp"

namespace cardioload {

struct WeeklyLoad {
    Date week_start;
    double total_load = 0.0;
    int observed_days = 0;

    friend bool operator==(const WeeklyLoad&, const WeeklyLoad&) = default;
};

enum class TargetPhase { onboarding_minimum, partial_personalized, fully_personalized };

std::string_view to_string(TargetPhase phase);
std::optional<TargetPhase> parse_target_phase(std::string_view text);

/// Adaptive-target state for one user. Instances come from initial(), restore()
/// or the update functions below, so the phase always matches the window
/// occupancy and current_target >= min_target.
class TargetState {
public:
    static TargetState initial(const TargetConfig& config);
    /// Rebuilds a persisted state; throws Error(invalid_state) if inconsistent with `config`.
    static TargetState restore(std::optional<double> ewma, std::vector<WeeklyLoad> recent_weeks,
                               TargetPhase phase, double current_target, const TargetConfig& config);

    const std::optional<double>& ewma() const { return ewma_; }
    /// Oldest first, at most rm_window_weeks entries.
    const std::vector<WeeklyLoad>& recent_weeks() const { return recent_weeks_; }
    TargetPhase phase() const { return phase_; }
    double current_target() const { return current_target_; }
    std::optional<Date> last_week_start() const;

    friend bool operator==(const TargetState&, const TargetState&) = default;

private:
    TargetState() = default;

    std::optional<double> ewma_;
    std::vector<WeeklyLoad> recent_weeks_;
    TargetPhase phase_ = TargetPhase::onboarding_minimum;
    double current_target_ = 0.0;

    friend TargetState compute_target(const TargetState&, const WeeklyLoad&, const TargetConfig&);
};

enum class StatusValue { below, met, overreached };

std::string_view to_string(StatusValue value);

struct TargetStatus {
    StatusValue value;
    double ratio;
};

/// Sums days falling in [week_start, week_start + 7). Throws Error(day_outside_week).
WeeklyLoad weekly_load(std::span<const DailySummary> days, Date week_start);

/// Mean of the available weekly totals, oldest to newest; nullopt for an empty window.
std::optional<double> rolling_mean(std::span<const WeeklyLoad> window);

/// alpha * latest + (1 - alpha) * prev; seeds with `latest` when there is no previous value.
double ewma_update(std::optional<double> prev, double latest, double alpha);

/// Folds one completed week into the state. Throws Error(non_contiguous_week) unless
/// new_week starts exactly 7 days after the last window entry, and
/// Error(misaligned_week) if it does not start on the configured weekday.
TargetState compute_target(const TargetState& state, const WeeklyLoad& new_week, const TargetConfig& config);

/// Feeds `gap` zero-load weeks. A state without history is returned unchanged.
TargetState fill_gap_weeks(const TargetState& state, int gap, const TargetConfig& config);

/// Throws Error(invalid_argument) unless target > 0.
TargetStatus target_status(double accrued, double target, const TargetConfig& config);

/// One folded week as reported by the target command.
struct TargetRow {
    WeeklyLoad week;
    double rm = 0.0;
    double ewma = 0.0;
    double target = 0.0;
    TargetPhase phase = TargetPhase::onboarding_minimum;
    /// Week's load against the target in force during that week; absent when that target was 0.
    std::optional<TargetStatus> status;
};

/// Folds weeks in order, zero-filling any calendar gaps (including a gap after the
/// state's last week). Throws Error(non_contiguous_week) for overlapping or
/// out-of-order weeks.
TargetState advance(const TargetState& state, std::span<const WeeklyLoad> weeks, const TargetConfig& config,
                    std::vector<TargetRow>* rows = nullptr);

nlohmann::json state_to_json(const TargetState& state);
/// Throws Error(invalid_state).
TargetState state_from_json(const nlohmann::json& doc, const TargetConfig& config);

} // namespace cardioload
