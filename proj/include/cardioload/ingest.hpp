#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cardioload/domain.hpp"
#include "cardioload/load_engine.hpp"
#include "cardioload/target_engine.hpp"

namespace cardioload {

struct RowError {
    std::size_t line;
    ErrorCode code;
    std::string message;
};

/// Half-open span [start, end) of minutes with no accepted row.
struct MinuteGap {
    Minute start;
    Minute end;

    friend bool operator==(const MinuteGap&, const MinuteGap&) = default;
};

struct IngestReport {
    std::size_t records_accepted = 0;
    std::size_t records_rejected = 0;
    std::vector<RowError> errors;
    std::vector<MinuteGap> gaps;
};

struct MinuteParseResult {
    /// Accepted rows plus synthesized not-worn minutes filling every gap.
    std::vector<MinuteSample> samples;
    IngestReport report;
};

inline constexpr std::string_view kMinuteHeader = "timestamp,hr_bpm,moving,worn";
inline constexpr std::string_view kWorkoutHeader = "start,end,source,label";
inline constexpr std::string_view kWeeklyHeader = "week_start,total_load,observed_days";
inline constexpr std::string_view kDailyHeader = "date,total_load,workout_load,incidental_load,worn_minutes,observed";

/// Malformed rows are rejected individually and reported; a missing header
/// (Error(malformed_header)) or a timestamp that does not strictly increase
/// (Error(out_of_order_timestamps)) aborts the parse.
MinuteParseResult parse_minutes(std::istream& in);
void write_minutes(std::ostream& out, std::span<const MinuteSample> samples);

/// Returns sessions sorted by start. Throws Error(malformed_row | end_before_start | overlapping_sessions).
std::vector<WorkoutSession> parse_workouts(std::istream& in);
void write_workouts(std::ostream& out, std::span<const WorkoutSession> sessions);

std::vector<WeeklyLoad> parse_weekly(std::istream& in);
void write_weekly(std::ostream& out, std::span<const WeeklyLoad> weeks);

std::vector<DailySummary> parse_daily(std::istream& in);
void write_daily(std::ostream& out, std::span<const DailySummary> days);

/// Profile document: {"user_id", "sex": "male"|"female"|{"k": number}, "resting_hr", "max_hr"}.
/// Throws Error(malformed_document) for bad JSON and Error(invalid_profile) for bad content.
UserProfile parse_profile(std::istream& in);
nlohmann::json profile_to_json(const UserProfile& profile);

/// Flat JSON object keyed by LoadConfig/TargetConfig field names; absent keys take defaults.
/// Throws Error(malformed_document) for bad JSON and Error(invalid_config) for bad content.
PipelineConfig parse_config(std::istream& in);
PipelineConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const PipelineConfig& config);

nlohmann::json report_to_json(const IngestReport& report);

/// Reads the first non-empty line, stripping a BOM and trailing CR.
std::string read_header(std::istream& in, std::size_t& line_number);

} // namespace cardioload
