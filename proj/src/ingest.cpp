#include "cardioload/ingest.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <set>

namespace cardioload {

namespace {

bool next_line(std::istream& in, std::string& line, std::size_t& line_number)
{
    if (!std::getline(in, line)) {
        return false;
    }
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

std::vector<std::string_view> split(std::string_view line, std::size_t max_fields = 0)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        if (max_fields != 0 && fields.size() + 1 == max_fields) {
            fields.push_back(line.substr(pos));
            break;
        }
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return fields;
}

std::optional<bool> parse_flag(std::string_view text)
{
    if (text == "1") {
        return true;
    }
    if (text == "0") {
        return false;
    }
    return std::nullopt;
}

std::optional<int> parse_int(std::string_view text)
{
    int value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

void expect_header(std::istream& in, std::size_t& line_number, std::string_view expected)
{
    const std::string header = read_header(in, line_number);
    if (header != expected) {
        throw Error(ErrorCode::malformed_header,
                    "line " + std::to_string(line_number) + ": expected header '" + std::string(expected) + "'");
    }
}

[[noreturn]] void row_error(ErrorCode code, std::size_t line, const std::string& message)
{
    throw Error(code, "line " + std::to_string(line) + ": " + message);
}

double require_number(std::string_view text, std::size_t line, const char* what)
{
    const auto value = parse_number(text);
    if (!value || *value < 0.0) {
        row_error(ErrorCode::malformed_row, line, std::string("invalid ") + what + " '" + std::string(text) + "'");
    }
    return *value;
}

nlohmann::json parse_json_document(std::istream& in, const char* what)
{
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::malformed_document, std::string(what) + ": " + e.what());
    }
}

} // namespace

std::string read_header(std::istream& in, std::size_t& line_number)
{
    std::string line;
    while (next_line(in, line, line_number)) {
        if (line_number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (!line.empty()) {
            return line;
        }
    }
    return {};
}

MinuteParseResult parse_minutes(std::istream& in)
{
    MinuteParseResult result;
    auto& report = result.report;
    std::size_t line_number = 0;
    expect_header(in, line_number, kMinuteHeader);

    std::optional<Minute> last;
    std::string line;
    while (next_line(in, line, line_number)) {
        if (line.empty()) {
            continue;
        }
        auto reject = [&](ErrorCode code, std::string message) {
            ++report.records_rejected;
            report.errors.push_back({line_number, code, std::move(message)});
        };

        const auto fields = split(line);
        if (fields.size() != 4) {
            reject(ErrorCode::malformed_row, "expected 4 fields, found " + std::to_string(fields.size()));
            continue;
        }
        const auto instant = parse_utc_timestamp(fields[0]);
        if (!instant) {
            reject(ErrorCode::malformed_timestamp, "invalid UTC timestamp '" + std::string(fields[0]) + "'");
            continue;
        }
        const auto minute = std::chrono::floor<std::chrono::minutes>(*instant);
        if (Instant{minute} != *instant) {
            reject(ErrorCode::malformed_timestamp, "timestamp '" + std::string(fields[0]) + "' is not minute-aligned");
            continue;
        }
        std::optional<double> hr;
        if (!fields[1].empty()) {
            hr = parse_number(fields[1]);
            if (!hr || *hr < 0.0) {
                reject(ErrorCode::malformed_row, "invalid hr_bpm '" + std::string(fields[1]) + "'");
                continue;
            }
        }
        const auto moving = parse_flag(fields[2]);
        const auto worn = parse_flag(fields[3]);
        if (!moving || !worn) {
            reject(ErrorCode::malformed_row, "moving and worn must be 0 or 1");
            continue;
        }
        std::optional<MinuteSample> sample;
        try {
            sample.emplace(minute, hr, *moving, *worn);
        } catch (const Error& e) {
            reject(e.code(), e.what());
            continue;
        }

        if (last) {
            if (minute <= *last) {
                row_error(ErrorCode::out_of_order_timestamps, line_number,
                          "timestamp " + std::string(fields[0]) + " does not follow " + format_utc_timestamp(*last));
            }
            if (minute - *last > std::chrono::minutes{1}) {
                report.gaps.push_back({*last + std::chrono::minutes{1}, minute});
                for (Minute m = *last + std::chrono::minutes{1}; m < minute; m += std::chrono::minutes{1}) {
                    result.samples.push_back(MinuteSample::not_worn(m));
                }
            }
        }
        result.samples.push_back(*sample);
        ++report.records_accepted;
        last = minute;
    }
    return result;
}

void write_minutes(std::ostream& out, std::span<const MinuteSample> samples)
{
    out << kMinuteHeader << '\n';
    for (const auto& s : samples) {
        out << format_utc_timestamp(s.timestamp()) << ',';
        if (s.hr_bpm()) {
            out << format_number(*s.hr_bpm());
        }
        out << ',' << (s.moving() ? 1 : 0) << ',' << (s.worn() ? 1 : 0) << '\n';
    }
}

std::vector<WorkoutSession> parse_workouts(std::istream& in)
{
    std::size_t line_number = 0;
    expect_header(in, line_number, kWorkoutHeader);
    std::vector<WorkoutSession> sessions;
    std::string line;
    while (next_line(in, line, line_number)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, 4);
        if (fields.size() < 3) {
            row_error(ErrorCode::malformed_row, line_number, "expected start,end,source[,label]");
        }
        const auto start = parse_utc_timestamp(fields[0]);
        const auto end = parse_utc_timestamp(fields[1]);
        if (!start || !end) {
            row_error(ErrorCode::malformed_row, line_number, "invalid UTC timestamp");
        }
        const auto source = parse_workout_source(fields[2]);
        if (!source) {
            row_error(ErrorCode::malformed_row, line_number,
                      "source must be manual or auto, got '" + std::string(fields[2]) + "'");
        }
        std::optional<std::string> label;
        if (fields.size() == 4 && !fields[3].empty()) {
            label = std::string(fields[3]);
        }
        if (!(*end > *start)) {
            row_error(ErrorCode::end_before_start, line_number, "session end is not after its start");
        }
        sessions.emplace_back(*start, *end, *source, std::move(label));
    }
    return sorted_sessions(sessions);
}

void write_workouts(std::ostream& out, std::span<const WorkoutSession> sessions)
{
    out << kWorkoutHeader << '\n';
    for (const auto& s : sessions) {
        out << format_utc_timestamp(s.start()) << ',' << format_utc_timestamp(s.end()) << ',' << to_string(s.source())
            << ',' << s.label().value_or("") << '\n';
    }
}

std::vector<WeeklyLoad> parse_weekly(std::istream& in)
{
    std::size_t line_number = 0;
    expect_header(in, line_number, kWeeklyHeader);
    std::vector<WeeklyLoad> weeks;
    std::string line;
    while (next_line(in, line, line_number)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 3) {
            row_error(ErrorCode::malformed_row, line_number, "expected 3 fields");
        }
        const auto date = parse_date(fields[0]);
        if (!date) {
            row_error(ErrorCode::malformed_row, line_number, "invalid week_start '" + std::string(fields[0]) + "'");
        }
        const double total = require_number(fields[1], line_number, "total_load");
        const auto observed = parse_int(fields[2]);
        if (!observed || *observed < 0 || *observed > 7) {
            row_error(ErrorCode::malformed_row, line_number, "observed_days must be an integer in [0, 7]");
        }
        weeks.push_back({*date, total, *observed});
    }
    return weeks;
}

void write_weekly(std::ostream& out, std::span<const WeeklyLoad> weeks)
{
    out << kWeeklyHeader << '\n';
    for (const auto& w : weeks) {
        out << format_date(w.week_start) << ',' << format_number(w.total_load) << ',' << w.observed_days << '\n';
    }
}

std::vector<DailySummary> parse_daily(std::istream& in)
{
    std::size_t line_number = 0;
    expect_header(in, line_number, kDailyHeader);
    std::vector<DailySummary> days;
    std::string line;
    while (next_line(in, line, line_number)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 6) {
            row_error(ErrorCode::malformed_row, line_number, "expected 6 fields");
        }
        const auto date = parse_date(fields[0]);
        if (!date) {
            row_error(ErrorCode::malformed_row, line_number, "invalid date '" + std::string(fields[0]) + "'");
        }
        DailySummary day{.date = *date};
        day.total_load = require_number(fields[1], line_number, "total_load");
        day.workout_load = require_number(fields[2], line_number, "workout_load");
        day.incidental_load = require_number(fields[3], line_number, "incidental_load");
        const auto worn = parse_int(fields[4]);
        const auto observed = parse_flag(fields[5]);
        if (!worn || *worn < 0 || *worn > 1500 || !observed) {
            row_error(ErrorCode::malformed_row, line_number, "invalid worn_minutes or observed");
        }
        day.worn_minutes = *worn;
        day.observed = *observed;
        days.push_back(day);
    }
    return days;
}

void write_daily(std::ostream& out, std::span<const DailySummary> days)
{
    out << kDailyHeader << '\n';
    for (const auto& d : days) {
        out << format_date(d.date) << ',' << format_number(d.total_load) << ',' << format_number(d.workout_load) << ','
            << format_number(d.incidental_load) << ',' << d.worn_minutes << ',' << (d.observed ? 1 : 0) << '\n';
    }
}

UserProfile parse_profile(std::istream& in)
{
    const auto doc = parse_json_document(in, "profile");
    try {
        if (!doc.is_object()) {
            throw Error(ErrorCode::invalid_profile, "profile must be a JSON object");
        }
        ProfileParams params;
        params.user_id = doc.at("user_id").get<std::string>();
        const auto& sex = doc.at("sex");
        if (sex.is_string()) {
            const auto name = sex.get<std::string>();
            if (name == "male") {
                params.sex_coefficient_k = kMaleCoefficient;
            } else if (name == "female") {
                params.sex_coefficient_k = kFemaleCoefficient;
            } else {
                throw Error(ErrorCode::invalid_profile, "sex must be \"male\", \"female\" or {\"k\": number}");
            }
        } else if (sex.is_object()) {
            params.sex_coefficient_k = sex.at("k").get<double>();
        } else {
            throw Error(ErrorCode::invalid_profile, "sex must be \"male\", \"female\" or {\"k\": number}");
        }
        params.resting_hr = doc.at("resting_hr").get<double>();
        params.max_hr = doc.at("max_hr").get<double>();
        return validate_profile(params);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_profile, e.what());
    }
}

nlohmann::json profile_to_json(const UserProfile& profile)
{
    nlohmann::json sex;
    if (profile.sex_coefficient_k() == kMaleCoefficient) {
        sex = "male";
    } else if (profile.sex_coefficient_k() == kFemaleCoefficient) {
        sex = "female";
    } else {
        sex = {{"k", profile.sex_coefficient_k()}};
    }
    return {{"user_id", profile.user_id()},
            {"sex", sex},
            {"resting_hr", profile.resting_hr()},
            {"max_hr", profile.max_hr()}};
}

PipelineConfig config_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object()) {
        throw Error(ErrorCode::invalid_config, "config must be a JSON object");
    }
    static const std::set<std::string> known = {
        "hrr_floor",  "downweight_band_end", "downweight_factor", "banister_scale", "ewma_alpha",
        "rm_window_weeks", "min_target", "overreach_ratio", "week_start_day", "day_coverage_threshold"};
    for (const auto& item : doc.items()) {
        if (!known.contains(item.key())) {
            throw Error(ErrorCode::invalid_config, "unknown config field '" + item.key() + "'");
        }
    }
    try {
        LoadParams load;
        TargetParams target;
        auto number = [&](const char* key, double& field) {
            if (doc.contains(key)) {
                if (!doc.at(key).is_number()) {
                    throw Error(ErrorCode::invalid_config, std::string(key) + " must be a number");
                }
                field = doc.at(key).get<double>();
            }
        };
        number("hrr_floor", load.hrr_floor);
        number("downweight_band_end", load.downweight_band_end);
        number("downweight_factor", load.downweight_factor);
        number("banister_scale", load.banister_scale);
        number("ewma_alpha", target.ewma_alpha);
        number("min_target", target.min_target);
        number("overreach_ratio", target.overreach_ratio);
        number("day_coverage_threshold", target.day_coverage_threshold);
        if (doc.contains("rm_window_weeks")) {
            if (!doc.at("rm_window_weeks").is_number_integer()) {
                throw Error(ErrorCode::invalid_config, "rm_window_weeks must be an integer");
            }
            target.rm_window_weeks = doc.at("rm_window_weeks").get<int>();
        }
        if (doc.contains("week_start_day")) {
            const auto day = parse_weekday(doc.at("week_start_day").get<std::string>());
            if (!day) {
                throw Error(ErrorCode::invalid_config, "week_start_day must be a lowercase English day name");
            }
            target.week_start_day = *day;
        }
        return PipelineConfig{LoadConfig(load), TargetConfig(target)};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_config, e.what());
    }
}

PipelineConfig parse_config(std::istream& in)
{
    return config_from_json(parse_json_document(in, "config"));
}

nlohmann::json config_to_json(const PipelineConfig& config)
{
    const auto& l = config.load.params();
    const auto& t = config.target.params();
    return {
        {"hrr_floor", l.hrr_floor},
        {"downweight_band_end", l.downweight_band_end},
        {"downweight_factor", l.downweight_factor},
        {"banister_scale", l.banister_scale},
        {"ewma_alpha", t.ewma_alpha},
        {"rm_window_weeks", t.rm_window_weeks},
        {"min_target", t.min_target},
        {"overreach_ratio", t.overreach_ratio},
        {"week_start_day", weekday_name(t.week_start_day)},
        {"day_coverage_threshold", t.day_coverage_threshold},
    };
}

nlohmann::json report_to_json(const IngestReport& report)
{
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& e : report.errors) {
        errors.push_back({{"line", e.line}, {"code", to_string(e.code)}, {"message", e.message}});
    }
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : report.gaps) {
        gaps.push_back({{"start", format_utc_timestamp(g.start)}, {"end", format_utc_timestamp(g.end)}});
    }
    return {{"records_accepted", report.records_accepted},
            {"records_rejected", report.records_rejected},
            {"errors", errors},
            {"gaps", gaps}};
}

} // namespace cardioload
