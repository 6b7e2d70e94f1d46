// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cardioload/cli/commands.hpp"
#include "cardioload/ingest.hpp"
#include "cardioload/load_engine.hpp"
#include "cardioload/synth.hpp"
#include "cardioload/target_engine.hpp"
#include "oracle.hpp"

using namespace cardioload;
namespace fs = std::filesystem;

namespace {

/// Collects failures for one criterion; the first few are printed.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            if (failures_.size() < 5) {
                failures_.push_back(what);
            }
            ++count_;
        }
    }
    bool passed() const { return count_ == 0; }
    const std::vector<std::string>& failures() const { return failures_; }
    std::size_t count() const { return count_; }
    std::string note;

private:
    std::vector<std::string> failures_;
    std::size_t count_ = 0;
};

std::string str(double v)
{
    return format_number(v);
}

int cli_run(std::vector<std::string> args)
{
    args.insert(args.begin(), "cardioload");
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(args, out, err);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream(path, std::ios::binary) << text;
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("cardioload_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream fs_(line);
        std::string field;
        while (std::getline(fs_, field, ',')) {
            fields.push_back(field);
        }
        rows.push_back(fields);
    }
    return rows;
}

std::vector<TargetRow> replay(std::span<const WeeklyLoad> weeks, const TargetConfig& config)
{
    std::vector<TargetRow> rows;
    advance(TargetState::initial(config), weeks, config, &rows);
    return rows;
}

const Date kFirstMonday{std::chrono::year{2024} / 1 / 1};

std::vector<WeeklyLoad> random_history(synth::SeededRng& rng, int length, double max_load)
{
    std::vector<WeeklyLoad> weeks;
    for (int i = 0; i < length; ++i) {
        const double load = rng.unit() < 0.1 ? 0.0 : rng.uniform(0.0, max_load);
        weeks.push_back({kFirstMonday + std::chrono::days{7 * i}, load, rng.between(0, 7)});
    }
    return weeks;
}

// 1. Minute-curve shape.
void ac1(Check& c)
{
    const auto dir = scratch("ac1");
    const auto path = dir / "curve.csv";
    c.expect(cli_run({"plot", "minute_curve", "--out", path.string()}) == 0, "plot minute_curve failed");
    const auto rows = csv_rows(read_file(path));
    c.expect(rows.size() == 201, "expected 201 curve rows");
    for (std::size_t col = 1; col <= 2; ++col) {
        std::optional<double> prev_x;
        std::optional<double> prev_y;
        for (const auto& row : rows) {
            const double x = *parse_number(row.at(0));
            const double y = *parse_number(row.at(col));
            if (x < 0.30) {
                c.expect(y == 0.0, "nonzero load below the floor at " + row.at(0));
            } else if (prev_x && *prev_x >= 0.30 && (x < 0.40 || *prev_x >= 0.40)) {
                c.expect(y > *prev_y, "curve not strictly increasing at " + row.at(0));
            }
            if (x == 0.30) {
                c.expect(y > 0.0, "no positive jump at 0.30");
            }
            if (x == 0.40) {
                c.expect(y > *prev_y, "no positive jump at 0.40");
            }
            prev_x = x;
            prev_y = y;
        }
    }

    const LoadConfig config;
    for (const double k : {kMaleCoefficient, kFemaleCoefficient}) {
        c.expect(gated_load(std::nextafter(0.30, 0.0), k, config) == 0.0, "load just below 0.30");
        c.expect(gated_load(0.30, k, config) > 0.0, "load at 0.30");
        const double below = std::nextafter(config.downweight_band_end(), 0.0);
        const double left = gated_load(below, k, config);
        const double right = gated_load(config.downweight_band_end(), k, config);
        c.expect(left == config.downweight_factor() * banister_load(below, k, config.banister_scale()),
                 "left limit at 0.40 is not factor * banister");
        c.expect(right == banister_load(config.downweight_band_end(), k, config.banister_scale()),
                 "right limit at 0.40 is not banister");
        const double ratio = right / left;
        c.expect(std::abs(ratio - 1.0 / config.downweight_factor()) < 1e-12, "jump ratio " + str(ratio));
        c.note = "jump ratio at 0.40 = " + str(ratio);
    }
}

// 2. Point values against arithmetic frozen before the build.
void ac2(Check& c)
{
    // 0.64 * e^1.92 and 0.64 * 0.6 * e^1.002, evaluated independently.
    const double a = banister_load(1.0, 1.92, 0.64);
    const double b = banister_load(0.6, 1.67, 0.64);
    c.expect(std::abs(a - 4.3655) <= 1e-3, "banister(1.0, 1.92) = " + str(a));
    c.expect(std::abs(b - 1.0459) <= 1e-3, "banister(0.6, 1.67) = " + str(b));
    c.expect(std::abs(a - 4.36541342034608) <= 1e-12, "banister(1.0, 1.92) drifts from oracle");
    c.expect(std::abs(b - 1.0459099516054307) <= 1e-12, "banister(0.6, 1.67) drifts from oracle");
    c.note = str(a) + ", " + str(b);
}

// 3. Frozen synthetic day.
void ac3(Check& c)
{
    const auto dir = scratch("ac3");
    const fs::path data = CARDIOLOAD_TEST_DATA "/reference_day";
    const auto out = dir / "daily.csv";
    c.expect(cli_run({"compute", "--profile", (data / "profile.json").string(), "--minutes",
                      (data / "minutes.csv").string(), "--workouts", (data / "workouts.csv").string(), "--out",
                      out.string()}) == 0,
             "compute failed");
    std::istringstream in(read_file(out));
    const auto days = parse_daily(in);
    c.expect(days.size() == 1, "expected one day");
    if (days.size() != 1) {
        return;
    }
    const double total = days[0].total_load;
    const double share = days[0].incidental_load / total;
    c.expect(total >= 33.0 && total <= 41.0, "total " + str(total) + " outside [33, 41]");
    c.expect(share >= 0.35 && share <= 0.55, "incidental share " + str(share) + " outside [0.35, 0.55]");
    std::ostringstream note;
    note << "total " << std::setprecision(4) << total << ", incidental " << std::setprecision(3) << 100 * share << "%";
    c.note = note.str();
}

// 4. Daily summaries against the brute-force oracle.
void ac4(Check& c)
{
    const LoadConfig config;
    const TargetConfig target;
    const auto zone = LocalZone::utc();
    const std::int64_t first_day = 28'575'360; // 2024-05-01T00:00Z in minutes
    double worst = 0.0;
    constexpr int kDays = 1000;
    for (int i = 0; i < kDays; ++i) {
        const std::int64_t day_start = first_day + 1440 * (i % 365);
        const auto day = oracle::random_day(static_cast<std::uint64_t>(i) + 1000, day_start);
        const auto profile = validate_profile(
            {.user_id = "r", .sex_coefficient_k = day.params.k, .resting_hr = day.params.rhr, .max_hr = day.params.hrmax});
        std::vector<MinuteSample> samples;
        samples.reserve(day.minutes.size());
        for (const auto& m : day.minutes) {
            const Minute t{std::chrono::minutes{m.unix_minute}};
            samples.push_back(m.worn ? MinuteSample(t, m.has_hr ? std::optional(m.hr) : std::nullopt, m.moving, true)
                                     : MinuteSample::not_worn(t));
        }
        std::vector<WorkoutSession> sessions;
        for (const auto& s : day.sessions) {
            sessions.emplace_back(Instant{std::chrono::seconds{s.start_second}},
                                  Instant{std::chrono::seconds{s.end_second}}, WorkoutSource::automatic);
        }
        const auto summary = daily_summary(Date{std::chrono::days{day_start / 1440}},
                                           attribute_minutes(minute_loads(samples, profile, config), sessions), zone,
                                           target);
        const auto expected = oracle::brute_force_day(day.minutes, day.sessions, day.params);
        auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
        const double err = std::max({rel(summary.total_load, expected.total), rel(summary.workout_load, expected.workout),
                                     rel(summary.incidental_load, expected.incidental)});
        worst = std::max(worst, err);
        c.expect(err <= 1e-9, "day " + std::to_string(i) + " relative error " + str(err));
        c.expect(summary.worn_minutes == expected.worn, "worn minutes differ on day " + std::to_string(i));
    }
    std::ostringstream note;
    note << kDays << " days on " << kernels::isa_name(kernels::best_isa()) << ", worst rel err "
         << std::setprecision(2) << worst;
    c.note = note.str();
}

// 5. Target identity and floor.
void ac5(Check& c)
{
    synth::SeededRng rng(5);
    std::size_t emitted = 0;
    constexpr int kHistories = 1000;
    for (int h = 0; h < kHistories; ++h) {
        TargetParams params;
        params.min_target = rng.uniform(0.0, 300.0);
        params.rm_window_weeks = rng.between(1, 6);
        params.ewma_alpha = rng.uniform(0.05, 0.95);
        const TargetConfig config(params);
        const auto weeks = random_history(rng, rng.between(1, 30), rng.uniform(10.0, 1500.0));
        for (const auto& row : replay(weeks, config)) {
            ++emitted;
            const double expected = std::max({row.rm, row.ewma, config.min_target()});
            c.expect(row.target == expected, "target " + str(row.target) + " != max identity " + str(expected));
            c.expect(row.target >= config.min_target(), "target below min_target");
        }
    }
    c.note = std::to_string(kHistories) + " histories, " + std::to_string(emitted) + " targets";
}

// 6. Convergence under constant load.
void ac6(Check& c)
{
    synth::SeededRng rng(6);
    const TargetConfig config;
    const double alpha = config.ewma_alpha();
    constexpr int kStates = 500;
    for (int s = 0; s < kStates; ++s) {
        // Seed a state from arbitrary history, then force its EWMA to a value at or below 400.
        auto history = random_history(rng, rng.between(0, 8), 900.0);
        auto state = advance(TargetState::initial(config), history, config);
        if (state.ewma()) {
            const double ewma = rng.uniform(0.0, 400.0);
            state = TargetState::restore(ewma, state.recent_weeks(), state.phase(),
                                         std::max({*rolling_mean(state.recent_weeks()), ewma, config.min_target()}),
                                         config);
        }
        Date next = state.last_week_start() ? *state.last_week_start() + std::chrono::days{7} : kFirstMonday;
        for (int week = 1; week <= 10; ++week) {
            const auto prev = state.ewma();
            state = compute_target(state, {next, 400.0, 7}, config);
            next += std::chrono::days{7};
            if (prev) {
                const double before = 400.0 - *prev;
                const double after = 400.0 - *state.ewma();
                c.expect(std::abs(after - (1.0 - alpha) * before) <= 1e-12, "EWMA deviation does not contract");
                if (before >= 1.0) {
                    c.expect(std::abs(after / before - (1.0 - alpha)) <= 1e-12,
                             "contraction factor " + str(after / before));
                }
            }
            c.expect(*state.ewma() <= 400.0, "EWMA exceeded 400");
            if (week >= 4) {
                c.expect(state.current_target() == 400.0,
                         "state " + std::to_string(s) + " week " + std::to_string(week) + " target " +
                             str(state.current_target()));
            }
        }
    }
    c.note = std::to_string(kStates) + " seeded states";
}

std::vector<TargetRow> scenario_rows(synth::PatternKind kind, int weeks)
{
    const auto series = synth::gen_week_series(synth::scenario_pattern(kind, weeks, 42));
    return replay(series, TargetConfig{});
}

// 7. Step up at week 10.
void ac7(Check& c)
{
    const auto pattern = synth::scenario_pattern(synth::PatternKind::step_up, 18, 42);
    const auto rows = scenario_rows(synth::PatternKind::step_up, 18);
    const auto step = static_cast<std::size_t>(pattern.change_week);
    const auto window = static_cast<std::size_t>(TargetConfig{}.rm_window_weeks());
    for (std::size_t t = step + 1; t < rows.size(); ++t) {
        c.expect(rows[t].target >= rows[t - 1].target, "target decreased at week " + std::to_string(t));
    }
    const std::size_t settle = step + window - 1;
    c.expect(rows[settle].target == pattern.altered,
             "target at week " + std::to_string(settle) + " is " + str(rows[settle].target));
    c.expect(rows[settle - 1].target < pattern.altered, "target reached the new level early");
    c.note = "target " + str(rows[step - 1].target) + " -> " + str(rows[settle].target) + " at week " +
             std::to_string(settle);
}

// 8. Two-week spike.
void ac8(Check& c)
{
    const TargetConfig config;
    const auto pattern = synth::scenario_pattern(synth::PatternKind::spike, 18, 42);
    const auto rows = scenario_rows(synth::PatternKind::spike, 18);
    const auto reversion = static_cast<std::size_t>(pattern.change_week + pattern.hold_weeks);
    const double baseline = pattern.baseline;
    c.expect(rows[reversion - 1 - pattern.hold_weeks].target == baseline, "pre-spike target is not the baseline");
    c.expect(rows[reversion].target > baseline, "target not above baseline at reversion");
    c.expect(rows[reversion + 1].target > baseline, "target not above baseline one week after reversion");
    const std::size_t window = static_cast<std::size_t>(config.rm_window_weeks());
    for (std::size_t t = reversion + window - 1; t < rows.size(); ++t) {
        c.expect(rows[t].rm == baseline, "RM has not returned to baseline at week " + std::to_string(t));
        c.expect(rows[t].target == std::max({rows[t].rm, rows[t].ewma, config.min_target()}),
                 "max identity broken at week " + std::to_string(t));
        if (rows[t].ewma <= baseline) {
            c.expect(rows[t].target == baseline, "target above baseline once EWMA settled");
        }
    }
    const auto& late = rows[reversion + 4];
    c.note = "RM back to " + str(baseline) + " by week " + std::to_string(reversion + window - 1) +
             "; EWMA residual " + str(late.ewma - baseline) + " at reversion+4";
}

// 9. Step decrease and recovery.
void ac9(Check& c)
{
    const TargetConfig config;
    const double alpha = config.ewma_alpha();
    const auto pattern = synth::scenario_pattern(synth::PatternKind::step_down, 18, 42);
    const auto rows = scenario_rows(synth::PatternKind::step_down, 18);
    for (std::size_t t = 1; t < rows.size(); ++t) {
        c.expect(rows[t].target >= rows[t].ewma, "target below EWMA at week " + std::to_string(t));
        c.expect(rows[t].ewma >= (1.0 - alpha) * rows[t - 1].ewma, "EWMA fell too fast at week " + std::to_string(t));
        c.expect(rows[t].target >= (1.0 - alpha) * rows[t - 1].ewma, "target fell too fast at week " + std::to_string(t));
    }
    const auto resume = static_cast<std::size_t>(pattern.change_week + pattern.hold_weeks + pattern.ramp_weeks);
    std::optional<std::size_t> regained;
    for (std::size_t t = resume; t < rows.size(); ++t) {
        if (rows[t].target >= pattern.baseline) {
            regained = t;
            break;
        }
    }
    c.expect(regained.has_value(), "target never regained the plateau");
    if (regained) {
        c.expect(*regained <= resume + 4, "plateau regained only at week " + std::to_string(*regained));
        c.note = "plateau resumes week " + std::to_string(resume) + ", regained week " + std::to_string(*regained);
    }
}

// 10. Monotone response.
void ac10(Check& c)
{
    synth::SeededRng rng(10);
    const TargetConfig config;
    constexpr int kHistories = 500;
    for (int h = 0; h < kHistories; ++h) {
        auto weeks = random_history(rng, rng.between(2, 24), 800.0);
        const auto base = replay(weeks, config);
        const auto bumped_index = static_cast<std::size_t>(rng.between(0, static_cast<int>(weeks.size()) - 1));
        weeks[bumped_index].total_load += rng.uniform(1e-9, 300.0);
        const auto bumped = replay(weeks, config);
        for (std::size_t t = 0; t < base.size(); ++t) {
            if (t < bumped_index) {
                c.expect(bumped[t].target == base[t].target, "earlier target changed");
            } else {
                c.expect(bumped[t].target >= base[t].target,
                         "history " + std::to_string(h) + ": target fell at week " + std::to_string(t));
            }
        }
    }
    c.note = std::to_string(kHistories) + " perturbed histories";
}

std::string random_minute_file(synth::SeededRng& rng, std::size_t& data_rows)
{
    std::ostringstream out;
    out << kMinuteHeader << (rng.unit() < 0.2 ? "\r\n" : "\n");
    Minute t{std::chrono::minutes{28'575'360 + rng.between(0, 100000)}};
    const int rows = rng.between(1, 400);
    data_rows = static_cast<std::size_t>(rows);
    for (int i = 0; i < rows; ++i) {
        t += std::chrono::minutes{rng.unit() < 0.05 ? rng.between(2, 90) : 1};
        out << format_utc_timestamp(t) << ',';
        const bool worn = rng.unit() < 0.9;
        if (worn) {
            if (rng.unit() < 0.9) {
                const double hr = rng.unit() < 0.5 ? rng.between(40, 200) : rng.uniform(40.0, 200.0);
                out << format_number(hr);
            }
            out << ',' << (rng.unit() < 0.5 ? 1 : 0) << ",1\n";
        } else {
            out << ",0,0\n";
        }
    }
    return out.str();
}

const char* const kMalformedRows[] = {
    "garbage",
    "2024-05-01T08:00:00Z,72,1",
    "2024-05-01T08:00:00Z,seventy,1,1",
    "2024-05-01T08:00:30Z,72,1,1",
    "2024-13-01T08:00:00Z,72,1,1",
    "2024-05-01T08:00:00Z,72,yes,1",
    "2024-05-01T08:00:00Z,-5,1,1",
    "2024-05-01T08:00:00Z,72,1,0",
    "2024-05-01T08:00:00Z,72,1,1,extra",
};

// 11. Ingestion round-trip and error locality.
void ac11(Check& c)
{
    synth::SeededRng rng(11);
    constexpr int kFiles = 1000;
    std::size_t injected_total = 0;
    for (int f = 0; f < kFiles; ++f) {
        std::size_t data_rows = 0;
        const std::string text = random_minute_file(rng, data_rows);
        std::istringstream first_in(text);
        const auto first = parse_minutes(first_in);
        std::ostringstream serialized;
        write_minutes(serialized, first.samples);
        std::istringstream second_in(serialized.str());
        const auto second = parse_minutes(second_in);
        std::ostringstream reserialized;
        write_minutes(reserialized, second.samples);
        c.expect(first.report.records_accepted == data_rows, "file " + std::to_string(f) + ": rows lost");
        c.expect(first.report.errors.empty(), "file " + std::to_string(f) + ": clean file reported errors");
        c.expect(second.samples == first.samples, "file " + std::to_string(f) + ": round trip changed samples");
        c.expect(reserialized.str() == serialized.str(), "file " + std::to_string(f) + ": serialization unstable");

        // Inject malformed rows after random data lines and track their 1-based line numbers.
        std::vector<std::string> lines;
        std::istringstream split(text);
        for (std::string line; std::getline(split, line);) {
            lines.push_back(line);
        }
        const int injections = rng.between(1, 5);
        std::vector<std::size_t> positions;
        for (int i = 0; i < injections; ++i) {
            positions.push_back(static_cast<std::size_t>(rng.between(1, static_cast<int>(lines.size()))));
        }
        std::sort(positions.begin(), positions.end());
        std::vector<std::string> dirty;
        std::vector<std::size_t> expected_lines;
        std::size_t next = 0;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            dirty.push_back(lines[i]);
            while (next < positions.size() && positions[next] == i + 1) {
                dirty.push_back(kMalformedRows[rng.between(0, std::size(kMalformedRows) - 1)]);
                expected_lines.push_back(dirty.size());
                ++next;
            }
        }
        std::string dirty_text;
        for (const auto& line : dirty) {
            dirty_text += line + "\n";
        }
        std::istringstream dirty_in(dirty_text);
        const auto dirty_result = parse_minutes(dirty_in);
        std::vector<std::size_t> reported;
        for (const auto& e : dirty_result.report.errors) {
            reported.push_back(e.line);
        }
        injected_total += expected_lines.size();
        c.expect(reported == expected_lines, "file " + std::to_string(f) + ": wrong error line numbers");
        c.expect(dirty_result.report.records_rejected == expected_lines.size(), "rejected count mismatch");
        c.expect(dirty_result.samples == first.samples, "file " + std::to_string(f) + ": bad rows disturbed good ones");
    }
    c.note = std::to_string(kFiles) + " files, " + std::to_string(injected_total) + " injected rows";
}

std::map<std::string, std::string> tree(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) {
            files[fs::relative(entry.path(), root).string()] = read_file(entry.path());
        }
    }
    return files;
}

// 12. End-to-end determinism and incremental == batch.
void ac12(Check& c)
{
    const auto a = scratch("ac12_a");
    const auto b = scratch("ac12_b");
    c.expect(cli_run({"simulate", "step_up", "--seed", "42", "--out", a.string()}) == 0, "first simulate failed");
    c.expect(cli_run({"simulate", "step_up", "--seed", "42", "--out", b.string()}) == 0, "second simulate failed");
    const auto tree_a = tree(a);
    c.expect(tree_a.size() >= 5, "simulate wrote too few files");
    c.expect(tree_a == tree(b), "output trees differ");

    const auto work = scratch("ac12_target");
    const std::string weekly = read_file(a / "weekly.csv");
    c.expect(cli_run({"target", "--weekly", (a / "weekly.csv").string(), "--state", (work / "batch.json").string(),
                      "--out", (work / "batch.csv").string()}) == 0,
             "batch target failed");

    std::istringstream lines(weekly);
    std::string header;
    std::getline(lines, header);
    std::string incremental_rows;
    int week = 0;
    for (std::string line; std::getline(lines, line); ++week) {
        const auto chunk = work / ("week" + std::to_string(week) + ".csv");
        write_file(chunk, header + "\n" + line + "\n");
        const auto out = work / ("inc" + std::to_string(week) + ".csv");
        c.expect(cli_run({"target", "--weekly", chunk.string(), "--state", (work / "inc.json").string(), "--out",
                          out.string()}) == 0,
                 "incremental target failed at week " + std::to_string(week));
        const std::string rows = read_file(out);
        incremental_rows += rows.substr(rows.find('\n') + 1);
    }
    const std::string batch = read_file(work / "batch.csv");
    c.expect(batch.substr(batch.find('\n') + 1) == incremental_rows, "incremental target rows differ from batch");
    c.expect(read_file(work / "inc.json") == read_file(work / "batch.json"), "incremental state differs from batch");
    c.expect(read_file(work / "batch.json") == read_file(a / "state.json"), "target state differs from simulate");
    c.expect(read_file(work / "batch.csv") == read_file(a / "targets.csv"), "targets differ from simulate");
    c.note = std::to_string(tree_a.size()) + " files identical, " + std::to_string(week) + " incremental weeks";
}

struct Criterion {
    const char* id;
    const char* title;
    void (*fn)(Check&);
    double budget_seconds;
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {"AC1", "minute-curve shape", ac1, 1.0},
        {"AC2", "load formula point values", ac2, 0.0},
        {"AC3", "reference day total and incidental share", ac3, 1.0},
        {"AC4", "daily summary vs brute-force oracle", ac4, 30.0},
        {"AC5", "target max identity and floor", ac5, 0.0},
        {"AC6", "convergence under constant load", ac6, 0.0},
        {"AC7", "step-up scenario", ac7, 0.0},
        {"AC8", "two-week spike scenario", ac8, 0.0},
        {"AC9", "step-down decline bound and recovery", ac9, 0.0},
        {"AC10", "monotone response to load increases", ac10, 0.0},
        {"AC11", "ingest round trip and error locality", ac11, 0.0},
        {"AC12", "end-to-end determinism, incremental == batch", ac12, 0.0},
    };
    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.fn(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0) {
            check.expect(seconds < criterion.budget_seconds,
                         "runtime " + str(seconds) + " s over budget " + str(criterion.budget_seconds) + " s");
        }
        const bool ok = check.passed();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS " : "FAIL ") << std::left << std::setw(5) << criterion.id << criterion.title << " ("
                  << std::fixed << std::setprecision(3) << seconds << " s)" << std::defaultfloat;
        if (!check.note.empty()) {
            std::cout << ": " << check.note;
        }
        std::cout << '\n';
        for (const auto& f : check.failures()) {
            std::cout << "      " << f << '\n';
        }
        if (check.count() > check.failures().size()) {
            std::cout << "      ... " << check.count() - check.failures().size() << " more\n";
        }
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}
