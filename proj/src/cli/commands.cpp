#include "cardioload/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cardioload/cli/manifest.hpp"
#include "cardioload/ingest.hpp"
#include "cardioload/load_engine.hpp"
#include "cardioload/synth.hpp"
#include "cardioload/target_engine.hpp"

namespace cardioload::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config_path;
    std::string timezone = "UTC";
    std::optional<std::uint64_t> seed;
    std::string out;

    std::string profile_path;
    std::string minutes_path;
    std::string workouts_path;
    std::string report_path;
    std::string daily_path;
    std::string weekly_path;
    std::string state_path;

    std::string scenario;
    std::string plot_kind;
    int weeks = 18;
    double jitter = 0.0;
};

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_profile:
    case ErrorCode::invalid_config:
    case ErrorCode::invalid_argument:
        return kExitInvalidInput;
    case ErrorCode::non_contiguous_week:
    case ErrorCode::misaligned_week:
    case ErrorCode::day_outside_week:
        return kExitNonContiguous;
    default:
        return kExitParseError;
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io_error, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Reads an input file, recording its digest in the manifest.
std::string read_input(const std::string& path, RunManifest& manifest)
{
    std::string bytes = read_file(path);
    manifest.inputs.emplace_back(fs::path(path).filename().string(), sha256_hex(bytes));
    return bytes;
}

void write_output(const fs::path& path, const std::string& bytes, RunManifest& manifest)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write " + path.string());
    }
    manifest.outputs.emplace_back(path.filename().string(), sha256_hex(bytes));
}

void write_manifest(const fs::path& path, const RunManifest& manifest)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << manifest.to_json().dump(2) << '\n';
    if (!out) {
        throw Error(ErrorCode::io_error, "cannot write " + path.string());
    }
}

PipelineConfig load_config(const Options& opt, RunManifest& manifest)
{
    PipelineConfig config;
    if (!opt.config_path.empty()) {
        std::istringstream in(read_input(opt.config_path, manifest));
        config = parse_config(in);
    }
    manifest.config = config_to_json(config);
    return config;
}

template <class Parser>
auto parse_text(const std::string& bytes, Parser parser)
{
    std::istringstream in(bytes);
    return parser(in);
}

std::string csv_of(auto writer, const auto& items)
{
    std::ostringstream out;
    writer(out, items);
    return out.str();
}

std::vector<MinuteLoadDetail> score_minutes(const UserProfile& profile, std::span<const MinuteSample> samples,
                                            std::span<const WorkoutSession> sessions, const LoadConfig& config)
{
    return attribute_minutes(minute_loads(samples, profile, config), sessions);
}

std::string minute_curve_csv(const LoadConfig& config)
{
    std::ostringstream out;
    out << "pct_hrr,load_male,load_female\n";
    for (int i = 0; i <= 200; ++i) {
        const double pct = i / 200.0;
        out << format_number(pct) << ',' << format_number(gated_load(pct, kMaleCoefficient, config)) << ','
            << format_number(gated_load(pct, kFemaleCoefficient, config)) << '\n';
    }
    return out.str();
}

std::string day_plot_csv(std::span<const MinuteLoadDetail> details)
{
    std::ostringstream out;
    out << "timestamp,pct_hrr,load,in_workout\n";
    for (const auto& d : details) {
        out << format_utc_timestamp(d.timestamp) << ',' << (d.pct_hrr ? format_number(*d.pct_hrr) : "") << ','
            << format_number(d.load_points) << ',' << (d.in_workout ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string targets_csv(std::span<const TargetRow> rows)
{
    std::ostringstream out;
    out << "week_start,weekly_load,rm,ewma,target,phase,status\n";
    for (const auto& r : rows) {
        out << format_date(r.week.week_start) << ',' << format_number(r.week.total_load) << ','
            << format_number(r.rm) << ',' << format_number(r.ewma) << ',' << format_number(r.target) << ','
            << to_string(r.phase) << ',' << (r.status ? to_string(r.status->value) : "") << '\n';
    }
    return out.str();
}

std::string weeks_plot_csv(std::span<const TargetRow> rows)
{
    std::ostringstream out;
    out << "week_start,weekly_cl,rm,ewma,target\n";
    for (const auto& r : rows) {
        out << format_date(r.week.week_start) << ',' << format_number(r.week.total_load) << ','
            << format_number(r.rm) << ',' << format_number(r.ewma) << ',' << format_number(r.target) << '\n';
    }
    return out.str();
}

std::string state_document(const TargetState& state)
{
    return state_to_json(state).dump(2) + "\n";
}

struct WeekSplit {
    std::vector<WeeklyLoad> complete;
    std::optional<WeeklyLoad> in_progress;
};

/// Groups daily rows into calendar weeks. Only weeks whose last day is covered by
/// the file are complete; a trailing partial week is returned separately.
WeekSplit weeks_from_daily(std::span<const DailySummary> days, const TargetConfig& config)
{
    WeekSplit split;
    for (std::size_t i = 1; i < days.size(); ++i) {
        if (days[i].date <= days[i - 1].date) {
            throw Error(ErrorCode::non_contiguous_week,
                        "daily rows must have strictly increasing dates (" + format_date(days[i].date) + ")");
        }
    }
    std::size_t begin = 0;
    while (begin < days.size()) {
        const Date start = week_start_of(days[begin].date, config.week_start_day());
        std::size_t end = begin;
        while (end < days.size() && days[end].date < start + std::chrono::days{7}) {
            ++end;
        }
        const WeeklyLoad week = weekly_load(days.subspan(begin, end - begin), start);
        if (days.back().date >= start + std::chrono::days{6}) {
            split.complete.push_back(week);
        } else {
            split.in_progress = week;
        }
        begin = end;
    }
    return split;
}

WeekSplit load_week_input(const Options& opt, const TargetConfig& config, RunManifest& manifest)
{
    if (!opt.weekly_path.empty()) {
        return {parse_text(read_input(opt.weekly_path, manifest), parse_weekly), std::nullopt};
    }
    if (!opt.daily_path.empty()) {
        const auto days = parse_text(read_input(opt.daily_path, manifest), parse_daily);
        return weeks_from_daily(days, config);
    }
    return {};
}

void print_report(const IngestReport& report, std::ostream& out, std::ostream& err)
{
    for (const auto& e : report.errors) {
        err << "line " << e.line << ": " << to_string(e.code) << ": " << e.message << '\n';
    }
    out << "records accepted: " << report.records_accepted << ", rejected: " << report.records_rejected
        << ", gaps: " << report.gaps.size() << '\n';
}

int cmd_compute(const Options& opt, std::ostream& out, std::ostream& err)
{
    RunManifest manifest{.command = "compute"};
    manifest.parameters = {{"timezone", opt.timezone}};
    const auto config = load_config(opt, manifest);
    const auto zone = LocalZone::load(opt.timezone);
    const auto profile = parse_text(read_input(opt.profile_path, manifest), parse_profile);
    const auto minutes = parse_text(read_input(opt.minutes_path, manifest), parse_minutes);
    std::vector<WorkoutSession> sessions;
    if (!opt.workouts_path.empty()) {
        sessions = parse_text(read_input(opt.workouts_path, manifest), parse_workouts);
    }

    const auto details = score_minutes(profile, minutes.samples, sessions, config.load);
    const auto days = summarize_days(details, zone, config.target);

    write_output(opt.out, csv_of(write_daily, days), manifest);
    if (!opt.report_path.empty()) {
        write_output(opt.report_path, report_to_json(minutes.report).dump(2) + "\n", manifest);
    }
    write_manifest(opt.out + ".manifest.json", manifest);

    print_report(minutes.report, out, err);
    for (const auto& d : days) {
        out << format_date(d.date) << ": total " << format_number(d.total_load) << " (workout "
            << format_number(d.workout_load) << ", incidental " << format_number(d.incidental_load) << ")\n";
    }
    return kExitOk;
}

int cmd_target(const Options& opt, std::ostream& out, std::ostream&)
{
    RunManifest manifest{.command = "target"};
    manifest.parameters = {{"timezone", opt.timezone}};
    const auto config = load_config(opt, manifest);
    LocalZone::load(opt.timezone);

    TargetState state = TargetState::initial(config.target);
    if (fs::exists(opt.state_path)) {
        const std::string bytes = read_input(opt.state_path, manifest);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(bytes);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::malformed_document, std::string("state: ") + e.what());
        }
        state = state_from_json(doc, config.target);
    }

    const WeekSplit input = load_week_input(opt, config.target, manifest);
    std::vector<TargetRow> rows;
    state = advance(state, input.complete, config.target, &rows);

    write_output(opt.out, targets_csv(rows), manifest);
    write_output(opt.state_path, state_document(state), manifest);
    write_manifest(opt.out + ".manifest.json", manifest);

    out << "weeks folded: " << rows.size() << '\n';
    out << "target: " << format_number(state.current_target()) << " (" << to_string(state.phase()) << ")\n";
    if (input.in_progress) {
        out << "week of " << format_date(input.in_progress->week_start) << " in progress: "
            << format_number(input.in_progress->total_load);
        if (state.current_target() > 0.0) {
            const auto status = target_status(input.in_progress->total_load, state.current_target(), config.target);
            out << " (" << to_string(status.value) << ", ratio " << format_number(status.ratio) << ")";
        }
        out << '\n';
    }
    return kExitOk;
}

int simulate_day(const Options& opt, const PipelineConfig& config, RunManifest& manifest, std::ostream& out)
{
    const auto zone = LocalZone::load(opt.timezone);
    const auto profile = synth::reference_day_profile();
    auto plan = synth::reference_day_plan(opt.seed.value_or(synth::kReferenceDaySeed));
    plan.day_start = std::chrono::floor<std::chrono::minutes>(
        zone.midnight(Date{std::chrono::year{2024} / std::chrono::May / 1}));

    const fs::path dir(opt.out);
    const std::string minutes_csv = csv_of(write_minutes, synth::gen_day(plan, profile, config.load));
    const std::string workouts_csv = csv_of(write_workouts, synth::plan_sessions(plan));
    write_output(dir / "profile.json", profile_to_json(profile).dump(2) + "\n", manifest);
    write_output(dir / "minutes.csv", minutes_csv, manifest);
    write_output(dir / "workouts.csv", workouts_csv, manifest);

    // Score from the emitted files so the run exercises the full ingest path.
    const auto minutes = parse_text(minutes_csv, parse_minutes);
    const auto sessions = parse_text(workouts_csv, parse_workouts);
    const auto details = score_minutes(profile, minutes.samples, sessions, config.load);
    const auto days = summarize_days(details, zone, config.target);
    write_output(dir / "daily.csv", csv_of(write_daily, days), manifest);
    write_output(dir / "day_plot.csv", day_plot_csv(details), manifest);

    for (const auto& d : days) {
        const double share = d.total_load > 0.0 ? 100.0 * d.incidental_load / d.total_load : 0.0;
        out << format_date(d.date) << ": total " << format_number(d.total_load) << " (workout "
            << format_number(d.workout_load) << ", incidental " << format_number(d.incidental_load) << ", "
            << format_number(std::round(share * 10.0) / 10.0) << "% incidental)\n";
    }
    return kExitOk;
}

int simulate_weeks(const Options& opt, synth::PatternKind kind, const PipelineConfig& config, RunManifest& manifest,
                   std::ostream& out)
{
    auto pattern = synth::scenario_pattern(kind, opt.weeks, opt.seed.value_or(0));
    pattern.jitter = opt.jitter;
    pattern.first_week_start =
        week_start_of(Date{std::chrono::year{2024} / std::chrono::January / 1}, config.target.week_start_day());
    const auto series = synth::gen_week_series(pattern);

    std::vector<TargetRow> rows;
    const auto state = advance(TargetState::initial(config.target), series, config.target, &rows);

    const fs::path dir(opt.out);
    write_output(dir / "weekly.csv", csv_of(write_weekly, series), manifest);
    write_output(dir / "targets.csv", targets_csv(rows), manifest);
    write_output(dir / "weeks_plot.csv", weeks_plot_csv(rows), manifest);
    write_output(dir / "state.json", state_document(state), manifest);

    out << "weeks: " << rows.size() << ", final target: " << format_number(state.current_target()) << " ("
        << to_string(state.phase()) << ")\n";
    return kExitOk;
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err)
{
    const auto kind = synth::parse_pattern_kind(opt.scenario);
    if (!kind && opt.scenario != "fig2_day") {
        err << "unknown scenario '" << opt.scenario << "' (expected constant, step_down, step_up, spike, fig2_day)\n";
        return kExitUnknownScenario;
    }
    RunManifest manifest{.command = "simulate"};
    manifest.parameters = {{"scenario", opt.scenario}, {"timezone", opt.timezone}, {"weeks", opt.weeks},
                           {"jitter", opt.jitter}};
    if (opt.seed) {
        manifest.parameters["seed"] = *opt.seed;
    }
    const auto config = load_config(opt, manifest);
    const int code = kind ? simulate_weeks(opt, *kind, config, manifest, out) : simulate_day(opt, config, manifest, out);
    write_manifest(fs::path(opt.out) / "manifest.json", manifest);
    return code;
}

int cmd_plot(const Options& opt, std::ostream& out, std::ostream& err)
{
    RunManifest manifest{.command = "plot"};
    manifest.parameters = {{"kind", opt.plot_kind}, {"timezone", opt.timezone}};
    const auto config = load_config(opt, manifest);
    std::string csv;
    if (opt.plot_kind == "minute_curve") {
        csv = minute_curve_csv(config.load);
    } else if (opt.plot_kind == "day") {
        if (opt.profile_path.empty() || opt.minutes_path.empty()) {
            err << "plot day requires --profile and --minutes\n";
            return kExitUsage;
        }
        const auto profile = parse_text(read_input(opt.profile_path, manifest), parse_profile);
        const auto minutes = parse_text(read_input(opt.minutes_path, manifest), parse_minutes);
        std::vector<WorkoutSession> sessions;
        if (!opt.workouts_path.empty()) {
            sessions = parse_text(read_input(opt.workouts_path, manifest), parse_workouts);
        }
        csv = day_plot_csv(score_minutes(profile, minutes.samples, sessions, config.load));
    } else if (opt.plot_kind == "weeks") {
        if (opt.weekly_path.empty() && opt.daily_path.empty()) {
            err << "plot weeks requires --weekly or --daily\n";
            return kExitUsage;
        }
        const auto input = load_week_input(opt, config.target, manifest);
        std::vector<TargetRow> rows;
        advance(TargetState::initial(config.target), input.complete, config.target, &rows);
        csv = weeks_plot_csv(rows);
    } else {
        err << "unknown plot kind '" << opt.plot_kind << "' (expected minute_curve, day, weeks)\n";
        return kExitUsage;
    }
    write_output(opt.out, csv, manifest);
    write_manifest(opt.out + ".manifest.json", manifest);
    out << "wrote " << opt.out << '\n';
    return kExitOk;
}

void add_shared_flags(CLI::App* cmd, Options& opt, bool out_required = true)
{
    cmd->add_option("--config", opt.config_path, "JSON config (LoadConfig/TargetConfig fields)");
    cmd->add_option("--timezone", opt.timezone, "IANA timezone for local dates")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "RNG seed");
    auto* out = cmd->add_option("--out", opt.out, "output path");
    if (out_required) {
        out->required();
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Cardio load and adaptive weekly target tool", "cardioload"};
    app.require_subcommand(1);

    auto* compute = app.add_subcommand("compute", "per-minute load -> daily summaries CSV");
    add_shared_flags(compute, opt);
    compute->add_option("--profile", opt.profile_path, "profile JSON")->required();
    compute->add_option("--minutes", opt.minutes_path, "minute CSV")->required();
    compute->add_option("--workouts", opt.workouts_path, "workout CSV");
    compute->add_option("--report", opt.report_path, "write the ingest report as JSON");

    auto* target = app.add_subcommand("target", "fold weekly loads into the persisted target state");
    add_shared_flags(target, opt);
    auto* daily = target->add_option("--daily", opt.daily_path, "daily CSV from compute");
    target->add_option("--weekly", opt.weekly_path, "weekly history CSV")->excludes(daily);
    target->add_option("--state", opt.state_path, "state JSON (read if present, then rewritten)")->required();

    auto* simulate = app.add_subcommand("simulate", "generate a scenario and run it end to end");
    add_shared_flags(simulate, opt);
    simulate->add_option("scenario", opt.scenario, "constant | step_down | step_up | spike | fig2_day")->required();
    simulate->add_option("--weeks", opt.weeks, "weeks to generate")->capture_default_str();
    simulate->add_option("--jitter", opt.jitter, "multiplicative weekly jitter half-width")->capture_default_str();

    auto* plot = app.add_subcommand("plot", "emit plot-ready CSV");
    add_shared_flags(plot, opt);
    plot->add_option("kind", opt.plot_kind, "minute_curve | day | weeks")->required();
    plot->add_option("--profile", opt.profile_path, "profile JSON (day)");
    plot->add_option("--minutes", opt.minutes_path, "minute CSV (day)");
    plot->add_option("--workouts", opt.workouts_path, "workout CSV (day)");
    auto* plot_daily = plot->add_option("--daily", opt.daily_path, "daily CSV (weeks)");
    plot->add_option("--weekly", opt.weekly_path, "weekly CSV (weeks)")->excludes(plot_daily);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) {
            return cmd_compute(opt, out, err);
        }
        if (target->parsed()) {
            return cmd_target(opt, out, err);
        }
        if (simulate->parsed()) {
            return cmd_simulate(opt, out, err);
        }
        return cmd_plot(opt, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    }
}

} // namespace cardioload::cli
