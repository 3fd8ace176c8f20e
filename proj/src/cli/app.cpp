#include "bugforecast/cli/app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "bugforecast/ingest/assignment.hpp"
#include "bugforecast/ingest/export_parser.hpp"
#include "bugforecast/ingest/issue_client.hpp"
#include "bugforecast/metrics/extraction.hpp"
#include "bugforecast/model/descriptor.hpp"
#include "bugforecast/model/errors.hpp"
#include "bugforecast/report/reports.hpp"
#include "bugforecast/synth/generator.hpp"
#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/text.hpp"
#include "log.hpp"

namespace bugforecast::cli {

namespace {

namespace fs = std::filesystem;
using spdlog::level::level_enum;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Project {
    fs::path descriptor_path;
    ProjectDescriptor descriptor;
    ResolvedDirs dirs;

    const Timeline& timeline() const { return descriptor.timeline; }
    fs::path base() const { return descriptor_path.parent_path(); }
    std::string location(const std::string& relative) const { return resolve_location(base(), relative); }
};

fs::path absolute_normal(const fs::path& p) { return fs::weakly_canonical(fs::absolute(p)); }

Project load_project(const fs::path& path, const RunConfig* overrides) {
    Project p;
    p.descriptor_path = fs::absolute(path);
    p.descriptor = read_descriptor_file(p.descriptor_path);
    require_valid(p.descriptor.timeline);
    p.dirs.out = overrides && overrides->out_dir ? fs::path(*overrides->out_dir)
                                                 : fs::path(p.location(p.descriptor.output_dir));
    p.dirs.cache = overrides && overrides->cache_dir ? fs::path(*overrides->cache_dir)
                                                     : fs::path(p.location(p.descriptor.cache_dir));
    p.dirs.out = absolute_normal(p.dirs.out);
    p.dirs.cache = absolute_normal(p.dirs.cache);
    if (p.dirs.out == p.dirs.cache)
        throw UsageError("output and cache directories must differ: " + p.dirs.out.string());
    return p;
}

void write_output(const Project& p, const std::string& name, const std::string& content) {
    fs::create_directories(p.dirs.out);
    util::write_file_atomic(p.dirs.out / name, content);
    log(level_enum::debug, "wrote", {{"file", (p.dirs.out / name).string()}});
}

template <class Writer>
std::string render(Writer&& w) {
    std::ostringstream out;
    w(out);
    return out.str();
}

std::string read_stage_file(const Project& p, const std::string& name, const std::string& producer) {
    const auto file = p.dirs.out / name;
    if (!fs::exists(file))
        throw InputNotFoundError(file.string() + " not found (run " + producer + " first)");
    return util::read_file(file);
}

eval::ProjectData load_data(const Project& p) {
    eval::ProjectData d;
    d.timeline = p.timeline();
    d.metrics = metrics::read_metrics_csv(read_stage_file(p, "metrics.csv", "extract-metrics"), d.timeline);
    d.history = ingest::read_bug_history(read_stage_file(p, "bug_history.csv", "ingest-bugs"), d.timeline);
    eval::require_consistent(d);
    return d;
}

std::vector<stats::TrainingRow> all_rows(const eval::ProjectData& d) {
    std::vector<stats::TrainingRow> rows;
    for (int id = 1; id <= static_cast<int>(d.release_count()); ++id)
        rows.push_back({&d.metrics_of(id), d.bugs_of(id)});
    return rows;
}

std::vector<stats::SelectedMetric> choose_metrics(const RunConfig& c, const std::vector<stats::TrainingRow>& rows) {
    const auto& catalog = MetricCatalog::standard();
    if (!c.metrics.empty()) {
        std::vector<stats::SelectedMetric> out;
        for (const auto& id : c.metrics) {
            if (!catalog.contains(id))
                throw ValidationError("unknown metric id '" + id + "'");
            double pcc = std::numeric_limits<double>::quiet_NaN();
            if (rows.size() >= 2) {
                std::vector<double> xs, ys;
                for (const auto& r : rows) {
                    xs.push_back(r.metrics->at(id));
                    ys.push_back(r.bugs);
                }
                if (auto v = stats::pearson(xs, ys))
                    pcc = *v;
            }
            out.push_back({id, pcc});
        }
        return out;
    }
    if (rows.size() < 2)
        throw ValidationError("metric selection needs at least 2 training releases, got " +
                              std::to_string(rows.size()) + "; pass --metrics <ids>");
    auto selected = eval::select_on_rows(rows, catalog.ids(), c.selection);
    if (selected.empty())
        throw ValidationError("no metric reaches |PCC| >= " + util::format_double(c.selection.min_abs_pcc) +
                              " over " + std::to_string(rows.size()) +
                              " training releases; lower --min-pcc or pass --metrics");
    for (const auto& s : selected)
        log(level_enum::info, "metric_selected", {{"metric", s.id}, {"pcc", util::format_double(s.pcc)}});
    return selected;
}

std::vector<std::string> ids_of(const std::vector<stats::SelectedMetric>& selected) {
    std::vector<std::string> ids;
    for (const auto& s : selected)
        ids.push_back(s.id);
    return ids;
}

int find_release(const Timeline& t, const std::string& text) {
    if (auto by_name = t.find_by_name(text))
        return *by_name;
    long long id = 0;
    try {
        id = util::parse_int(text);
    } catch (const ValidationError&) {
        throw ValidationError("release '" + text + "' is not in the descriptor of " + t.project);
    }
    if (id < 1 || static_cast<std::size_t>(id) > t.size())
        throw ValidationError("release " + text + " is not in the descriptor of " + t.project + " (1.." +
                              std::to_string(t.size()) + ")");
    return static_cast<int>(id);
}

// ---- commands -------------------------------------------------------------

struct IngestFlags {
    std::string fetch_url;
    std::string fetch_project;
};

void cmd_ingest(const RunConfig& c, const IngestFlags& flags) {
    const auto p = load_project(c.project, &c);
    const auto& t = p.timeline();

    fs::path export_path = p.location(t.bug_export_location);
    auto format = p.descriptor.export_format;
    if (!flags.fetch_url.empty()) {
        if (flags.fetch_project.empty())
            throw UsageError("--fetch-url needs --fetch-project");
        log(level_enum::info, "fetch_start", {{"url", flags.fetch_url}, {"project", flags.fetch_project}});
        write_output(p, "tracker_export.json", ingest::fetch_issues(flags.fetch_url, flags.fetch_project));
        export_path = p.dirs.out / "tracker_export.json";
        format = ExportFormat::tracker_json;
    }
    if (!fs::exists(export_path))
        throw InputNotFoundError("bug export not found: " + export_path.string());

    std::ifstream in(export_path, std::ios::binary);
    ingest::ParseOptions options;
    options.timeline = &t;
    const auto parsed = ingest::parse_bug_export(in, format, options);
    for (const auto& w : parsed.warnings)
        log(level_enum::warn, "export_record_skipped",
            {{"record", std::to_string(w.record_index)}, {"line", std::to_string(w.line)}, {"message", w.message}});
    if (parsed.bugs.empty())
        log(level_enum::warn, "no_bugs_in_export",
            {{"file", export_path.string()}, {"other_issues", std::to_string(parsed.non_bug_count)}});

    const auto built = ingest::build_bug_history(parsed.bugs, t);
    for (const auto& a : built.assignments)
        if (a.warning)
            log(level_enum::warn, "assignment_warning", {{"bug", a.bug_key}, {"message", *a.warning}});

    write_output(p, "bug_history.csv", render([&](std::ostream& o) { ingest::write_bug_history(o, built.history, t); }));
    write_output(p, "bug_assignments.csv",
                 render([&](std::ostream& o) { ingest::write_assignments(o, built.assignments, t); }));

    std::size_t labeled = 0, inferred = 0;
    for (const auto& r : built.history.releases) {
        labeled += r.labeled;
        inferred += r.inferred;
    }
    log(level_enum::info, "ingest_done",
        {{"total", std::to_string(labeled + inferred)},
         {"labeled", std::to_string(labeled)},
         {"inferred", std::to_string(inferred)},
         {"non_bug_issues", std::to_string(parsed.non_bug_count)},
         {"grace_days", std::to_string(c.grace_days)}});
    std::cout << "bugs: total=" << labeled + inferred << " labeled=" << labeled << " inferred=" << inferred << '\n';
}

void cmd_extract(const RunConfig& c) {
    const auto p = load_project(c.project, &c);
    const auto& t = p.timeline();
    const auto repo = metrics::GitRepository::open_or_clone(p.location(t.repo_location), p.dirs.cache,
                                                            p.descriptor.branch);

    metrics::ExtractionOptions options;
    options.cache_dir = p.dirs.cache;
    options.filter.excluded = t.excluded_languages;
    options.filter.filtered = t.language_filter;
    if (options.filter.filtered.empty()) {
        const auto last = metrics::resolve_snapshots(repo.mainline(), t.releases.back());
        const auto language = metrics::dominant_language(*repo.tree(last.new_commit.sha), t.excluded_languages);
        if (language.empty())
            throw ValidationError("no source language with function detection found; set language_filter");
        options.filter.filtered = {language};
        log(level_enum::info, "language_filter", {{"language", language}, {"source", "dominant"}});
    }

    std::vector<MetricVector> rows;
    std::vector<std::string> failures;
    std::ostringstream snapshots;
    util::CsvWriter snap(snapshots);
    snap.row({"release_id", "release_name", "old_commit", "old_time", "new_commit", "new_time"});
    for (const auto& r : t.releases) {
        try {
            const auto x = metrics::extract_release_metrics(repo, r, options);
            for (const auto& w : x.warnings)
                log(level_enum::warn, "extraction_warning", {{"release", r.name}, {"message", w}});
            log(level_enum::info, "release_metrics",
                {{"release", r.name},
                 {"old", x.snapshots.old_commit.sha.substr(0, 12)},
                 {"new", x.snapshots.new_commit.sha.substr(0, 12)},
                 {"cache", x.from_cache ? "hit" : "miss"},
                 {"skipped_files", x.from_cache ? "cached" : std::to_string(x.skipped_files)}});
            snap.row({std::to_string(r.id), r.name, x.snapshots.old_commit.sha,
                      format_timestamp(x.snapshots.old_commit.time), x.snapshots.new_commit.sha,
                      format_timestamp(x.snapshots.new_commit.time)});
            rows.push_back(x.metrics);
        } catch (const ExtractionError& e) {
            failures.push_back(r.name);
            log(level_enum::err, "release_failed", {{"release", r.name}, {"message", e.what()}});
        }
    }
    write_output(p, "metrics.csv", render([&](std::ostream& o) { metrics::write_metrics_csv(o, rows, t); }));
    write_output(p, "snapshots.csv", snapshots.str());
    std::cout << "metrics: " << rows.size() << " of " << t.size() << " releases -> "
              << (p.dirs.out / "metrics.csv").string() << '\n';
    if (!failures.empty())
        throw ExtractionError("metrics extraction failed for " + std::to_string(failures.size()) +
                              " release(s): " + util::join(failures, ", "));
}

void print_selection(const std::vector<stats::SelectedMetric>& selected) {
    for (const auto& s : selected)
        std::cout << "  " << s.id << "  pcc=" << (std::isfinite(s.pcc) ? util::format_double(s.pcc) : "n/a") << '\n';
}

void cmd_correlate(const RunConfig& c) {
    const auto p = load_project(c.project, &c);
    const auto d = load_data(p);
    const auto m = stats::correlation_matrix(d.metrics, d.history, MetricCatalog::standard().ids());
    write_output(p, "correlation.csv", render([&](std::ostream& o) { report::write_correlation_csv(o, m); }));
    write_output(p, "correlation_matrix.csv",
                 render([&](std::ostream& o) { report::write_correlation_matrix_csv(o, m); }));
    const auto selected = choose_metrics(c, all_rows(d));
    write_output(p, "selection.csv", render([&](std::ostream& o) { report::write_selection_csv(o, selected); }));
    std::cout << "selected metrics over " << d.release_count() << " releases:\n";
    print_selection(selected);
}

void cmd_fit(const RunConfig& c) {
    const auto p = load_project(c.project, &c);
    const auto d = load_data(p);
    const auto rows = all_rows(d);
    const auto selected = choose_metrics(c, rows);
    const auto model = stats::fit_model(rows, ids_of(selected), c.fit);
    write_output(p, "model.csv", render([&](std::ostream& o) { report::write_model_csv(o, model); }));
    std::cout << "model fitted on " << rows.size() << " releases:\n";
    std::cout << "  intercept  " << util::format_double(model.intercept) << '\n';
    for (const auto& k : model.coefficients)
        std::cout << "  " << k.metric_id << "  " << util::format_double(k.value) << '\n';
}

struct PredictFlags {
    std::string release;
    std::optional<fs::path> cross_from;
};

void cmd_predict(const RunConfig& c, const PredictFlags& flags) {
    const auto p = load_project(c.project, &c);
    const auto d = load_data(p);
    const int k = find_release(d.timeline, flags.release);

    std::optional<eval::ProjectData> source;
    std::vector<stats::TrainingRow> rows;
    if (flags.cross_from) {
        source = load_data(load_project(*flags.cross_from, nullptr));
        rows = eval::cross_training_pool(*source, d, k, c.cutoff);
    } else {
        for (int id = 1; id < k; ++id)
            rows.push_back({&d.metrics_of(id), d.bugs_of(id)});
    }
    if (rows.empty())
        throw ValidationError("no training data for release " + std::to_string(k) +
                              " (it has no earlier releases; use --cross-from)");

    report::PredictionReport r;
    r.target = &d.timeline.at(k);
    auto id_list = [](int first, int last) {
        std::vector<std::string> ids;
        for (int id = first; id <= last; ++id)
            ids.push_back(std::to_string(id));
        return ids.empty() ? std::string("none") : util::join(ids, ",");
    };
    r.training = d.timeline.project + " releases " + id_list(1, k - 1);
    if (source)
        r.training = source->timeline.project + " releases " +
                     id_list(1, static_cast<int>(rows.size()) - (k - 1)) + " + " + r.training;
    r.selected = choose_metrics(c, rows);
    r.model = stats::fit_model(rows, ids_of(r.selected), c.fit);
    r.prediction = stats::predict(r.model, d.metrics_of(k));
    stats::set_actual(r.prediction, d.bugs_of(k));

    std::ostringstream pred;
    util::CsvWriter csv(pred);
    csv.row({"release_id", "release_name", "predicted", "actual", "error", "clamped", "training_rows"});
    csv.row({std::to_string(k), r.target->name, util::format_double(r.prediction.predicted),
             report::number_or_empty(r.prediction.actual), report::number_or_empty(r.prediction.error),
             r.prediction.clamped ? "true" : "false", std::to_string(rows.size())});
    write_output(p, "prediction_" + std::to_string(k) + ".csv", pred.str());
    write_output(p, "model_" + std::to_string(k) + ".csv",
                 render([&](std::ostream& o) { report::write_model_csv(o, r.model); }));
    std::cout << report::format_prediction(r);
}

std::vector<int> window_sizes(const RunConfig& c, std::size_t releases) {
    if (!c.windows.empty())
        return util::parse_int_list(c.windows);
    std::vector<int> out;
    for (int w = 1; w < static_cast<int>(releases); ++w)
        out.push_back(w);
    return out;
}

void cmd_evaluate(const RunConfig& c, const std::string& experiment) {
    const auto p = load_project(c.project, &c);
    if (experiment == "cross" && !c.source)
        throw UsageError("evaluate cross needs --source <descriptor>");
    const auto d = load_data(p);
    const std::string title = d.timeline.project + ": ";

    if (experiment == "configs") {
        const auto selected = choose_metrics(c, all_rows(d));
        const auto rows = eval::config_sweep(d, ids_of(selected));
        const auto table = report::format_summary_table(rows, title + "prediction error by model adjustment");
        write_output(p, "eval_configs.csv",
                     render([&](std::ostream& o) { report::write_eval_csv(o, rows, d.timeline); }));
        write_output(p, "summary_configs.csv", render([&](std::ostream& o) { report::write_summary_csv(o, rows); }));
        write_output(p, "summary_configs.txt", table);
        std::cout << table;
    } else if (experiment == "windows") {
        const auto selected = choose_metrics(c, all_rows(d));
        const auto rows = eval::windowed_eval(d, ids_of(selected), window_sizes(c, d.release_count()));
        const auto table = report::format_window_table(rows, title + "prediction error by number of training releases");
        write_output(p, "eval_windows.csv",
                     render([&](std::ostream& o) { report::write_window_eval_csv(o, rows, d.timeline); }));
        write_output(p, "summary_windows.csv",
                     render([&](std::ostream& o) { report::write_window_summary_csv(o, rows); }));
        write_output(p, "pcc_windows.csv", render([&](std::ostream& o) { report::write_window_pcc_csv(o, rows); }));
        write_output(p, "summary_windows.txt", table);
        std::cout << table;
    } else {
        const auto source = load_data(load_project(*c.source, nullptr));
        const auto selected = choose_metrics(c, all_rows(source));
        eval::CrossOptions options;
        options.cutoff = c.cutoff;
        options.target_releases = c.cross_releases;
        options.fit = c.fit;
        const auto rows = eval::cross_project_eval(source, d, ids_of(selected), options);
        const auto table = report::format_summary_table(
            rows, title + "prediction of early releases with " + source.timeline.project + " history");
        write_output(p, "eval_cross.csv",
                     render([&](std::ostream& o) { report::write_eval_csv(o, rows, d.timeline); }));
        write_output(p, "summary_cross.csv", render([&](std::ostream& o) { report::write_summary_csv(o, rows); }));
        write_output(p, "summary_cross.txt", table);
        std::cout << table;
    }
}

struct SynthFlags {
    fs::path dir;
    synth::SynthOptions options;
    int regime_change = 0;
    std::string start;
};

void cmd_generate(SynthFlags flags) {
    if (!flags.start.empty()) {
        const auto d = parse_date(flags.start);
        if (!d)
            throw UsageError("--start expects YYYY-MM-DD, got '" + flags.start + "'");
        flags.options.first_start = *d;
    }
    if (flags.regime_change > 0)
        flags.options.regime_change = flags.regime_change;
    const auto project = synth::plan_project(flags.options);
    synth::write_project(flags.dir, project);
    log(level_enum::info, "synthetic_project",
        {{"dir", flags.dir.string()},
         {"releases", std::to_string(flags.options.releases)},
         {"commits", std::to_string(project.commits.size())},
         {"seed", std::to_string(flags.options.seed)}});
    std::cout << "synthetic project -> " << (flags.dir / "project.ini").string() << '\n';
}

void report_failure(const std::exception& e) {
    log(level_enum::err, "failed",
        {{"kind", std::string(error_kind(e))}, {"exit_code", std::to_string(exit_code_for(e))}, {"message", e.what()}});
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const CLI::ParseError*>(&e))
        return kExitUsage;
    if (dynamic_cast<const InputNotFoundError*>(&e))
        return kExitNotFound;
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const ParseError*>(&e))
        return kExitValidation;
    if (dynamic_cast<const ExtractionError*>(&e))
        return kExitExtraction;
    if (dynamic_cast<const NumericError*>(&e))
        return kExitNumeric;
    if (dynamic_cast<const NetworkError*>(&e))
        return kExitNetwork;
    return kExitFailure;
}

std::string_view error_kind(const std::exception& e) {
    switch (exit_code_for(e)) {
    case kExitUsage:
        return "usage";
    case kExitNotFound:
        return "input_not_found";
    case kExitValidation:
        return dynamic_cast<const ParseError*>(&e) ? "parse" : "validation";
    case kExitExtraction:
        return "extraction";
    case kExitNumeric:
        return "numeric";
    case kExitNetwork:
        return "network";
    default:
        return "internal";
    }
}

std::vector<std::string> validate(const RunConfig& c) {
    std::vector<std::string> out;
    if (c.grace_days < 0 || c.grace_days > kMaxGraceDays)
        out.push_back("--grace-days must be within 0.." + std::to_string(kMaxGraceDays));
    if (!(c.selection.min_abs_pcc >= 0.0 && c.selection.min_abs_pcc <= 1.0))
        out.push_back("--min-pcc must be within [0, 1]");
    if (c.selection.max_count < 1)
        out.push_back("--max-metrics must be at least 1");
    if (c.cross_releases < 1)
        out.push_back("--cross-releases must be at least 1");
    if (!c.windows.empty()) {
        try {
            for (int w : util::parse_int_list(c.windows))
                if (w < 1)
                    out.push_back("--windows entries must be at least 1");
        } catch (const Error& e) {
            out.push_back(std::string("--windows: ") + e.what());
        }
    }
    if (c.out_dir && c.cache_dir && absolute_normal(*c.out_dir) == absolute_normal(*c.cache_dir))
        out.push_back("--out and --cache must differ");
    return out;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Forecast residual bugs of a release from code metrics and bug history", "bugforecast"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "bugforecast 1.0");

    RunConfig c;
    std::string project, out_dir, cache_dir, source, metric_list, cutoff = "freeze", log_level = "info";
    app.add_option("--project", project, "Project descriptor (INI)");
    app.add_option("--out", out_dir, "Output directory (default: descriptor output_dir)");
    app.add_option("--cache", cache_dir, "Cache directory (default: descriptor cache_dir)");
    app.add_option("--grace-days", c.grace_days, "Reported grace period after release; the date rule is unchanged")
        ->check(CLI::Range(0, kMaxGraceDays))
        ->capture_default_str();
    app.add_option("--min-pcc", c.selection.min_abs_pcc, "Minimum |PCC| for metric selection")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app.add_option("--max-metrics", c.selection.max_count, "Maximum number of selected metrics")
        ->check(CLI::Range(std::size_t{1}, std::size_t{43}))
        ->capture_default_str();
    app.add_option("--metrics", metric_list, "Comma-separated metric ids instead of PCC selection");
    app.add_flag("--intercept,!--no-intercept", c.fit.with_intercept, "Fit an intercept (default: no)");
    app.add_flag("--nonneg,!--free", c.fit.nonneg, "Constrain coefficients to >= 0 (default: yes)");
    app.add_option("--windows", c.windows, "Window sizes, e.g. 1..9 or 2,4,6 (default: all)");
    app.add_option("--source", source, "Source project descriptor for cross-project evaluation");
    app.add_option("--pool-cutoff", cutoff, "Source date compared with the target freeze")
        ->check(CLI::IsMember({"freeze", "release"}))
        ->capture_default_str();
    app.add_option("--cross-releases", c.cross_releases, "Target releases predicted in cross-project evaluation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
        ->capture_default_str();

    IngestFlags ingest_flags;
    auto* ingest = app.add_subcommand("ingest-bugs", "Build the per-release bug history from the tracker export");
    ingest->add_option("--fetch-url", ingest_flags.fetch_url, "Fetch the export from this tracker base URL first");
    ingest->add_option("--fetch-project", ingest_flags.fetch_project, "Tracker project key to fetch");

    auto* extract = app.add_subcommand("extract-metrics", "Measure the code metrics of every release");
    auto* correlate = app.add_subcommand("correlate", "Correlate metrics with bugs and select predictors");
    auto* fit = app.add_subcommand("fit", "Fit the regression model on every release");

    PredictFlags predict_flags;
    std::string cross_from;
    auto* predict = app.add_subcommand("predict", "Predict the bugs of one release from the earlier ones");
    predict->add_option("--release", predict_flags.release, "Target release id or name")->required();
    predict->add_option("--cross-from", cross_from, "Pool releases of this source project into the training set");

    std::string experiment;
    auto* evaluate = app.add_subcommand("evaluate", "Run an evaluation experiment");
    evaluate->add_option("experiment", experiment, "configs, windows or cross")
        ->required()
        ->check(CLI::IsMember({"configs", "windows", "cross"}));
    auto* cross = app.add_subcommand("cross-eval", "Same as 'evaluate cross'");

    SynthFlags synth_flags;
    auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic project with planted metrics and bugs");
    gen->add_option("--dir", synth_flags.dir, "Destination directory")->required();
    gen->add_option("--name", synth_flags.options.project, "Project name")->capture_default_str();
    gen->add_option("--start", synth_flags.start, "Start date of the first release (YYYY-MM-DD)");
    gen->add_option("--seed", synth_flags.options.seed, "Random seed")->capture_default_str();
    gen->add_option("--releases", synth_flags.options.releases, "Number of releases")
        ->check(CLI::Range(3, 60))
        ->capture_default_str();
    gen->add_option("--scale", synth_flags.options.scale, "Activity multiplier")
        ->check(CLI::Range(0.05, 10.0))
        ->capture_default_str();
    gen->add_option("--noise", synth_flags.options.noise, "Multiplicative bug-count noise")
        ->check(CLI::Range(0.0, 0.9))
        ->capture_default_str();
    gen->add_option("--per-commit", synth_flags.options.law.per_commit, "Bugs per commit")->capture_default_str();
    gen->add_option("--per-new-loc", synth_flags.options.law.per_new_loc, "Bugs per new code line")
        ->capture_default_str();
    gen->add_option("--regime-change", synth_flags.regime_change, "First release under the changed law (0: none)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        init_logging(spdlog::level::info);
        report_failure(UsageError(std::string(e.what()) + " (see --help)"));
        return kExitUsage;
    }
    init_logging(spdlog::level::from_str(log_level));

    try {
        if (!project.empty())
            c.project = project;
        if (!out_dir.empty())
            c.out_dir = out_dir;
        if (!cache_dir.empty())
            c.cache_dir = cache_dir;
        if (!source.empty())
            c.source = source;
        if (!cross_from.empty())
            predict_flags.cross_from = cross_from;
        c.metrics = util::split_list(metric_list, ",");
        c.cutoff = cutoff == "release" ? eval::PoolCutoff::source_release : eval::PoolCutoff::source_freeze;
        if (auto problems = validate(c); !problems.empty())
            throw UsageError(util::join(problems, "; "));

        if (gen->parsed()) {
            cmd_generate(synth_flags);
            return kExitOk;
        }
        if (c.project.empty())
            throw UsageError("--project <descriptor> is required");
        if (ingest->parsed())
            cmd_ingest(c, ingest_flags);
        else if (extract->parsed())
            cmd_extract(c);
        else if (correlate->parsed())
            cmd_correlate(c);
        else if (fit->parsed())
            cmd_fit(c);
        else if (predict->parsed())
            cmd_predict(c, predict_flags);
        else if (evaluate->parsed())
            cmd_evaluate(c, experiment);
        else if (cross->parsed())
            cmd_evaluate(c, "cross");
        return kExitOk;
    } catch (const std::exception& e) {
        report_failure(e);
        return exit_code_for(e);
    }
}

}  // namespace bugforecast::cli
