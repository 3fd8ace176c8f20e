#include "bugforecast/eval/experiments.hpp"

#include <algorithm>
#include <numeric>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/stats/correlation.hpp"

namespace bugforecast::eval {

namespace {

using stats::PredictionRecord;
using stats::TrainingRow;

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<ErrorSummary> try_summarize(const std::vector<PredictionRecord>& records) {
    if (std::none_of(records.begin(), records.end(), [](const PredictionRecord& r) { return r.error.has_value(); }))
        return std::nullopt;
    return summarize(records);
}

// Fits on `rows`, predicts `target` and records the outcome in `row`.
void predict_into(EvalRow& row, const std::vector<TrainingRow>& rows, const std::vector<std::string>& selected,
                  const stats::FitOptions& options, const MetricVector& target, double actual) {
    if (rows.empty()) {
        row.missing.push_back({target.release_id, "no training data"});
        return;
    }
    try {
        auto model = stats::fit_model(rows, selected, options);
        auto rec = stats::predict(model, target);
        stats::set_actual(rec, actual);
        row.records.push_back(rec);
    } catch (const Error& e) {
        row.missing.push_back({target.release_id, e.what()});
    }
}

std::vector<TrainingRow> training_range(const ProjectData& data, int first, int last) {
    std::vector<TrainingRow> rows;
    for (int id = first; id <= last; ++id)
        rows.push_back({&data.metrics_of(id), data.bugs_of(id)});
    return rows;
}

}  // namespace

const MetricVector& ProjectData::metrics_of(int release_id) const {
    if (release_id < 1 || static_cast<std::size_t>(release_id) > metrics.size())
        throw ValidationError("project " + timeline.project + " has no metrics for release " +
                              std::to_string(release_id));
    return metrics[static_cast<std::size_t>(release_id - 1)];
}

double ProjectData::bugs_of(int release_id) const { return static_cast<double>(history.at(release_id).total()); }

void require_consistent(const ProjectData& data) {
    if (data.metrics.size() != data.timeline.size())
        throw ValidationError("project " + data.timeline.project + ": " + std::to_string(data.metrics.size()) +
                              " metric rows for " + std::to_string(data.timeline.size()) + " releases");
    if (data.history.releases.size() != data.timeline.size())
        throw ValidationError("project " + data.timeline.project + ": bug history covers " +
                              std::to_string(data.history.releases.size()) + " of " +
                              std::to_string(data.timeline.size()) + " releases");
    for (std::size_t i = 0; i < data.metrics.size(); ++i)
        if (data.metrics[i].release_id != static_cast<int>(i) + 1)
            throw ValidationError("project " + data.timeline.project + ": metric rows are not ordered by release id");
}

ErrorSummary summarize(const std::vector<PredictionRecord>& records) {
    std::vector<double> errors;
    for (const auto& r : records)
        if (r.error)
            errors.push_back(*r.error);
    if (errors.empty())
        throw ValidationError("summarize: no prediction has a defined error");

    ErrorSummary s;
    s.n = errors.size();
    s.median = median_of(errors);
    s.mean = mean_of(errors);
    s.max = *std::max_element(errors.begin(), errors.end());
    s.min = *std::min_element(errors.begin(), errors.end());
    s.outliers = static_cast<std::size_t>(
        std::count_if(errors.begin(), errors.end(), [](double e) { return e > kOutlierError; }));
    return s;
}

std::vector<EvalRow> config_sweep(const ProjectData& data, const std::vector<std::string>& selected) {
    require_consistent(data);
    if (data.release_count() < 3)
        throw ValidationError("config_sweep needs at least 3 releases, project has " +
                              std::to_string(data.release_count()));

    const int k_max = static_cast<int>(data.release_count());
    std::vector<EvalRow> rows;
    for (auto variant : stats::kAllVariants) {
        EvalRow row;
        row.label = std::string(stats::to_string(variant));
        for (int k = 2; k <= k_max; ++k)
            predict_into(row, training_range(data, 1, k - 1), selected, stats::options_for(variant),
                         data.metrics_of(k), data.bugs_of(k));
        row.summary = try_summarize(row.records);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<WindowRow> windowed_eval(const ProjectData& data, const std::vector<std::string>& selected,
                                     const std::vector<int>& window_sizes) {
    require_consistent(data);
    const int k_max = static_cast<int>(data.release_count());
    const auto options = stats::options_for(stats::ModelVariant::lr_pc_woi);

    std::vector<WindowRow> out;
    for (int w : window_sizes) {
        if (w < 1 || w >= k_max)
            throw ValidationError("window size " + std::to_string(w) + " must be between 1 and " +
                                  std::to_string(k_max - 1));
        WindowRow wr;
        wr.window = w;
        wr.row.label = "w=" + std::to_string(w);

        std::vector<std::vector<double>> pccs(selected.size());
        for (int k = w + 1; k <= k_max; ++k) {
            auto rows = training_range(data, k - w, k - 1);
            predict_into(wr.row, rows, selected, options, data.metrics_of(k), data.bugs_of(k));
            if (w < 2)
                continue;
            std::vector<double> bugs;
            for (const auto& r : rows)
                bugs.push_back(r.bugs);
            for (std::size_t m = 0; m < selected.size(); ++m) {
                std::vector<double> xs;
                for (const auto& r : rows)
                    xs.push_back(r.metrics->at(selected[m]));
                if (auto r = stats::pearson(xs, bugs))
                    pccs[m].push_back(*r);
            }
        }
        wr.row.summary = try_summarize(wr.row.records);

        std::vector<PredictionRecord> last4;
        for (const auto& r : wr.row.records)
            if (r.release_id > k_max - 4)
                last4.push_back(r);
        wr.last4 = try_summarize(last4);

        for (std::size_t m = 0; m < selected.size(); ++m) {
            WindowPcc p;
            p.metric_id = selected[m];
            p.n = pccs[m].size();
            if (!pccs[m].empty()) {
                p.median = median_of(pccs[m]);
                p.mean = mean_of(pccs[m]);
            }
            wr.pcc.push_back(std::move(p));
        }
        out.push_back(std::move(wr));
    }
    return out;
}

std::vector<TrainingRow> cross_training_pool(const ProjectData& source, const ProjectData& target, int k,
                                            PoolCutoff cutoff) {
    const Date limit = target.timeline.at(k).freeze;
    std::vector<TrainingRow> rows;
    for (const auto& rel : source.timeline.releases) {
        const Date d = cutoff == PoolCutoff::source_freeze ? rel.freeze : rel.release;
        if (d < limit)
            rows.push_back({&source.metrics_of(rel.id), source.bugs_of(rel.id)});
    }
    auto own = training_range(target, 1, k - 1);
    rows.insert(rows.end(), own.begin(), own.end());
    return rows;
}

std::vector<stats::SelectedMetric> select_on_rows(const std::vector<TrainingRow>& rows,
                                                  const std::vector<std::string>& candidates,
                                                  const stats::SelectionPolicy& policy) {
    if (rows.size() < 2)
        throw ValidationError("metric selection needs at least 2 training releases, got " +
                              std::to_string(rows.size()));
    std::vector<MetricVector> metrics;
    BugHistory history;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        MetricVector v = *rows[i].metrics;
        v.release_id = static_cast<int>(i) + 1;
        metrics.push_back(std::move(v));
        history.releases.push_back({static_cast<int>(i) + 1, static_cast<std::size_t>(rows[i].bugs), 0});
    }
    return stats::select_metrics(stats::correlation_matrix(metrics, history, candidates), policy);
}

std::vector<EvalRow> cross_project_eval(const ProjectData& source, const ProjectData& target,
                                        const std::vector<std::string>& selected, const CrossOptions& options) {
    require_consistent(source);
    require_consistent(target);
    if (selected.empty())
        throw ValidationError("cross_project_eval: no metrics selected");

    std::size_t count = target.release_count();
    if (options.target_releases > 0)
        count = std::min(count, options.target_releases);

    EvalRow pooled;
    pooled.label = std::string(kPooledLabel);
    EvalRow alone;
    alone.label = std::string(kTargetOnlyLabel);

    for (int k = 1; k <= static_cast<int>(count); ++k) {
        auto rows = cross_training_pool(source, target, k, options.cutoff);
        auto own = training_range(target, 1, k - 1);
        if (rows.empty())
            throw ValidationError("cross_project_eval: empty training pool for target release " + std::to_string(k) +
                                  " of " + target.timeline.project);

        predict_into(pooled, rows, selected, options.fit, target.metrics_of(k), target.bugs_of(k));
        predict_into(alone, own, selected, options.fit, target.metrics_of(k), target.bugs_of(k));
    }
    pooled.summary = try_summarize(pooled.records);
    alone.summary = try_summarize(alone.records);
    return {pooled, alone};
}

}  // namespace bugforecast::eval
