#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/metric_catalog.hpp"
#include "bugforecast/model/timeline.hpp"
#include "bugforecast/stats/correlation.hpp"
#include "bugforecast/stats/regression.hpp"

namespace bugforecast::eval {

/// Releases, their metric vectors and bug history for one project.
struct ProjectData {
    Timeline timeline;
    std::vector<MetricVector> metrics;  // metrics[i].release_id == i + 1
    BugHistory history;

    std::size_t release_count() const { return metrics.size(); }
    const MetricVector& metrics_of(int release_id) const;
    double bugs_of(int release_id) const;
};

/// Checks that metrics and history line up with the timeline.
void require_consistent(const ProjectData& data);

/// Errors above this value are counted as outliers in every summary.
inline constexpr double kOutlierError = 5.0;

struct ErrorSummary {
    double median = 0;
    double mean = 0;
    double max = 0;
    double min = 0;
    std::size_t n = 0;
    std::size_t outliers = 0;

    friend bool operator==(const ErrorSummary&, const ErrorSummary&) = default;
};

/// Order statistics over the defined errors. Throws ValidationError when no
/// record has a defined error.
ErrorSummary summarize(const std::vector<stats::PredictionRecord>& records);

struct MissingPrediction {
    int release_id = 0;
    std::string reason;

    friend bool operator==(const MissingPrediction&, const MissingPrediction&) = default;
};

struct EvalRow {
    std::string label;
    std::vector<stats::PredictionRecord> records;
    /// Releases whose fit or prediction failed; they still count as attempted.
    std::vector<MissingPrediction> missing;
    /// Empty when no record has a defined error.
    std::optional<ErrorSummary> summary;

    friend bool operator==(const EvalRow&, const EvalRow&) = default;
};

/// BLR, LR-PC, LR-woI and LR-PC+woI: for every release k >= 2, fit on
/// releases 1..k-1 and predict k.
std::vector<EvalRow> config_sweep(const ProjectData& data, const std::vector<std::string>& selected);

struct WindowPcc {
    std::string metric_id;
    std::optional<double> median;
    std::optional<double> mean;
    std::size_t n = 0;  // windows with a defined PCC

    friend bool operator==(const WindowPcc&, const WindowPcc&) = default;
};

struct WindowRow {
    int window = 0;
    EvalRow row;
    /// Summary over predictions of the last four releases only.
    std::optional<ErrorSummary> last4;
    std::vector<WindowPcc> pcc;

    friend bool operator==(const WindowRow&, const WindowRow&) = default;
};

/// For each window w and release k > w, fits LR-PC+woI on releases
/// k-w..k-1 and predicts k. Also reports the median/mean PCC of each selected
/// metric with bugs over the same training windows.
std::vector<WindowRow> windowed_eval(const ProjectData& data, const std::vector<std::string>& selected,
                                     const std::vector<int>& window_sizes);

/// Which source-release date must precede the target release's code freeze
/// for the source release to join the training pool.
enum class PoolCutoff { source_freeze, source_release };

struct CrossOptions {
    PoolCutoff cutoff = PoolCutoff::source_freeze;
    /// Number of leading target releases to predict; 0 means all.
    std::size_t target_releases = 4;
    stats::FitOptions fit = stats::options_for(stats::ModelVariant::lr_pc_woi);
};

/// Predicts the first target releases from a pool of source releases (by
/// date) plus the earlier target releases. Returns the pooled row and, for
/// comparison, a target-only row over the same releases. Throws
/// ValidationError when a release has an empty training pool.
std::vector<EvalRow> cross_project_eval(const ProjectData& source, const ProjectData& target,
                                        const std::vector<std::string>& selected, const CrossOptions& options = {});

/// Training rows for target release k: source releases whose cutoff date
/// precedes the target release's freeze, then target releases 1..k-1.
std::vector<stats::TrainingRow> cross_training_pool(const ProjectData& source, const ProjectData& target, int k,
                                                    PoolCutoff cutoff);

/// Ranks `candidates` by their PCC with bugs over `rows` and applies `policy`.
std::vector<stats::SelectedMetric> select_on_rows(const std::vector<stats::TrainingRow>& rows,
                                                  const std::vector<std::string>& candidates,
                                                  const stats::SelectionPolicy& policy);

inline constexpr std::string_view kPooledLabel = "source+target";
inline constexpr std::string_view kTargetOnlyLabel = "target-only";

}  // namespace bugforecast::eval
