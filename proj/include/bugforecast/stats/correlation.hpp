#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/metric_catalog.hpp"

namespace bugforecast::stats {

/// Sample Pearson correlation coefficient. Empty when either series is
/// constant. Throws ValidationError when the lengths differ or are below 2.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Strength bands used when reporting correlations.
enum class CorrelationBand { weak, significant, high };
/// |r| > 0.7 is high, 0.4 <= |r| <= 0.7 significant, below 0.4 weak.
CorrelationBand classify(double pcc);
std::string_view to_string(CorrelationBand b);

inline constexpr std::string_view kBugsLabel = "bugs";

/// Square matrix of PCC values; labels are the metric ids followed by "bugs".
struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::optional<double>> entries;  // row-major, labels.size()^2

    std::size_t size() const { return labels.size(); }
    std::optional<double> at(std::size_t row, std::size_t col) const { return entries[row * size() + col]; }
    std::optional<std::size_t> index_of(std::string_view label) const;
    /// Correlation of `metric` with the bug series.
    std::optional<double> with_bugs(std::string_view metric) const;
};

/// Pairwise PCC among `subset` and the bug series over the releases in
/// `metrics` (bug counts are looked up in `history` by release id).
CorrelationMatrix correlation_matrix(const std::vector<MetricVector>& metrics, const BugHistory& history,
                                     const std::vector<std::string>& subset);

struct SelectionPolicy {
    double min_abs_pcc = 0.7;
    std::size_t max_count = 5;
    bool require_positive = true;
};

struct SelectedMetric {
    std::string id;
    double pcc = 0.0;
};

/// Metrics whose |PCC with bugs| reaches `min_abs_pcc`, strongest first (ties
/// keep matrix order), truncated to `max_count`. Negative correlations are
/// dropped before truncation when `require_positive` is set.
std::vector<SelectedMetric> select_metrics(const CorrelationMatrix& m, const SelectionPolicy& policy);

}  // namespace bugforecast::stats
