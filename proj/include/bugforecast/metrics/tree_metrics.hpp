#pragma once

#include <map>
#include <string>
#include <vector>

#include "bugforecast/metrics/complexity.hpp"
#include "bugforecast/metrics/languages.hpp"
#include "bugforecast/metrics/line_diff.hpp"
#include "bugforecast/metrics/source_tree.hpp"
#include "bugforecast/model/metric_catalog.hpp"

namespace bugforecast::metrics {

/// Measurements of one language scope.
struct ScopeMetrics {
    // Size of the new tree.
    std::size_t loc = 0;
    std::size_t files = 0;
    // Changes from the old tree to the new one.
    LineChanges lines;
    std::size_t new_files = 0;
    std::size_t modified_files = 0;  // present in both trees with different content
    std::size_t removed_files = 0;
    // Functions of the new tree, and the new or modified ones among them.
    ComplexityCounts functions;
    ComplexityCounts changed_functions;

    friend bool operator==(const ScopeMetrics&, const ScopeMetrics&) = default;
};

struct TreeMeasurement {
    ScopeMetrics all;
    ScopeMetrics filtered;
    /// Code lines per language in the new tree (excluded languages omitted).
    std::map<std::string, std::size_t> loc_by_language;
    /// Functions of the new tree in non-excluded languages.
    std::vector<FunctionRecord> functions;
    std::size_t binary_files = 0;
    /// Files whose function scan failed; their functions are not counted.
    std::size_t skipped_files = 0;
    std::vector<std::string> warnings;
};

/// Measures `after` and its differences from `before` in one pass. Files are
/// matched by path; excluded languages are ignored and binary files skipped.
TreeMeasurement measure_trees(const SourceTree& before, const SourceTree& after, const LanguageFilter& filter);

/// Size and complexity of a single tree.
TreeMeasurement measure_tree(const SourceTree& tree, const LanguageFilter& filter);

/// Counts of new or modified functions in `after`, per scope.
struct ChangedFunctionCounts {
    ComplexityCounts all;
    ComplexityCounts filtered;
};
ChangedFunctionCounts changed_function_metrics(const std::vector<FunctionRecord>& before,
                                               const std::vector<FunctionRecord>& after,
                                               const LanguageFilter& filter);

/// Writes every size, change and complexity metric of the catalog, including
/// the derived sums, into `out`. Process metrics are left untouched.
void fill_code_metrics(const TreeMeasurement& m, MetricVector& out);

}  // namespace bugforecast::metrics
