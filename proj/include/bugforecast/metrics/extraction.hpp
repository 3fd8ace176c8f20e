#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/metrics/git_repository.hpp"
#include "bugforecast/metrics/languages.hpp"
#include "bugforecast/metrics/tree_metrics.hpp"
#include "bugforecast/model/metric_catalog.hpp"
#include "bugforecast/model/timeline.hpp"

namespace bugforecast::metrics {

struct ExtractionOptions {
    LanguageFilter filter;
    /// Metric cache root; caching is off when empty.
    std::filesystem::path cache_dir;
};

struct ReleaseExtraction {
    MetricVector metrics;
    SnapshotPair snapshots;
    bool from_cache = false;
    std::size_t skipped_files = 0;
    std::vector<std::string> warnings;
};

/// Every catalog metric of one release. Results are cached under
/// `cache_dir/metrics`, keyed by the commit pair, the development window, the
/// language filter and the catalog version; a corrupted entry is recomputed.
ReleaseExtraction extract_release_metrics(const GitRepository& repo, const ReleaseSpec& release,
                                          const ExtractionOptions& options);

using ExtractionProgress = std::function<void(const ReleaseSpec&, const ReleaseExtraction&)>;

std::vector<ReleaseExtraction> extract_timeline_metrics(const GitRepository& repo, const Timeline& timeline,
                                                        const ExtractionOptions& options,
                                                        const ExtractionProgress& progress = {});

/// Language with the most code lines in the tree, ignoring `excluded` and
/// languages without function detection; empty when there is none.
std::string dominant_language(const SourceTree& tree, const std::vector<std::string>& excluded);

/// `release_id,release_name,<catalog ids...>`, one row per release.
void write_metrics_csv(std::ostream& out, const std::vector<MetricVector>& rows, const Timeline& timeline,
                       const MetricCatalog& catalog = MetricCatalog::standard());

/// Reads rows for releases 1..K in order and validates each vector against
/// the catalog.
std::vector<MetricVector> read_metrics_csv(std::string_view text, const Timeline& timeline,
                                           const MetricCatalog& catalog = MetricCatalog::standard());

}  // namespace bugforecast::metrics
