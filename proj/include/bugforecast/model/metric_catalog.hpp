#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bugforecast {

enum class MetricCategory { size, change, complexity, process };
enum class LanguageScope { all, filtered };

std::string_view to_string(MetricCategory c);
std::string_view to_string(LanguageScope s);

struct MetricDef {
    std::string id;
    MetricCategory category;
    LanguageScope scope;
    std::string description;
};

/// Complexity thresholds of the catalog; a function counts when CC > threshold.
inline constexpr std::array<int, 3> kComplexityThresholds = {10, 15, 20};

/// The fixed set of 43 code metrics. Ids use the suffix `_all` for every
/// non-excluded language and `_lang` for the filtered language(s).
class MetricCatalog {
public:
    /// Bumped whenever an id, a definition or the extraction rules change; part
    /// of every metric cache key.
    static constexpr int kVersion = 1;

    static const MetricCatalog& standard();

    const std::vector<MetricDef>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(std::string_view id) const;
    const MetricDef& at(std::string_view id) const;
    std::vector<std::string> ids() const;

private:
    MetricCatalog();
    std::vector<MetricDef> entries_;
};

/// One release's measured values, keyed by metric id.
struct MetricVector {
    int release_id = 0;
    std::map<std::string, double> values;

    friend bool operator==(const MetricVector&, const MetricVector&) = default;

    /// Throws ValidationError naming the metric when it is missing.
    double at(std::string_view id) const;
};

/// Empty when every value is finite and non-negative and the keys exactly match
/// the catalog; otherwise one message per problem.
std::vector<std::string> validate_metric_vector(const MetricVector& v, const MetricCatalog& catalog);

namespace metric_ids {
inline constexpr std::string_view kCommits = "commits";
inline constexpr std::string_view kContributors = "contributors";
}  // namespace metric_ids

/// Builds `<base>_all` or `<base>_lang`.
std::string scoped_id(std::string_view base, LanguageScope scope);
/// `functions_cc_gt<threshold>` / `new_modified_functions_cc_gt<threshold>` scoped.
std::string threshold_id(std::string_view base, int threshold, LanguageScope scope);

}  // namespace bugforecast
