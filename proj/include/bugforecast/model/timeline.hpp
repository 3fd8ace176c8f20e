#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/model/dates.hpp"

namespace bugforecast {

/// One release cycle: development from `start` to the code freeze `freeze`,
/// then debugging until the release day `release`.
struct ReleaseSpec {
    int id = 0;  // 1-based position in the timeline
    std::string name;
    Date start;
    Date freeze;
    Date release;
    bool lts = false;

    friend bool operator==(const ReleaseSpec&, const ReleaseSpec&) = default;
};

struct Timeline {
    std::string project;
    std::vector<ReleaseSpec> releases;
    std::string repo_location;
    std::string bug_export_location;
    std::vector<std::string> language_filter;
    std::vector<std::string> excluded_languages;

    friend bool operator==(const Timeline&, const Timeline&) = default;

    const ReleaseSpec& at(int id) const;
    std::size_t size() const { return releases.size(); }
    /// Case-insensitive lookup by release name.
    std::optional<int> find_by_name(std::string_view name) const;
};

struct TimelineViolation {
    int release_id = 0;  // 0 when the violation concerns the whole timeline
    std::string message;
};

/// Returns every broken ReleaseSpec/Timeline invariant. Empty means valid.
std::vector<TimelineViolation> validate_timeline(const Timeline& t);

/// Throws ValidationError listing all violations when the timeline is invalid.
void require_valid(const Timeline& t);

}  // namespace bugforecast
