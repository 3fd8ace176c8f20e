#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/model/dates.hpp"

namespace bugforecast {

enum class BugStatus { open, closed, other };

BugStatus parse_bug_status(std::string_view tracker_status);
std::string_view to_string(BugStatus s);

/// One tracker issue of type Bug. Optional fields that were missing or could
/// not be parsed stay empty rather than defaulted.
struct BugRecord {
    std::string key;
    std::string subproject;
    BugStatus status = BugStatus::other;
    std::string priority;
    std::vector<std::string> affected_releases;
    std::optional<std::string> first_affected;
    std::string resolution;
    Timestamp created{};
    std::optional<Timestamp> resolved;
    std::optional<double> time_to_solve_hours;

    friend bool operator==(const BugRecord&, const BugRecord&) = default;
};

/// Sets `resolved` and the derived `time_to_solve_hours` together so the two
/// can never disagree. A resolution before creation leaves both absent.
void set_resolved(BugRecord& bug, std::optional<Timestamp> resolved);

struct ReleaseBugCount {
    int release_id = 0;
    std::size_t labeled = 0;
    std::size_t inferred = 0;
    std::size_t total() const { return labeled + inferred; }

    friend bool operator==(const ReleaseBugCount&, const ReleaseBugCount&) = default;
};

/// Per-release bug counts, indexed by release id - 1.
struct BugHistory {
    std::vector<ReleaseBugCount> releases;

    friend bool operator==(const BugHistory&, const BugHistory&) = default;

    const ReleaseBugCount& at(int release_id) const;
    std::size_t total() const;
};

}  // namespace bugforecast
