#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/timeline.hpp"

namespace bugforecast::ingest {

enum class AssignmentSource { labeled, date_inferred };
std::string_view to_string(AssignmentSource s);

struct Assignment {
    std::string bug_key;
    int release_id = 0;
    AssignmentSource source = AssignmentSource::date_inferred;
    /// Date-inferred into the last release, whose window is open-ended.
    bool open_window = false;
    /// Set when a first-affected label was present but unknown.
    std::optional<std::string> warning;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Start of the date window of each release. A code-freeze date covers the
/// whole day, so release k's window opens at midnight after t_f(k) and runs
/// until release k+1's opens; the last window is unbounded.
Timestamp window_start(const Timeline& t, int release_id);

/// Release whose window contains `created`; anything before the first
/// window goes to release 1.
int release_for_date(const Timeline& t, Timestamp created);

/// A usable first-affected label wins; otherwise the date rule applies.
Assignment assign_release(const BugRecord& bug, const Timeline& t);

struct HistoryBuild {
    BugHistory history;
    std::vector<Assignment> assignments;  // input order
};

HistoryBuild build_bug_history(const std::vector<BugRecord>& bugs, const Timeline& t);

/// release_id,release_name,labeled,inferred,total
void write_bug_history(std::ostream& out, const BugHistory& history, const Timeline& t);
/// Reads the format above back; release ids must cover 1..t.size().
BugHistory read_bug_history(std::string_view text, const Timeline& t);

/// bug_key,release_id,release_name,source,open_window
void write_assignments(std::ostream& out, const std::vector<Assignment>& assignments, const Timeline& t);

}  // namespace bugforecast::ingest
