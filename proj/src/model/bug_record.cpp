#include "bugforecast/model/bug_record.hpp"

#include <algorithm>
#include <cctype>

#include "bugforecast/model/errors.hpp"

namespace bugforecast {

BugStatus parse_bug_status(std::string_view tracker_status) {
    std::string s;
    for (char c : tracker_status)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "open" || s == "reopened" || s == "new" || s == "todo" || s == "submitted")
        return BugStatus::open;
    if (s == "closed" || s == "resolved" || s == "done")
        return BugStatus::closed;
    return BugStatus::other;
}

std::string_view to_string(BugStatus s) {
    switch (s) {
    case BugStatus::open:
        return "open";
    case BugStatus::closed:
        return "closed";
    case BugStatus::other:
        break;
    }
    return "other";
}

void set_resolved(BugRecord& bug, std::optional<Timestamp> resolved) {
    if (!resolved || *resolved < bug.created) {
        bug.resolved.reset();
        bug.time_to_solve_hours.reset();
        return;
    }
    bug.resolved = resolved;
    bug.time_to_solve_hours = static_cast<double>((*resolved - bug.created).count()) / 3600.0;
}

const ReleaseBugCount& BugHistory::at(int release_id) const {
    if (release_id < 1 || static_cast<std::size_t>(release_id) > releases.size())
        throw ValidationError("bug history has no release " + std::to_string(release_id));
    return releases[static_cast<std::size_t>(release_id - 1)];
}

std::size_t BugHistory::total() const {
    std::size_t n = 0;
    for (const auto& r : releases)
        n += r.total();
    return n;
}

}  // namespace bugforecast
