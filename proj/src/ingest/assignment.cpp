#include "bugforecast/ingest/assignment.hpp"

#include <ostream>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast::ingest {

std::string_view to_string(AssignmentSource s) {
    return s == AssignmentSource::labeled ? "labeled" : "date_inferred";
}

Timestamp window_start(const Timeline& t, int release_id) {
    return start_of_day(t.at(release_id).freeze + std::chrono::days{1});
}

int release_for_date(const Timeline& t, Timestamp created) {
    for (int k = static_cast<int>(t.size()); k >= 2; --k)
        if (created >= window_start(t, k))
            return k;
    return 1;
}

Assignment assign_release(const BugRecord& bug, const Timeline& t) {
    if (t.releases.empty())
        throw ValidationError("cannot assign bugs against an empty timeline");
    Assignment a;
    a.bug_key = bug.key;
    if (bug.first_affected) {
        if (auto id = t.find_by_name(*bug.first_affected)) {
            a.release_id = *id;
            a.source = AssignmentSource::labeled;
            return a;
        }
        a.warning = "bug " + bug.key + ": first affected release '" + *bug.first_affected +
                    "' is not in the timeline; assigned by creation date";
    }
    const int last = static_cast<int>(t.size());
    a.release_id = release_for_date(t, bug.created);
    a.source = AssignmentSource::date_inferred;
    a.open_window = a.release_id == last && bug.created >= window_start(t, last);
    return a;
}

HistoryBuild build_bug_history(const std::vector<BugRecord>& bugs, const Timeline& t) {
    HistoryBuild out;
    for (const auto& r : t.releases)
        out.history.releases.push_back({r.id, 0, 0});
    for (const auto& bug : bugs) {
        auto a = assign_release(bug, t);
        auto& count = out.history.releases[static_cast<std::size_t>(a.release_id - 1)];
        if (a.source == AssignmentSource::labeled)
            ++count.labeled;
        else
            ++count.inferred;
        out.assignments.push_back(std::move(a));
    }
    return out;
}

void write_bug_history(std::ostream& out, const BugHistory& history, const Timeline& t) {
    util::CsvWriter w(out);
    w.row({"release_id", "release_name", "labeled", "inferred", "total"});
    for (const auto& c : history.releases)
        w.row({std::to_string(c.release_id), t.at(c.release_id).name, std::to_string(c.labeled),
               std::to_string(c.inferred), std::to_string(c.total())});
}

BugHistory read_bug_history(std::string_view text, const Timeline& t) {
    auto records = util::parse_csv(text);
    if (records.empty())
        throw ValidationError("bug history is empty");
    const auto& header = records.front().fields;
    auto col = [&](std::string_view name) {
        auto c = util::find_column(header, name);
        if (!c)
            throw ValidationError("bug history has no '" + std::string(name) + "' column");
        return *c;
    };
    const auto id_col = col("release_id"), labeled_col = col("labeled"), inferred_col = col("inferred");
    const auto total_col = col("total");

    BugHistory h;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        if (f.size() != header.size())
            throw ValidationError("bug history line " + std::to_string(records[i].line) + " has " +
                                  std::to_string(f.size()) + " fields");
        ReleaseBugCount c;
        c.release_id = static_cast<int>(util::parse_int(f[id_col]));
        const auto labeled = util::parse_int(f[labeled_col]);
        const auto inferred = util::parse_int(f[inferred_col]);
        if (labeled < 0 || inferred < 0 || labeled + inferred != util::parse_int(f[total_col]))
            throw ValidationError("bug history line " + std::to_string(records[i].line) +
                                  ": counts must be non-negative and sum to the total");
        c.labeled = static_cast<std::size_t>(labeled);
        c.inferred = static_cast<std::size_t>(inferred);
        if (c.release_id != static_cast<int>(h.releases.size()) + 1)
            throw ValidationError("bug history rows must list releases 1.." + std::to_string(t.size()) + " in order");
        h.releases.push_back(c);
    }
    if (h.releases.size() != t.size())
        throw ValidationError("bug history covers " + std::to_string(h.releases.size()) + " releases, timeline has " +
                              std::to_string(t.size()));
    return h;
}

void write_assignments(std::ostream& out, const std::vector<Assignment>& assignments, const Timeline& t) {
    util::CsvWriter w(out);
    w.row({"bug_key", "release_id", "release_name", "source", "open_window"});
    for (const auto& a : assignments)
        w.row({a.bug_key, std::to_string(a.release_id), t.at(a.release_id).name, std::string(to_string(a.source)),
               a.open_window ? "true" : "false"});
}

}  // namespace bugforecast::ingest
