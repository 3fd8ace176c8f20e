#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/descriptor.hpp"
#include "bugforecast/model/timeline.hpp"

namespace bugforecast::ingest {

/// One tracker issue before type filtering. Multi-valued fields (affected
/// versions) keep every value; single-valued fields hold one entry.
struct RawIssue {
    std::string issue_type;
    std::map<std::string, std::vector<std::string>> fields;
    Timestamp created{};
};

/// Canonical field names used in RawIssue::fields.
namespace field {
inline constexpr const char* kKey = "key";
inline constexpr const char* kSubproject = "subproject";
inline constexpr const char* kStatus = "status";
inline constexpr const char* kPriority = "priority";
inline constexpr const char* kAffected = "affected_releases";
inline constexpr const char* kFirstAffected = "first_affected";
inline constexpr const char* kResolution = "resolution";
inline constexpr const char* kResolved = "resolved";
}  // namespace field

struct ParseWarning {
    std::size_t record_index = 0;  // 0-based position among the export's records
    std::size_t line = 0;          // CSV line, 0 for JSON
    std::string message;
};

struct ParseOptions {
    /// Issue types counted as bugs (case-insensitive exact match).
    std::vector<std::string> bug_types{"Bug"};
    /// When set, the first affected release is the earliest listed release in
    /// timeline order; otherwise the first listed one.
    const Timeline* timeline = nullptr;
};

struct ParsedExport {
    std::vector<BugRecord> bugs;  // sorted by key (natural order)
    std::size_t non_bug_count = 0;
    std::map<std::string, std::size_t> non_bug_types;
    std::vector<ParseWarning> warnings;
};

/// Reads a JSON (array of issues or {"issues": [...]}) or CSV export. Records
/// that cannot be mapped are skipped with a warning; a stream that cannot be
/// parsed at all throws ParseError with the failing byte offset.
ParsedExport parse_bug_export(std::istream& in, ExportFormat format, const ParseOptions& options = {});

std::vector<RawIssue> read_json_issues(std::string_view text, std::vector<ParseWarning>& warnings);
std::vector<RawIssue> read_csv_issues(std::string_view text, std::vector<ParseWarning>& warnings);

/// "AAF-2" before "AAF-10": keys compare by prefix, then by numeric suffix.
bool natural_key_less(std::string_view a, std::string_view b);

}  // namespace bugforecast::ingest
