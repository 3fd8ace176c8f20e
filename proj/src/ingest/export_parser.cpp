#include "bugforecast/ingest/export_parser.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast::ingest {

namespace {

using nlohmann::json;

constexpr const char* kUnresolved = "Unresolved";

// A JSON value that names something: a plain string or an object carrying
// "name" (Jira's convention) or "value" (custom select fields).
std::optional<std::string> name_of(const json& v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_object()) {
        for (const char* k : {"name", "value"})
            if (auto it = v.find(k); it != v.end() && it->is_string())
                return it->get<std::string>();
    }
    return std::nullopt;
}

std::optional<std::string> field_name(const json& fields, const char* key) {
    auto it = fields.find(key);
    if (it == fields.end() || it->is_null())
        return std::nullopt;
    return name_of(*it);
}

std::string key_prefix(std::string_view key) {
    auto dash = key.rfind('-');
    return std::string(dash == std::string_view::npos ? key : key.substr(0, dash));
}

// Maps one JSON issue; throws ValidationError with a reason when it cannot.
RawIssue raw_from_json(const json& issue) {
    if (!issue.is_object())
        throw ValidationError("issue is not an object");
    auto key = issue.find("key");
    if (key == issue.end() || !key->is_string() || key->get<std::string>().empty())
        throw ValidationError("missing issue key");
    auto fields_it = issue.find("fields");
    if (fields_it == issue.end() || !fields_it->is_object())
        throw ValidationError("issue " + key->get<std::string>() + " has no fields object");
    const json& fields = *fields_it;

    RawIssue raw;
    raw.fields[field::kKey] = {key->get<std::string>()};
    auto type = field_name(fields, "issuetype");
    if (!type || util::trim(*type).empty())
        throw ValidationError("issue " + key->get<std::string>() + " has no issue type");
    raw.issue_type = std::string(util::trim(*type));

    auto created = field_name(fields, "created");
    auto created_ts = created ? parse_timestamp(*created) : std::nullopt;
    if (!created_ts)
        throw ValidationError("issue " + key->get<std::string>() + " has no parseable creation date");
    raw.created = *created_ts;

    if (auto project = fields.find("project"); project != fields.end() && project->is_object()) {
        if (auto pk = project->find("key"); pk != project->end() && pk->is_string())
            raw.fields[field::kSubproject] = {pk->get<std::string>()};
    }
    if (!raw.fields.count(field::kSubproject))
        raw.fields[field::kSubproject] = {key_prefix(key->get<std::string>())};

    if (auto s = field_name(fields, "status"))
        raw.fields[field::kStatus] = {*s};
    if (auto p = field_name(fields, "priority"))
        raw.fields[field::kPriority] = {*p};
    raw.fields[field::kResolution] = {field_name(fields, "resolution").value_or(kUnresolved)};
    if (auto r = field_name(fields, "resolutiondate"))
        raw.fields[field::kResolved] = {*r};

    if (auto versions = fields.find("versions"); versions != fields.end() && versions->is_array()) {
        auto& out = raw.fields[field::kAffected];
        for (const auto& v : *versions)
            if (auto n = name_of(v))
                out.push_back(*n);
    }
    for (const char* k : {"firstAffectedVersion", "firstAffectedRelease", "first_affected"})
        if (auto f = field_name(fields, k)) {
            raw.fields[field::kFirstAffected] = {*f};
            break;
        }
    return raw;
}

struct CsvColumn {
    const char* canonical;
    std::vector<std::string_view> aliases;
    bool multi = false;
};

const std::vector<CsvColumn>& csv_columns() {
    static const std::vector<CsvColumn> columns{
        {"issue_type", {"issue type", "issuetype", "type"}},
        {field::kKey, {"issue key", "key"}},
        {"created", {"created", "create date"}},
        {field::kSubproject, {"project key", "sub-project name", "subproject", "project"}},
        {field::kStatus, {"status"}},
        {field::kPriority, {"priority"}},
        {field::kResolution, {"resolution"}},
        {field::kResolved, {"resolved", "resolved date", "resolutiondate"}},
        {field::kAffected, {"affects version/s", "affected releases", "affected versions", "versions"}, true},
        {field::kFirstAffected, {"first affected release", "first affected version"}},
    };
    return columns;
}

std::string lowered_header(std::string_view h) { return util::to_lower(util::trim(h)); }

}  // namespace

bool natural_key_less(std::string_view a, std::string_view b) {
    auto split = [](std::string_view k) {
        std::size_t i = k.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(k[i - 1])))
            --i;
        return std::pair{k.substr(0, i), k.substr(i)};
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb)
        return pa < pb;
    // Compare digit strings numerically without overflow: strip leading zeros,
    // then shorter is smaller.
    auto strip = [](std::string_view n) {
        while (n.size() > 1 && n.front() == '0')
            n.remove_prefix(1);
        return n;
    };
    auto sa = strip(na), sb = strip(nb);
    if (sa.size() != sb.size())
        return sa.size() < sb.size();
    if (sa != sb)
        return sa < sb;
    return a < b;
}

std::vector<RawIssue> read_json_issues(std::string_view text, std::vector<ParseWarning>& warnings) {
    if (util::trim(text).empty())
        return {};
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON export: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    const json* issues = &doc;
    if (doc.is_object()) {
        auto it = doc.find("issues");
        if (it == doc.end())
            throw ParseError("JSON export object has no \"issues\" array", 0);
        issues = &*it;
    }
    if (!issues->is_array())
        throw ParseError("JSON export must be an array of issues", 0);

    std::vector<RawIssue> out;
    std::size_t index = 0;
    for (const auto& issue : *issues) {
        try {
            out.push_back(raw_from_json(issue));
        } catch (const ValidationError& e) {
            warnings.push_back({index, 0, e.what()});
        }
        ++index;
    }
    return out;
}

std::vector<RawIssue> read_csv_issues(std::string_view text, std::vector<ParseWarning>& warnings) {
    auto records = util::parse_csv(text);
    if (records.empty())
        return {};
    const auto& header = records.front().fields;

    // canonical name -> every column index carrying it (Jira repeats
    // "Affects Version/s" once per value)
    std::map<std::string, std::vector<std::size_t>> columns;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto h = lowered_header(header[i]);
        for (const auto& c : csv_columns())
            if (std::find(c.aliases.begin(), c.aliases.end(), h) != c.aliases.end())
                columns[c.canonical].push_back(i);
    }
    for (const char* required : {"issue_type", field::kKey, "created"})
        if (!columns.count(required))
            throw ParseError(std::string("CSV export header has no column for ") + required, 0);

    std::vector<RawIssue> out;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t index = r - 1;
        if (rec.fields.size() != header.size()) {
            warnings.push_back({index, rec.line,
                                "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(rec.fields.size())});
            continue;
        }
        auto cell = [&](const std::string& name) -> std::string {
            auto it = columns.find(name);
            if (it == columns.end())
                return {};
            return std::string(util::trim(rec.fields[it->second.front()]));
        };

        RawIssue raw;
        raw.issue_type = cell("issue_type");
        const auto key = cell(field::kKey);
        if (key.empty() || raw.issue_type.empty()) {
            warnings.push_back({index, rec.line, "missing issue key or type"});
            continue;
        }
        auto created = parse_timestamp(cell("created"));
        if (!created) {
            warnings.push_back({index, rec.line, "issue " + key + " has no parseable creation date"});
            continue;
        }
        raw.created = *created;
        raw.fields[field::kKey] = {key};

        for (const auto& c : csv_columns()) {
            auto it = columns.find(c.canonical);
            if (it == columns.end() || std::string_view(c.canonical) == field::kKey)
                continue;
            if (c.multi) {
                auto& values = raw.fields[c.canonical];
                for (auto idx : it->second)
                    for (auto& v : util::split_list(rec.fields[idx], ",;"))
                        values.push_back(std::move(v));
            } else if (auto v = cell(c.canonical); !v.empty()) {
                raw.fields[c.canonical] = {v};
            }
        }
        if (!raw.fields.count(field::kSubproject))
            raw.fields[field::kSubproject] = {key_prefix(key)};
        if (!raw.fields.count(field::kResolution))
            raw.fields[field::kResolution] = {kUnresolved};
        out.push_back(std::move(raw));
    }
    return out;
}

ParsedExport parse_bug_export(std::istream& in, ExportFormat format, const ParseOptions& options) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    ParsedExport result;
    auto raws = format == ExportFormat::tracker_json ? read_json_issues(text, result.warnings)
                                                     : read_csv_issues(text, result.warnings);

    auto single = [](const RawIssue& raw, const char* name) -> std::string {
        auto it = raw.fields.find(name);
        return it == raw.fields.end() || it->second.empty() ? std::string{} : it->second.front();
    };

    std::size_t index = 0;
    for (const auto& raw : raws) {
        const bool is_bug = std::any_of(options.bug_types.begin(), options.bug_types.end(),
                                        [&](const std::string& t) { return util::iequals(t, raw.issue_type); });
        if (!is_bug) {
            ++result.non_bug_count;
            ++result.non_bug_types[raw.issue_type];
            ++index;
            continue;
        }
        BugRecord bug;
        bug.key = single(raw, field::kKey);
        bug.subproject = single(raw, field::kSubproject);
        bug.status = parse_bug_status(single(raw, field::kStatus));
        bug.priority = single(raw, field::kPriority);
        bug.resolution = single(raw, field::kResolution);
        bug.created = raw.created;
        if (auto it = raw.fields.find(field::kAffected); it != raw.fields.end())
            bug.affected_releases = it->second;

        if (auto explicit_first = single(raw, field::kFirstAffected); !explicit_first.empty()) {
            bug.first_affected = explicit_first;
        } else if (!bug.affected_releases.empty()) {
            bug.first_affected = bug.affected_releases.front();
            if (options.timeline) {
                std::optional<int> earliest;
                for (const auto& name : bug.affected_releases)
                    if (auto id = options.timeline->find_by_name(name); id && (!earliest || *id < *earliest)) {
                        earliest = id;
                        bug.first_affected = name;
                    }
            }
        }

        if (auto resolved_text = single(raw, field::kResolved); !resolved_text.empty()) {
            auto resolved = parse_timestamp(resolved_text);
            if (!resolved)
                result.warnings.push_back({index, 0, "issue " + bug.key + ": unparseable resolution date '" +
                                                         resolved_text + "' ignored"});
            set_resolved(bug, resolved);
        }
        result.bugs.push_back(std::move(bug));
        ++index;
    }
    std::stable_sort(result.bugs.begin(), result.bugs.end(),
                     [](const BugRecord& a, const BugRecord& b) { return natural_key_less(a.key, b.key); });
    return result;
}

}  // namespace bugforecast::ingest
