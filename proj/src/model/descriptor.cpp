#include "bugforecast/model/descriptor.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kReleasePrefix = "release.";

std::string required(const pt::ptree& section, const std::string& section_name, const std::string& key) {
    auto it = section.find(key);
    if (it == section.not_found())
        throw ValidationError("descriptor section [" + section_name + "] is missing key '" + key + "'");
    return it->second.data();
}

std::string optional_key(const pt::ptree& section, const std::string& key, std::string fallback) {
    auto it = section.find(key);
    return it == section.not_found() ? fallback : it->second.data();
}

Date required_date(const pt::ptree& section, const std::string& section_name, const std::string& key) {
    auto text = required(section, section_name, key);
    auto d = parse_date(text);
    if (!d)
        throw ValidationError("descriptor [" + section_name + "] " + key + " is not a YYYY-MM-DD date: '" + text + "'");
    return *d;
}

bool parse_bool(const std::string& text, const std::string& where) {
    auto v = util::to_lower(util::trim(text));
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0" || v.empty())
        return false;
    throw ValidationError(where + " is not a boolean: '" + text + "'");
}

}  // namespace

std::string_view to_string(ExportFormat f) {
    return f == ExportFormat::tracker_json ? "tracker_json" : "tracker_csv";
}

ExportFormat parse_export_format(std::string_view text) {
    auto v = util::to_lower(util::trim(text));
    if (v == "tracker_json" || v == "json")
        return ExportFormat::tracker_json;
    if (v == "tracker_csv" || v == "csv")
        return ExportFormat::tracker_csv;
    throw ValidationError("unknown bug export format '" + std::string(text) + "'");
}

ProjectDescriptor read_descriptor(std::istream& in) {
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError("malformed project descriptor at line " + std::to_string(e.line()) + ": " +
                              e.message());
    }

    auto version = root.find("schema_version");
    if (version == root.not_found())
        throw ValidationError("project descriptor has no schema_version");
    if (util::parse_int(version->second.data()) != ProjectDescriptor::kSchemaVersion)
        throw ValidationError("unsupported descriptor schema_version " + version->second.data());

    auto project_it = root.find("project");
    if (project_it == root.not_found())
        throw ValidationError("project descriptor has no [project] section");
    const auto& project = project_it->second;

    ProjectDescriptor d;
    d.timeline.project = required(project, "project", "name");
    d.timeline.repo_location = optional_key(project, "repository", "");
    d.timeline.bug_export_location = optional_key(project, "bug_export", "");
    d.timeline.language_filter = util::split_list(optional_key(project, "language_filter", ""));
    d.timeline.excluded_languages = util::split_list(optional_key(project, "excluded_languages", ""));
    d.branch = optional_key(project, "branch", "HEAD");
    d.export_format = parse_export_format(optional_key(project, "bug_export_format", "tracker_json"));
    d.output_dir = optional_key(project, "output_dir", d.output_dir);
    d.cache_dir = optional_key(project, "cache_dir", d.cache_dir);

    std::map<int, ReleaseSpec> by_id;
    for (const auto& [name, section] : root) {
        if (!name.starts_with(kReleasePrefix))
            continue;
        ReleaseSpec r;
        r.id = static_cast<int>(util::parse_int(std::string_view(name).substr(kReleasePrefix.size())));
        r.name = required(section, name, "name");
        r.start = required_date(section, name, "start");
        r.freeze = required_date(section, name, "freeze");
        r.release = required_date(section, name, "release");
        r.lts = parse_bool(optional_key(section, "lts", "false"), "[" + name + "] lts");
        if (!by_id.emplace(r.id, r).second)
            throw ValidationError("duplicate release id " + std::to_string(r.id));
    }
    for (auto& [id, r] : by_id)
        d.timeline.releases.push_back(std::move(r));
    return d;
}

ProjectDescriptor read_descriptor_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputNotFoundError("project descriptor not found: " + path.string());
    return read_descriptor(in);
}

void write_descriptor(std::ostream& out, const ProjectDescriptor& d) {
    pt::ptree root;
    root.put_child(pt::ptree::path_type("schema_version", '\0'),
                   pt::ptree(std::to_string(ProjectDescriptor::kSchemaVersion)));

    pt::ptree project;
    auto put = [](pt::ptree& t, const std::string& key, const std::string& value) {
        t.push_back({key, pt::ptree(value)});
    };
    put(project, "name", d.timeline.project);
    put(project, "repository", d.timeline.repo_location);
    put(project, "branch", d.branch);
    put(project, "bug_export", d.timeline.bug_export_location);
    put(project, "bug_export_format", std::string(to_string(d.export_format)));
    put(project, "language_filter", util::join(d.timeline.language_filter, ", "));
    put(project, "excluded_languages", util::join(d.timeline.excluded_languages, ", "));
    put(project, "output_dir", d.output_dir);
    put(project, "cache_dir", d.cache_dir);
    root.push_back({"project", project});

    for (const auto& r : d.timeline.releases) {
        pt::ptree rel;
        put(rel, "name", r.name);
        put(rel, "start", format_date(r.start));
        put(rel, "freeze", format_date(r.freeze));
        put(rel, "release", format_date(r.release));
        put(rel, "lts", r.lts ? "true" : "false");
        root.push_back({std::string(kReleasePrefix) + std::to_string(r.id), rel});
    }
    pt::write_ini(out, root);
}

bool is_url(std::string_view location) {
    return location.find("://") != std::string_view::npos || location.starts_with("git@");
}

std::string resolve_location(const std::filesystem::path& base_dir, const std::string& location) {
    if (location.empty() || is_url(location))
        return location;
    std::filesystem::path p(location);
    if (p.is_absolute())
        return p.lexically_normal().string();
    return (base_dir / p).lexically_normal().string();
}

}  // namespace bugforecast
