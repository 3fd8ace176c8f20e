#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "bugforecast/model/timeline.hpp"

namespace bugforecast {

enum class ExportFormat { tracker_json, tracker_csv };

std::string_view to_string(ExportFormat f);
ExportFormat parse_export_format(std::string_view text);

/// Everything a project descriptor file holds: the timeline plus where the
/// pipeline reads and writes.
///
/// File layout (INI style, whole-line `;` or `#` comments):
///
///     schema_version = 1
///     [project]
///     name = ONAP
///     ; local path or clone URL
///     repository = ../onap-repo
///     branch = HEAD
///     bug_export = bugs.json
///     ; tracker_json or tracker_csv
///     bug_export_format = tracker_json
///     language_filter = Java
///     excluded_languages = YAML, XML
///     output_dir = out
///     cache_dir = .bugforecast-cache
///     [release.1]
///     name = Amsterdam
///     start = 2017-04-01
///     freeze = 2017-09-28
///     release = 2017-11-16
///     lts = false
///
/// Relative paths are resolved against the descriptor's directory.
struct ProjectDescriptor {
    static constexpr int kSchemaVersion = 1;

    Timeline timeline;
    std::string branch = "HEAD";
    ExportFormat export_format = ExportFormat::tracker_json;
    std::string output_dir = "out";
    std::string cache_dir = ".bugforecast-cache";

    friend bool operator==(const ProjectDescriptor&, const ProjectDescriptor&) = default;
};

ProjectDescriptor read_descriptor(std::istream& in);
/// Throws InputNotFoundError when the file does not exist.
ProjectDescriptor read_descriptor_file(const std::filesystem::path& path);
void write_descriptor(std::ostream& out, const ProjectDescriptor& d);

/// Resolves `location` against `base_dir` unless it is absolute or a URL.
std::string resolve_location(const std::filesystem::path& base_dir, const std::string& location);
bool is_url(std::string_view location);

}  // namespace bugforecast
