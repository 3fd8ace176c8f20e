#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/model/dates.hpp"

namespace bugforecast::synth {

struct FileChange {
    std::string path;
    std::optional<std::string> content;  // nullopt deletes the file
};

struct ScriptedCommit {
    Timestamp time;  // used as both author and committer time
    std::string author_name;
    std::string author_email;
    std::string message;
    std::vector<FileChange> changes;
};

/// Creates a fresh repository at `dir` whose `branch` holds `commits` as a
/// linear history, and points HEAD at it.
void write_repository(const std::filesystem::path& dir, const std::vector<ScriptedCommit>& commits,
                      const std::string& branch = "main");

}  // namespace bugforecast::synth
