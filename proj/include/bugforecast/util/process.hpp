#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bugforecast::util {

struct ProcessResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Runs `program` (a path, or a name looked up on PATH) with `args`, feeding `input` on stdin
/// and capturing both output streams. Throws Error if the program cannot be
/// started; a non-zero exit is reported in the result.
ProcessResult run_process(const std::string& program, const std::vector<std::string>& args,
                          const std::filesystem::path& working_dir = {}, std::string_view input = {});

}  // namespace bugforecast::util
