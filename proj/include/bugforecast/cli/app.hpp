#pragma once

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/eval/experiments.hpp"
#include "bugforecast/stats/correlation.hpp"
#include "bugforecast/stats/regression.hpp"

namespace bugforecast::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitNotFound = 3,
    kExitValidation = 4,
    kExitExtraction = 5,
    kExitNumeric = 6,
    kExitNetwork = 7,
};

int exit_code_for(const std::exception& e);

/// Short machine-readable name of the error class, e.g. `input_not_found`.
std::string_view error_kind(const std::exception& e);

/// Flag values shared by the commands.
struct RunConfig {
    std::filesystem::path project;
    /// Override the descriptor's output and cache directories.
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> cache_dir;
    int grace_days = 14;
    stats::SelectionPolicy selection;
    /// Explicit metric ids that bypass correlation-based selection.
    std::vector<std::string> metrics;
    stats::FitOptions fit = stats::options_for(stats::ModelVariant::lr_pc_woi);
    std::string windows;  // e.g. "1..9"; empty means every valid window
    std::optional<std::filesystem::path> source;
    eval::PoolCutoff cutoff = eval::PoolCutoff::source_freeze;
    std::size_t cross_releases = 4;
};

inline constexpr int kMaxGraceDays = 365;

/// One message per flag value outside its documented range.
std::vector<std::string> validate(const RunConfig& config);

/// Output and cache directories after applying overrides, resolved against
/// the descriptor's directory.
struct ResolvedDirs {
    std::filesystem::path out;
    std::filesystem::path cache;
};

/// Entry point of the `bugforecast` executable. Logs go to stderr; data goes
/// to files under the output directory and summaries to stdout.
int run(int argc, const char* const* argv);

}  // namespace bugforecast::cli
