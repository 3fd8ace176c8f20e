#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/descriptor.hpp"
#include "bugforecast/model/metric_catalog.hpp"
#include "bugforecast/synth/fast_import.hpp"

namespace bugforecast::synth {

/// Bugs of a release as a linear function of its process and size metrics.
struct BugLaw {
    double per_commit = 0.1;
    double per_new_loc = 0.05;  // new code lines over all languages
};

struct SynthOptions {
    std::string project = "synthetic";
    int releases = 10;
    std::uint64_t seed = 1;
    Date first_start = std::chrono::year{2017} / 5 / 15;
    int cadence_days = 182;
    int development_days = 135;
    /// Multiplies the amount of activity in every release.
    double scale = 1.0;
    BugLaw law;
    /// Multiplicative noise, uniform in [-noise, +noise].
    double noise = 0.05;
    /// First release governed by `changed_law`, if any.
    std::optional<int> regime_change;
    BugLaw changed_law{0.25, 0.1};
    /// Share of bugs that carry an affected-release label.
    double labeled_share = 0.6;
};

/// A planned project: its history, tracker export and the values every
/// pipeline stage should recover from them.
struct SynthProject {
    ProjectDescriptor descriptor;
    std::vector<ScriptedCommit> commits;
    std::string bug_export;  // tracker JSON
    std::vector<MetricVector> metrics;
    BugHistory bugs;
};

/// Deterministic for given options.
SynthProject plan_project(const SynthOptions& options);

/// Writes `project.ini`, `repo/`, `bugs.json` and the planted values under
/// `truth/` (`metrics.csv`, `bug_history.csv`) into `dir`.
void write_project(const std::filesystem::path& dir, const SynthProject& project);

}  // namespace bugforecast::synth
