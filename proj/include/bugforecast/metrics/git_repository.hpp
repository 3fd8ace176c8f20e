#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/metrics/source_tree.hpp"
#include "bugforecast/model/dates.hpp"
#include "bugforecast/model/timeline.hpp"

namespace bugforecast::metrics {

struct Commit {
    std::string sha;
    Timestamp time;  // committer time
    std::string author_name;
    std::string author_email;

    friend bool operator==(const Commit&, const Commit&) = default;
};

/// A local git repository read through the `git` executable.
class GitRepository {
public:
    /// Throws InputNotFoundError when `dir` is not a git repository or
    /// `branch` does not name a commit.
    explicit GitRepository(std::filesystem::path dir, std::string branch = "HEAD");

    /// Opens a local repository, or clones a URL into `cache_dir/repos` (bare)
    /// and fetches it again when the clone already exists.
    static GitRepository open_or_clone(const std::string& location, const std::filesystem::path& cache_dir,
                                       std::string branch = "HEAD");

    const std::filesystem::path& dir() const { return dir_; }
    const std::string& branch() const { return branch_; }

    /// First-parent history of the branch, oldest first. Loaded once.
    const std::vector<Commit>& mainline() const;

    std::unique_ptr<SourceTree> tree(const std::string& commit) const;

private:
    std::filesystem::path dir_;
    std::string branch_;
    mutable std::optional<std::vector<Commit>> mainline_;
};

/// Files of one commit; digests are git blob ids.
class GitTree : public SourceTree {
public:
    GitTree(std::filesystem::path repo_dir, std::string commit);
    const std::vector<TreeEntry>& entries() const override { return entries_; }
    void read(const std::vector<std::string>& paths, const Sink& sink) const override;

private:
    std::filesystem::path repo_dir_;
    std::string commit_;
    std::vector<TreeEntry> entries_;
};

struct SnapshotPair {
    int release_id = 0;
    Commit old_commit;  // last commit before the start day
    Commit new_commit;  // last commit on or before the freeze day
    std::optional<std::string> warning;
};

/// Throws ExtractionError "release predates repository" when nothing was
/// committed before the start day. An empty development window yields
/// old == new and a warning.
SnapshotPair resolve_snapshots(const std::vector<Commit>& mainline, const ReleaseSpec& release);

struct CommitCounts {
    std::size_t commits = 0;
    std::size_t contributors = 0;  // distinct author emails, case-insensitive

    friend bool operator==(const CommitCounts&, const CommitCounts&) = default;
};

/// Main-line commits from the start of the start day through the end of the
/// freeze day.
CommitCounts count_commits(const std::vector<Commit>& mainline, const ReleaseSpec& release);

}  // namespace bugforecast::metrics
