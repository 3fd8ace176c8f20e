#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bugforecast::metrics {

struct TreeEntry {
    std::string path;    // relative, '/'-separated
    std::string digest;  // equal digests mean equal content within one tree kind
};

/// A read-only file tree: a working directory, a commit, or an in-memory map.
class SourceTree {
public:
    using Sink = std::function<void(const std::string& path, std::string_view content)>;

    virtual ~SourceTree() = default;

    /// Regular files sorted by path.
    virtual const std::vector<TreeEntry>& entries() const = 0;

    /// Calls `sink` once per requested path, in request order.
    virtual void read(const std::vector<std::string>& paths, const Sink& sink) const = 0;
};

/// Files below a directory; `.git` is skipped and symlinks are not followed.
class DirectoryTree : public SourceTree {
public:
    explicit DirectoryTree(std::filesystem::path root);
    const std::vector<TreeEntry>& entries() const override { return entries_; }
    void read(const std::vector<std::string>& paths, const Sink& sink) const override;

private:
    std::filesystem::path root_;
    std::vector<TreeEntry> entries_;
};

class MemoryTree : public SourceTree {
public:
    MemoryTree() = default;
    explicit MemoryTree(std::map<std::string, std::string> files);
    const std::vector<TreeEntry>& entries() const override { return entries_; }
    void read(const std::vector<std::string>& paths, const Sink& sink) const override;

private:
    std::map<std::string, std::string> files_;
    std::vector<TreeEntry> entries_;
};

}  // namespace bugforecast::metrics
