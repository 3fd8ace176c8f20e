#include "bugforecast/metrics/source_tree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/hash.hpp"

namespace fs = std::filesystem;

namespace bugforecast::metrics {

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw InputNotFoundError("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

DirectoryTree::DirectoryTree(fs::path root) : root_(std::move(root)) {
    if (!fs::is_directory(root_))
        throw InputNotFoundError("not a directory: " + root_.string());
    for (auto it = fs::recursive_directory_iterator(root_); it != fs::recursive_directory_iterator(); ++it) {
        if (it->is_directory() && it->path().filename() == ".git") {
            it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file() || it->is_symlink())
            continue;
        entries_.push_back({fs::relative(it->path(), root_).generic_string(), util::sha256_hex(slurp(it->path()))});
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
}

void DirectoryTree::read(const std::vector<std::string>& paths, const Sink& sink) const {
    for (const auto& p : paths)
        sink(p, slurp(root_ / p));
}

MemoryTree::MemoryTree(std::map<std::string, std::string> files) : files_(std::move(files)) {
    for (const auto& [path, content] : files_)
        entries_.push_back({path, util::sha256_hex(content)});
}

void MemoryTree::read(const std::vector<std::string>& paths, const Sink& sink) const {
    for (const auto& p : paths) {
        auto it = files_.find(p);
        if (it == files_.end())
            throw InputNotFoundError("no such file in tree: " + p);
        sink(p, it->second);
    }
}

}  // namespace bugforecast::metrics
