#include "bugforecast/metrics/git_repository.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bugforecast/model/descriptor.hpp"
#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/hash.hpp"
#include "bugforecast/util/process.hpp"
#include "bugforecast/util/text.hpp"

namespace fs = std::filesystem;

namespace bugforecast::metrics {

namespace {

constexpr std::size_t kCatFileBatch = 512;

std::string git(const fs::path& dir, const std::vector<std::string>& args, std::string_view input = {}) {
    auto r = util::run_process("git", args, dir, input);
    if (r.exit_code != 0) {
        std::string cmd = "git";
        for (const auto& a : args)
            cmd += " " + a;
        throw ExtractionError(cmd + " failed in " + dir.string() + ": " + std::string(util::trim(r.err)));
    }
    return std::move(r.out);
}

std::string clone_dir_name(const std::string& url) {
    std::string base = url;
    while (!base.empty() && (base.back() == '/'))
        base.pop_back();
    base = base.substr(base.find_last_of("/:") + 1);
    if (base.size() > 4 && base.ends_with(".git"))
        base.resize(base.size() - 4);
    for (auto& c : base)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
            c = '_';
    return base + "-" + util::sha256_hex(url).substr(0, 12);
}

}  // namespace

GitRepository::GitRepository(fs::path dir, std::string branch) : dir_(std::move(dir)), branch_(std::move(branch)) {
    if (!fs::is_directory(dir_))
        throw InputNotFoundError("repository not found: " + dir_.string());
    auto probe = util::run_process("git", {"rev-parse", "--verify", "--quiet", branch_ + "^{commit}"}, dir_);
    if (probe.exit_code != 0)
        throw InputNotFoundError("no commit '" + branch_ + "' in repository " + dir_.string());
}

GitRepository GitRepository::open_or_clone(const std::string& location, const fs::path& cache_dir, std::string branch) {
    if (!is_url(location))
        return GitRepository(location, std::move(branch));
    const fs::path target = cache_dir / "repos" / clone_dir_name(location);
    if (fs::exists(target)) {
        git(target, {"fetch", "--prune", "--quiet", "origin", "+refs/heads/*:refs/heads/*"});
    } else {
        fs::create_directories(target.parent_path());
        git(target.parent_path(), {"clone", "--bare", "--quiet", location, target.string()});
    }
    return GitRepository(target, std::move(branch));
}

const std::vector<Commit>& GitRepository::mainline() const {
    if (mainline_)
        return *mainline_;
    const auto log = git(dir_, {"log", "--first-parent", "--format=%H%x1f%ct%x1f%an%x1f%ae%x1e", branch_});
    std::vector<Commit> commits;
    for (auto record : util::split_list(log, "\x1e")) {
        std::vector<std::string> f;
        std::size_t pos = 0;
        for (;;) {
            auto next = record.find('\x1f', pos);
            f.push_back(record.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
            if (next == std::string::npos)
                break;
            pos = next + 1;
        }
        if (f.size() != 4)
            throw ExtractionError("unexpected git log record: " + record);
        commits.push_back({f[0], Timestamp{std::chrono::seconds{util::parse_int(f[1])}}, f[2], f[3]});
    }
    std::reverse(commits.begin(), commits.end());
    mainline_ = std::move(commits);
    return *mainline_;
}

std::unique_ptr<SourceTree> GitRepository::tree(const std::string& commit) const {
    return std::make_unique<GitTree>(dir_, commit);
}

GitTree::GitTree(fs::path repo_dir, std::string commit) : repo_dir_(std::move(repo_dir)), commit_(std::move(commit)) {
    const auto listing = git(repo_dir_, {"ls-tree", "-r", "-z", "--full-tree", commit_});
    std::size_t pos = 0;
    while (pos < listing.size()) {
        auto end = listing.find('\0', pos);
        if (end == std::string::npos)
            end = listing.size();
        std::string_view rec(listing.data() + pos, end - pos);
        pos = end + 1;
        // "<mode> <type> <sha>\t<path>"
        const auto tab = rec.find('\t');
        if (tab == std::string_view::npos)
            continue;
        const auto meta = rec.substr(0, tab);
        const auto mode = meta.substr(0, meta.find(' '));
        if (mode == "120000" || mode == "160000")
            continue;
        const auto sha = meta.substr(meta.rfind(' ') + 1);
        entries_.push_back({std::string(rec.substr(tab + 1)), std::string(sha)});
    }
    std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
}

void GitTree::read(const std::vector<std::string>& paths, const Sink& sink) const {
    std::vector<std::string> shas;
    shas.reserve(paths.size());
    for (const auto& p : paths) {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                   [](const TreeEntry& e, const std::string& key) { return e.path < key; });
        if (it == entries_.end() || it->path != p)
            throw InputNotFoundError("no such file in " + commit_ + ": " + p);
        shas.push_back(it->digest);
    }
    for (std::size_t begin = 0; begin < paths.size(); begin += kCatFileBatch) {
        const std::size_t end = std::min(paths.size(), begin + kCatFileBatch);
        std::string request;
        for (std::size_t i = begin; i < end; ++i)
            request += shas[i] + "\n";
        const auto out = git(repo_dir_, {"cat-file", "--batch"}, request);
        std::size_t pos = 0;
        for (std::size_t i = begin; i < end; ++i) {
            // "<sha> <type> <size>\n<content>\n"
            const auto eol = out.find('\n', pos);
            if (eol == std::string::npos)
                throw ExtractionError("truncated git cat-file output");
            const std::string header = out.substr(pos, eol - pos);
            const auto space = header.rfind(' ');
            if (header.ends_with(" missing") || space == std::string::npos)
                throw ExtractionError("git object missing: " + header);
            const auto size = static_cast<std::size_t>(util::parse_int(header.substr(space + 1)));
            if (eol + 1 + size > out.size())
                throw ExtractionError("truncated git cat-file output");
            sink(paths[i], std::string_view(out).substr(eol + 1, size));
            pos = eol + 1 + size + 1;
        }
    }
}

SnapshotPair resolve_snapshots(const std::vector<Commit>& mainline, const ReleaseSpec& release) {
    const auto start = start_of_day(release.start);
    const auto freeze_end = end_of_day(release.freeze);
    const Commit* old_commit = nullptr;
    const Commit* new_commit = nullptr;
    for (const auto& c : mainline) {
        if (c.time < start && (!old_commit || c.time >= old_commit->time))
            old_commit = &c;
        if (c.time <= freeze_end && (!new_commit || c.time >= new_commit->time))
            new_commit = &c;
    }
    if (!old_commit)
        throw ExtractionError("release predates repository: " + release.name + " starts " +
                              format_date(release.start) + ", before the first main-line commit");
    SnapshotPair pair{release.id, *old_commit, *new_commit, std::nullopt};
    if (count_commits(mainline, release).commits == 0) {
        pair.new_commit = pair.old_commit;
        pair.warning = "no commits between " + format_date(release.start) + " and " + format_date(release.freeze) +
                       " for release " + release.name;
    }
    return pair;
}

CommitCounts count_commits(const std::vector<Commit>& mainline, const ReleaseSpec& release) {
    const auto start = start_of_day(release.start);
    const auto end = end_of_day(release.freeze);
    CommitCounts counts;
    std::set<std::string> authors;
    for (const auto& c : mainline)
        if (c.time >= start && c.time <= end) {
            ++counts.commits;
            authors.insert(util::to_lower(c.author_email));
        }
    counts.contributors = authors.size();
    return counts;
}

}  // namespace bugforecast::metrics
