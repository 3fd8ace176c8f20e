#include "bugforecast/metrics/tree_metrics.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "bugforecast/metrics/lexer.hpp"
#include "bugforecast/model/errors.hpp"

namespace bugforecast::metrics {

namespace {

constexpr std::size_t kReadBatch = 256;

struct FileAnalysis {
    bool binary = false;
    std::size_t loc = 0;
    std::vector<std::string> lines;  // kept only when a diff needs them
    std::vector<FunctionRecord> functions;
    std::optional<std::string> scan_error;
};

FileAnalysis analyze(const std::string& path, std::string_view content, const Language& lang, bool keep_lines,
                     bool scan) {
    FileAnalysis a;
    if (looks_binary(content)) {
        a.binary = true;
        return a;
    }
    const auto stripped = strip_comments(content, lang);
    a.loc = stripped.count(LineKind::code);
    if (keep_lines)
        a.lines = code_lines(stripped);
    if (scan) {
        try {
            a.functions = scan_functions(stripped, lang, path);
        } catch (const ExtractionError& e) {
            a.scan_error = e.what();
        }
    }
    return a;
}

class Measurer {
public:
    Measurer(const LanguageFilter& filter) : filter_(filter) {}

    void run(const SourceTree& before, const SourceTree& after) {
        std::unordered_map<std::string, const TreeEntry*> old_index;
        for (const auto& e : before.entries())
            if (!filter_.is_excluded(language_for_path(e.path).name))
                old_index.emplace(e.path, &e);

        std::vector<const TreeEntry*> fresh;
        for (const auto& e : after.entries()) {
            if (filter_.is_excluded(language_for_path(e.path).name))
                continue;
            fresh.push_back(&e);
            old_index.erase(e.path);  // what remains afterwards exists only in `before`
        }
        std::unordered_map<std::string, const TreeEntry*> old_all;
        for (const auto& e : before.entries())
            old_all.emplace(e.path, &e);

        for (std::size_t b = 0; b < fresh.size(); b += kReadBatch) {
            const std::size_t end = std::min(fresh.size(), b + kReadBatch);
            std::vector<std::string> paths, changed;
            for (std::size_t i = b; i < end; ++i) {
                paths.push_back(fresh[i]->path);
                auto it = old_all.find(fresh[i]->path);
                if (it != old_all.end() && it->second->digest != fresh[i]->digest)
                    changed.push_back(fresh[i]->path);
            }
            std::unordered_map<std::string, std::string> old_content;
            before.read(changed, [&](const std::string& p, std::string_view c) { old_content.emplace(p, c); });
            after.read(paths, [&](const std::string& p, std::string_view c) {
                const bool existed = old_all.contains(p);
                auto it = old_content.find(p);
                on_new_file(p, c, existed, it == old_content.end() ? nullptr : &it->second);
            });
        }

        std::vector<std::string> removed;
        for (const auto& e : before.entries())
            if (old_index.contains(e.path))
                removed.push_back(e.path);
        for (std::size_t b = 0; b < removed.size(); b += kReadBatch) {
            const std::vector<std::string> batch(removed.begin() + static_cast<std::ptrdiff_t>(b),
                                                 removed.begin() + static_cast<std::ptrdiff_t>(std::min(removed.size(), b + kReadBatch)));
            before.read(batch, [&](const std::string& p, std::string_view c) { on_removed_file(p, c); });
        }
        if (m_.binary_files > 0)
            m_.warnings.push_back(std::to_string(m_.binary_files) + " binary files skipped");
    }

    TreeMeasurement take() { return std::move(m_); }

private:
    template <typename F>
    void for_scopes(const Language& lang, F&& f) {
        f(m_.all);
        if (filter_.is_filtered(lang.name))
            f(m_.filtered);
    }

    void scan_failed(const std::string& path, const std::string& why) {
        ++m_.skipped_files;
        m_.warnings.push_back("function scan skipped " + path + ": " + why);
    }

    void on_new_file(const std::string& path, std::string_view content, bool existed, const std::string* old) {
        const auto& lang = language_for_path(path);
        const bool scan = lang.dialect != Dialect::none;
        auto now = analyze(path, content, lang, old != nullptr, scan);
        if (now.binary) {
            ++m_.binary_files;
            return;
        }
        if (now.scan_error)
            scan_failed(path, *now.scan_error);

        m_.loc_by_language[lang.name] += now.loc;
        std::optional<FileAnalysis> prev;
        if (old && *old != content) {
            prev = analyze(path, *old, lang, true, scan);
            if (prev->binary)
                prev.reset();
        }
        const bool modified = existed && old && *old != content;
        const auto changed = !existed ? now.functions
                             : prev && !prev->scan_error && !now.scan_error
                                 ? changed_functions(prev->functions, now.functions)
                                 : std::vector<FunctionRecord>{};
        LineChanges diff;
        if (!existed)
            diff.added = now.loc;
        else if (prev)
            diff = diff_lines(prev->lines, now.lines);

        for_scopes(lang, [&](ScopeMetrics& s) {
            s.loc += now.loc;
            ++s.files;
            s.lines += diff;
            s.new_files += existed ? 0 : 1;
            s.modified_files += modified ? 1 : 0;
            for (const auto& f : now.functions)
                s.functions.add(f.cc);
            for (const auto& f : changed)
                s.changed_functions.add(f.cc);
        });
        m_.functions.insert(m_.functions.end(), std::make_move_iterator(now.functions.begin()),
                            std::make_move_iterator(now.functions.end()));
    }

    void on_removed_file(const std::string& path, std::string_view content) {
        const auto& lang = language_for_path(path);
        const auto gone = analyze(path, content, lang, false, false);
        if (gone.binary)
            return;
        for_scopes(lang, [&](ScopeMetrics& s) {
            s.lines.removed += gone.loc;
            ++s.removed_files;
        });
    }

    const LanguageFilter& filter_;
    TreeMeasurement m_;
};

}  // namespace

TreeMeasurement measure_trees(const SourceTree& before, const SourceTree& after, const LanguageFilter& filter) {
    Measurer m(filter);
    m.run(before, after);
    return m.take();
}

TreeMeasurement measure_tree(const SourceTree& tree, const LanguageFilter& filter) {
    return measure_trees(MemoryTree{}, tree, filter);
}

ChangedFunctionCounts changed_function_metrics(const std::vector<FunctionRecord>& before,
                                               const std::vector<FunctionRecord>& after,
                                               const LanguageFilter& filter) {
    ChangedFunctionCounts out;
    for (const auto& f : changed_functions(before, after)) {
        if (filter.is_excluded(f.language))
            continue;
        out.all.add(f.cc);
        if (filter.is_filtered(f.language))
            out.filtered.add(f.cc);
    }
    return out;
}

void fill_code_metrics(const TreeMeasurement& m, MetricVector& out) {
    for (auto scope : {LanguageScope::all, LanguageScope::filtered}) {
        const auto& s = scope == LanguageScope::all ? m.all : m.filtered;
        auto set = [&](std::string_view base, std::size_t v) {
            out.values[scoped_id(base, scope)] = static_cast<double>(v);
        };
        set("loc", s.loc);
        set("files", s.files);
        set("new_loc", s.lines.added);
        set("modified_loc", s.lines.modified);
        set("removed_loc", s.lines.removed);
        set("new_modified_loc", s.lines.added + s.lines.modified);
        set("new_modified_removed_loc", s.lines.added + s.lines.modified + s.lines.removed);
        set("new_removed_loc", s.lines.added + s.lines.removed);
        set("new_files", s.new_files);
        set("modified_files", s.modified_files);
        set("changed_files", s.new_files + s.modified_files);
        set("functions", s.functions.functions);
        set("total_cc", s.functions.total_cc);
        set("new_modified_functions", s.changed_functions.functions);
        for (std::size_t t = 0; t < kComplexityThresholds.size(); ++t) {
            out.values[threshold_id("functions", kComplexityThresholds[t], scope)] =
                static_cast<double>(s.functions.above[t]);
            out.values[threshold_id("new_modified_functions", kComplexityThresholds[t], scope)] =
                static_cast<double>(s.changed_functions.above[t]);
        }
        if (scope == LanguageScope::all)
            set("modified_removed_loc", s.lines.modified + s.lines.removed);
    }
}

}  // namespace bugforecast::metrics
