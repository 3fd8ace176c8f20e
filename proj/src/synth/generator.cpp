#include "bugforecast/synth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bugforecast/ingest/assignment.hpp"
#include "bugforecast/metrics/extraction.hpp"
#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace bugforecast::synth {

namespace {

// Every generated code line carries a fresh constant, so no line repeats
// within a file and each planted edit has exactly one diff alignment.

enum class Kind { java, python };

struct Function {
    std::string name;
    int cc = 1;
    std::size_t assignments = 0;  // lines 1..assignments may be edited in place
    std::vector<std::string> lines;
};

struct File {
    std::string path;
    Kind kind = Kind::java;
    std::string module;
    std::vector<Function> functions;

    std::size_t prologue() const { return kind == Kind::java ? 2 : 1; }
    std::size_t epilogue() const { return kind == Kind::java ? 1 : 0; }
    std::size_t loc() const {
        std::size_t n = prologue() + epilogue();
        for (const auto& f : functions)
            n += f.lines.size();
        return n;
    }
};

std::string render(const File& f) {
    std::string s;
    if (f.kind == Kind::java) {
        s += "/*\n * Generated module " + f.module + ".\n */\n";
        s += "package gen." + util::to_lower(f.module) + ";\n\n";
        s += "public class " + f.module + " {\n";
        for (const auto& fn : f.functions) {
            s += "\n    // helper " + fn.name + "\n";
            for (const auto& l : fn.lines)
                s += l + "\n";
        }
        s += "}\n";
    } else {
        s += "# Generated module " + f.module + "\n";
        s += "import math\n";
        for (const auto& fn : f.functions) {
            s += "\n\n# helper " + fn.name + "\n";
            for (const auto& l : fn.lines)
                s += l + "\n";
        }
    }
    return s;
}

struct ScopeTruth {
    std::size_t loc = 0, files = 0;
    std::size_t new_loc = 0, modified_loc = 0, removed_loc = 0;
    std::size_t new_files = 0, modified_files = 0, removed_files = 0;
    std::size_t functions = 0, total_cc = 0, changed = 0;
    std::array<std::size_t, 3> above{}, changed_above{};
};

void count_cc(int cc, std::size_t& n, std::array<std::size_t, 3>& above) {
    ++n;
    for (std::size_t t = 0; t < kComplexityThresholds.size(); ++t)
        if (cc > kComplexityThresholds[t])
            ++above[t];
}

const std::vector<std::string> kReleaseNames{"Alder", "Birch",  "Cedar", "Dogwood", "Elm",   "Fir",    "Ginkgo", "Hazel",
                                             "Ironwood", "Juniper", "Kauri", "Larch", "Maple", "Nutmeg", "Oak", "Pine",
                                             "Quince", "Rowan", "Spruce", "Teak", "Umbrella", "Willow", "Yew", "Zelkova"};

class Planner {
public:
    explicit Planner(const SynthOptions& o) : o_(o), rng_(o.seed) {}

    SynthProject run() {
        if (o_.releases < 1)
            throw ValidationError("a synthetic project needs at least one release");
        if (o_.cadence_days - o_.development_days < 3 || o_.development_days < 2)
            throw ValidationError("synthetic cadence leaves no room between releases");
        build_timeline();
        const auto& rel = out_.descriptor.timeline.releases;

        // Initial import some days before the first development window.
        begin_commit(start_of_day(rel.front().start) - std::chrono::days{5});
        for (int i = 0, n = std::max(3, scaled(uniform(10, 20))); i < n; ++i)
            add_file(random_kind(), nullptr);
        pending_.changes.push_back({"assets/logo.png", std::string("\x89PNG\r\n\x1a\n\0\0\0\rIHDR", 16)});
        pending_.changes.push_back({"config/app.yaml", std::string("service: demo\nreplicas: 2\n")});
        end_commit();

        for (const auto& r : rel) {
            plan_window(r);
            if (r.id < static_cast<int>(rel.size()))
                plan_debugging(r, rel[static_cast<std::size_t>(r.id)]);
        }
        plan_bugs();
        return std::move(out_);
    }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool chance(double p) { return uniform_real(0, 1) < p; }
    int scaled(int n) { return static_cast<int>(std::lround(n * o_.scale)); }
    std::string fresh() { return std::to_string(++counter_); }
    Kind random_kind() { return chance(0.7) ? Kind::java : Kind::python; }

    void build_timeline() {
        auto& d = out_.descriptor;
        d.timeline.project = o_.project;
        d.timeline.repo_location = "repo";
        d.timeline.bug_export_location = "bugs.json";
        d.timeline.language_filter = {"Java"};
        d.timeline.excluded_languages = {"YAML", "XML"};
        d.branch = "main";
        d.export_format = ExportFormat::tracker_json;
        d.output_dir = "out";
        d.cache_dir = ".cache";
        for (int k = 1; k <= o_.releases; ++k) {
            ReleaseSpec r;
            r.id = k;
            r.name = k <= static_cast<int>(kReleaseNames.size()) ? kReleaseNames[static_cast<std::size_t>(k - 1)]
                                                                  : "R" + std::to_string(k);
            r.start = o_.first_start + std::chrono::days{(k - 1) * o_.cadence_days};
            r.freeze = r.start + std::chrono::days{o_.development_days};
            r.release = r.freeze + std::chrono::days{(o_.cadence_days - o_.development_days) / 2 + 1};
            d.timeline.releases.push_back(r);
        }
    }

    int random_cc() {
        const double r = uniform_real(0, 1);
        if (r < 0.55)
            return uniform(1, 5);
        if (r < 0.80)
            return uniform(6, 11);
        if (r < 0.92)
            return uniform(12, 16);
        if (r < 0.98)
            return uniform(17, 22);
        return uniform(23, 30);
    }

    Function make_function(Kind kind) {
        Function f;
        f.name = "f" + fresh();
        f.cc = random_cc();
        f.assignments = static_cast<std::size_t>(uniform(1, 4));
        const auto v = f.name + "_v";
        if (kind == Kind::java) {
            f.lines.push_back("    public int " + f.name + "(int x) {");
            for (std::size_t i = 0; i < f.assignments; ++i)
                f.lines.push_back(assignment(kind, v, i == 0));
            for (int left = f.cc - 1; left > 0;) {
                if (left >= 2 && chance(0.3)) {
                    f.lines.push_back("        if (x > " + fresh() + " && x < " + fresh() + ") { " + v + "++; }");
                    left -= 2;
                } else {
                    f.lines.push_back("        if (x > " + fresh() + ") { " + v + " -= " + fresh() + "; }");
                    left -= 1;
                }
            }
            f.lines.push_back("        return " + v + "; }");
        } else {
            f.lines.push_back("def " + f.name + "(x):");
            for (std::size_t i = 0; i < f.assignments; ++i)
                f.lines.push_back(assignment(kind, v, i == 0));
            for (int left = f.cc - 1; left > 0;) {
                if (left >= 2 && chance(0.3)) {
                    f.lines.push_back("    " + v + " = " + v + " + 1 if x > " + fresh() + " and x < " + fresh() +
                                      " else " + v);
                    left -= 2;
                } else {
                    f.lines.push_back("    " + v + " = " + v + " + " + fresh() + " if x > " + fresh() + " else " + v);
                    left -= 1;
                }
            }
            f.lines.push_back("    return " + v);
        }
        return f;
    }

    std::string assignment(Kind kind, const std::string& v, bool first) {
        if (kind == Kind::java)
            return first ? "        int " + v + " = x + " + fresh() + ";" : "        " + v + " += " + fresh() + ";";
        return first ? "    " + v + " = x + " + fresh() : "    " + v + " += " + fresh();
    }

    // --- commits -----------------------------------------------------------

    void begin_commit(Timestamp t) {
        pending_ = ScriptedCommit{};
        pending_.time = t;
        const auto a = uniform(0, 24);
        pending_.author_name = "Developer " + std::to_string(a);
        pending_.author_email = "dev" + std::to_string(a) + "@example.org";
        pending_.message = "change " + std::to_string(out_.commits.size() + 1);
        touched_.clear();
    }

    void end_commit() {
        for (const auto& path : touched_) {
            auto it = files_.find(path);
            pending_.changes.push_back({path, it == files_.end() ? std::nullopt : std::optional(render(it->second))});
        }
        if (pending_.changes.empty())
            pending_.changes.push_back({"ci/pipeline.yaml", "build: " + fresh() + "\n"});
        out_.commits.push_back(std::move(pending_));
    }

    // --- edits; each updates the truth of the current window when given ------

    struct Window {
        std::array<ScopeTruth, 2> scope;  // all, filtered
        std::set<std::string> touched_files;

        template <typename F>
        void each(Kind kind, F&& f) {
            f(scope[0]);
            if (kind == Kind::java)
                f(scope[1]);
        }
    };

    void add_file(Kind kind, Window* w) {
        File f;
        f.kind = kind;
        const auto id = fresh();
        if (kind == Kind::java) {
            f.module = "Module" + id;
            f.path = "src/main/java/gen/module" + id + "/" + f.module + ".java";
        } else {
            f.module = "mod" + id;
            f.path = "tools/pkg" + id + "/" + f.module + ".py";
        }
        for (int i = 0, n = uniform(3, 10); i < n; ++i)
            f.functions.push_back(make_function(kind));
        if (w) {
            w->touched_files.insert(f.path);
            w->each(kind, [&](ScopeTruth& s) {
                s.new_loc += f.loc();
                ++s.new_files;
                for (const auto& fn : f.functions)
                    count_cc(fn.cc, s.changed, s.changed_above);
            });
        }
        touched_.insert(f.path);
        files_.emplace(f.path, std::move(f));
    }

    void add_functions(File& f, Window* w) {
        std::size_t lines = 0;
        for (int i = 0, n = uniform(1, 3); i < n; ++i) {
            f.functions.push_back(make_function(f.kind));
            lines += f.functions.back().lines.size();
            if (w)
                w->each(f.kind, [&](ScopeTruth& s) { count_cc(f.functions.back().cc, s.changed, s.changed_above); });
        }
        if (w)
            w->each(f.kind, [&](ScopeTruth& s) { s.new_loc += lines; });
        mark_modified(f, w);
    }

    void modify_function(File& f, Window* w) {
        auto& fn = f.functions[static_cast<std::size_t>(uniform(0, static_cast<int>(f.functions.size()) - 1))];
        std::vector<std::size_t> idx;
        for (std::size_t i = 1; i <= fn.assignments; ++i)
            idx.push_back(i);
        std::shuffle(idx.begin(), idx.end(), rng_);
        idx.resize(static_cast<std::size_t>(uniform(1, static_cast<int>(idx.size()))));
        for (auto i : idx)
            fn.lines[i] = assignment(f.kind, fn.name + "_v", i == 1);
        if (w)
            w->each(f.kind, [&](ScopeTruth& s) {
                s.modified_loc += idx.size();
                count_cc(fn.cc, s.changed, s.changed_above);
            });
        mark_modified(f, w);
    }

    void remove_function(File& f, Window* w) {
        const auto at = static_cast<std::size_t>(uniform(0, static_cast<int>(f.functions.size()) - 1));
        if (w)
            w->each(f.kind, [&](ScopeTruth& s) { s.removed_loc += f.functions[at].lines.size(); });
        f.functions.erase(f.functions.begin() + static_cast<std::ptrdiff_t>(at));
        mark_modified(f, w);
    }

    void remove_file(const std::string& path, Window* w) {
        const auto& f = files_.at(path);
        if (w) {
            w->touched_files.insert(path);
            w->each(f.kind, [&](ScopeTruth& s) {
                s.removed_loc += f.loc();
                ++s.removed_files;
            });
        }
        touched_.insert(path);
        files_.erase(path);
    }

    void mark_modified(File& f, Window* w) {
        touched_.insert(f.path);
        if (w && w->touched_files.insert(f.path).second)
            w->each(f.kind, [&](ScopeTruth& s) { ++s.modified_files; });
    }

    // --- windows -----------------------------------------------------------

    std::vector<Timestamp> commit_times(Timestamp from, Timestamp to, int n) {
        std::set<long long> picked;
        std::uniform_int_distribution<long long> d(from.time_since_epoch().count(), to.time_since_epoch().count());
        while (static_cast<int>(picked.size()) < n)
            picked.insert(d(rng_));
        std::vector<Timestamp> out;
        for (auto s : picked)
            out.push_back(Timestamp{std::chrono::seconds{s}});
        return out;
    }

    void plan_window(const ReleaseSpec& r) {
        const double activity = uniform_real(0.5, 2.0);
        const int n_commits = std::max(1, static_cast<int>(std::lround(120 * activity * o_.scale * uniform_real(0.85, 1.15))));
        const auto times = commit_times(start_of_day(r.start), end_of_day(r.freeze), n_commits);

        // Plan edits first: each existing file is touched at most once, so
        // every edit is its own diff hunk.
        enum class Op { add_functions, modify, remove_function, remove_file, new_file };
        std::vector<std::pair<Op, std::string>> ops;
        // Edit volume follows activity rather than repository size.
        const double touched = uniform_real(8, 12) * activity * o_.scale;
        const double touch = std::min(0.9, touched / static_cast<double>(std::max<std::size_t>(1, files_.size())));
        for (const auto& [path, f] : files_) {
            if (!chance(touch))
                continue;
            const double p = uniform_real(0, 1);
            if (p < 0.03)
                ops.emplace_back(Op::remove_file, path);
            else if (p < 0.18 && f.functions.size() >= 2)
                ops.emplace_back(Op::remove_function, path);
            else if (p < 0.45)
                ops.emplace_back(Op::add_functions, path);
            else
                ops.emplace_back(Op::modify, path);
        }
        for (int i = 0, n = std::max(1, static_cast<int>(std::lround(uniform_real(3, 5) * activity * o_.scale))); i < n; ++i)
            ops.emplace_back(Op::new_file, "");
        std::shuffle(ops.begin(), ops.end(), rng_);

        std::vector<std::vector<std::size_t>> by_commit(times.size());
        for (std::size_t i = 0; i < ops.size(); ++i)
            by_commit[static_cast<std::size_t>(uniform(0, n_commits - 1))].push_back(i);

        Window w;
        std::set<std::string> authors;
        for (std::size_t c = 0; c < times.size(); ++c) {
            begin_commit(times[c]);
            authors.insert(pending_.author_email);
            for (auto i : by_commit[c]) {
                const auto& [op, path] = ops[i];
                switch (op) {
                case Op::new_file:
                    add_file(random_kind(), &w);
                    break;
                case Op::remove_file:
                    remove_file(path, &w);
                    break;
                case Op::remove_function:
                    remove_function(files_.at(path), &w);
                    break;
                case Op::add_functions:
                    add_functions(files_.at(path), &w);
                    break;
                case Op::modify:
                    modify_function(files_.at(path), &w);
                    break;
                }
            }
            end_commit();
        }

        for (const auto& [path, f] : files_)
            w.each(f.kind, [&](ScopeTruth& s) {
                s.loc += f.loc();
                ++s.files;
                for (const auto& fn : f.functions) {
                    count_cc(fn.cc, s.functions, s.above);
                    s.total_cc += static_cast<std::size_t>(fn.cc);
                }
            });
        out_.metrics.push_back(to_vector(r.id, w, static_cast<std::size_t>(n_commits), authors.size()));
    }

    // Bug fixes between the code freeze and the next start; they move the
    // next release's base snapshot but belong to no development window.
    void plan_debugging(const ReleaseSpec& r, const ReleaseSpec& next) {
        const auto from = end_of_day(r.freeze) + std::chrono::seconds{1};
        const auto to = start_of_day(next.start) - std::chrono::seconds{1};
        for (auto t : commit_times(from, to, uniform(3, 10))) {
            begin_commit(t);
            if (!files_.empty()) {
                auto it = files_.begin();
                std::advance(it, uniform(0, static_cast<int>(files_.size()) - 1));
                modify_function(it->second, nullptr);
            }
            end_commit();
        }
    }

    MetricVector to_vector(int release_id, const Window& w, std::size_t commits, std::size_t contributors) {
        MetricVector v;
        v.release_id = release_id;
        for (auto scope : {LanguageScope::all, LanguageScope::filtered}) {
            const auto& s = w.scope[scope == LanguageScope::all ? 0 : 1];
            auto put = [&](std::string_view base, std::size_t value) {
                v.values[scoped_id(base, scope)] = static_cast<double>(value);
            };
            put("loc", s.loc);
            put("files", s.files);
            put("new_loc", s.new_loc);
            put("modified_loc", s.modified_loc);
            put("removed_loc", s.removed_loc);
            put("new_modified_loc", s.new_loc + s.modified_loc);
            put("new_modified_removed_loc", s.new_loc + s.modified_loc + s.removed_loc);
            put("new_removed_loc", s.new_loc + s.removed_loc);
            put("new_files", s.new_files);
            put("modified_files", s.modified_files);
            put("changed_files", s.new_files + s.modified_files);
            put("functions", s.functions);
            put("total_cc", s.total_cc);
            put("new_modified_functions", s.changed);
            for (std::size_t t = 0; t < kComplexityThresholds.size(); ++t) {
                v.values[threshold_id("functions", kComplexityThresholds[t], scope)] = static_cast<double>(s.above[t]);
                v.values[threshold_id("new_modified_functions", kComplexityThresholds[t], scope)] =
                    static_cast<double>(s.changed_above[t]);
            }
            if (scope == LanguageScope::all)
                put("modified_removed_loc", s.modified_loc + s.removed_loc);
        }
        v.values[std::string(metric_ids::kCommits)] = static_cast<double>(commits);
        v.values[std::string(metric_ids::kContributors)] = static_cast<double>(contributors);
        return v;
    }

    // --- bugs --------------------------------------------------------------

    static std::string tracker_time(Timestamp t) {
        auto s = format_timestamp(t);  // YYYY-MM-DDTHH:MM:SSZ
        return s.substr(0, s.size() - 1) + ".000+0000";
    }

    Timestamp random_time(Date first, Date last) {
        return commit_times(start_of_day(first), end_of_day(last), 1).front();
    }

    void plan_bugs() {
        const auto& rel = out_.descriptor.timeline.releases;
        json issues = json::array();
        int key = 0;
        auto issue = [&](const std::string& type, Timestamp created, const std::vector<std::string>& versions) {
            json versions_json = json::array();
            for (const auto& v : versions)
                versions_json.push_back({{"name", v}});
            const bool closed = chance(0.7);
            json fields{{"issuetype", {{"name", type}}},
                        {"project", {{"key", "SYN"}}},
                        {"status", {{"name", closed ? "Closed" : "Open"}}},
                        {"priority", {{"name", chance(0.3) ? "High" : "Medium"}}},
                        {"versions", versions_json},
                        {"created", tracker_time(created)},
                        {"resolution", closed ? json{{"name", "Done"}} : json(nullptr)},
                        {"resolutiondate", closed ? json(tracker_time(created + std::chrono::hours{uniform(1, 400)}))
                                                  : json(nullptr)}};
            issues.push_back({{"key", "SYN-" + std::to_string(++key)}, {"fields", fields}});
        };

        for (const auto& r : rel) {
            const auto& v = out_.metrics[static_cast<std::size_t>(r.id - 1)];
            const bool changed = o_.regime_change && r.id >= *o_.regime_change;
            const auto& law = changed ? o_.changed_law : o_.law;
            const double expected = law.per_commit * v.at(metric_ids::kCommits) + law.per_new_loc * v.at("new_loc_all");
            const auto total = static_cast<std::size_t>(
                std::max(1L, std::lround(expected * (1.0 + uniform_real(-o_.noise, o_.noise)))));

            ReleaseBugCount count;
            count.release_id = r.id;
            // Unlabeled bugs surface after the release's code freeze and before
            // the next one's.
            const Date window_first = r.freeze + std::chrono::days{1};
            const Date window_last = r.id < static_cast<int>(rel.size())
                                         ? rel[static_cast<std::size_t>(r.id)].freeze
                                         : r.freeze + std::chrono::days{o_.cadence_days};
            for (std::size_t i = 0; i < total; ++i) {
                if (chance(o_.labeled_share)) {
                    ++count.labeled;
                    std::vector<std::string> versions{r.name};
                    if (r.id < static_cast<int>(rel.size()) && chance(0.1))
                        versions.insert(versions.begin(), rel[static_cast<std::size_t>(r.id)].name);
                    issue("Bug", random_time(rel.front().start, rel.back().freeze + std::chrono::days{o_.cadence_days}),
                          versions);
                } else {
                    ++count.inferred;
                    issue("Bug", random_time(window_first, window_last), {});
                }
            }
            for (int i = uniform(0, 4); i > 0; --i)
                issue(chance(0.5) ? "Story" : "Task", random_time(window_first, window_last), {r.name});
            out_.bugs.releases.push_back(count);
        }
        out_.bug_export = json{{"issues", issues}}.dump(1) + "\n";
    }

    const SynthOptions& o_;
    std::mt19937_64 rng_;
    SynthProject out_;
    std::map<std::string, File> files_;
    std::set<std::string> touched_;
    ScriptedCommit pending_;
    long long counter_ = 1000;
};

}  // namespace

SynthProject plan_project(const SynthOptions& options) { return Planner(options).run(); }

void write_project(const fs::path& dir, const SynthProject& project) {
    fs::create_directories(dir / "truth");
    if (fs::exists(dir / "repo"))
        fs::remove_all(dir / "repo");
    write_repository(dir / "repo", project.commits, project.descriptor.branch);
    {
        std::ofstream out(dir / "project.ini");
        write_descriptor(out, project.descriptor);
    }
    util::write_file_atomic(dir / "bugs.json", project.bug_export);
    std::ostringstream metrics, bugs;
    metrics::write_metrics_csv(metrics, project.metrics, project.descriptor.timeline);
    ingest::write_bug_history(bugs, project.bugs, project.descriptor.timeline);
    util::write_file_atomic(dir / "truth" / "metrics.csv", metrics.str());
    util::write_file_atomic(dir / "truth" / "bug_history.csv", bugs.str());
}

}  // namespace bugforecast::synth
