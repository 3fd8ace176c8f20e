#include <gtest/gtest.h>

#include "bugforecast/metrics/extraction.hpp"
#include "bugforecast/metrics/git_repository.hpp"
#include "bugforecast/model/errors.hpp"
#include "bugforecast/synth/fast_import.hpp"
#include "bugforecast/util/csv.hpp"
#include "support/temp_dir.hpp"

using namespace bugforecast;
using namespace bugforecast::metrics;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

constexpr Date kDay0{std::chrono::year{2021} / 1 / 1};

Date day(int n) { return kDay0 + std::chrono::days{n}; }

// One commit per day at noon, days 1..n, rotating over `authors`.
std::vector<synth::ScriptedCommit> daily(int n, int authors = 3) {
    std::vector<synth::ScriptedCommit> out;
    for (int d = 1; d <= n; ++d) {
        const auto who = "dev" + std::to_string(d % authors);
        out.push_back({start_of_day(day(d)) + 12h, who, who + "@example.org", "day " + std::to_string(d),
                       {{"src/Day.java", "class Day {\n  int n() { return " + std::to_string(d) + "; }\n}\n"},
                        {"log/d" + std::to_string(d) + ".txt", "entry\n"}}});
    }
    return out;
}

ReleaseSpec release(int start, int freeze, int id = 1) { return {id, "R" + std::to_string(id), day(start), day(freeze), day(freeze + 30), false}; }

}  // namespace

TEST(GitRepository, MainlineIsOldestFirstWithCommitterTimes) {
    test_support::TempDir dir;
    synth::write_repository(dir.path(), daily(5));
    GitRepository repo(dir.path());
    const auto& log = repo.mainline();
    ASSERT_EQ(log.size(), 5u);
    EXPECT_EQ(log.front().time, start_of_day(day(1)) + 12h);
    EXPECT_EQ(log.back().author_email, "dev2@example.org");
}

TEST(GitRepository, MissingRepositoryOrBranch) {
    test_support::TempDir dir;
    EXPECT_THROW(GitRepository(dir / "nope"), InputNotFoundError);
    synth::write_repository(dir.path(), daily(1));
    EXPECT_THROW(GitRepository(dir.path(), "no-such-branch"), InputNotFoundError);
}

TEST(ResolveSnapshots, DailyCommitsPickDayNineAndDayTwenty) {
    test_support::TempDir dir;
    synth::write_repository(dir.path(), daily(30));
    GitRepository repo(dir.path());
    const auto s = resolve_snapshots(repo.mainline(), release(10, 20));
    EXPECT_EQ(s.old_commit.time, start_of_day(day(9)) + 12h);
    EXPECT_EQ(s.new_commit.time, start_of_day(day(20)) + 12h);
    EXPECT_FALSE(s.warning);
    EXPECT_LT(s.old_commit.time, s.new_commit.time);
}

TEST(ResolveSnapshots, ReleaseBeforeFirstCommitIsAnError) {
    test_support::TempDir dir;
    synth::write_repository(dir.path(), daily(5));
    GitRepository repo(dir.path());
    try {
        resolve_snapshots(repo.mainline(), release(1, 3));
        FAIL();
    } catch (const ExtractionError& e) {
        EXPECT_NE(std::string(e.what()).find("release predates repository"), std::string::npos);
    }
}

TEST(ResolveSnapshots, EmptyWindowWarnsAndReusesOldCommit) {
    std::vector<synth::ScriptedCommit> commits = daily(3);
    auto late = daily(30);
    commits.push_back(late.back());
    test_support::TempDir dir;
    synth::write_repository(dir.path(), commits);
    GitRepository repo(dir.path());
    const auto s = resolve_snapshots(repo.mainline(), release(10, 20));
    EXPECT_EQ(s.old_commit, s.new_commit);
    EXPECT_TRUE(s.warning);
    EXPECT_EQ(count_commits(repo.mainline(), release(10, 20)), (CommitCounts{0, 0}));
}

TEST(CountCommits, ElevenCommitsByThreeAuthors) {
    test_support::TempDir dir;
    synth::write_repository(dir.path(), daily(30));
    GitRepository repo(dir.path());
    EXPECT_EQ(count_commits(repo.mainline(), release(10, 20)), (CommitCounts{11, 3}));
}

TEST(CountCommits, AuthorEmailsAreCaseInsensitive) {
    auto commits = daily(4, 1);
    commits[1].author_email = "DEV0@Example.org";
    test_support::TempDir dir;
    synth::write_repository(dir.path(), commits);
    EXPECT_EQ(count_commits(GitRepository(dir.path()).mainline(), release(1, 4)).contributors, 1u);
}

TEST(GitTree, ReadsFilesAtACommit) {
    test_support::TempDir dir;
    synth::write_repository(dir.path(), daily(3));
    GitRepository repo(dir.path());
    const auto tree = repo.tree(repo.mainline()[1].sha);
    ASSERT_EQ(tree->entries().size(), 3u);
    std::string content;
    tree->read({"src/Day.java"}, [&](const std::string&, std::string_view c) { content = c; });
    EXPECT_NE(content.find("return 2;"), std::string::npos);
    EXPECT_THROW(tree->read({"missing"}, [](const std::string&, std::string_view) {}), InputNotFoundError);
}

TEST(GitTree, ManyFilesAcrossReadBatches) {
    std::vector<synth::FileChange> files;
    for (int i = 0; i < 1300; ++i)
        files.push_back({"f/" + std::to_string(i) + ".c", "int x" + std::to_string(i) + ";\n"});
    test_support::TempDir dir;
    synth::write_repository(dir.path(), {{start_of_day(day(1)), "a", "a@x", "bulk", files}});
    GitRepository repo(dir.path());
    const auto m = measure_tree(*repo.tree(repo.mainline()[0].sha), LanguageFilter{{"C"}, {}});
    EXPECT_EQ(m.all.loc, 1300u);
    EXPECT_EQ(m.filtered.files, 1300u);
}

TEST(OpenOrClone, ClonesFileUrlAndFetchesUpdates) {
    test_support::TempDir origin, cache;
    synth::write_repository(origin.path(), daily(3));
    const auto url = "file://" + origin.path().string();
    auto first = GitRepository::open_or_clone(url, cache.path());
    EXPECT_EQ(first.mainline().size(), 3u);
    EXPECT_TRUE(first.dir().string().starts_with((cache / "repos").string()));
    auto again = GitRepository::open_or_clone(url, cache.path());
    EXPECT_EQ(again.dir(), first.dir());
    auto local = GitRepository::open_or_clone(origin.path().string(), cache.path());
    EXPECT_EQ(local.dir(), origin.path());
}

class ExtractionTest : public ::testing::Test {
protected:
    void SetUp() override {
        // Release 1: days 10..20, release 2: days 21..30.
        std::vector<synth::ScriptedCommit> c;
        auto at = [&](int d, std::vector<synth::FileChange> ch) {
            c.push_back({start_of_day(day(d)) + 9h, "dev" + std::to_string(d % 2), "dev" + std::to_string(d % 2) + "@x",
                         "c", std::move(ch)});
        };
        at(1, {{"A.java", "class A {\n  void f() { a(); }\n}\n"}, {"conf.yaml", "a: 1\n"}});
        at(12, {{"B.java", "class B {\n  void g() { if (x && y) z(); }\n}\n"}});
        at(15, {{"A.java", "class A {\n  void f() { b(); }\n}\n"}, {"tool.py", "def t():\n    return 1\n"}});
        at(25, {{"tool.py", "def t():\n    return 2\n"}});
        synth::write_repository(repo_dir.path(), c);
        timeline.project = "fixture";
        timeline.releases = {release(10, 20, 1), release(21, 30, 2)};
        options.filter = LanguageFilter{{"Java"}, {"YAML", "XML"}};
        options.cache_dir = cache_dir.path();
    }

    test_support::TempDir repo_dir, cache_dir;
    Timeline timeline;
    ExtractionOptions options;
};

TEST_F(ExtractionTest, PlantedCountsAreRecovered) {
    GitRepository repo(repo_dir.path());
    const auto r = extract_timeline_metrics(repo, timeline, options);
    ASSERT_EQ(r.size(), 2u);
    const auto& v1 = r[0].metrics;
    EXPECT_EQ(v1.at("commits"), 2);
    EXPECT_EQ(v1.at("contributors"), 2);
    EXPECT_EQ(v1.at("loc_all"), 8);
    EXPECT_EQ(v1.at("loc_lang"), 6);
    EXPECT_EQ(v1.at("new_loc_all"), 5);
    EXPECT_EQ(v1.at("new_loc_lang"), 3);
    EXPECT_EQ(v1.at("modified_loc_lang"), 1);
    EXPECT_EQ(v1.at("new_files_all"), 2);
    EXPECT_EQ(v1.at("modified_files_lang"), 1);
    EXPECT_EQ(v1.at("functions_all"), 3);
    EXPECT_EQ(v1.at("total_cc_lang"), 4);
    EXPECT_EQ(v1.at("new_modified_functions_lang"), 2);
    EXPECT_EQ(v1.at("new_modified_functions_all"), 3);
    const auto& v2 = r[1].metrics;
    EXPECT_EQ(v2.at("commits"), 1);
    EXPECT_EQ(v2.at("modified_loc_all"), 1);
    EXPECT_EQ(v2.at("new_loc_lang"), 0);
    EXPECT_EQ(v2.at("new_modified_functions_all"), 1);
}

TEST_F(ExtractionTest, CacheHitsAreIdenticalAndCorruptionIsRecomputed) {
    GitRepository repo(repo_dir.path());
    const auto first = extract_release_metrics(repo, timeline.at(1), options);
    EXPECT_FALSE(first.from_cache);
    const auto second = extract_release_metrics(repo, timeline.at(1), options);
    EXPECT_TRUE(second.from_cache);
    EXPECT_EQ(first.metrics, second.metrics);

    for (const auto& e : fs::directory_iterator(cache_dir / "metrics")) {
        auto text = util::read_file(e.path());
        text.replace(text.find("\"loc_all\": 8"), 12, "\"loc_all\": 9");
        util::write_file_atomic(e.path(), text);
    }
    const auto third = extract_release_metrics(repo, timeline.at(1), options);
    EXPECT_FALSE(third.from_cache);
    EXPECT_EQ(third.metrics, first.metrics);
    ASSERT_FALSE(third.warnings.empty());
    EXPECT_NE(third.warnings.back().find("corrupted"), std::string::npos);
    EXPECT_TRUE(extract_release_metrics(repo, timeline.at(1), options).from_cache);
}

TEST_F(ExtractionTest, FilterChangeMissesTheCache) {
    GitRepository repo(repo_dir.path());
    extract_release_metrics(repo, timeline.at(1), options);
    options.filter.filtered = {"Python"};
    EXPECT_FALSE(extract_release_metrics(repo, timeline.at(1), options).from_cache);
}

TEST_F(ExtractionTest, RepeatedExtractionIsBitIdentical) {
    GitRepository repo(repo_dir.path());
    options.cache_dir.clear();
    EXPECT_EQ(extract_release_metrics(repo, timeline.at(2), options).metrics,
              extract_release_metrics(repo, timeline.at(2), options).metrics);
}

TEST_F(ExtractionTest, MetricsCsvRoundTrip) {
    GitRepository repo(repo_dir.path());
    std::vector<MetricVector> rows;
    for (const auto& r : extract_timeline_metrics(repo, timeline, options))
        rows.push_back(r.metrics);
    std::ostringstream out;
    write_metrics_csv(out, rows, timeline);
    EXPECT_EQ(read_metrics_csv(out.str(), timeline), rows);
    auto broken = out.str();
    broken.replace(broken.find("\n2,"), 3, "\n3,");
    EXPECT_THROW(read_metrics_csv(broken, timeline), ValidationError);
    EXPECT_THROW(read_metrics_csv("release_id,release_name\n1,R1\n2,R2\n", timeline), ValidationError);
}

TEST_F(ExtractionTest, DominantLanguageOfLastSnapshot) {
    GitRepository repo(repo_dir.path());
    EXPECT_EQ(dominant_language(*repo.tree(repo.mainline().back().sha), {"YAML"}), "Java");
}
