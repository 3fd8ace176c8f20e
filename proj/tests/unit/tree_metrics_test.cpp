#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "bugforecast/metrics/tree_metrics.hpp"
#include "bugforecast/model/errors.hpp"
#include "support/temp_dir.hpp"

using namespace bugforecast;
using namespace bugforecast::metrics;

namespace {

const LanguageFilter kJava{{"Java"}, {"YAML", "XML"}};

std::string java_lines(int n, const std::string& tag = "v") {
    std::string s;
    for (int i = 0; i < n; ++i)
        s += "int " + tag + std::to_string(i) + " = " + std::to_string(i) + ";\n";
    return s;
}

MemoryTree memory(std::map<std::string, std::string> files) { return MemoryTree(std::move(files)); }

TreeMeasurement diff(std::map<std::string, std::string> a, std::map<std::string, std::string> b,
                     const LanguageFilter& f = kJava) {
    return measure_trees(MemoryTree(std::move(a)), MemoryTree(std::move(b)), f);
}

}  // namespace

TEST(CountLines, EmptyTreeIsAllZeros) {
    const auto m = measure_tree(MemoryTree{}, kJava);
    EXPECT_EQ(m.all, ScopeMetrics{});
    EXPECT_EQ(m.filtered, ScopeMetrics{});
}

TEST(CountLines, CodeLinesOnly) {
    const auto m = measure_tree(memory({{"A.java", "int a;\n// c1\n/* c2 */\n\nint b;\nint c;\n"}}), kJava);
    EXPECT_EQ(m.all.loc, 3u);
    EXPECT_EQ(m.all.files, 1u);
    EXPECT_EQ(m.filtered.loc, 3u);
}

TEST(CountLines, ExcludedLanguagesAreIgnored) {
    const auto m = measure_tree(memory({{"A.java", java_lines(4)},
                                            {"conf.yaml", "a: 1\nb: 2\n"},
                                            {"pom.xml", "<a>\n<b/>\n</a>\n"},
                                            {"run.py", "x = 1\n"}}),
                                kJava);
    EXPECT_EQ(m.all.loc, 5u);
    EXPECT_EQ(m.all.files, 2u);
    EXPECT_EQ(m.filtered.loc, 4u);
    EXPECT_EQ(m.filtered.files, 1u);
    EXPECT_EQ(m.loc_by_language.count("YAML"), 0u);
}

TEST(CountLines, UnknownExtensionCountsAsOtherInAllScopeOnly) {
    const auto m = measure_tree(memory({{"notes.weird", "x\n\ny\n"}}), kJava);
    EXPECT_EQ(m.all.loc, 2u);
    EXPECT_EQ(m.filtered.loc, 0u);
    EXPECT_EQ(m.loc_by_language.at(std::string(kOtherLanguage)), 2u);
}

TEST(CountLines, BinaryFilesAreSkippedWithAWarning) {
    const auto m = measure_tree(memory({{"img.png", std::string("\x89PNG\0\0", 6)}, {"A.java", "int a;\n"}}), kJava);
    EXPECT_EQ(m.all.files, 1u);
    EXPECT_EQ(m.binary_files, 1u);
    ASSERT_EQ(m.warnings.size(), 1u);
}

TEST(DiffMetrics, IdenticalTreesHaveNoChanges) {
    const std::map<std::string, std::string> t{{"A.java", java_lines(10)}, {"B.java", java_lines(3)}};
    const auto m = diff(t, t);
    EXPECT_EQ(m.all.lines, LineChanges{});
    EXPECT_EQ(m.all.new_files + m.all.modified_files + m.all.removed_files, 0u);
    EXPECT_EQ(m.all.changed_functions.functions, 0u);
}

TEST(DiffMetrics, PureAddition) {
    const auto m = diff({}, {{"A.java", java_lines(10)}});
    EXPECT_EQ(m.all.lines, (LineChanges{10, 0, 0}));
    EXPECT_EQ(m.all.new_files, 1u);
    EXPECT_EQ(m.all.modified_files, 0u);
    EXPECT_EQ(m.all.removed_files, 0u);
}

TEST(DiffMetrics, OneLineEditedInPlace) {
    auto edited = java_lines(10);
    edited.replace(edited.find("int v4 = 4;"), 11, "int v4 = 44;");
    const auto m = diff({{"A.java", java_lines(10)}}, {{"A.java", edited}});
    EXPECT_EQ(m.all.lines, (LineChanges{0, 1, 0}));
    EXPECT_EQ(m.all.modified_files, 1u);
    EXPECT_EQ(m.filtered.lines, (LineChanges{0, 1, 0}));
}

TEST(DiffMetrics, RemovedFileContributesRemovedLines) {
    const auto m = diff({{"A.java", java_lines(7)}, {"B.java", java_lines(2)}}, {{"B.java", java_lines(2)}});
    EXPECT_EQ(m.all.lines, (LineChanges{0, 0, 7}));
    EXPECT_EQ(m.all.removed_files, 1u);
    EXPECT_EQ(m.all.files, 1u);
}

TEST(DiffMetrics, CommentOnlyEditModifiesFileButNoCodeLines) {
    const auto m = diff({{"A.java", "int a;\n"}}, {{"A.java", "// hi\nint a;\n"}});
    EXPECT_EQ(m.all.modified_files, 1u);
    EXPECT_EQ(m.all.lines, LineChanges{});
}

TEST(DiffMetrics, SymmetryOnCommentFreeTrees) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, std::string> a, b;
        std::uniform_int_distribution<int> n(0, 12), pick(0, 3);
        for (int f = 0; f < 4; ++f) {
            const auto name = "F" + std::to_string(f) + ".java";
            std::string ca, cb;
            for (int i = n(rng); i > 0; --i)
                ca += "x" + std::to_string(pick(rng)) + ";\n";
            for (int i = n(rng); i > 0; --i)
                cb += "x" + std::to_string(pick(rng)) + ";\n";
            if (pick(rng))
                a[name] = ca;
            if (pick(rng))
                b[name] = cb;
        }
        const auto ab = diff(a, b), ba = diff(b, a);
        ASSERT_EQ(ab.all.lines.added, ba.all.lines.removed);
        ASSERT_EQ(ab.all.lines.removed, ba.all.lines.added);
        ASSERT_EQ(ab.all.new_files, ba.all.removed_files);
    }
}

TEST(DiffMetrics, ScopeMonotonicity) {
    const auto m = diff({{"A.java", java_lines(5)}, {"b.py", "a = 1\n"}},
                        {{"A.java", java_lines(8)}, {"b.py", "a = 2\nb = 3\n"}, {"c.go", "package c\n"}});
    EXPECT_LE(m.filtered.loc, m.all.loc);
    EXPECT_LE(m.filtered.lines.added, m.all.lines.added);
    EXPECT_LE(m.filtered.lines.modified, m.all.lines.modified);
}

TEST(ComplexityMetrics, CountsFunctionsPerScope) {
    const auto m = measure_tree(memory({{"A.java", "class A { void f() { if (a) b(); } void g() { } }\n"},
                                            {"b.py", "def h(x):\n    return x or 1\n"}}),
                                kJava);
    EXPECT_EQ(m.all.functions.functions, 3u);
    EXPECT_EQ(m.all.functions.total_cc, 5u);
    EXPECT_EQ(m.filtered.functions.functions, 2u);
    EXPECT_EQ(m.functions.size(), 3u);
}

TEST(ComplexityMetrics, UnscannableFileIsSkippedAndReported) {
    const auto m = measure_tree(memory({{"Bad.java", "class A { void f() {\n"}, {"Good.java", "class B { void g() { } }\n"}}),
                                kJava);
    EXPECT_EQ(m.skipped_files, 1u);
    EXPECT_EQ(m.all.functions.functions, 1u);
    EXPECT_EQ(m.all.loc, 2u);
    ASSERT_FALSE(m.warnings.empty());
    EXPECT_NE(m.warnings.front().find("Bad.java"), std::string::npos);
}

TEST(ChangedFunctionMetrics, NewFileAndEditedBody) {
    const auto m = diff({{"A.java", "class A {\n void f() { a(); }\n void g() { b(); }\n}\n"}},
                        {{"A.java", "class A {\n void f() { a(); }\n void g() { c(); }\n}\n"},
                         {"B.java", "class B { void h() { } void k() { } }\n"}});
    EXPECT_EQ(m.all.changed_functions.functions, 3u);
    const auto lists = changed_function_metrics(
        measure_tree(memory({{"A.java", "class A { void f() { a(); } }\n"}}), kJava).functions,
        measure_tree(memory({{"A.java", "class A { void f() { a(); } }\n"}}), kJava).functions, kJava);
    EXPECT_EQ(lists.all.functions, 0u);
}

TEST(FillCodeMetrics, DerivedSumsAndEveryNonProcessId) {
    const auto m = diff({{"A.java", java_lines(10)}, {"old.py", "a = 1\nb = 2\n"}},
                        {{"A.java", java_lines(12)}, {"n.py", "c = 3\n"}});
    MetricVector v;
    fill_code_metrics(m, v);
    v.values["commits"] = 0;
    v.values["contributors"] = 0;
    EXPECT_TRUE(validate_metric_vector(v, MetricCatalog::standard()).empty());
    EXPECT_EQ(v.at("new_loc_all"), 3);
    EXPECT_EQ(v.at("removed_loc_all"), 2);
    EXPECT_EQ(v.at("new_loc_lang"), 2);
    EXPECT_EQ(v.at("new_modified_removed_loc_all"), v.at("new_loc_all") + v.at("modified_loc_all") + v.at("removed_loc_all"));
    EXPECT_EQ(v.at("changed_files_all"), 2);
}

TEST(DirectoryTree, SkipsGitDirectoryAndMatchesMemoryTree) {
    test_support::TempDir dir;
    std::filesystem::create_directories(dir / "src/pkg");
    std::filesystem::create_directories(dir / ".git/objects");
    std::ofstream(dir / "src/pkg/A.java") << java_lines(4);
    std::ofstream(dir / ".git/objects/x.java") << java_lines(100);
    std::ofstream(dir / "README.md") << "# t\n";
    DirectoryTree tree(dir.path());
    ASSERT_EQ(tree.entries().size(), 2u);
    EXPECT_EQ(tree.entries()[1].path, "src/pkg/A.java");
    const auto from_disk = measure_tree(tree, kJava);
    const auto from_memory = measure_tree(memory({{"src/pkg/A.java", java_lines(4)}, {"README.md", "# t\n"}}), kJava);
    EXPECT_EQ(from_disk.all, from_memory.all);
    EXPECT_THROW(DirectoryTree(dir / "missing"), InputNotFoundError);
}
