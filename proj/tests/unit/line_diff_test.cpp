#include <gtest/gtest.h>

#include <random>

#include "bugforecast/metrics/line_diff.hpp"

using namespace bugforecast::metrics;

namespace {

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1 : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp[a.size()][b.size()];
}

std::vector<std::string> lines(std::initializer_list<const char*> items) { return {items.begin(), items.end()}; }

std::vector<std::string> numbered(int n, const std::string& prefix = "line ") {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

TEST(LineDiff, IdenticalFilesHaveNoChanges) {
    const auto a = numbered(50);
    EXPECT_EQ(diff_lines(a, a), LineChanges{});
}

TEST(LineDiff, PureAdditionOfTenLines) {
    auto a = numbered(20);
    auto b = a;
    const auto extra = numbered(10, "new ");
    b.insert(b.begin() + 7, extra.begin(), extra.end());
    EXPECT_EQ(diff_lines(a, b), (LineChanges{10, 0, 0}));
}

TEST(LineDiff, InPlaceEditIsOneModifiedLine) {
    auto a = numbered(20);
    auto b = a;
    b[11] = "edited";
    EXPECT_EQ(diff_lines(a, b), (LineChanges{0, 1, 0}));
}

TEST(LineDiff, HunkPairsDeletionsWithInsertions) {
    const auto a = lines({"a", "x", "y", "z", "b"});
    const auto b = lines({"a", "p", "b", "q"});
    EXPECT_EQ(diff_lines(a, b), (LineChanges{1, 1, 2}));
}

TEST(LineDiff, EmptySides) {
    EXPECT_EQ(diff_lines({}, numbered(3)), (LineChanges{3, 0, 0}));
    EXPECT_EQ(diff_lines(numbered(3), {}), (LineChanges{0, 0, 3}));
    EXPECT_EQ(diff_lines({}, {}), LineChanges{});
}

TEST(LineDiff, ReversingSwapsAddedAndRemoved) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> len(0, 30), sym(0, 5);
        std::vector<std::string> a, b;
        for (int i = len(rng); i > 0; --i)
            a.push_back(std::to_string(sym(rng)));
        for (int i = len(rng); i > 0; --i)
            b.push_back(std::to_string(sym(rng)));
        const auto fwd = diff_lines(a, b);
        const auto back = diff_lines(b, a);
        // The alignment may differ but totals must balance.
        EXPECT_EQ(fwd.added + fwd.modified, b.size() - lcs_length(a, b));
        EXPECT_EQ(fwd.removed + fwd.modified, a.size() - lcs_length(a, b));
        EXPECT_EQ(back.added + back.modified, fwd.removed + fwd.modified);
    }
}

TEST(LineDiff, CommonLinesIsALongestCommonSubsequence) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        std::uniform_int_distribution<int> len(0, 40), alphabet(1, 8);
        const int k = alphabet(rng);
        std::uniform_int_distribution<int> sym(0, k - 1);
        std::vector<std::string> a, b;
        for (int i = len(rng); i > 0; --i)
            a.push_back(std::to_string(sym(rng)));
        if (trial % 3 == 0) {
            b = a;
            for (int e = std::uniform_int_distribution<int>(0, 4)(rng); e > 0 && !b.empty(); --e)
                b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)] = "edit";
        } else {
            for (int i = len(rng); i > 0; --i)
                b.push_back(std::to_string(sym(rng)));
        }
        const auto m = common_lines(a, b);
        ASSERT_EQ(m.size(), lcs_length(a, b)) << "trial " << trial;
        for (std::size_t i = 0; i < m.size(); ++i) {
            ASSERT_LT(m[i].first, a.size());
            ASSERT_LT(m[i].second, b.size());
            ASSERT_EQ(a[m[i].first], b[m[i].second]);
            if (i > 0) {
                ASSERT_LT(m[i - 1].first, m[i].first);
                ASSERT_LT(m[i - 1].second, m[i].second);
            }
        }
    }
}

TEST(LineDiff, AdditivityOverIndependentFiles) {
    const auto a1 = numbered(10), b1 = lines({"line 0", "x", "line 2"});
    const auto a2 = numbered(4, "k"), b2 = numbered(6, "k");
    auto sum = diff_lines(a1, b1);
    sum += diff_lines(a2, b2);
    EXPECT_EQ(sum.added, diff_lines(a1, b1).added + diff_lines(a2, b2).added);
    EXPECT_EQ(sum.removed, diff_lines(a1, b1).removed + diff_lines(a2, b2).removed);
}

TEST(LineDiff, LargeInputsStayFast) {
    auto a = numbered(20000);
    auto b = a;
    for (std::size_t i = 0; i < b.size(); i += 97)
        b[i] = "changed " + std::to_string(i);
    const auto c = diff_lines(a, b);
    EXPECT_EQ(c.modified, (b.size() + 96) / 97);
    EXPECT_EQ(c.added, 0u);
}

TEST(LineDiff, SwappingInputsSwapsAddedAndRemoved) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> len(0, 25), sym(0, 4);
        std::vector<std::string> a, b;
        for (int i = len(rng); i > 0; --i)
            a.push_back(std::to_string(sym(rng)));
        for (int i = len(rng); i > 0; --i)
            b.push_back(std::to_string(sym(rng)));
        const auto fwd = diff_lines(a, b);
        const auto back = diff_lines(b, a);
        ASSERT_EQ(fwd.added, back.removed);
        ASSERT_EQ(fwd.removed, back.added);
        ASSERT_EQ(fwd.modified, back.modified);
    }
}

TEST(LineDiff, DisjointEditsSplitAcrossSnapshotsAddUp) {
    const auto v0 = numbered(30);
    auto v1 = v0;
    v1[3] = "first edit";
    v1.insert(v1.begin() + 10, "inserted");
    auto v2 = v1;
    v2[25] = "second edit";
    v2.erase(v2.begin() + 28);
    auto total = [](const LineChanges& c) { return c.added + c.modified + c.removed; };
    EXPECT_EQ(total(diff_lines(v0, v2)), total(diff_lines(v0, v1)) + total(diff_lines(v1, v2)));
}
