#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/stats/correlation.hpp"
#include "support/archival.hpp"
#include "support/oracles.hpp"

using namespace bugforecast;
using namespace bugforecast::stats;
using bugforecast::testing::archive_column_ids;
using bugforecast::testing::archive_history;
using bugforecast::testing::archive_metrics;
using bugforecast::testing::as_doubles;
using bugforecast::testing::onap_archive;
using bugforecast::testing::pearson_integer_oracle;

namespace {

std::vector<MetricVector> single_metric(const std::vector<double>& values) {
    std::vector<MetricVector> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out.push_back({static_cast<int>(i) + 1, {{"m", values[i]}}});
    return out;
}

BugHistory history_of(const std::vector<std::size_t>& bugs) {
    BugHistory h;
    for (std::size_t i = 0; i < bugs.size(); ++i)
        h.releases.push_back({static_cast<int>(i) + 1, bugs[i], 0});
    return h;
}

}  // namespace

TEST(Pearson, PerfectLinearity) {
    std::vector<double> x{1, 2, 3};
    EXPECT_DOUBLE_EQ(*pearson(x, std::vector<double>{2, 4, 6}), 1.0);
    EXPECT_DOUBLE_EQ(*pearson(x, std::vector<double>{6, 4, 2}), -1.0);
}

TEST(Pearson, UndefinedForConstantSeries) {
    std::vector<double> x{3, 3, 3};
    EXPECT_FALSE(pearson(x, std::vector<double>{1, 2, 3}));
    EXPECT_FALSE(pearson(std::vector<double>{1, 2, 3}, x));
}

TEST(Pearson, RejectsBadLengths) {
    EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), ValidationError);
    EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
}

TEST(Pearson, OnapCommitsMatchOracleAndAreHigh) {
    auto p = onap_archive();
    const auto& commits = p.columns[0].values;
    auto expected = pearson_integer_oracle(commits, p.bugs);
    auto r = pearson(as_doubles(commits), as_doubles(p.bugs));
    ASSERT_TRUE(r && expected);
    EXPECT_NEAR(*r, static_cast<double>(*expected), 1e-12);
    EXPECT_EQ(classify(*r), CorrelationBand::high);
}

TEST(Pearson, InvariantUnderPositiveAffineMaps) {
    std::mt19937 rng(11);
    std::normal_distribution<double> noise;
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = noise(rng);
            y[i] = noise(rng) + 0.5 * x[i];
        }
        const double a = scale(rng);
        const double b = noise(rng) * 50.0;
        std::vector<double> pos(n), neg(n);
        for (std::size_t i = 0; i < n; ++i) {
            pos[i] = a * x[i] + b;
            neg[i] = -a * x[i] + b;
        }
        const double r = *pearson(x, y);
        EXPECT_NEAR(*pearson(pos, y), r, 1e-9);
        EXPECT_NEAR(*pearson(neg, y), -r, 1e-9);
        EXPECT_LE(std::fabs(r), 1.0);
    }
}

TEST(Classify, Bands) {
    EXPECT_EQ(classify(0.71), CorrelationBand::high);
    EXPECT_EQ(classify(-0.8), CorrelationBand::high);
    EXPECT_EQ(classify(0.7), CorrelationBand::significant);
    EXPECT_EQ(classify(0.4), CorrelationBand::significant);
    EXPECT_EQ(classify(0.39), CorrelationBand::weak);
}

TEST(CorrelationMatrix, IdenticalSeriesGivesAllOnes) {
    auto m = correlation_matrix(single_metric({3, 1, 4, 1, 5}), history_of({3, 1, 4, 1, 5}), {"m"});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.labels.back(), kBugsLabel);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_DOUBLE_EQ(*m.at(i, j), 1.0);
}

TEST(CorrelationMatrix, ConstantMetricIsUndefined) {
    auto m = correlation_matrix(single_metric({2, 2, 2}), history_of({1, 5, 9}), {"m"});
    EXPECT_FALSE(m.at(0, 0));
    EXPECT_FALSE(m.at(0, 1));
    EXPECT_FALSE(m.at(1, 0));
    EXPECT_DOUBLE_EQ(*m.at(1, 1), 1.0);
    EXPECT_FALSE(m.with_bugs("m"));
}

TEST(CorrelationMatrix, OnapFixtureMatchesOracle) {
    auto p = onap_archive();
    auto ids = archive_column_ids(p);
    auto m = correlation_matrix(archive_metrics(p), archive_history(p), ids);
    ASSERT_EQ(m.size(), ids.size() + 1);

    std::vector<std::vector<long long>> series;
    for (const auto& c : p.columns)
        series.push_back(c.values);
    series.push_back(p.bugs);

    for (std::size_t i = 0; i < series.size(); ++i) {
        for (std::size_t j = 0; j < series.size(); ++j) {
            auto expected = pearson_integer_oracle(series[i], series[j]);
            auto got = m.at(i, j);
            ASSERT_EQ(got.has_value(), expected.has_value());
            EXPECT_NEAR(*got, static_cast<double>(*expected), 1e-12) << m.labels[i] << " vs " << m.labels[j];
            EXPECT_EQ(*got, *m.at(j, i));
        }
    }
}

TEST(SelectMetrics, BelowThresholdIsEmpty) {
    auto m = correlation_matrix(single_metric({1, 2, 3, 4}), history_of({2, 1, 4, 3}), {"m"});
    EXPECT_TRUE(select_metrics(m, {}).empty());
}

TEST(SelectMetrics, NegativeCorrelationDroppedWhenPositiveRequired) {
    std::vector<MetricVector> mv;
    const std::vector<double> up{1, 2, 3, 4, 6}, down{9, 7, 6, 3, 1};
    for (int i = 0; i < 5; ++i)
        mv.push_back({i + 1, {{"up", up[i]}, {"down", down[i]}}});
    auto m = correlation_matrix(mv, history_of({1, 3, 3, 4, 5}), {"up", "down"});
    ASSERT_GT(*m.with_bugs("up"), 0.9);
    ASSERT_LT(*m.with_bugs("down"), -0.95);

    auto positive = select_metrics(m, {});
    ASSERT_EQ(positive.size(), 1u);
    EXPECT_EQ(positive[0].id, "up");

    auto both = select_metrics(m, {0.7, 5, false});
    ASSERT_EQ(both.size(), 2u);
    EXPECT_EQ(both[0].id, "down");
}

TEST(SelectMetrics, OnapDefaultPolicyFollowsOracleRanking) {
    auto p = onap_archive();
    auto ids = archive_column_ids(p);
    auto m = correlation_matrix(archive_metrics(p), archive_history(p), ids);

    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& c : p.columns) {
        const double r = static_cast<double>(*pearson_integer_oracle(c.values, p.bugs));
        if (r >= 0.7)
            ranked.emplace_back(r, c.id);
    }
    std::sort(ranked.rbegin(), ranked.rend());
    std::vector<std::string> expected;
    for (const auto& [r, id] : ranked)
        expected.push_back(id);

    std::vector<std::string> got;
    for (const auto& s : select_metrics(m, {}))
        got.push_back(s.id);
    EXPECT_EQ(got, expected);
    EXPECT_EQ(got, (std::vector<std::string>{"removed_kloc", "commits", "new_kloc_java", "new_kloc"}));

    EXPECT_EQ(select_metrics(m, {0.7, 2, true}).size(), 2u);
}
