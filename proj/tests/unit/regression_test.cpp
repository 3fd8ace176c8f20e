#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/stats/regression.hpp"
#include "support/oracles.hpp"

using namespace bugforecast;
using namespace bugforecast::stats;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr FitOptions kNoIntercept{false, false};
constexpr FitOptions kWithIntercept{true, false};

double rss(const MatrixXd& X, const VectorXd& y, double intercept, const VectorXd& beta) {
    VectorXd r = y - X * beta - VectorXd::Constant(y.size(), intercept);
    return r.squaredNorm();
}

struct Instance {
    MatrixXd X;
    VectorXd y;
};

Instance random_instance(std::mt19937& rng, int rows, int cols) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> magnitude(0.5, 5000.0);
    Instance in{MatrixXd(rows, cols), VectorXd(rows)};
    for (int j = 0; j < cols; ++j) {
        const double m = magnitude(rng);
        for (int i = 0; i < rows; ++i)
            in.X(i, j) = m * (2.0 + n(rng));
    }
    for (int i = 0; i < rows; ++i)
        in.y(i) = 100.0 * n(rng) + (in.X.row(i).sum() / cols) * n(rng);
    return in;
}

std::vector<std::vector<double>> rows_of(const MatrixXd& A) {
    std::vector<std::vector<double>> out(A.rows(), std::vector<double>(A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out[i][j] = A(i, j);
    return out;
}

MetricVector metrics(int id, std::map<std::string, double> v) { return {id, std::move(v)}; }

}  // namespace

TEST(FitLinear, ExactFitThroughOrigin) {
    MatrixXd X(3, 1);
    X << 1, 2, 3;
    VectorXd y(3);
    y << 2, 4, 6;
    auto s = fit_linear(X, y, kNoIntercept);
    EXPECT_NEAR(s.coefficients(0), 2.0, 1e-12);
    EXPECT_EQ(s.intercept, 0.0);
    EXPECT_NEAR(s.residual_ss, 0.0, 1e-20);
}

TEST(FitLinear, TwoPointsWithIntercept) {
    MatrixXd X(2, 1);
    X << 1, 2;
    VectorXd y(2);
    y << 5, 7;
    auto s = fit_linear(X, y, kWithIntercept);
    EXPECT_NEAR(s.intercept, 3.0, 1e-12);
    EXPECT_NEAR(s.coefficients(0), 2.0, 1e-12);
}

TEST(FitLinear, NonnegClampsNegativeSlopeToZero) {
    MatrixXd X(2, 1);
    X << 1, 2;
    VectorXd y(2);
    y << -1, -2;
    auto s = fit_linear(X, y, {false, true});
    EXPECT_EQ(s.coefficients(0), 0.0);
    EXPECT_NEAR(s.residual_ss, 5.0, 1e-12);
}

TEST(FitLinear, SingleRowWithInterceptReproducesTheRow) {
    MatrixXd X(1, 3);
    X << 10, 20, 30;
    VectorXd y(1);
    y << 42;
    auto s = fit_linear(X, y, kWithIntercept);
    EXPECT_NEAR(s.intercept + X.row(0).dot(s.coefficients), 42.0, 1e-9);
    EXPECT_NEAR(s.intercept, 42.0, 1e-12);
}

TEST(FitLinear, UnderdeterminedGivesMinimumNormInScaledUnits) {
    MatrixXd X(1, 2);
    X << 1, 1;
    VectorXd y(1);
    y << 2;
    auto s = fit_linear(X, y, kNoIntercept);
    EXPECT_NEAR(s.coefficients(0), 1.0, 1e-12);
    EXPECT_NEAR(s.coefficients(1), 1.0, 1e-12);

    // Duplicate columns share the weight evenly.
    MatrixXd D(3, 2);
    D << 1, 1, 2, 2, 3, 3;
    VectorXd yd(3);
    yd << 2, 4, 6;
    auto d = fit_linear(D, yd, kNoIntercept);
    EXPECT_NEAR(d.coefficients(0), 1.0, 1e-10);
    EXPECT_NEAR(d.coefficients(1), 1.0, 1e-10);
}

TEST(FitLinear, ZeroColumnGetsZeroCoefficient) {
    MatrixXd X(3, 2);
    X << 0, 1, 0, 2, 0, 3;
    VectorXd y(3);
    y << 3, 5, 7;
    auto s = fit_linear(X, y, kWithIntercept);
    EXPECT_EQ(s.coefficients(0), 0.0);
    EXPECT_NEAR(s.coefficients(1), 2.0, 1e-12);
    EXPECT_NEAR(s.intercept, 1.0, 1e-12);
}

TEST(FitLinear, RejectsBadInput) {
    EXPECT_THROW(fit_linear(MatrixXd(0, 1), VectorXd(0), kNoIntercept), ValidationError);
    EXPECT_THROW(fit_linear(MatrixXd(2, 0), VectorXd(2), kNoIntercept), ValidationError);
    EXPECT_THROW(fit_linear(MatrixXd::Ones(2, 1), VectorXd::Ones(3), kNoIntercept), ValidationError);
    MatrixXd bad = MatrixXd::Ones(2, 1);
    bad(1, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(fit_linear(bad, VectorXd::Ones(2), kNoIntercept), ValidationError);
}

TEST(FitLinear, ResidualOrthogonalToColumns) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 5);
        auto in = random_instance(rng, cols + 2 + static_cast<int>(rng() % 8), cols);
        for (bool intercept : {false, true}) {
            auto s = fit_linear(in.X, in.y, {intercept, false});
            VectorXd r = in.y - in.X * s.coefficients - VectorXd::Constant(in.y.size(), s.intercept);
            for (int j = 0; j < cols; ++j) {
                const double scale = in.X.col(j).norm() * in.y.norm();
                EXPECT_LE(std::fabs(in.X.col(j).dot(r)), 1e-8 * scale);
            }
            if (intercept)
                EXPECT_LE(std::fabs(r.sum()), 1e-8 * std::sqrt(in.y.size()) * in.y.norm());
            EXPECT_NEAR(s.residual_ss, r.squaredNorm(), 1e-8 * in.y.squaredNorm());
        }
    }
}

TEST(FitLinear, PerturbingOlsCoefficientsNeverHelps) {
    std::mt19937 rng(5);
    const double delta = 1e-4;
    for (int trial = 0; trial < 200; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 4);
        auto in = random_instance(rng, cols + 3, cols);
        auto s = fit_linear(in.X, in.y, kWithIntercept);
        const double base = rss(in.X, in.y, s.intercept, s.coefficients);
        const double slack = 1e-10 * in.y.squaredNorm();
        for (int j = 0; j < cols; ++j) {
            for (double sign : {-1.0, 1.0}) {
                VectorXd b = s.coefficients;
                b(j) += sign * delta;
                EXPECT_GE(rss(in.X, in.y, s.intercept, b) + slack, base);
            }
        }
        for (double sign : {-1.0, 1.0})
            EXPECT_GE(rss(in.X, in.y, s.intercept + sign * delta, s.coefficients) + slack, base);
    }
}

TEST(Nnls, MatchesEnumerationOnSmallProblems) {
    std::mt19937 rng(17);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 1000; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 3);
        const int rows = 1 + static_cast<int>(rng() % 7);
        MatrixXd A(rows, cols);
        VectorXd b(rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j)
                A(i, j) = n(rng);
            b(i) = n(rng);
        }
        auto got = nnls(A, b);
        auto expected = bugforecast::testing::nnls_by_enumeration(rows_of(A), {b.data(), b.data() + rows});
        ASSERT_TRUE(std::isfinite(expected.residual_ss));
        EXPECT_NEAR(got.residual_ss, expected.residual_ss, 1e-8 * std::max(1.0, b.squaredNorm())) << "trial " << trial;
        EXPECT_GE(got.x.minCoeff(), 0.0);
        if (rows >= cols)
            for (int j = 0; j < cols; ++j)
                EXPECT_NEAR(got.x(j), expected.x[j], 1e-6 * std::max(1.0, std::fabs(expected.x[j])))
                    << "trial " << trial;
    }
}

TEST(FitLinear, NonnegWithInterceptMatchesEnumeration) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 2);
        auto in = random_instance(rng, cols + 2 + static_cast<int>(rng() % 5), cols);
        MatrixXd A(in.X.rows(), cols + 1);
        A << VectorXd::Ones(in.X.rows()), in.X;
        auto expected = bugforecast::testing::nnls_by_enumeration(rows_of(A), {in.y.data(), in.y.data() + in.y.size()});
        auto got = fit_linear(in.X, in.y, {true, true});
        EXPECT_GE(got.intercept, 0.0);
        EXPECT_GE(got.coefficients.minCoeff(), 0.0);
        EXPECT_NEAR(got.residual_ss, expected.residual_ss, 1e-8 * std::max(1.0, in.y.squaredNorm()));
    }
}

TEST(FitLinear, NnlsDominance) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 300; ++trial) {
        const int cols = 1 + static_cast<int>(rng() % 4);
        auto in = random_instance(rng, cols + 1 + static_cast<int>(rng() % 6), cols);
        for (bool intercept : {false, true}) {
            auto free = fit_linear(in.X, in.y, {intercept, false});
            auto pos = fit_linear(in.X, in.y, {intercept, true});
            const double tol = 1e-8 * std::max(1.0, in.y.squaredNorm());
            EXPECT_GE(pos.residual_ss + tol, free.residual_ss);
            const bool free_feasible = free.coefficients.minCoeff() >= 0 && (!intercept || free.intercept >= 0);
            if (free_feasible)
                EXPECT_NEAR(pos.residual_ss, free.residual_ss, tol);
        }
    }
}

TEST(Variants, NamesAndOptions) {
    EXPECT_EQ(to_string(ModelVariant::blr), "BLR");
    EXPECT_EQ(to_string(ModelVariant::lr_pc), "LR-PC");
    EXPECT_EQ(to_string(ModelVariant::lr_woi), "LR-woI");
    EXPECT_EQ(to_string(ModelVariant::lr_pc_woi), "LR-PC+woI");
    EXPECT_EQ(options_for(ModelVariant::blr), (FitOptions{true, false}));
    EXPECT_EQ(options_for(ModelVariant::lr_pc), (FitOptions{true, true}));
    EXPECT_EQ(options_for(ModelVariant::lr_woi), (FitOptions{false, false}));
    EXPECT_EQ(options_for(ModelVariant::lr_pc_woi), (FitOptions{false, true}));
}

TEST(FitModel, BuildsDesignFromMetricVectors) {
    std::vector<MetricVector> mv{metrics(1, {{"a", 1}, {"b", 0}}), metrics(2, {{"a", 2}, {"b", 1}}),
                                 metrics(3, {{"a", 3}, {"b", 5}})};
    std::vector<TrainingRow> rows;
    for (const auto& m : mv)
        rows.push_back({&m, 2 * m.at("a") + 3 * m.at("b")});
    auto model = fit_model(rows, {"a", "b"}, {false, true});
    ASSERT_EQ(model.coefficients.size(), 2u);
    EXPECT_EQ(model.coefficients[0].metric_id, "a");
    EXPECT_NEAR(model.coefficients[0].value, 2.0, 1e-10);
    EXPECT_NEAR(model.coefficients[1].value, 3.0, 1e-10);
    EXPECT_EQ(model.intercept, 0.0);
    EXPECT_EQ(model.training_releases, (std::vector<int>{1, 2, 3}));
    EXPECT_THROW(fit_model(rows, {"a", "missing"}, {}), ValidationError);
}

TEST(Predict, Arithmetic) {
    RegressionModel zero{0.0, {{"commits", 3.0}}, {false, false}, {}, 0.0};
    EXPECT_EQ(predict(zero, metrics(1, {{"commits", 0}})).predicted, 0.0);

    RegressionModel slope{0.0, {{"commits", 2.0}}, {false, false}, {}, 0.0};
    auto r = predict(slope, metrics(4, {{"commits", 5}}));
    EXPECT_EQ(r.predicted, 10.0);
    EXPECT_EQ(r.release_id, 4);
    EXPECT_FALSE(r.clamped);
}

TEST(Predict, NegativeOutputIsClamped) {
    RegressionModel m{-50.0, {{"x", 3.0}}, {true, false}, {}, 0.0};
    auto r = predict(m, metrics(1, {{"x", 10}}));
    EXPECT_EQ(r.predicted, 0.0);
    EXPECT_TRUE(r.clamped);
}

TEST(Predict, MissingMetricIsNamed) {
    RegressionModel m{0.0, {{"new_loc_all", 1.0}}, {false, false}, {}, 0.0};
    try {
        predict(m, metrics(1, {{"commits", 1}}));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("new_loc_all"), std::string::npos);
    }
}

TEST(PredictionError, Formula) {
    EXPECT_EQ(prediction_error(887, 887), 0.0);
    EXPECT_EQ(prediction_error(0, 100), 1.0);
    EXPECT_DOUBLE_EQ(*prediction_error(920, 887), 33.0 / 887.0);
    EXPECT_FALSE(prediction_error(5, 0));

    PredictionRecord rec{3, 12.0, false, {}, {}};
    set_actual(rec, 0);
    EXPECT_EQ(rec.actual, 0.0);
    EXPECT_FALSE(rec.error);
    set_actual(rec, 10);
    EXPECT_DOUBLE_EQ(*rec.error, 0.2);
}
