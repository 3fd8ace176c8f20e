#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bugforecast/model/bug_record.hpp"
#include "bugforecast/model/metric_catalog.hpp"

namespace bugforecast::stats {

struct FitOptions {
    bool with_intercept = true;
    /// Constrain every coefficient (and the intercept, when fitted) to >= 0.
    bool nonneg = false;

    friend bool operator==(const FitOptions&, const FitOptions&) = default;
};

/// The four adjustments of the linear model compared in the evaluation.
enum class ModelVariant { blr, lr_pc, lr_woi, lr_pc_woi };

inline constexpr ModelVariant kAllVariants[] = {ModelVariant::blr, ModelVariant::lr_pc, ModelVariant::lr_woi,
                                                ModelVariant::lr_pc_woi};

FitOptions options_for(ModelVariant v);
/// "BLR", "LR-PC", "LR-woI", "LR-PC+woI"
std::string_view to_string(ModelVariant v);

/// Raw solution of a least-squares problem in original (unscaled) units.
struct LinearSolution {
    double intercept = 0.0;
    Eigen::VectorXd coefficients;
    double residual_ss = 0.0;
    int iterations = 0;  // active-set iterations; 0 for unconstrained fits
};

/// Least-squares fit of y ~ X (rows = releases, columns = metrics).
///
/// Columns are scaled to unit max-absolute value before solving and the
/// coefficients unscaled afterwards. Unconstrained fits return the
/// minimum-norm solution (in scaled coordinates) when X is rank deficient or
/// has fewer rows than columns; an intercept is handled by centering. The
/// non-negative variant runs Lawson-Hanson active-set NNLS, with the intercept
/// as an extra constrained column of ones.
///
/// Throws ValidationError for empty or non-finite input and NumericError when
/// NNLS does not converge within its iteration cap.
LinearSolution fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const FitOptions& options);

struct NnlsResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual_ss = 0.0;
};

/// min ||A x - b||^2 subject to x >= 0 (Lawson-Hanson). Converged when every
/// gradient component of the variables held at zero is <= `tolerance`
/// (relative to ||A|| ||b||).
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance = 1e-12,
                int max_iterations = 0);

struct Coefficient {
    std::string metric_id;
    double value = 0.0;

    friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

struct RegressionModel {
    double intercept = 0.0;
    std::vector<Coefficient> coefficients;
    FitOptions options;
    std::vector<int> training_releases;
    double residual_ss = 0.0;

    friend bool operator==(const RegressionModel&, const RegressionModel&) = default;
};

struct TrainingRow {
    const MetricVector* metrics = nullptr;
    double bugs = 0.0;
};

/// Builds X/y from the given rows and fits the selected metrics.
RegressionModel fit_model(const std::vector<TrainingRow>& rows, const std::vector<std::string>& metric_ids,
                          const FitOptions& options);

struct PredictionRecord {
    int release_id = 0;
    double predicted = 0.0;
    /// Set when the raw model output was negative and clamped to 0.
    bool clamped = false;
    std::optional<double> actual;
    std::optional<double> error;

    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// intercept + sum(coefficient * value), clamped below at 0. Throws
/// ValidationError naming the first metric missing from `x`.
PredictionRecord predict(const RegressionModel& model, const MetricVector& x);

/// |predicted - actual| / actual; empty when actual is 0.
std::optional<double> prediction_error(double predicted, double actual);

/// Attaches the actual count and the derived error to a prediction.
void set_actual(PredictionRecord& record, double actual);

}  // namespace bugforecast::stats
