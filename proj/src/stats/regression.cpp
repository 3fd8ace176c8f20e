#include "bugforecast/stats/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bugforecast/model/errors.hpp"

namespace bugforecast::stats {

FitOptions options_for(ModelVariant v) {
    switch (v) {
    case ModelVariant::blr:
        return {true, false};
    case ModelVariant::lr_pc:
        return {true, true};
    case ModelVariant::lr_woi:
        return {false, false};
    case ModelVariant::lr_pc_woi:
        break;
    }
    return {false, true};
}

std::string_view to_string(ModelVariant v) {
    switch (v) {
    case ModelVariant::blr:
        return "BLR";
    case ModelVariant::lr_pc:
        return "LR-PC";
    case ModelVariant::lr_woi:
        return "LR-woI";
    case ModelVariant::lr_pc_woi:
        break;
    }
    return "LR-PC+woI";
}

namespace {

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.cols() == 0)
        return Eigen::VectorXd(0);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    return cod.solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance, int max_iterations) {
    const Eigen::Index n = A.cols();
    if (max_iterations <= 0)
        max_iterations = static_cast<int>(3 * n + 50);

    NnlsResult result;
    result.x = Eigen::VectorXd::Zero(n);
    const double scale = std::max(1.0, A.norm() * b.norm());
    const double tol = tolerance * scale;

    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    // Variables that re-entered and left again without moving x; skipped until
    // x changes so a rounding-level gradient cannot cycle.
    std::vector<bool> blocked(static_cast<std::size_t>(n), false);
    Eigen::VectorXd w = A.transpose() * (b - A * result.x);

    auto gather = [&](const std::vector<Eigen::Index>& cols) {
        Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
        return sub;
    };

    int iterations = 0;
    while (true) {
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            if (!passive[u] && !blocked[u] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0)
            break;  // KKT satisfied
        if (++iterations > max_iterations)
            throw NumericError("NNLS did not converge after " + std::to_string(max_iterations) +
                               " iterations (max gradient " + std::to_string(best_w) + ", tolerance " +
                               std::to_string(tol) + ")");
        passive[static_cast<std::size_t>(best)] = true;
        const Eigen::VectorXd x_before = result.x;

        while (true) {
            std::vector<Eigen::Index> cols;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)])
                    cols.push_back(j);
            Eigen::VectorXd sub = min_norm_solve(gather(cols), b);

            bool feasible = true;
            for (Eigen::Index k = 0; k < sub.size(); ++k)
                if (sub(k) <= 0)
                    feasible = false;
            if (feasible) {
                result.x.setZero();
                for (std::size_t k = 0; k < cols.size(); ++k)
                    result.x(cols[k]) = sub(static_cast<Eigen::Index>(k));
                break;
            }

            // Step from x towards the subproblem solution until the first
            // passive variable hits zero.
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const double s = sub(static_cast<Eigen::Index>(k));
                if (s <= 0) {
                    const double xk = result.x(cols[k]);
                    alpha = std::min(alpha, xk / (xk - s));
                }
            }
            if (!std::isfinite(alpha))
                alpha = 0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                const double xk = result.x(cols[k]);
                result.x(cols[k]) = xk + alpha * (sub(static_cast<Eigen::Index>(k)) - xk);
            }
            bool removed = false;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (result.x(cols[k]) <= 1e-14 * std::max(1.0, result.x.cwiseAbs().maxCoeff())) {
                    result.x(cols[k]) = 0;
                    passive[static_cast<std::size_t>(cols[k])] = false;
                    removed = true;
                }
            }
            if (!removed) {
                // Numerical stalemate: drop the most negative component.
                Eigen::Index worst = 0;
                for (Eigen::Index k = 1; k < sub.size(); ++k)
                    if (sub(k) < sub(worst))
                        worst = k;
                result.x(cols[static_cast<std::size_t>(worst)]) = 0;
                passive[static_cast<std::size_t>(cols[static_cast<std::size_t>(worst)])] = false;
            }
            if (std::none_of(passive.begin(), passive.end(), [](bool p) { return p; }))
                break;
        }
        if (result.x == x_before)
            blocked[static_cast<std::size_t>(best)] = true;
        else
            std::fill(blocked.begin(), blocked.end(), false);
        w = A.transpose() * (b - A * result.x);
    }

    result.iterations = iterations;
    result.residual_ss = (b - A * result.x).squaredNorm();
    return result;
}

LinearSolution fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const FitOptions& options) {
    if (X.rows() == 0 || X.cols() == 0)
        throw ValidationError("fit_linear: design matrix has " + std::to_string(X.rows()) + " rows and " +
                              std::to_string(X.cols()) + " columns");
    if (y.size() != X.rows())
        throw ValidationError("fit_linear: " + std::to_string(X.rows()) + " rows but " + std::to_string(y.size()) +
                              " responses");
    if (!X.allFinite() || !y.allFinite())
        throw ValidationError("fit_linear: input contains non-finite values");

    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    Eigen::VectorXd scale(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double m = X.col(j).cwiseAbs().maxCoeff();
        scale(j) = m > 0 ? m : 1.0;
    }
    Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();

    LinearSolution sol;
    Eigen::VectorXd beta_scaled(p);
    if (!options.nonneg) {
        if (options.with_intercept) {
            const Eigen::RowVectorXd x_mean = Xs.colwise().mean();
            const double y_mean = y.mean();
            Eigen::MatrixXd Xc = Xs.rowwise() - x_mean;
            Eigen::VectorXd yc = y.array() - y_mean;
            beta_scaled = min_norm_solve(Xc, yc);
            sol.intercept = y_mean - x_mean.dot(beta_scaled);
        } else {
            beta_scaled = min_norm_solve(Xs, y);
        }
    } else {
        Eigen::MatrixXd A = Xs;
        if (options.with_intercept) {
            A.resize(n, p + 1);
            A.col(0).setOnes();
            A.rightCols(p) = Xs;
        }
        auto r = nnls(A, y);
        sol.iterations = r.iterations;
        if (options.with_intercept) {
            sol.intercept = r.x(0);
            beta_scaled = r.x.tail(p);
        } else {
            beta_scaled = r.x;
        }
    }

    sol.coefficients = beta_scaled.cwiseQuotient(scale);
    Eigen::VectorXd fitted = (Xs * beta_scaled).array() + sol.intercept;
    sol.residual_ss = (y - fitted).squaredNorm();
    return sol;
}

RegressionModel fit_model(const std::vector<TrainingRow>& rows, const std::vector<std::string>& metric_ids,
                          const FitOptions& options) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(metric_ids.size()));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    RegressionModel model;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < metric_ids.size(); ++j)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i].metrics->at(metric_ids[j]);
        y(static_cast<Eigen::Index>(i)) = rows[i].bugs;
        model.training_releases.push_back(rows[i].metrics->release_id);
    }
    auto sol = fit_linear(X, y, options);
    model.intercept = sol.intercept;
    model.options = options;
    model.residual_ss = sol.residual_ss;
    for (std::size_t j = 0; j < metric_ids.size(); ++j)
        model.coefficients.push_back({metric_ids[j], sol.coefficients(static_cast<Eigen::Index>(j))});
    return model;
}

PredictionRecord predict(const RegressionModel& model, const MetricVector& x) {
    double value = model.intercept;
    for (const auto& c : model.coefficients)
        value += c.value * x.at(c.metric_id);
    PredictionRecord rec;
    rec.release_id = x.release_id;
    if (value < 0) {
        rec.clamped = true;
        value = 0;
    }
    rec.predicted = value;
    return rec;
}

std::optional<double> prediction_error(double predicted, double actual) {
    if (actual == 0)
        return std::nullopt;
    return std::abs(predicted - actual) / actual;
}

void set_actual(PredictionRecord& record, double actual) {
    record.actual = actual;
    record.error = prediction_error(record.predicted, actual);
}

}  // namespace bugforecast::stats
