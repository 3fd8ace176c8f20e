#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bugforecast/eval/experiments.hpp"
#include "bugforecast/model/timeline.hpp"
#include "bugforecast/stats/correlation.hpp"
#include "bugforecast/stats/regression.hpp"

namespace bugforecast::report {

/// metric_id,pcc,band for every metric of the matrix; pcc and band are empty
/// when the correlation is undefined.
void write_correlation_csv(std::ostream& out, const stats::CorrelationMatrix& m);

/// Full square matrix: label,<labels...>.
void write_correlation_matrix_csv(std::ostream& out, const stats::CorrelationMatrix& m);

/// rank,metric_id,pcc,band
void write_selection_csv(std::ostream& out, const std::vector<stats::SelectedMetric>& selected);

/// term,value: the intercept, then one row per coefficient.
void write_model_csv(std::ostream& out, const stats::RegressionModel& model);

/// label,release_id,release_name,predicted,actual,error,clamped,note. Missing
/// predictions appear with empty numbers and the failure reason as note.
void write_eval_csv(std::ostream& out, const std::vector<eval::EvalRow>& rows, const Timeline& timeline);

/// label,n,median,mean,max,min,outliers,missing
void write_summary_csv(std::ostream& out, const std::vector<eval::EvalRow>& rows);

/// Window rows relabeled `w=<n>`, same layout as write_eval_csv.
void write_window_eval_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows, const Timeline& timeline);

/// window,n,median,mean,max,min,outliers,missing,last4_n,last4_median,last4_mean
void write_window_summary_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows);

/// window,metric_id,median_pcc,mean_pcc,n
void write_window_pcc_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows);

/// Fixed-width table with one line per row: label, median, mean, max, min, n.
std::string format_summary_table(const std::vector<eval::EvalRow>& rows, const std::string& title);

std::string format_window_table(const std::vector<eval::WindowRow>& rows, const std::string& title);

struct PredictionReport {
    const ReleaseSpec* target = nullptr;
    stats::RegressionModel model;
    std::vector<stats::SelectedMetric> selected;
    stats::PredictionRecord prediction;
    /// Describes the training rows, e.g. "releases 1,2,3".
    std::string training;
};

/// Human-readable prediction: the predicted count, coefficients, selected
/// metrics with their PCC and, when the actual count is known, the error.
std::string format_prediction(const PredictionReport& r);

/// Text of an optional number, empty when absent.
std::string number_or_empty(const std::optional<double>& v);

}  // namespace bugforecast::report
