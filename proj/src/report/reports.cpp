#include "bugforecast/report/reports.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast::report {

namespace {

using util::format_double;

std::string count(std::size_t n) { return std::to_string(n); }

std::string band_of(const std::optional<double>& pcc) {
    return pcc ? std::string(stats::to_string(stats::classify(*pcc))) : std::string();
}

std::string release_name(const Timeline& t, int id) {
    return id >= 1 && static_cast<std::size_t>(id) <= t.size() ? t.at(id).name : std::string();
}

void eval_rows(util::CsvWriter& csv, const std::string& label, const eval::EvalRow& row, const Timeline& timeline) {
    struct Line {
        int release_id;
        std::vector<std::string> fields;
    };
    std::vector<Line> lines;
    for (const auto& r : row.records)
        lines.push_back({r.release_id,
                         {label, std::to_string(r.release_id), release_name(timeline, r.release_id),
                          format_double(r.predicted), number_or_empty(r.actual), number_or_empty(r.error),
                          r.clamped ? "true" : "false", r.error ? "" : "actual is zero"}});
    for (const auto& m : row.missing)
        lines.push_back({m.release_id,
                         {label, std::to_string(m.release_id), release_name(timeline, m.release_id), "", "", "", "",
                          m.reason}});
    std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.release_id < b.release_id; });
    for (const auto& l : lines)
        csv.row(l.fields);
}

std::vector<std::string> summary_fields(const std::optional<eval::ErrorSummary>& s, std::size_t missing) {
    if (!s)
        return {"0", "", "", "", "", "0", count(missing)};
    return {count(s->n),        format_double(s->median), format_double(s->mean), format_double(s->max),
            format_double(s->min), count(s->outliers),       count(missing)};
}

std::string window_label(int w) { return "w=" + std::to_string(w); }

std::string fixed(const std::optional<double>& v, int precision = 3) {
    if (!v)
        return "-";
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << *v;
    return s.str();
}

class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str(const std::string& title) const {
        std::vector<std::size_t> width(rows_.front().size(), 0);
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i)
                width[i] = std::max(width[i], r[i].size());
        std::ostringstream out;
        out << title << '\n';
        for (std::size_t n = 0; n < rows_.size(); ++n) {
            for (std::size_t i = 0; i < rows_[n].size(); ++i) {
                if (i == 0)
                    out << std::left << std::setw(static_cast<int>(width[i])) << rows_[n][i];
                else
                    out << "  " << std::right << std::setw(static_cast<int>(width[i])) << rows_[n][i];
            }
            out << '\n';
            if (n == 0) {
                std::size_t total = 0;
                for (auto w : width)
                    total += w + 2;
                out << std::string(total - 2, '-') << '\n';
            }
        }
        return out.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> summary_cells(const std::string& label, const std::optional<eval::ErrorSummary>& s,
                                       std::size_t missing) {
    if (!s)
        return {label, "-", "-", "-", "-", "0", "0", std::to_string(missing)};
    return {label, fixed(s->median), fixed(s->mean), fixed(s->max), fixed(s->min), std::to_string(s->n),
            std::to_string(s->outliers), std::to_string(missing)};
}

}  // namespace

std::string number_or_empty(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_correlation_csv(std::ostream& out, const stats::CorrelationMatrix& m) {
    util::CsvWriter csv(out);
    csv.row({"metric_id", "pcc", "band"});
    for (const auto& label : m.labels) {
        if (label == stats::kBugsLabel)
            continue;
        const auto r = m.with_bugs(label);
        csv.row({label, number_or_empty(r), band_of(r)});
    }
}

void write_correlation_matrix_csv(std::ostream& out, const stats::CorrelationMatrix& m) {
    util::CsvWriter csv(out);
    std::vector<std::string> header{"label"};
    header.insert(header.end(), m.labels.begin(), m.labels.end());
    csv.row(header);
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row{m.labels[i]};
        for (std::size_t j = 0; j < m.size(); ++j)
            row.push_back(number_or_empty(m.at(i, j)));
        csv.row(row);
    }
}

void write_selection_csv(std::ostream& out, const std::vector<stats::SelectedMetric>& selected) {
    util::CsvWriter csv(out);
    csv.row({"rank", "metric_id", "pcc", "band"});
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto pcc = std::isfinite(selected[i].pcc) ? std::optional<double>(selected[i].pcc) : std::nullopt;
        csv.row({std::to_string(i + 1), selected[i].id, number_or_empty(pcc), band_of(pcc)});
    }
}

void write_model_csv(std::ostream& out, const stats::RegressionModel& model) {
    util::CsvWriter csv(out);
    csv.row({"term", "value"});
    csv.row({"intercept", format_double(model.intercept)});
    for (const auto& c : model.coefficients)
        csv.row({c.metric_id, format_double(c.value)});
}

void write_eval_csv(std::ostream& out, const std::vector<eval::EvalRow>& rows, const Timeline& timeline) {
    util::CsvWriter csv(out);
    csv.row({"label", "release_id", "release_name", "predicted", "actual", "error", "clamped", "note"});
    for (const auto& row : rows)
        eval_rows(csv, row.label, row, timeline);
}

void write_summary_csv(std::ostream& out, const std::vector<eval::EvalRow>& rows) {
    util::CsvWriter csv(out);
    csv.row({"label", "n", "median", "mean", "max", "min", "outliers", "missing"});
    for (const auto& row : rows) {
        auto fields = summary_fields(row.summary, row.missing.size());
        fields.insert(fields.begin(), row.label);
        csv.row(fields);
    }
}

void write_window_eval_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows, const Timeline& timeline) {
    util::CsvWriter csv(out);
    csv.row({"label", "release_id", "release_name", "predicted", "actual", "error", "clamped", "note"});
    for (const auto& w : rows)
        eval_rows(csv, window_label(w.window), w.row, timeline);
}

void write_window_summary_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows) {
    util::CsvWriter csv(out);
    csv.row({"window", "n", "median", "mean", "max", "min", "outliers", "missing", "last4_n", "last4_median",
             "last4_mean"});
    for (const auto& w : rows) {
        auto fields = summary_fields(w.row.summary, w.row.missing.size());
        fields.insert(fields.begin(), std::to_string(w.window));
        if (w.last4) {
            fields.push_back(count(w.last4->n));
            fields.push_back(format_double(w.last4->median));
            fields.push_back(format_double(w.last4->mean));
        } else {
            fields.insert(fields.end(), {"0", "", ""});
        }
        csv.row(fields);
    }
}

void write_window_pcc_csv(std::ostream& out, const std::vector<eval::WindowRow>& rows) {
    util::CsvWriter csv(out);
    csv.row({"window", "metric_id", "median_pcc", "mean_pcc", "n"});
    for (const auto& w : rows)
        for (const auto& p : w.pcc)
            csv.row({std::to_string(w.window), p.metric_id, number_or_empty(p.median), number_or_empty(p.mean),
                     count(p.n)});
}

std::string format_summary_table(const std::vector<eval::EvalRow>& rows, const std::string& title) {
    Table t({"model", "median", "mean", "max", "min", "n", "outliers", "missing"});
    for (const auto& row : rows)
        t.add(summary_cells(row.label, row.summary, row.missing.size()));
    return t.str(title);
}

std::string format_window_table(const std::vector<eval::WindowRow>& rows, const std::string& title) {
    Table t({"releases", "median", "mean", "max", "min", "n", "outliers", "missing", "last4 median", "last4 mean"});
    for (const auto& w : rows) {
        auto cells = summary_cells(std::to_string(w.window), w.row.summary, w.row.missing.size());
        cells.push_back(w.last4 ? fixed(w.last4->median) : "-");
        cells.push_back(w.last4 ? fixed(w.last4->mean) : "-");
        t.add(cells);
    }
    return t.str(title);
}

std::string format_prediction(const PredictionReport& r) {
    std::ostringstream out;
    out << "release " << r.target->id << " (" << r.target->name << ")\n";
    out << "predicted bugs: " << fixed(r.prediction.predicted, 1);
    if (r.prediction.clamped)
        out << " (negative model output clamped to 0)";
    out << '\n';
    if (r.prediction.actual) {
        out << "actual bugs:    " << fixed(*r.prediction.actual, 0) << '\n';
        out << "error:          " << fixed(r.prediction.error, 4) << '\n';
    }
    out << "trained on: " << r.training << '\n';

    Table t({"term", "coefficient", "pcc"});
    if (r.model.options.with_intercept)
        t.add({"intercept", format_double(r.model.intercept), ""});
    for (const auto& c : r.model.coefficients) {
        std::string pcc;
        for (const auto& s : r.selected)
            if (s.id == c.metric_id && std::isfinite(s.pcc))
                pcc = fixed(s.pcc);
        t.add({c.metric_id, format_double(c.value), pcc});
    }
    out << t.str("model");
    return out.str();
}

}  // namespace bugforecast::report
