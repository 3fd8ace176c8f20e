#include "bugforecast/stats/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "bugforecast/model/errors.hpp"

namespace bugforecast::stats {

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ValidationError("pearson: series lengths differ (" + std::to_string(x.size()) + " vs " +
                              std::to_string(y.size()) + ")");
    if (x.size() < 2)
        throw ValidationError("pearson: at least two observations are required");

    auto constant = [](std::span<const double> s) {
        return std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); });
    };
    if (constant(x) || constant(y))
        return std::nullopt;

    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationBand classify(double pcc) {
    const double a = std::abs(pcc);
    if (a > 0.7)
        return CorrelationBand::high;
    if (a >= 0.4)
        return CorrelationBand::significant;
    return CorrelationBand::weak;
}

std::string_view to_string(CorrelationBand b) {
    switch (b) {
    case CorrelationBand::high:
        return "high";
    case CorrelationBand::significant:
        return "significant";
    case CorrelationBand::weak:
        break;
    }
    return "weak";
}

std::optional<std::size_t> CorrelationMatrix::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return i;
    return std::nullopt;
}

std::optional<double> CorrelationMatrix::with_bugs(std::string_view metric) const {
    auto row = index_of(metric);
    auto bugs = index_of(kBugsLabel);
    if (!row || !bugs)
        throw ValidationError("correlation matrix has no entry for '" + std::string(metric) + "'");
    return at(*row, *bugs);
}

CorrelationMatrix correlation_matrix(const std::vector<MetricVector>& metrics, const BugHistory& history,
                                     const std::vector<std::string>& subset) {
    if (subset.empty())
        throw ValidationError("correlation_matrix: metric subset is empty");
    if (metrics.size() < 2)
        throw ValidationError("correlation_matrix: at least two releases are required");

    std::vector<std::vector<double>> series;
    CorrelationMatrix m;
    for (const auto& id : subset) {
        std::vector<double> s;
        for (const auto& mv : metrics)
            s.push_back(mv.at(id));
        series.push_back(std::move(s));
        m.labels.push_back(id);
    }
    std::vector<double> bugs;
    for (const auto& mv : metrics)
        bugs.push_back(static_cast<double>(history.at(mv.release_id).total()));
    series.push_back(std::move(bugs));
    m.labels.emplace_back(kBugsLabel);

    const std::size_t n = series.size();
    m.entries.assign(n * n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::optional<double> r;
            if (i == j) {
                if (pearson(series[i], series[i]))
                    r = 1.0;
            } else {
                r = pearson(series[i], series[j]);
            }
            m.entries[i * n + j] = r;
            m.entries[j * n + i] = r;
        }
    }
    return m;
}

std::vector<SelectedMetric> select_metrics(const CorrelationMatrix& m, const SelectionPolicy& policy) {
    auto bugs = m.index_of(kBugsLabel);
    if (!bugs)
        throw ValidationError("select_metrics: correlation matrix has no bugs row");

    std::vector<SelectedMetric> candidates;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == *bugs)
            continue;
        auto r = m.at(i, *bugs);
        if (!r)
            continue;
        if (policy.require_positive && *r < 0)
            continue;
        if (std::abs(*r) >= policy.min_abs_pcc)
            candidates.push_back({m.labels[i], *r});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const SelectedMetric& a, const SelectedMetric& b) { return std::abs(a.pcc) > std::abs(b.pcc); });
    if (candidates.size() > policy.max_count)
        candidates.resize(policy.max_count);
    return candidates;
}

}  // namespace bugforecast::stats
