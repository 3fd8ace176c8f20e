#include "bugforecast/model/metric_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bugforecast/model/errors.hpp"

namespace bugforecast {

std::string_view to_string(MetricCategory c) {
    switch (c) {
    case MetricCategory::size:
        return "size";
    case MetricCategory::change:
        return "change";
    case MetricCategory::complexity:
        return "complexity";
    case MetricCategory::process:
        break;
    }
    return "process";
}

std::string_view to_string(LanguageScope s) { return s == LanguageScope::all ? "all" : "filtered"; }

std::string scoped_id(std::string_view base, LanguageScope scope) {
    return std::string(base) + (scope == LanguageScope::all ? "_all" : "_lang");
}

std::string threshold_id(std::string_view base, int threshold, LanguageScope scope) {
    return scoped_id(std::string(base) + "_cc_gt" + std::to_string(threshold), scope);
}

MetricCatalog::MetricCatalog() {
    using C = MetricCategory;
    const std::array<LanguageScope, 2> scopes = {LanguageScope::all, LanguageScope::filtered};

    auto add = [this](std::string id, C cat, LanguageScope scope, std::string desc) {
        entries_.push_back({std::move(id), cat, scope, std::move(desc)});
    };
    auto scope_text = [](LanguageScope s) {
        return s == LanguageScope::all ? std::string("all non-excluded languages") : std::string("filtered language");
    };

    for (auto s : scopes) {
        const auto in = " (" + scope_text(s) + ")";
        add(scoped_id("loc", s), C::size, s, "code lines at the code freeze" + in);
        add(scoped_id("new_loc", s), C::change, s, "code lines added during development" + in);
        add(scoped_id("modified_loc", s), C::change, s, "code lines changed in place during development" + in);
        add(scoped_id("removed_loc", s), C::change, s, "code lines deleted during development" + in);
        add(scoped_id("new_modified_loc", s), C::change, s, "new plus modified code lines" + in);
        add(scoped_id("files", s), C::size, s, "source files at the code freeze" + in);
        add(scoped_id("new_files", s), C::change, s, "files added during development" + in);
        add(scoped_id("modified_files", s), C::change, s, "files whose content changed during development" + in);
    }
    for (auto s : scopes) {
        const auto in = " (" + scope_text(s) + ")";
        add(scoped_id("functions", s), C::complexity, s, "functions at the code freeze" + in);
        add(scoped_id("new_modified_functions", s), C::complexity, s, "functions added or changed" + in);
        add(scoped_id("total_cc", s), C::complexity, s, "sum of cyclomatic complexity over all functions" + in);
        for (int t : kComplexityThresholds)
            add(threshold_id("functions", t, s), C::complexity, s,
                "functions with cyclomatic complexity above " + std::to_string(t) + in);
        for (int t : kComplexityThresholds)
            add(threshold_id("new_modified_functions", t, s), C::complexity, s,
                "added or changed functions with cyclomatic complexity above " + std::to_string(t) + in);
    }
    add(std::string(metric_ids::kCommits), C::process, LanguageScope::all,
        "main-line commits between start and code freeze");
    add(std::string(metric_ids::kContributors), C::process, LanguageScope::all,
        "distinct commit authors between start and code freeze");
    for (auto s : scopes) {
        const auto in = " (" + scope_text(s) + ")";
        add(scoped_id("new_modified_removed_loc", s), C::change, s, "new plus modified plus removed code lines" + in);
        add(scoped_id("new_removed_loc", s), C::change, s, "new plus removed code lines" + in);
        add(scoped_id("changed_files", s), C::change, s, "new plus modified files" + in);
    }
    add(scoped_id("modified_removed_loc", LanguageScope::all), C::change, LanguageScope::all,
        "modified plus removed code lines (" + scope_text(LanguageScope::all) + ")");
}

const MetricCatalog& MetricCatalog::standard() {
    static const MetricCatalog catalog;
    return catalog;
}

bool MetricCatalog::contains(std::string_view id) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const MetricDef& d) { return d.id == id; });
}

const MetricDef& MetricCatalog::at(std::string_view id) const {
    for (const auto& d : entries_)
        if (d.id == id)
            return d;
    throw ValidationError("unknown metric '" + std::string(id) + "'");
}

std::vector<std::string> MetricCatalog::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& d : entries_)
        out.push_back(d.id);
    return out;
}

double MetricVector::at(std::string_view id) const {
    auto it = values.find(std::string(id));
    if (it == values.end())
        throw ValidationError("release " + std::to_string(release_id) + " has no value for metric '" +
                              std::string(id) + "'");
    return it->second;
}

std::vector<std::string> validate_metric_vector(const MetricVector& v, const MetricCatalog& catalog) {
    std::vector<std::string> problems;
    for (const auto& def : catalog.entries())
        if (!v.values.contains(def.id))
            problems.push_back("missing metric '" + def.id + "'");
    for (const auto& [id, value] : v.values) {
        if (!catalog.contains(id))
            problems.push_back("metric '" + id + "' is not in the catalog");
        if (!std::isfinite(value) || value < 0)
            problems.push_back("metric '" + id + "' must be finite and non-negative");
    }
    return problems;
}

}  // namespace bugforecast
