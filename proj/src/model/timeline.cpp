#include "bugforecast/model/timeline.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bugforecast/model/errors.hpp"

namespace bugforecast {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string lowered(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

const ReleaseSpec& Timeline::at(int id) const {
    if (id < 1 || static_cast<std::size_t>(id) > releases.size())
        throw ValidationError("release " + std::to_string(id) + " is not part of the timeline of " + project);
    return releases[static_cast<std::size_t>(id - 1)];
}

std::optional<int> Timeline::find_by_name(std::string_view name) const {
    for (const auto& r : releases)
        if (iequals(r.name, name))
            return r.id;
    return std::nullopt;
}

std::vector<TimelineViolation> validate_timeline(const Timeline& t) {
    std::vector<TimelineViolation> out;
    if (t.releases.empty()) {
        out.push_back({0, "timeline has no releases"});
        return out;
    }

    std::set<std::string> names;
    for (std::size_t i = 0; i < t.releases.size(); ++i) {
        const auto& r = t.releases[i];
        const int expected_id = static_cast<int>(i) + 1;
        if (r.id != expected_id)
            out.push_back({r.id, "release ids must be consecutive from 1 (expected " +
                                     std::to_string(expected_id) + ")"});
        if (r.name.empty())
            out.push_back({r.id, "release name is empty"});
        else if (!names.insert(lowered(r.name)).second)
            out.push_back({r.id, "duplicate release name '" + r.name + "'"});
        if (!(r.start < r.freeze))
            out.push_back({r.id, "t_s before t_f required"});
        if (!(r.freeze <= r.release))
            out.push_back({r.id, "t_f on or before t_r required"});
        if (i > 0) {
            const auto& prev = t.releases[i - 1];
            if (r.freeze == prev.freeze)
                out.push_back({r.id, "duplicate code-freeze date"});
            else if (r.freeze < prev.freeze)
                out.push_back({r.id, "releases must be ordered by code-freeze date"});
        }
    }

    for (const auto& lang : t.language_filter)
        for (const auto& excluded : t.excluded_languages)
            if (iequals(lang, excluded))
                out.push_back({0, "language '" + lang + "' is both filtered and excluded"});
    return out;
}

void require_valid(const Timeline& t) {
    auto violations = validate_timeline(t);
    if (violations.empty())
        return;
    std::string msg = "invalid timeline for project '" + t.project + "':";
    for (const auto& v : violations)
        msg += " [release " + std::to_string(v.release_id) + ": " + v.message + "]";
    throw ValidationError(msg);
}

}  // namespace bugforecast
