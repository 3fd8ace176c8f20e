#include "bugforecast/metrics/extraction.hpp"

#include <algorithm>
#include <json.hpp>
#include <ostream>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/csv.hpp"
#include "bugforecast/util/hash.hpp"
#include "bugforecast/util/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace bugforecast::metrics {

namespace {

std::vector<std::string> normalized(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names)
        out.push_back(util::to_lower(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json cache_key(const SnapshotPair& s, const ReleaseSpec& release, const LanguageFilter& filter) {
    return json{{"catalog_version", MetricCatalog::kVersion},
                {"old_commit", s.old_commit.sha},
                {"new_commit", s.new_commit.sha},
                {"start", format_date(release.start)},
                {"freeze", format_date(release.freeze)},
                {"filtered", normalized(filter.filtered)},
                {"excluded", normalized(filter.excluded)}};
}

fs::path cache_path(const fs::path& root, const json& key) {
    return root / "metrics" / (util::sha256_hex(key.dump()) + ".json");
}

std::string values_checksum(const json& values) { return util::sha256_hex(values.dump()); }

// Returns the cached values, or nothing (with a warning when the entry exists
// but cannot be trusted).
std::optional<std::map<std::string, double>> load_cached(const fs::path& file, const json& key,
                                                          std::vector<std::string>& warnings) {
    if (!fs::exists(file))
        return std::nullopt;
    try {
        const auto doc = json::parse(util::read_file(file));
        if (doc.at("key") != key)
            throw std::runtime_error("key mismatch");
        const auto& values = doc.at("values");
        if (doc.at("checksum").get<std::string>() != values_checksum(values))
            throw std::runtime_error("checksum mismatch");
        auto out = values.get<std::map<std::string, double>>();
        MetricVector probe{0, out};
        if (!validate_metric_vector(probe, MetricCatalog::standard()).empty())
            throw std::runtime_error("incomplete metric set");
        return out;
    } catch (const std::exception& e) {
        warnings.push_back("ignoring corrupted cache entry " + file.string() + " (" + e.what() + ")");
        return std::nullopt;
    }
}

void store_cached(const fs::path& file, const json& key, const std::map<std::string, double>& values) {
    const json v = values;
    const json doc{{"key", key}, {"values", v}, {"checksum", values_checksum(v)}};
    fs::create_directories(file.parent_path());
    util::write_file_atomic(file, doc.dump(2) + "\n");
}

}  // namespace

ReleaseExtraction extract_release_metrics(const GitRepository& repo, const ReleaseSpec& release,
                                          const ExtractionOptions& options) {
    ReleaseExtraction out;
    out.metrics.release_id = release.id;
    out.snapshots = resolve_snapshots(repo.mainline(), release);
    if (out.snapshots.warning)
        out.warnings.push_back(*out.snapshots.warning);

    const json key = cache_key(out.snapshots, release, options.filter);
    const fs::path file = options.cache_dir.empty() ? fs::path{} : cache_path(options.cache_dir, key);
    if (!file.empty())
        if (auto cached = load_cached(file, key, out.warnings)) {
            out.metrics.values = std::move(*cached);
            out.from_cache = true;
            return out;
        }

    const auto before = repo.tree(out.snapshots.old_commit.sha);
    const auto after = repo.tree(out.snapshots.new_commit.sha);
    auto m = measure_trees(*before, *after, options.filter);
    fill_code_metrics(m, out.metrics);
    const auto counts = count_commits(repo.mainline(), release);
    out.metrics.values[std::string(metric_ids::kCommits)] = static_cast<double>(counts.commits);
    out.metrics.values[std::string(metric_ids::kContributors)] = static_cast<double>(counts.contributors);
    out.skipped_files = m.skipped_files;
    out.warnings.insert(out.warnings.end(), m.warnings.begin(), m.warnings.end());

    const auto problems = validate_metric_vector(out.metrics, MetricCatalog::standard());
    if (!problems.empty())
        throw ExtractionError("release " + release.name + ": " + problems.front());
    if (!file.empty())
        store_cached(file, key, out.metrics.values);
    return out;
}

std::vector<ReleaseExtraction> extract_timeline_metrics(const GitRepository& repo, const Timeline& timeline,
                                                        const ExtractionOptions& options,
                                                        const ExtractionProgress& progress) {
    std::vector<ReleaseExtraction> out;
    for (const auto& r : timeline.releases) {
        out.push_back(extract_release_metrics(repo, r, options));
        if (progress)
            progress(r, out.back());
    }
    return out;
}

std::string dominant_language(const SourceTree& tree, const std::vector<std::string>& excluded) {
    const auto m = measure_tree(tree, LanguageFilter{{}, excluded});
    std::string best;
    std::size_t best_loc = 0;
    for (const auto& [name, loc] : m.loc_by_language) {
        const auto* lang = language_by_name(name);
        if (loc > best_loc && lang && lang->dialect != Dialect::none) {
            best = name;
            best_loc = loc;
        }
    }
    return best;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricVector>& rows, const Timeline& timeline,
                       const MetricCatalog& catalog) {
    util::CsvWriter w(out);
    std::vector<std::string> header{"release_id", "release_name"};
    const auto ids = catalog.ids();
    header.insert(header.end(), ids.begin(), ids.end());
    w.row(header);
    for (const auto& v : rows) {
        std::vector<std::string> row{std::to_string(v.release_id), timeline.at(v.release_id).name};
        for (const auto& id : ids)
            row.push_back(util::format_double(v.at(id)));
        w.row(row);
    }
}

std::vector<MetricVector> read_metrics_csv(std::string_view text, const Timeline& timeline,
                                           const MetricCatalog& catalog) {
    const auto records = util::parse_csv(text);
    if (records.empty())
        throw ValidationError("metrics table is empty");
    const auto& header = records.front().fields;
    const auto id_col = util::find_column(header, "release_id");
    if (!id_col)
        throw ValidationError("metrics table has no 'release_id' column");

    std::vector<MetricVector> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        const auto where = "metrics table line " + std::to_string(records[i].line);
        if (f.size() != header.size())
            throw ValidationError(where + " has " + std::to_string(f.size()) + " fields, expected " +
                                  std::to_string(header.size()));
        MetricVector v;
        v.release_id = static_cast<int>(util::parse_int(f[*id_col]));
        if (v.release_id != static_cast<int>(out.size()) + 1)
            throw ValidationError(where + ": releases must be listed as 1.." + std::to_string(timeline.size()) +
                                  " in order");
        for (std::size_t c = 0; c < header.size(); ++c)
            if (catalog.contains(header[c]))
                v.values[header[c]] = util::parse_double(f[c]);
        const auto problems = validate_metric_vector(v, catalog);
        if (!problems.empty())
            throw ValidationError(where + ": " + problems.front());
        out.push_back(std::move(v));
    }
    if (out.size() != timeline.size())
        throw ValidationError("metrics table has " + std::to_string(out.size()) + " releases, the timeline " +
                              std::to_string(timeline.size()));
    return out;
}

}  // namespace bugforecast::metrics
