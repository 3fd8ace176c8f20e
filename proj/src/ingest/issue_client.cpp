#include "bugforecast/ingest/issue_client.hpp"

#include <algorithm>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "bugforecast/ingest/export_parser.hpp"
#include "bugforecast/model/errors.hpp"

namespace bugforecast::ingest {

namespace {

using nlohmann::json;

constexpr std::string_view kSearchPath = "/rest/api/2/search";

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string base_path;
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ValidationError("tracker endpoint must be an http(s) URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint e;
    e.origin = url.substr(0, path_start);
    if (path_start != std::string::npos)
        e.base_path = url.substr(path_start);
    while (!e.base_path.empty() && e.base_path.back() == '/')
        e.base_path.pop_back();
    return e;
}

bool retryable(int status) { return status == 429 || status >= 500; }

json get_page(httplib::Client& client, const std::string& path, const httplib::Params& params,
              const FetchOptions& options) {
    std::string last_failure;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(options.initial_backoff * (1 << (attempt - 1)));
        auto res = client.Get(path, params, httplib::Headers{{"Accept", "application/json"}});
        if (!res) {
            last_failure = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) {
            try {
                return json::parse(res->body);
            } catch (const json::parse_error& e) {
                throw NetworkError(std::string("tracker returned malformed JSON: ") + e.what());
            }
        }
        last_failure = "HTTP " + std::to_string(res->status);
        if (!retryable(res->status))
            break;
    }
    throw NetworkError("tracker search " + path + " failed after " + std::to_string(options.max_retries + 1) +
                       " attempts: " + last_failure);
}

}  // namespace

std::string fetch_issues(const std::string& endpoint, const std::string& project_key, const FetchOptions& options) {
    if (project_key.empty())
        throw ValidationError("tracker project key must not be empty");
    if (options.page_size <= 0)
        throw ValidationError("page size must be positive");

    const auto ep = split_endpoint(endpoint);
    httplib::Client client(ep.origin);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_follow_location(true);
    const std::string path = ep.base_path + std::string(kSearchPath);

    json issues = json::array();
    long long start = 0;
    while (true) {
        httplib::Params params{{"jql", "project=" + project_key + " ORDER BY key ASC"},
                               {"startAt", std::to_string(start)},
                               {"maxResults", std::to_string(options.page_size)}};
        auto page = get_page(client, path, params, options);
        if (!page.is_object() || !page.contains("total") || !page["total"].is_number_integer() ||
            !page.contains("issues") || !page["issues"].is_array())
            throw NetworkError("tracker search page at startAt=" + std::to_string(start) +
                               " lacks 'total' or 'issues'");

        const long long total = page["total"].get<long long>();
        long long limit = options.page_size;
        if (auto m = page.find("maxResults"); m != page.end() && m->is_number_integer() && m->get<long long>() > 0)
            limit = std::min(limit, m->get<long long>());
        const auto& batch = page["issues"];
        const long long expected = std::max(0LL, std::min(limit, total - start));
        if (static_cast<long long>(batch.size()) < expected)
            throw NetworkError("truncated page at startAt=" + std::to_string(start) + ": expected " +
                               std::to_string(expected) + " issues, got " + std::to_string(batch.size()));
        for (const auto& issue : batch)
            issues.push_back(issue);
        start += static_cast<long long>(batch.size());
        if (start >= total || batch.empty())
            break;
    }

    auto key_of = [](const json& issue) {
        auto it = issue.find("key");
        return it != issue.end() && it->is_string() ? it->get<std::string>() : std::string{};
    };
    std::stable_sort(issues.begin(), issues.end(),
                     [&](const json& a, const json& b) { return natural_key_less(key_of(a), key_of(b)); });
    return json{{"issues", issues}}.dump();
}

}  // namespace bugforecast::ingest
