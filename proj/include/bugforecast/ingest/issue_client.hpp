#pragma once

#include <chrono>
#include <string>

namespace bugforecast::ingest {

struct FetchOptions {
    int page_size = 100;
    /// Attempts per page after the first failure.
    int max_retries = 4;
    std::chrono::milliseconds initial_backoff{250};
    std::chrono::seconds timeout{30};
};

/// Pages through the tracker's search endpoint (`/rest/api/2/search`, offset
/// and limit paging) and returns every issue of `project_key` as one JSON
/// export `{"issues": [...]}` ordered by issue key.
///
/// Failed requests are retried with exponential backoff; exhausting the
/// retries or receiving a page shorter than the advertised total requires
/// throws NetworkError.
std::string fetch_issues(const std::string& endpoint, const std::string& project_key,
                         const FetchOptions& options = {});

}  // namespace bugforecast::ingest
