#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <spdlog/common.h>

namespace bugforecast::cli {

using Fields = std::vector<std::pair<std::string, std::string>>;

/// `event=<event> key=value ...`; values with spaces, quotes or `=` are quoted.
std::string logfmt(std::string_view event, const Fields& fields);

/// Routes records to stderr as `ts=... level=... event=...` lines.
void init_logging(spdlog::level::level_enum level);

void log(spdlog::level::level_enum level, std::string_view event, const Fields& fields = {});

}  // namespace bugforecast::cli
