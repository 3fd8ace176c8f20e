#include "log.hpp"

#include <memory>

#include <spdlog/logger.h>
#include <spdlog/pattern_formatter.h>
#include <spdlog/sinks/stdout_sinks.h>

namespace bugforecast::cli {

namespace {

std::shared_ptr<spdlog::logger>& logger() {
    static std::shared_ptr<spdlog::logger> instance;
    return instance;
}

std::string quote(std::string_view v) {
    const bool plain = !v.empty() && v.find_first_of(" \t\n\r\"=\\") == std::string_view::npos;
    if (plain)
        return std::string(v);
    std::string out = "\"";
    for (char c : v) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            out += c;
        }
    }
    return out + "\"";
}

}  // namespace

std::string logfmt(std::string_view event, const Fields& fields) {
    std::string out = "event=" + quote(event);
    for (const auto& [k, v] : fields)
        out += " " + k + "=" + quote(v);
    return out;
}

void init_logging(spdlog::level::level_enum level) {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("bugforecast", sink);
    l->set_formatter(std::make_unique<spdlog::pattern_formatter>("ts=%Y-%m-%dT%H:%M:%S.%eZ level=%l %v",
                                                                 spdlog::pattern_time_type::utc));
    l->set_level(level);
    l->flush_on(spdlog::level::trace);
    logger() = std::move(l);
}

void log(spdlog::level::level_enum level, std::string_view event, const Fields& fields) {
    if (!logger())
        init_logging(spdlog::level::info);
    logger()->log(level, "{}", logfmt(event, fields));
}

}  // namespace bugforecast::cli
