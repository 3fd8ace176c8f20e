#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/metrics/languages.hpp"
#include "bugforecast/metrics/lexer.hpp"
#include "bugforecast/model/metric_catalog.hpp"

namespace bugforecast::metrics {

struct FunctionRecord {
    std::string file_path;
    std::string language;
    /// Name qualified by enclosing classes/namespaces, e.g. `Outer::Inner::run`.
    std::string name;
    /// Name plus whitespace-normalized parameter list.
    std::string signature;
    /// Position among functions of the same file with the same signature.
    std::size_t occurrence = 0;
    int cc = 1;
    /// SHA-256 of the body's token text.
    std::string body_hash;
    std::size_t first_line = 0;  // 1-based

    friend bool operator==(const FunctionRecord&, const FunctionRecord&) = default;
};

/// Finds functions lexically and computes their cyclomatic complexity:
/// 1 + if, for, while, case, catch, foreach, elif/except (Python), ternary
/// `?`, `&&`, `||` (`and`, `or` in Python). Nested functions and lambdas count
/// toward the enclosing function. Throws ExtractionError on unbalanced
/// braces. Returns nothing for languages without a dialect.
std::vector<FunctionRecord> scan_functions(const StrippedText& stripped, const Language& language,
                                           const std::string& path);

struct ComplexityCounts {
    std::size_t functions = 0;
    std::size_t total_cc = 0;
    /// Functions with CC strictly above each catalog threshold.
    std::array<std::size_t, kComplexityThresholds.size()> above{};

    void add(int cc);
    ComplexityCounts& operator+=(const ComplexityCounts& o);
    friend bool operator==(const ComplexityCounts&, const ComplexityCounts&) = default;
};

ComplexityCounts count_complexity(const std::vector<FunctionRecord>& functions);

/// Functions of `after` that are new (no (path, signature, occurrence) match
/// in `before`) or modified (matched but with a different body hash).
std::vector<FunctionRecord> changed_functions(const std::vector<FunctionRecord>& before,
                                              const std::vector<FunctionRecord>& after);

}  // namespace bugforecast::metrics
