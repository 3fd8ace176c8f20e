#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bugforecast/metrics/languages.hpp"

namespace bugforecast::metrics {

enum class LineKind { blank, comment, code };

struct StrippedText {
    /// The input with every comment character replaced by a space; newlines
    /// and string literals are kept, so line numbers still line up.
    std::string code;
    std::vector<LineKind> lines;

    std::size_t count(LineKind kind) const;
};

/// Classifies lines as blank, comment or code. Comment markers inside string
/// literals are ignored; block comments do not nest.
StrippedText strip_comments(std::string_view text, const Language& language);

/// Code lines with comments removed and surrounding whitespace trimmed, in
/// order. These are what line diffs compare.
std::vector<std::string> code_lines(const StrippedText& stripped);

/// A NUL byte in the first 8000 bytes marks a file as binary.
bool looks_binary(std::string_view content);

}  // namespace bugforecast::metrics
