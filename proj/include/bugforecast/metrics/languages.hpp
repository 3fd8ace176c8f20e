#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bugforecast::metrics {

/// How the function scanner treats a language.
enum class Dialect {
    none,        // no function detection
    c_family,    // C, Java, C#, JavaScript, TypeScript, Kotlin, Scala, Groovy, Swift, PHP
    cpp,         // c_family plus constructor initializer lists
    go,          // c_family with result tuples after the parameter list
    python,      // indentation-delimited `def`
};

struct Language {
    std::string name;
    std::vector<std::string> line_comments;
    std::vector<std::pair<std::string, std::string>> block_comments;
    /// Single-line string delimiters.
    std::string quotes;
    /// Delimiters of strings that may span lines (JS/Go backticks, Python
    /// triple quotes).
    std::vector<std::string> multiline_quotes;
    bool preprocessor = false;  // `#` directives are not scanned for functions
    Dialect dialect = Dialect::none;
};

/// Language of a file by extension or well-known file name; the "other"
/// language (no comment syntax) when unknown.
const Language& language_for_path(std::string_view path);

inline constexpr std::string_view kOtherLanguage = "other";

/// Case-insensitive lookup; null for unknown names.
const Language* language_by_name(std::string_view name);

/// Which languages count toward each scope.
struct LanguageFilter {
    /// Languages of the filtered scope (`_lang` metrics).
    std::vector<std::string> filtered;
    /// Languages ignored entirely.
    std::vector<std::string> excluded;

    bool is_excluded(std::string_view language) const;
    bool is_filtered(std::string_view language) const;
};

}  // namespace bugforecast::metrics
