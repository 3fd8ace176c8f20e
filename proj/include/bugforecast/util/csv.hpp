#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bugforecast::util {

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;         // 1-based line where the record starts
    std::size_t byte_offset = 0;  // offset of the record's first byte
};

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
/// newlines. CRLF and LF line endings are both accepted. Throws ParseError at
/// the opening quote of an unterminated quoted field.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// Minimal quoting writer: fields containing a comma, quote or newline are
/// quoted. Lines end with `\n`.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and a rename so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Index of `name` in a header row (case-insensitive), if present.
std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name);

}  // namespace bugforecast::util
