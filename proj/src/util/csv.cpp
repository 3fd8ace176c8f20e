#include "bugforecast/util/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast::util {

std::vector<CsvRecord> parse_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    std::size_t i = 0;
    std::size_t line = 1;
    while (i < text.size()) {
        CsvRecord rec;
        rec.line = line;
        rec.byte_offset = i;
        std::string field;
        bool record_done = false;
        while (!record_done) {
            if (i < text.size() && text[i] == '"') {
                const std::size_t quote_at = i;
                ++i;
                while (true) {
                    if (i >= text.size())
                        throw ParseError("unterminated quoted CSV field starting on line " + std::to_string(line),
                                         quote_at);
                    char c = text[i++];
                    if (c == '"') {
                        if (i < text.size() && text[i] == '"') {
                            field += '"';
                            ++i;
                            continue;
                        }
                        break;
                    }
                    if (c == '\n')
                        ++line;
                    field += c;
                }
            }
            // Unquoted remainder (or the whole unquoted field).
            while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
                field += text[i++];
            rec.fields.push_back(std::move(field));
            field.clear();
            if (i >= text.size()) {
                record_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r')
                    ++i;
                if (i < text.size() && text[i] == '\n')
                    ++i;
                ++line;
                record_done = true;
            }
        }
        const bool blank = rec.fields.size() == 1 && trim(rec.fields[0]).empty();
        if (!blank)
            records.push_back(std::move(rec));
    }
    return records;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out_ << ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n\r") == std::string::npos) {
            out_ << f;
            continue;
        }
        out_ << '"';
        for (char c : f) {
            if (c == '"')
                out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }
    out_ << '\n';
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputNotFoundError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (iequals(trim(header[i]), name))
            return i;
    return std::nullopt;
}

}  // namespace bugforecast::util
