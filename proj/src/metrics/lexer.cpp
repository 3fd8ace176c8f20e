#include "bugforecast/metrics/lexer.hpp"

#include <algorithm>

#include "bugforecast/util/text.hpp"

namespace bugforecast::metrics {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

bool starts_with_at(std::string_view text, std::size_t i, std::string_view token) {
    return !token.empty() && text.compare(i, token.size(), token) == 0;
}

}  // namespace

std::size_t StrippedText::count(LineKind kind) const { return static_cast<std::size_t>(std::count(lines.begin(), lines.end(), kind)); }

StrippedText strip_comments(std::string_view text, const Language& language) {
    enum class State { normal, block, string };

    StrippedText out;
    out.code.reserve(text.size());

    State state = State::normal;
    std::string_view close;  // terminator of the current block comment or string
    bool multiline = false;  // current string may span lines
    bool raw = false;        // backslash does not escape (Go/JS backticks)
    bool has_code = false, has_comment = false;

    // Longest multi-line delimiters first so `"""` wins over `"`.
    auto multi = language.multiline_quotes;
    std::sort(multi.begin(), multi.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

    auto end_line = [&] {
        out.lines.push_back(has_code ? LineKind::code : has_comment ? LineKind::comment : LineKind::blank);
        has_code = has_comment = false;
    };
    auto emit_comment = [&](std::size_t n) {
        out.code.append(n, ' ');
        has_comment = true;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            if (state == State::string && !multiline)
                state = State::normal;
            out.code.push_back('\n');
            end_line();
            ++i;
            continue;
        }
        switch (state) {
        case State::block:
            if (starts_with_at(text, i, close)) {
                emit_comment(close.size());
                i += close.size();
                state = State::normal;
            } else {
                emit_comment(1);
                ++i;
            }
            break;
        case State::string:
            if (!raw && c == '\\' && i + 1 < text.size() && text[i + 1] != '\n') {
                out.code.append(text.substr(i, 2));
                i += 2;
                has_code = true;
            } else if (starts_with_at(text, i, close)) {
                out.code.append(close);
                i += close.size();
                state = State::normal;
                has_code = true;
            } else {
                out.code.push_back(c);
                if (!is_space(c))
                    has_code = true;
                ++i;
            }
            break;
        case State::normal: {
            bool matched = false;
            for (const auto& q : multi)
                if (starts_with_at(text, i, q)) {
                    out.code.append(q);
                    i += q.size();
                    state = State::string;
                    close = q;
                    multiline = true;
                    raw = q == "`";
                    has_code = matched = true;
                    break;
                }
            if (matched)
                break;
            for (const auto& lc : language.line_comments)
                if (starts_with_at(text, i, lc)) {
                    const auto eol = text.find('\n', i);
                    const auto n = (eol == std::string_view::npos ? text.size() : eol) - i;
                    emit_comment(n);
                    i += n;
                    matched = true;
                    break;
                }
            if (matched)
                break;
            for (const auto& [open, end] : language.block_comments)
                if (starts_with_at(text, i, open)) {
                    emit_comment(open.size());
                    i += open.size();
                    state = State::block;
                    close = end;
                    matched = true;
                    break;
                }
            if (matched)
                break;
            if (language.quotes.find(c) != std::string::npos) {
                out.code.push_back(c);
                close = std::string_view(language.quotes).substr(language.quotes.find(c), 1);
                state = State::string;
                multiline = false;
                raw = false;
                has_code = true;
                ++i;
                break;
            }
            out.code.push_back(is_space(c) && c != ' ' && c != '\t' ? ' ' : c);
            if (!is_space(c))
                has_code = true;
            ++i;
            break;
        }
        }
    }
    if (!text.empty() && text.back() != '\n')
        end_line();
    return out;
}

std::vector<std::string> code_lines(const StrippedText& stripped) {
    std::vector<std::string> out;
    std::string_view code = stripped.code;
    std::size_t line = 0, pos = 0;
    while (pos <= code.size() && line < stripped.lines.size()) {
        auto eol = code.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = code.size();
        if (stripped.lines[line] == LineKind::code) {
            auto t = util::trim(code.substr(pos, eol - pos));
            if (!t.empty())
                out.emplace_back(t);
        }
        pos = eol + 1;
        ++line;
    }
    return out;
}

bool looks_binary(std::string_view content) {
    return content.substr(0, 8000).find('\0') != std::string_view::npos;
}

}  // namespace bugforecast::metrics
