#include "bugforecast/metrics/complexity.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "bugforecast/model/errors.hpp"
#include "bugforecast/util/hash.hpp"
#include "bugforecast/util/text.hpp"

namespace bugforecast::metrics {

namespace {

enum class TokenKind { identifier, number, string, punct };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t line;  // 1-based line where the token starts
    std::size_t end_line;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

std::vector<Token> tokenize(std::string_view code, const Language& lang) {
    static const std::vector<std::string_view> kMultiCharPunct{"::", "->", "=>", "&&", "||", "?.", "??"};
    auto multi = lang.multiline_quotes;
    std::sort(multi.begin(), multi.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::vector<Token> tokens;
    std::size_t i = 0, line = 1;
    bool line_start = true;
    while (i < code.size()) {
        const char c = code[i];
        if (c == '\n') {
            ++line;
            ++i;
            line_start = true;
            continue;
        }
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (lang.preprocessor && line_start && c == '#') {
            // Skip the directive including backslash continuations.
            while (i < code.size()) {
                if (code[i] == '\n') {
                    std::size_t back = i;
                    while (back > 0 && (code[back - 1] == ' ' || code[back - 1] == '\t'))
                        --back;
                    if (back == 0 || code[back - 1] != '\\')
                        break;
                    ++line;
                }
                ++i;
            }
            continue;
        }
        line_start = false;
        const std::size_t start_line = line;

        bool is_multi = false;
        std::string_view close;
        for (const auto& q : multi)
            if (code.compare(i, q.size(), q) == 0) {
                is_multi = true;
                close = q;
                break;
            }
        if (is_multi || lang.quotes.find(c) != std::string::npos) {
            if (!is_multi)
                close = code.substr(i, 1);
            const bool raw = close == "`";
            std::size_t j = i + close.size();
            while (j < code.size()) {
                if (!raw && code[j] == '\\' && j + 1 < code.size()) {
                    if (code[j + 1] == '\n')
                        ++line;
                    j += 2;
                    continue;
                }
                if (code.compare(j, close.size(), close) == 0) {
                    j += close.size();
                    break;
                }
                if (code[j] == '\n') {
                    if (!is_multi)
                        break;
                    ++line;
                }
                ++j;
            }
            tokens.push_back({TokenKind::string, std::string(code.substr(i, j - i)), start_line, line});
            i = j;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < code.size() && is_ident_char(code[j]))
                ++j;
            tokens.push_back({TokenKind::identifier, std::string(code.substr(i, j - i)), line, line});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < code.size() && (is_ident_char(code[j]) || code[j] == '.'))
                ++j;
            tokens.push_back({TokenKind::number, std::string(code.substr(i, j - i)), line, line});
            i = j;
            continue;
        }
        std::size_t len = 1;
        for (auto p : kMultiCharPunct)
            if (code.compare(i, p.size(), p) == 0) {
                len = p.size();
                break;
            }
        tokens.push_back({TokenKind::punct, std::string(code.substr(i, len)), line, line});
        i += len;
    }
    return tokens;
}

std::string hash_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    std::string text;
    for (std::size_t i = begin; i < end; ++i) {
        text += tokens[i].text;
        text.push_back('\n');
    }
    return util::sha256_hex(text);
}

std::string join_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (!out.empty())
            out.push_back(' ');
        out += tokens[i].text;
    }
    return out;
}

bool is_ternary(const std::vector<Token>& t, std::size_t i) {
    static const std::set<std::string> kNotAfter{":", ")", ",", ">", "=", ";", ".", "?", "]", "{", "extends", "super"};
    if (i > 0 && t[i - 1].text == "<")
        return false;
    return i + 1 < t.size() && !kNotAfter.count(t[i + 1].text);
}

int branch_weight(const std::vector<Token>& t, std::size_t i) {
    static const std::set<std::string> kBranchWords{"if", "for", "while", "case", "catch", "foreach"};
    const auto& tok = t[i];
    if (tok.kind == TokenKind::identifier)
        return kBranchWords.count(tok.text) ? 1 : 0;
    if (tok.kind == TokenKind::punct) {
        if (tok.text == "&&" || tok.text == "||")
            return 1;
        if (tok.text == "?" && is_ternary(t, i))
            return 1;
    }
    return 0;
}

// Skips a balanced group starting at t[i] (an opening bracket); returns the
// index just past the closing bracket.
std::size_t skip_group(const std::vector<Token>& t, std::size_t i, const std::string& path) {
    const std::string open = t[i].text;
    const std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t j = i; j < t.size(); ++j) {
        if (t[j].kind != TokenKind::punct)
            continue;
        if (t[j].text == open)
            ++depth;
        else if (t[j].text == close && --depth == 0)
            return j + 1;
    }
    throw ExtractionError(path + ": unbalanced '" + open + "' opened on line " + std::to_string(t[i].line));
}

class CFamilyScanner {
public:
    CFamilyScanner(const std::vector<Token>& tokens, const Language& lang, const std::string& path)
        : t_(tokens), lang_(lang), path_(path) {}

    std::vector<FunctionRecord> run() {
        std::size_t i = 0;
        while (i < t_.size())
            i = step(i);
        if (!scopes_.empty())
            throw ExtractionError(path_ + ": unbalanced braces at end of file");
        return std::move(out_);
    }

private:
    enum class Cand { none, after_params, init_list };
    struct Scope {
        bool named_type;
        std::string name;
    };

    static bool is_type_keyword(const std::string& s) {
        static const std::set<std::string> k{"class",  "struct", "interface", "enum",  "namespace",
                                             "union",  "record", "object",    "trait", "type"};
        return k.count(s) > 0;
    }
    static bool is_control(const std::string& s) {
        static const std::set<std::string> k{
            "if",     "for",    "while",  "switch",     "catch",  "return",       "sizeof", "typeof", "alignof",
            "new",    "delete", "do",     "else",       "case",   "foreach",      "using",  "lock",   "synchronized",
            "when",   "match",  "elif",   "with",       "assert", "yield",        "await",  "not",    "and",
            "or",     "in",     "of",     "is",         "as",     "instanceof",   "super",  "this",   "defined",
            "static_assert", "try", "finally", "throw", "guard"};
        return k.count(s) > 0;
    }
    static bool is_trailer_call(const std::string& s) {
        static const std::set<std::string> k{"noexcept", "throw", "__attribute__", "requires", "alignas", "decltype"};
        return k.count(s) > 0;
    }
    static bool allowed_after_params(const Token& tok) {
        if (tok.kind == TokenKind::identifier)
            return true;
        static const std::set<std::string> k{",", ".", "::", "<", ">", "*", "&", "&&", "[", "]", "->", "?", ":", "@"};
        return tok.kind == TokenKind::punct && k.count(tok.text) > 0;
    }

    bool next_is(std::size_t i, std::string_view text) const { return i + 1 < t_.size() && t_[i + 1].text == text; }
    bool prev_is(std::size_t i, std::string_view text) const { return i > 0 && t_[i - 1].text == text; }

    void reset() {
        cand_ = Cand::none;
        pending_type_.clear();
        arrow_ = false;
    }

    std::string qualified(const std::string& name) const {
        std::string q;
        for (const auto& s : scopes_)
            if (s.named_type)
                q += s.name + "::";
        return q + name;
    }

    // Name ending at t_[i] including `A::B::` qualification and `~`.
    std::string declared_name(std::size_t i) const {
        std::string name = t_[i].text;
        std::size_t j = i;
        while (j >= 2 && t_[j - 1].text == "::" && t_[j - 2].kind == TokenKind::identifier) {
            name = t_[j - 2].text + "::" + name;
            j -= 2;
        }
        if (j >= 1 && t_[j - 1].text == "~")
            name = "~" + name;
        return name;
    }

    std::size_t start_candidate(const std::string& name, std::size_t open_paren) {
        const std::size_t close = skip_group(t_, open_paren, path_);
        cand_name_ = name;
        cand_params_ = join_tokens(t_, open_paren + 1, close - 1);
        cand_line_ = t_[open_paren].line;
        cand_ = Cand::after_params;
        return close;
    }

    std::size_t begin_function(std::size_t brace) {
        int depth = 0;
        int cc = 1;
        std::size_t j = brace;
        for (; j < t_.size(); ++j) {
            const auto& tok = t_[j];
            if (tok.kind == TokenKind::punct && tok.text == "{")
                ++depth;
            else if (tok.kind == TokenKind::punct && tok.text == "}") {
                if (--depth == 0)
                    break;
            } else {
                cc += branch_weight(t_, j);
            }
        }
        if (j >= t_.size())
            throw ExtractionError(path_ + ": function '" + cand_name_ + "' starting on line " +
                                  std::to_string(cand_line_) + " is not closed");
        FunctionRecord f;
        f.file_path = path_;
        f.language = lang_.name;
        f.name = qualified(cand_name_);
        f.signature = f.name + "(" + cand_params_ + ")";
        f.cc = cc;
        f.body_hash = hash_tokens(t_, brace + 1, j);
        f.first_line = cand_line_;
        out_.push_back(std::move(f));
        reset();
        return j + 1;
    }

    std::size_t step(std::size_t i) {
        const Token& tok = t_[i];
        if (tok.kind == TokenKind::punct) {
            const auto& p = tok.text;
            if (p == "{") {
                if (cand_ == Cand::init_list && i > 0 &&
                    (t_[i - 1].kind == TokenKind::identifier || t_[i - 1].text == ">"))
                    return skip_group(t_, i, path_);
                if (cand_ != Cand::none || arrow_) {
                    if (arrow_ && cand_ == Cand::none) {
                        cand_name_ = arrow_name_.empty() ? "(anonymous)" : arrow_name_;
                        cand_params_.clear();
                        cand_line_ = tok.line;
                    }
                    return begin_function(i);
                }
                scopes_.push_back({!pending_type_.empty(), pending_type_});
                reset();
                return i + 1;
            }
            if (p == "}") {
                if (scopes_.empty())
                    throw ExtractionError(path_ + ": unmatched '}' on line " + std::to_string(tok.line));
                scopes_.pop_back();
                reset();
                return i + 1;
            }
            if (p == ";") {
                reset();
                arrow_name_.clear();
                return i + 1;
            }
            if (p == "=") {
                if (i > 0 && t_[i - 1].kind == TokenKind::identifier)
                    arrow_name_ = t_[i - 1].text;
                reset();
                return i + 1;
            }
            if (p == "=>") {
                cand_ = Cand::none;
                arrow_ = next_is(i, "{");
                return i + 1;
            }
            if (p == "(" || p == "[") {
                // Parentheses not introduced by a name: Go receivers and result
                // tuples, casts, lambda captures.
                const std::size_t next = skip_group(t_, i, path_);
                if (cand_ == Cand::after_params && p == "(" && lang_.dialect == Dialect::go)
                    return next;
                if (cand_ != Cand::after_params)
                    cand_ = Cand::none;
                arrow_ = false;
                return next;
            }
            if (p == ":" && cand_ == Cand::after_params) {
                if (lang_.dialect == Dialect::cpp)
                    cand_ = Cand::init_list;
                return i + 1;
            }
            if (cand_ == Cand::init_list && p == ",")
                return i + 1;
            if (cand_ == Cand::after_params && !allowed_after_params(tok))
                cand_ = Cand::none;
            arrow_ = false;
            return i + 1;
        }

        if (tok.kind != TokenKind::identifier) {
            if (cand_ == Cand::after_params)
                cand_ = Cand::none;
            arrow_ = false;
            return i + 1;
        }

        // Identifier.
        arrow_ = false;
        if (is_type_keyword(tok.text) && i + 1 < t_.size() && t_[i + 1].kind == TokenKind::identifier) {
            if (pending_type_.empty() || tok.text != "type")
                pending_type_ = t_[i + 1].text;
            cand_ = Cand::none;
            // A primary constructor list directly after the type name is part of
            // the type header.
            if (i + 2 < t_.size() && t_[i + 2].text == "(")
                return skip_group(t_, i + 2, path_);
            return i + 2;
        }

        std::size_t name_end = i;  // token whose successor is the parameter list
        std::string name = tok.text;
        if (tok.text == "operator") {
            std::size_t j = i + 1;
            if (j < t_.size() && t_[j].text == "(" && j + 1 < t_.size() && t_[j + 1].text == ")")
                j += 2;
            while (j < t_.size() && t_[j].text != "(")
                ++j;
            if (j >= t_.size())
                return i + 1;
            name = declared_name(i) + join_tokens(t_, i + 1, j);
            name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
            name_end = j - 1;
        } else {
            name = declared_name(i);
        }
        if (!next_is(name_end, "("))
            return i + 1;
        const std::size_t open = name_end + 1;

        if (prev_is(i, "@") || prev_is(i, "new") || prev_is(i, ".") || is_control(tok.text)) {
            const std::size_t next = skip_group(t_, open, path_);
            if (!prev_is(i, "@"))
                cand_ = Cand::none;
            return next;
        }
        if ((cand_ == Cand::after_params && is_trailer_call(tok.text)) || cand_ == Cand::init_list)
            return skip_group(t_, open, path_);
        if (tok.text == "function" || tok.text == "func" || tok.text == "fun") {
            return start_candidate(arrow_name_.empty() ? "(anonymous)" : arrow_name_, open);
        }
        return start_candidate(name, open);
    }

    const std::vector<Token>& t_;
    const Language& lang_;
    const std::string& path_;
    std::vector<Scope> scopes_;
    std::vector<FunctionRecord> out_;

    Cand cand_ = Cand::none;
    std::string cand_name_, cand_params_;
    std::size_t cand_line_ = 0;
    std::string pending_type_;
    bool arrow_ = false;
    std::string arrow_name_;
};

std::size_t indent_width(std::string_view line) {
    std::size_t w = 0;
    for (char c : line) {
        if (c == ' ')
            ++w;
        else if (c == '\t')
            w = (w / 8 + 1) * 8;
        else
            break;
    }
    return w;
}

std::vector<FunctionRecord> scan_python(const StrippedText& stripped, const std::vector<Token>& t,
                                        const Language& lang, const std::string& path) {
    // Group tokens into logical lines: a new logical line starts at a token on
    // a fresh physical line when no bracket is open and the previous line did
    // not end with a backslash.
    std::vector<std::string_view> physical;
    {
        std::string_view code = stripped.code;
        std::size_t pos = 0;
        while (pos <= code.size()) {
            auto eol = code.find('\n', pos);
            if (eol == std::string_view::npos)
                eol = code.size();
            physical.push_back(code.substr(pos, eol - pos));
            pos = eol + 1;
        }
    }
    auto continues = [&](std::size_t line) {
        if (line < 2 || line - 2 >= physical.size())
            return false;
        auto prev = util::trim(physical[line - 2]);
        return !prev.empty() && prev.back() == '\\';
    };

    struct Logical {
        std::size_t begin, end;  // token range
        std::size_t indent;
    };
    std::vector<Logical> lines;
    int depth = 0;
    std::size_t last_end_line = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const bool fresh = t[i].line > last_end_line;
        if (fresh && depth == 0 && !continues(t[i].line)) {
            if (!lines.empty())
                lines.back().end = i;
            lines.push_back({i, t.size(), indent_width(physical[t[i].line - 1])});
        }
        if (t[i].kind == TokenKind::punct) {
            const auto& p = t[i].text;
            if (p == "(" || p == "[" || p == "{")
                ++depth;
            else if ((p == ")" || p == "]" || p == "}") && depth > 0)
                --depth;
        }
        last_end_line = std::max(last_end_line, t[i].end_line);
    }

    struct Open {
        std::size_t indent = 0;
        bool function = false;
        std::string name;
        std::size_t body_begin = 0;
        std::size_t line = 0;
        std::string params;
        int cc = 1;
    };
    std::vector<Open> stack;
    std::vector<FunctionRecord> out;

    auto close_top = [&](std::size_t body_end) {
        Open o = std::move(stack.back());
        stack.pop_back();
        if (!o.function)
            return;
        FunctionRecord f;
        f.file_path = path;
        f.language = lang.name;
        f.name = o.name;
        f.signature = o.name + "(" + o.params + ")";
        f.cc = o.cc;
        f.body_hash = hash_tokens(t, o.body_begin, body_end);
        f.first_line = o.line;
        out.push_back(std::move(f));
    };
    auto in_function = [&] {
        return std::any_of(stack.begin(), stack.end(), [](const Open& o) { return o.function; });
    };

    static const std::set<std::string> kBranch{"if", "elif", "for", "while", "except", "and", "or"};
    for (const auto& l : lines) {
        while (!stack.empty() && stack.back().indent >= l.indent)
            close_top(l.begin);
        if (in_function()) {
            auto& fn = *std::find_if(stack.begin(), stack.end(), [](const Open& o) { return o.function; });
            for (std::size_t i = l.begin; i < l.end; ++i)
                if (t[i].kind == TokenKind::identifier &&
                    (kBranch.count(t[i].text) || (i == l.begin && t[i].text == "case")))
                    ++fn.cc;
            continue;
        }
        std::size_t i = l.begin;
        if (i < l.end && t[i].text == "async")
            ++i;
        if (i + 2 < l.end && t[i].text == "def" && t[i + 1].kind == TokenKind::identifier && t[i + 2].text == "(") {
            const std::size_t close = skip_group(t, i + 2, path);
            std::size_t colon = close;
            while (colon < l.end && t[colon].text != ":")
                ++colon;
            std::string qual;
            for (const auto& o : stack)
                qual += o.name + "::";
            Open fn;
            fn.indent = l.indent;
            fn.function = true;
            fn.name = qual + t[i + 1].text;
            fn.params = join_tokens(t, i + 3, close - 1);
            fn.line = t[i].line;
            fn.body_begin = std::min(colon + 1, l.end);
            for (std::size_t j = fn.body_begin; j < l.end; ++j)
                if (t[j].kind == TokenKind::identifier && kBranch.count(t[j].text))
                    ++fn.cc;
            stack.push_back(std::move(fn));
        } else if (i + 1 < l.end && t[i].text == "class" && t[i + 1].kind == TokenKind::identifier) {
            Open cls;
            cls.indent = l.indent;
            cls.name = t[i + 1].text;
            stack.push_back(std::move(cls));
        }
    }
    while (!stack.empty())
        close_top(t.size());
    std::sort(out.begin(), out.end(), [](const FunctionRecord& a, const FunctionRecord& b) {
        return a.first_line < b.first_line;
    });
    return out;
}

}  // namespace

std::vector<FunctionRecord> scan_functions(const StrippedText& stripped, const Language& language,
                                           const std::string& path) {
    if (language.dialect == Dialect::none)
        return {};
    const auto tokens = tokenize(stripped.code, language);
    auto functions = language.dialect == Dialect::python ? scan_python(stripped, tokens, language, path)
                                                         : CFamilyScanner(tokens, language, path).run();
    std::map<std::string, std::size_t> seen;
    for (auto& f : functions)
        f.occurrence = seen[f.signature]++;
    return functions;
}

void ComplexityCounts::add(int cc) {
    ++functions;
    total_cc += static_cast<std::size_t>(cc);
    for (std::size_t t = 0; t < kComplexityThresholds.size(); ++t)
        if (cc > kComplexityThresholds[t])
            ++above[t];
}

ComplexityCounts& ComplexityCounts::operator+=(const ComplexityCounts& o) {
    functions += o.functions;
    total_cc += o.total_cc;
    for (std::size_t t = 0; t < above.size(); ++t)
        above[t] += o.above[t];
    return *this;
}

ComplexityCounts count_complexity(const std::vector<FunctionRecord>& functions) {
    ComplexityCounts c;
    for (const auto& f : functions)
        c.add(f.cc);
    return c;
}

std::vector<FunctionRecord> changed_functions(const std::vector<FunctionRecord>& before,
                                              const std::vector<FunctionRecord>& after) {
    std::map<std::tuple<std::string, std::string, std::size_t>, const FunctionRecord*> index;
    for (const auto& f : before)
        index[{f.file_path, f.signature, f.occurrence}] = &f;
    std::vector<FunctionRecord> out;
    for (const auto& f : after) {
        auto it = index.find({f.file_path, f.signature, f.occurrence});
        if (it == index.end() || it->second->body_hash != f.body_hash)
            out.push_back(f);
    }
    return out;
}

}  // namespace bugforecast::metrics
