#include "bugforecast/metrics/languages.hpp"

#include <algorithm>
#include <map>

#include "bugforecast/util/text.hpp"

namespace bugforecast::metrics {

namespace {

using Blocks = std::vector<std::pair<std::string, std::string>>;

const Blocks kCBlock{{"/*", "*/"}};
const Blocks kXmlBlock{{"<!--", "-->"}};

struct Table {
    std::vector<Language> languages;
    std::map<std::string, std::size_t> by_extension;  // lower-case, with the dot
    std::map<std::string, std::size_t> by_file_name;
    Language other;

    void add(Language lang, std::vector<std::string> extensions, std::vector<std::string> file_names = {}) {
        languages.push_back(std::move(lang));
        for (auto& e : extensions)
            by_extension[e] = languages.size() - 1;
        for (auto& f : file_names)
            by_file_name[f] = languages.size() - 1;
    }
};

Table build_table() {
    Table t;
    auto c_like = [](std::string name, Dialect d, std::string quotes = "\"'") {
        Language l;
        l.name = std::move(name);
        l.line_comments = {"//"};
        l.block_comments = kCBlock;
        l.quotes = std::move(quotes);
        l.dialect = d;
        return l;
    };
    auto hash_comment = [](std::string name, Dialect d = Dialect::none) {
        Language l;
        l.name = std::move(name);
        l.line_comments = {"#"};
        l.quotes = "\"'";
        l.dialect = d;
        return l;
    };

    t.add(c_like("Java", Dialect::c_family), {".java"});
    auto c = c_like("C", Dialect::c_family);
    c.preprocessor = true;
    t.add(c, {".c", ".h"});
    auto cpp = c_like("C++", Dialect::cpp);
    cpp.preprocessor = true;
    t.add(cpp, {".cc", ".cpp", ".cxx", ".c++", ".hpp", ".hh", ".hxx", ".h++", ".ipp"});
    auto cs = c_like("C#", Dialect::c_family);
    cs.preprocessor = true;
    t.add(cs, {".cs"});
    auto js = c_like("JavaScript", Dialect::c_family);
    js.multiline_quotes = {"`"};
    t.add(js, {".js", ".jsx", ".mjs", ".cjs"});
    auto ts = c_like("TypeScript", Dialect::c_family);
    ts.multiline_quotes = {"`"};
    t.add(ts, {".ts", ".tsx"});
    auto go = c_like("Go", Dialect::go);
    go.multiline_quotes = {"`"};
    t.add(go, {".go"});
    auto kotlin = c_like("Kotlin", Dialect::c_family);
    kotlin.multiline_quotes = {"\"\"\""};
    t.add(kotlin, {".kt", ".kts"});
    auto scala = c_like("Scala", Dialect::c_family);
    scala.multiline_quotes = {"\"\"\""};
    t.add(scala, {".scala"});
    t.add(c_like("Groovy", Dialect::c_family), {".groovy", ".gradle"});
    t.add(c_like("Swift", Dialect::c_family, "\""), {".swift"});
    auto php = c_like("PHP", Dialect::c_family);
    php.line_comments = {"//", "#"};
    t.add(php, {".php"});
    t.add(c_like("Rust", Dialect::none, "\""), {".rs"});
    t.add(c_like("CSS", Dialect::none), {".css", ".scss", ".less"});

    auto py = hash_comment("Python", Dialect::python);
    py.multiline_quotes = {"\"\"\"", "'''"};
    t.add(py, {".py"});
    t.add(hash_comment("Shell"), {".sh", ".bash"});
    t.add(hash_comment("Ruby"), {".rb"});
    t.add(hash_comment("Perl"), {".pl", ".pm"});
    t.add(hash_comment("Make"), {".mk"}, {"makefile", "gnumakefile"});
    t.add(hash_comment("Dockerfile"), {".dockerfile"}, {"dockerfile"});
    t.add(hash_comment("YAML"), {".yaml", ".yml"});
    t.add(hash_comment("Properties"), {".properties"});
    t.add(hash_comment("TOML"), {".toml"});

    Language xml;
    xml.name = "XML";
    xml.block_comments = kXmlBlock;
    t.add(xml, {".xml", ".xsd", ".xsl", ".xslt", ".wsdl", ".pom"});
    auto html = xml;
    html.name = "HTML";
    t.add(html, {".html", ".htm"});

    Language sql;
    sql.name = "SQL";
    sql.line_comments = {"--"};
    sql.block_comments = kCBlock;
    sql.quotes = "'\"";
    t.add(sql, {".sql"});

    Language json;
    json.name = "JSON";
    json.quotes = "\"";
    t.add(json, {".json"});

    Language md;
    md.name = "Markdown";
    t.add(md, {".md", ".markdown"});

    t.other.name = std::string(kOtherLanguage);
    return t;
}

const Table& table() {
    static const Table t = build_table();
    return t;
}

bool contains_language(const std::vector<std::string>& names, std::string_view language) {
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return util::iequals(n, language); });
}

}  // namespace

const Language& language_for_path(std::string_view path) {
    const auto& t = table();
    const auto slash = path.find_last_of('/');
    const auto name = util::to_lower(slash == std::string_view::npos ? path : path.substr(slash + 1));
    if (auto it = t.by_file_name.find(name); it != t.by_file_name.end())
        return t.languages[it->second];
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) {
        if (auto it = t.by_extension.find(name.substr(dot)); it != t.by_extension.end())
            return t.languages[it->second];
    }
    return t.other;
}

const Language* language_by_name(std::string_view name) {
    const auto& t = table();
    for (const auto& l : t.languages)
        if (util::iequals(l.name, name))
            return &l;
    return util::iequals(name, kOtherLanguage) ? &t.other : nullptr;
}

bool LanguageFilter::is_excluded(std::string_view language) const { return contains_language(excluded, language); }

bool LanguageFilter::is_filtered(std::string_view language) const {
    return !is_excluded(language) && contains_language(filtered, language);
}

}  // namespace bugforecast::metrics
