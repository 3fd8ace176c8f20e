#include <gtest/gtest.h>

#include "bugforecast/metrics/complexity.hpp"
#include "bugforecast/model/errors.hpp"

using namespace bugforecast;
using namespace bugforecast::metrics;

namespace {

std::vector<FunctionRecord> scan(const std::string& path, const std::string& src) {
    const auto& lang = language_for_path(path);
    return scan_functions(strip_comments(src, lang), lang, path);
}

std::vector<std::string> names(const std::vector<FunctionRecord>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs)
        out.push_back(f.name);
    return out;
}

// A Java method whose CC is exactly `cc`.
std::string method_with_cc(const std::string& name, int cc) {
    std::string body;
    for (int i = 1; i < cc; ++i)
        body += "        if (x == " + std::to_string(i) + ") { y++; }\n";
    return "    int " + name + "(int x) {\n        int y = 0;\n" + body + "        return y;\n    }\n";
}

}  // namespace

TEST(Complexity, StraightLineBodyIsOne) {
    const auto fs = scan("A.java", "class A {\n  int f(int a) {\n    int b = a + 1;\n    return b;\n  }\n}\n");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].cc, 1);
    EXPECT_EQ(fs[0].name, "A::f");
    EXPECT_EQ(fs[0].signature, "A::f(int a)");
    EXPECT_EQ(fs[0].first_line, 2u);
}

TEST(Complexity, TwoIfsAndOneShortCircuitIsFour) {
    const auto fs = scan("A.java",
                         "class A {\n"
                         "  void g(int a, int b) {\n"
                         "    if (a > 0 && b > 0) { run(); }\n"
                         "    if (a < b) { stop(); } else { wait(); }\n"
                         "  }\n"
                         "}\n");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].cc, 4);
}

TEST(Complexity, ThresholdCountsOverFixture) {
    std::string src = "class T {\n";
    for (int cc : {5, 12, 18, 25})
        src += method_with_cc("m" + std::to_string(cc), cc);
    src += "}\n";
    const auto fs = scan("T.java", src);
    ASSERT_EQ(fs.size(), 4u);
    std::vector<int> ccs;
    for (const auto& f : fs)
        ccs.push_back(f.cc);
    EXPECT_EQ(ccs, (std::vector<int>{5, 12, 18, 25}));
    const auto c = count_complexity(fs);
    EXPECT_EQ(c.functions, 4u);
    EXPECT_EQ(c.total_cc, 60u);
    EXPECT_EQ(c.above, (std::array<std::size_t, 3>{3, 2, 1}));
}

TEST(Complexity, BranchTokensInStringsAndCommentsDoNotCount) {
    const auto fs = scan("A.java",
                         "class A {\n  String f() {\n    // if (x) for while\n"
                         "    return \"if && || case ?\";\n  }\n}\n");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].cc, 1);
}

TEST(Complexity, AllBranchKindsCount) {
    const auto fs = scan("A.java",
                         "class A {\n"
                         "  int f(int[] xs) {\n"
                         "    int s = 0;\n"
                         "    for (int x : xs) { s += x > 0 ? x : 0; }\n"           // for, ?
                         "    while (s > 100 || s < -100) { s /= 2; }\n"          // while, ||
                         "    switch (s) { case 1: s++; break; case 2: s--; break; default: break; }\n"  // 2 case
                         "    try { s = g(s); } catch (Exception e) { s = 0; }\n"  // catch
                         "    if (s == 3) { s = 4; } else if (s == 5) { s = 6; }\n"  // 2 if
                         "    return s;\n"
                         "  }\n"
                         "}\n");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].cc, 1 + 2 + 2 + 2 + 1 + 2);
}

TEST(Complexity, GenericWildcardIsNotTernary) {
    const auto fs = scan("A.java",
                         "class A {\n  void f(List<? extends B> xs, Map<String, ?> m) {\n"
                         "    Optional<?> o = null;\n    String t = o?.name;\n  }\n}\n");
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].cc, 1);
}

TEST(Complexity, JavaDeclarationsOfManyShapes) {
    const auto fs = scan("A.java",
                         "package p;\n"
                         "import java.util.List;\n"
                         "@Service\n"
                         "public class A extends B implements C {\n"
                         "  private int x = compute(3);\n"
                         "  static { init(); }\n"
                         "  @Override\n"
                         "  @SuppressWarnings(\"unchecked\")\n"
                         "  public <T> List<T> map(List<T> in) throws IOException { return in; }\n"
                         "  public A() { super(); }\n"
                         "  abstract void todo();\n"
                         "  enum Color { RED(\"r\"), GREEN(\"g\"); Color(String s) { } }\n"
                         "  interface I { default int v() { return 1; } }\n"
                         "  Runnable r = new Runnable() { public void run() { } };\n"
                         "}\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"A::map", "A::A", "A::Color::Color", "A::I::v", "A::run"}));
}

TEST(Complexity, CppConstructsAndQualifiedNames) {
    const auto fs = scan("x.cpp",
                         "#include <vector>\n"
                         "#define MAX(a, b) \\\n"
                         "    ((a) > (b) ? (a) : (b))\n"
                         "namespace ns {\n"
                         "struct Point { int x; int y; };\n"
                         "class Widget : public Base {\n"
                         "public:\n"
                         "    Widget(int a) : a_(a), v_{1, 2} { if (a) go(); }\n"
                         "    ~Widget() {}\n"
                         "    int get() const noexcept { return a_; }\n"
                         "    bool operator==(const Widget& o) const { return a_ == o.a_; }\n"
                         "    auto size() const -> std::size_t { return 1; }\n"
                         "private:\n"
                         "    int a_;\n"
                         "};\n"
                         "int Widget::helper(int z) { return z > 0 ? z : -z; }\n"
                         "}  // namespace ns\n"
                         "static int table[] = {1, 2, 3};\n"
                         "int main(int argc, char** argv) { return argc && argv; }\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"ns::Widget::Widget", "ns::Widget::~Widget", "ns::Widget::get",
                                                   "ns::Widget::operator==", "ns::Widget::size",
                                                   "ns::Widget::helper", "main"}));
    EXPECT_EQ(fs[0].cc, 2);
    EXPECT_EQ(fs[5].cc, 2);
    EXPECT_EQ(fs[6].cc, 2);
}

TEST(Complexity, GoFunctionsAndMethods) {
    const auto fs = scan("x.go",
                         "package main\n"
                         "type Server struct { port int }\n"
                         "func (s *Server) Handle(w Writer, r *Request) (int, error) {\n"
                         "    for i := 0; i < 3; i++ { if i == 1 { return 1, nil } }\n"
                         "    return 0, nil\n"
                         "}\n"
                         "func main() {\n"
                         "    f := func() { }\n"
                         "    f()\n"
                         "}\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"Handle", "main"}));
    EXPECT_EQ(fs[0].cc, 3);
}

TEST(Complexity, JavaScriptFunctionsAndArrows) {
    const auto fs = scan("x.js",
                         "import x from 'y';\n"
                         "function add(a, b) { return a + b; }\n"
                         "const mul = (a, b) => { return a && b ? a * b : 0; };\n"
                         "const inc = a => a + 1;\n"
                         "class K {\n"
                         "  constructor(v) { this.v = v; }\n"
                         "  get(k) { return this.v[k] || null; }\n"
                         "}\n"
                         "const obj = { run() { }, name: 'x' };\n"
                         "export default function () { }\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"add", "mul", "K::constructor", "K::get", "run", "(anonymous)"}));
    EXPECT_EQ(fs[1].cc, 3);
}

TEST(Complexity, KotlinPrimaryConstructorIsNotAFunction) {
    const auto fs = scan("x.kt",
                         "class User(val name: String) {\n"
                         "    fun greet(): String { return if (name.isEmpty()) \"?\" else name }\n"
                         "}\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"User::greet"}));
    EXPECT_EQ(fs[0].cc, 2);
}

TEST(Complexity, PythonDefsAndClasses) {
    const auto fs = scan("x.py",
                         "import os\n"
                         "\n"
                         "def top(a, b=1):\n"
                         "    \"\"\"Docstring with if and for.\n"
                         "text at column zero\n"
                         "    \"\"\"\n"
                         "    if a and b:\n"
                         "        return [x for x in range(a) if x]\n"
                         "    def inner():\n"
                         "        while True:\n"
                         "            pass\n"
                         "    return inner\n"
                         "\n"
                         "class C:\n"
                         "    @property\n"
                         "    def value(self):\n"
                         "        try:\n"
                         "            return 1\n"
                         "        except ValueError:\n"
                         "            return 2\n"
                         "\n"
                         "    async def fetch(self,\n"
                         "                    url):\n"
                         "        return url if url else None\n"
                         "\n"
                         "def last(): return 0\n");
    EXPECT_EQ(names(fs), (std::vector<std::string>{"top", "C::value", "C::fetch", "last"}));
    // top: if, and, for, if, while
    EXPECT_EQ(fs[0].cc, 6);
    EXPECT_EQ(fs[1].cc, 2);
    EXPECT_EQ(fs[2].cc, 2);
    EXPECT_EQ(fs[2].signature, "C::fetch(self , url)");
    EXPECT_EQ(fs[3].cc, 1);
}

TEST(Complexity, UnbalancedBracesThrow) {
    EXPECT_THROW(scan("A.java", "class A {\n  void f() {\n    if (x) {\n  }\n"), ExtractionError);
    EXPECT_THROW(scan("A.java", "class A { }\n}\n"), ExtractionError);
}

TEST(Complexity, LanguagesWithoutDialectYieldNothing) {
    EXPECT_TRUE(scan("x.yaml", "a: {b: c}\n").empty());
    EXPECT_TRUE(scan("x.unknownext", "f() { }").empty());
}

TEST(Complexity, OccurrenceDistinguishesOverloadsWithSameText) {
    const auto fs = scan("x.c", "int f(void) { return 1; }\nint f(void) { return 2; }\nint f(int a) { return a; }\n");
    ASSERT_EQ(fs.size(), 3u);
    EXPECT_EQ(fs[0].occurrence, 0u);
    EXPECT_EQ(fs[1].occurrence, 1u);
    EXPECT_EQ(fs[2].occurrence, 0u);
}

TEST(Complexity, InvariantsHoldOnEveryFunction) {
    std::string src = "class T {\n";
    for (int cc = 1; cc <= 30; ++cc)
        src += method_with_cc("m" + std::to_string(cc), cc);
    src += "}\n";
    const auto fs = scan("T.java", src);
    const auto c = count_complexity(fs);
    for (const auto& f : fs)
        EXPECT_GE(f.cc, 1);
    EXPECT_GE(c.total_cc, c.functions);
    EXPECT_GE(c.above[0], c.above[1]);
    EXPECT_GE(c.above[1], c.above[2]);
}

TEST(ChangedFunctions, IdenticalSnapshotsHaveNone) {
    const auto fs = scan("A.java", "class A { void f() { } void g() { } }\n");
    EXPECT_TRUE(changed_functions(fs, fs).empty());
}

TEST(ChangedFunctions, NewFileContributesAllItsFunctions) {
    const auto fs = scan("B.java", "class B { void f() { } void g() { if (x) y(); } }\n");
    EXPECT_EQ(changed_functions({}, fs).size(), 2u);
}

TEST(ChangedFunctions, BodyEditIsOneModifiedFunction) {
    const auto before = scan("A.java", "class A {\n  void f() { a(); }\n  void g() { b(); }\n}\n");
    const auto after = scan("A.java", "class A {\n\n  void f() { a(); }\n  void g() { c(); }\n}\n");
    const auto changed = changed_functions(before, after);
    ASSERT_EQ(changed.size(), 1u);
    EXPECT_EQ(changed[0].name, "A::g");
}

TEST(ChangedFunctions, WhitespaceAndCommentEditsAreNotChanges) {
    const auto before = scan("A.java", "class A { void f() { a(); } }\n");
    const auto after = scan("A.java", "class A {\n  void f() {\n    // note\n    a();\n  }\n}\n");
    EXPECT_TRUE(changed_functions(before, after).empty());
}

TEST(ChangedFunctions, SignatureChangeCountsAsNew) {
    const auto before = scan("A.java", "class A { void f(int a) { } }\n");
    const auto after = scan("A.java", "class A { void f(long a) { } }\n");
    EXPECT_EQ(changed_functions(before, after).size(), 1u);
}
