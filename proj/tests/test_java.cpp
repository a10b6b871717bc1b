#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "support.hpp"
#include "testability/core/errors.hpp"
#include "testability/java/corpus.hpp"
#include "testability/java/extractor.hpp"
#include "testability/java/lexer.hpp"
#include "testability/java/metrics.hpp"
#include "testability/java/parser.hpp"

using namespace testability;
using namespace testability::java;
namespace fs = std::filesystem;

namespace {

struct Corpus {
  CorpusIndex index;

  explicit Corpus(const std::vector<std::pair<std::string, std::string>>& files)
      : index(build(files)) {}

  static CorpusIndex build(const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<CompilationUnit> units;
    for (const auto& [path, text] : files) units.push_back(parse_source(text, path));
    return CorpusIndex::build(std::move(units));
  }

  MetricValues metrics(const std::string& name) const {
    const ClassEntry* e = index.find(name);
    if (e == nullptr) throw std::runtime_error("no class " + name);
    return compute_code_metrics(*e, index);
  }
};

MetricValues one(const std::string& source, const std::string& name = "A") {
  Corpus c({{name + ".java", source}});
  return c.metrics(name);
}

MetricValues test_effort(const std::string& source) {
  const auto unit = parse_source(source, "T.java");
  return compute_test_effort_metrics(unit, *unit.types.at(0));
}

int method_cc(const std::string& body) {
  const auto unit = parse_source("class A { void m(boolean x, boolean y, int k) {" + body + "} }",
                                 "A.java");
  return cyclomatic_complexity(unit.types.at(0)->methods.at(0));
}

}  // namespace

// ---- parsing

TEST(ParseSource, EmptyClass) {
  const auto unit = parse_source("class A{}", "A.java");
  ASSERT_EQ(unit.types.size(), 1u);
  EXPECT_EQ(unit.types[0]->name, "A");
  EXPECT_TRUE(unit.types[0]->methods.empty());
}

TEST(ParseSource, SingleIf) {
  const auto unit = parse_source("class A{void m(){if(x){}}}", "A.java");
  ASSERT_EQ(unit.types[0]->methods.size(), 1u);
  const auto& d = unit.types[0]->methods[0].body.decisions;
  EXPECT_EQ(d.if_count, 1);
  EXPECT_EQ(d.total(), 1);
}

TEST(ParseSource, ThreeLineBlockComment) {
  const auto unit = parse_source("/* one\n two\n three */\nclass A {}\n", "A.java");
  ASSERT_EQ(unit.comments.size(), 1u);
  EXPECT_EQ(unit.comments[0].first_line, 1);
  EXPECT_EQ(unit.comments[0].last_line, 3);
  EXPECT_TRUE(unit.comments[0].block);
}

TEST(ParseSource, ErrorCarriesPosition) {
  try {
    parse_source("class A {\n  void m( {\n}\n", "Bad.java");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "Bad.java");
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(ParseSource, UnterminatedComment) {
  EXPECT_THROW(parse_source("class A {} /* open", "A.java"), ParseError);
}

TEST(ParseSource, GenericsAndShifts) {
  const auto unit = parse_source(
      "class A { java.util.Map<String, java.util.List<Integer>> m;"
      " int f(int x) { return x >> 2 >>> 1; } }",
      "A.java");
  ASSERT_EQ(unit.types[0]->fields.size(), 1u);
  const auto& names = unit.types[0]->fields[0].type.names;
  EXPECT_EQ(names, (std::vector<std::string>{"java.util.Map", "String", "java.util.List",
                                             "Integer"}));
}

TEST(ParseSource, LambdaBodyCallsBelongToMethod) {
  const auto unit = parse_source(
      "class A { void m(java.util.List<String> xs) {"
      " xs.forEach(s -> { if (s.isEmpty()) log(s); }); } void log(String s) {} }",
      "A.java");
  const auto& body = unit.types[0]->methods[0].body;
  EXPECT_EQ(body.decisions.if_count, 1);
  std::vector<std::string> names;
  for (const auto& c : body.calls) names.push_back(c.name);
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"forEach", "isEmpty", "log"}));
}

TEST(ParseSource, AnnotationsWithMembersAreSkipped) {
  const auto unit = parse_source(
      "@SuppressWarnings({\"a\", \"b\"}) class A { @Deprecated(since = \"1\") void m() {} }",
      "A.java");
  ASSERT_EQ(unit.types[0]->methods.size(), 1u);
  EXPECT_EQ(unit.types[0]->methods[0].annotations, std::vector<std::string>{"Deprecated"});
}

TEST(ParseSource, MethodNodesLieInsideTypeSpan) {
  const auto text = support::read_text(support::fixtures() / "corpus/main/inv/Warehouse.java");
  const auto unit = parse_source(text, "Warehouse.java");
  const auto& t = *unit.types[0];
  for (const auto& m : t.methods) {
    EXPECT_GE(m.lines.first, t.lines.first);
    EXPECT_LE(m.lines.last, t.lines.last);
  }
  EXPECT_LE(t.lines.last, unit.line_count);
}

// ---- cyclomatic complexity

TEST(Cyclomatic, EmptyBody) { EXPECT_EQ(method_cc(""), 1); }

TEST(Cyclomatic, IfWithAnd) { EXPECT_EQ(method_cc("if (x && y) { }"), 3); }

TEST(Cyclomatic, SwitchDefaultAddsNothing) {
  EXPECT_EQ(method_cc("switch (k) { case 1: break; case 2: break; case 3: break; default: }"), 4);
}

TEST(Cyclomatic, EveryDecisionKind) {
  EXPECT_EQ(method_cc("for (;;) {} while (x) {} do {} while (y);"
                      " try {} catch (RuntimeException e) {} catch (Error e) {}"
                      " int z = x ? 1 : 2; boolean w = x || y;"),
            1 + 1 + 1 + 1 + 2 + 1 + 1);
}

TEST(Cyclomatic, AbstractMethodIsOne) {
  const auto unit = parse_source("abstract class A { abstract void m(); }", "A.java");
  EXPECT_EQ(cyclomatic_complexity(unit.types[0]->methods[0]), 1);
}

// ---- size

TEST(SizeMetrics, PublicMethodCount) {
  const auto m = one("class A { public void a() {} public void b() {} private void c() {} }");
  EXPECT_EQ(m.at(MetricId::NPM), 2);
  EXPECT_EQ(m.at(MetricId::NPRIM), 1);
}

TEST(SizeMetrics, InternalAndExternalCalls) {
  const auto m = one(
      "class A {\n"
      "  void run() {\n"
      "    helper();\n"
      "    System.out.println(1);\n"
      "    System.out.println(2);\n"
      "  }\n"
      "  private void helper() {}\n"
      "}\n");
  // helper() itself calls nothing
  EXPECT_EQ(m.at(MetricId::NMC), 3);
  EXPECT_EQ(m.at(MetricId::NMCI), 1);
  EXPECT_EQ(m.at(MetricId::NMCE), 2);
}

TEST(SizeMetrics, ArityMattersForInternalCalls) {
  const auto m = one("class A { void f(int x) {} void g() { f(); this.f(1); other.f(2); } }");
  EXPECT_EQ(m.at(MetricId::NMC), 3);
  EXPECT_EQ(m.at(MetricId::NMCI), 1);
}

TEST(SizeMetrics, LinesOfCode) {
  // 10 physical lines in the class extent: 2 blank, 1 comment-only
  const auto m = one(
      "class A {\n"
      "  int x;\n"
      "\n"
      "  // note\n"
      "  void m() {\n"
      "    x++;\n"
      "  }\n"
      "\n"
      "  int y;\n"
      "}\n");
  EXPECT_EQ(m.at(MetricId::LOC), 7);
  EXPECT_EQ(m.at(MetricId::LOCCOM), 1);
}

TEST(SizeMetrics, StaticCounts) {
  const auto m = one("class A { static int a; static final int B = 1; int c;"
                     " static void s() {} void t() {} }");
  EXPECT_EQ(m.at(MetricId::NOF), 3);
  EXPECT_EQ(m.at(MetricId::NSTAF), 2);
  EXPECT_EQ(m.at(MetricId::NSTAM), 1);
}

// ---- complexity

TEST(ComplexityMetrics, SumAndMean) {
  const auto m = one("class A { void a() {} void b(boolean x, boolean y) { if (x && y) {} } }");
  EXPECT_EQ(m.at(MetricId::WMC), 4);
  EXPECT_DOUBLE_EQ(m.at(MetricId::AMC), 2.0);
}

TEST(ComplexityMetrics, ResponseSet) {
  const auto m = one(
      "class A { void a(java.util.List<String> l) { l.add(\"x\"); l.size(); }"
      " void b(String s) { s.trim(); s.trim(); a(null); } }");
  // 2 methods + {add/1, size/0, trim/0}
  EXPECT_EQ(m.at(MetricId::RFC), 5);
}

TEST(ComplexityMetrics, NoMethods) {
  const auto m = one("class A { int x; }");
  EXPECT_EQ(m.at(MetricId::WMC), 0);
  EXPECT_EQ(m.at(MetricId::AMC), 0);
  EXPECT_EQ(m.at(MetricId::RFC), 0);
}

// ---- inheritance

TEST(CorpusIndexBuild, ParentResolution) {
  Corpus c({{"A.java", "package p; class A extends B {}"},
            {"B.java", "package p; class B {}"},
            {"E.java", "package p; class E extends java.util.ArrayList<String> {}"}});
  EXPECT_EQ(c.index.find("p.A")->parent, "p.B");
  EXPECT_FALSE(c.index.find("p.B")->parent.has_value());
  EXPECT_FALSE(c.index.find("p.B")->external_parent);
  EXPECT_TRUE(c.index.find("p.E")->external_parent);
}

TEST(CorpusIndexBuild, CycleIsRejected) {
  EXPECT_THROW(Corpus({{"A.java", "class A extends B {}"}, {"B.java", "class B extends A {}"}}),
               CyclicHierarchy);
}

TEST(CorpusIndexBuild, DuplicateIsRejected) {
  EXPECT_THROW(Corpus({{"x/A.java", "package p; class A {}"}, {"y/A.java", "package p; class A {}"}}),
               DuplicateClass);
}

TEST(InheritanceMetrics, NoExtends) {
  Corpus c({{"A.java", "class A {}"}, {"B.java", "class B extends A {}"}});
  EXPECT_EQ(c.metrics("A").at(MetricId::DIT), 0);
  EXPECT_EQ(c.metrics("A").at(MetricId::NOC), 1);
}

TEST(InheritanceMetrics, Chain) {
  Corpus c({{"A.java", "class A extends B {}"},
            {"B.java", "class B extends C {}"},
            {"C.java", "class C {}"}});
  EXPECT_EQ(c.metrics("A").at(MetricId::DIT), 2);
  EXPECT_EQ(c.metrics("B").at(MetricId::NOC), 1);
  EXPECT_EQ(c.metrics("C").at(MetricId::NOC), 1);
  EXPECT_EQ(c.metrics("A").at(MetricId::NOC), 0);
}

TEST(InheritanceMetrics, ExternalParentAddsOneHop) {
  Corpus c({{"A.java", "class A extends B {}"},
            {"B.java", "class B extends javax.swing.JPanel {}"}});
  EXPECT_EQ(c.metrics("B").at(MetricId::DIT), 1);
  EXPECT_EQ(c.metrics("A").at(MetricId::DIT), 2);
  EXPECT_EQ(c.metrics("B").at(MetricId::MFA), 0);
}

TEST(InheritanceMetrics, FunctionalAbstraction) {
  Corpus c({{"A.java", "class A extends B { void a1() {} void a2() {} }"},
            {"B.java", "class B { void b1() {} void b2() {} }"}});
  EXPECT_DOUBLE_EQ(c.metrics("A").at(MetricId::MFA), 0.5);
  EXPECT_EQ(c.metrics("B").at(MetricId::MFA), 0);
}

// ---- coupling

TEST(CouplingMetrics, EfferentAfferentCombined) {
  Corpus c({{"A.java", "class A { B b; C make() { return null; } }"},
            {"B.java", "class B {}"},
            {"C.java", "class C {}"},
            {"D.java", "class D { void f(A a) {} }"}});
  const auto m = c.metrics("A");
  EXPECT_EQ(m.at(MetricId::Ce), 2);
  EXPECT_EQ(m.at(MetricId::Ca), 1);
  EXPECT_EQ(m.at(MetricId::CBO), 3);
}

TEST(CouplingMetrics, NoExtendsMeansNoInheritanceCoupling) {
  const auto m = one("class A { void f() { super.toString(); } }");
  EXPECT_EQ(m.at(MetricId::IC), 0);
  EXPECT_EQ(m.at(MetricId::CBM), 1);  // the super. call alone still counts
  const auto plain = one("class A { void f() {} }");
  EXPECT_EQ(plain.at(MetricId::IC), 0);
  EXPECT_EQ(plain.at(MetricId::CBM), 0);
}

TEST(CouplingMetrics, SelfReferenceIgnored) {
  const auto m = one("class A { A next; A copy(A other) { return (A) other; } }");
  EXPECT_EQ(m.at(MetricId::Ce), 0);
}

TEST(CouplingMetrics, EveryReferenceSite) {
  const auto m = one(
      "class A { F f; R r() { return null; } void p(P x) { L y = null; new N(); Object o = (K) y;"
      " for (E e : es) {} try (T t = open()) {} catch (X ex) {} } }");
  // F R P L N Object K E T X
  EXPECT_EQ(m.at(MetricId::Ce), 10);
}

TEST(CouplingMetrics, InheritanceCoupling) {
  Corpus c({{"A.java", "class A extends B { void f() { g(); } void h() { super.h(); } }"},
            {"B.java", "class B extends C { void h() {} }"},
            {"C.java", "class C { void g() {} }"}});
  const auto m = c.metrics("A");
  EXPECT_EQ(m.at(MetricId::IC), 2);   // B (override of h), C (call to g)
  EXPECT_EQ(m.at(MetricId::CBM), 1);  // h
}

// ---- cohesion

TEST(CohesionMetrics, DisjointPair) {
  const auto m = one("class A { int a; int b; void f() { a++; } void g() { b++; } }");
  EXPECT_EQ(m.at(MetricId::LCOM), 1);
}

TEST(CohesionMetrics, FullCohesion) {
  const auto m = one("class A { int a; void f() { a++; } void g() { a--; } }");
  EXPECT_EQ(m.at(MetricId::LCOM3), 0);
  EXPECT_EQ(m.at(MetricId::LCOM), 0);
}

TEST(CohesionMetrics, ParameterTypeOverlap) {
  const auto m = one("class A { void f(int x) {} void g(int y, String s) {} }");
  EXPECT_DOUBLE_EQ(m.at(MetricId::CAM), 0.75);
}

TEST(CohesionMetrics, NoParametersAnywhere) {
  EXPECT_EQ(one("class A { void f() {} }").at(MetricId::CAM), 1);
  EXPECT_EQ(one("class A { }").at(MetricId::CAM), 1);
}

TEST(CohesionMetrics, ShadowedFieldIsNotAnAccess) {
  const auto m = one("class A { int a; void f(int a) { a++; } void g() { int a = 0; }"
                     " void h(int a) { this.a = a; } }");
  // only h touches the field
  EXPECT_EQ(m.at(MetricId::LCOM), 3);
  EXPECT_DOUBLE_EQ(m.at(MetricId::LCOM3), (3 - 1.0) / 2);
}

// ---- encapsulation

TEST(EncapsulationMetrics, HalfHidden) {
  const auto m = one("class A { private int a; private int b; public int c; public int d; }");
  EXPECT_DOUBLE_EQ(m.at(MetricId::DAM), 0.5);
  EXPECT_EQ(m.at(MetricId::NPRIF), 2);
}

TEST(EncapsulationMetrics, NoFields) { EXPECT_EQ(one("class A {}").at(MetricId::DAM), 1.0); }

TEST(EncapsulationMetrics, ProtectedMethod) {
  EXPECT_EQ(one("class A { protected void f() {} }").at(MetricId::NPROM), 1);
}

TEST(EncapsulationMetrics, InterfaceMembersArePublic) {
  const auto m = one("interface A { int X = 1; void f(); }");
  EXPECT_EQ(m.at(MetricId::DAM), 0);
  EXPECT_EQ(m.at(MetricId::NPM), 1);
  EXPECT_EQ(m.at(MetricId::NSTAF), 1);
}

// ---- test effort

TEST(TestEffortMetrics, TestsAndAssertions) {
  const auto m = test_effort(
      "class T {\n"
      "  @Test public void a() { assertEquals(1, 1); assertEquals(2, 2); }\n"
      "  @Test public void b() { assertEquals(1, 1); }\n"
      "  @org.junit.Test public void c() { assertEquals(1, 1); Assert.assertEquals(2, 2); }\n"
      "  void helper() {}\n"
      "}\n");
  EXPECT_EQ(m.at(MetricId::T_NOT), 3);
  EXPECT_EQ(m.at(MetricId::T_NOA), 5);
  EXPECT_EQ(m.at(MetricId::T_NMC), 5);
  EXPECT_EQ(m.at(MetricId::T_WMC), 4);
  EXPECT_DOUBLE_EQ(m.at(MetricId::T_AMC), 1.0);
}

TEST(TestEffortMetrics, EmptyTestClass) {
  const auto m = test_effort("class T {\n}\n");
  EXPECT_EQ(m.at(MetricId::T_LOC), 2);
  for (MetricId id : {MetricId::T_NOT, MetricId::T_NOA, MetricId::T_NMC, MetricId::T_WMC,
                      MetricId::T_AMC}) {
    EXPECT_EQ(m.at(id), 0) << metric_name(id);
  }
}

TEST(TestEffortMetrics, NamingRule) {
  const auto m = test_effort("class T { public void testFoo() { fail(); } void check() {} }");
  EXPECT_EQ(m.at(MetricId::T_NOT), 1);
  EXPECT_EQ(m.at(MetricId::T_NOA), 1);
}

// ---- pairing

TEST(Pairing, Convention) {
  const auto pairs = pair_by_convention(
      {"p.A", "p.ATest", "p.B", "p.TestB", "p.C", "q.D", "q.DTest", "q.TestD", "p.Lone"});
  EXPECT_EQ(pairs, (std::vector<TestPair>{{"p.A", "p.ATest"}, {"p.B", "p.TestB"},
                                          {"q.D", "q.DTest"}}));
}

TEST(Pairing, FileFormat) {
  const auto pairs = parse_pairs("# prod,test\nb.X, b.XCheck\n\na.Y,a.YSpec\n");
  EXPECT_EQ(pairs, (std::vector<TestPair>{{"a.Y", "a.YSpec"}, {"b.X", "b.XCheck"}}));
  EXPECT_THROW(parse_pairs("a.Y,a.T\na.Y,a.U\n"), DuplicateRecord);
  EXPECT_THROW(parse_pairs("lonely\n"), Error);
}

TEST(Extraction, PairingFileReplacesConvention) {
  const auto dir = support::scratch_dir("pairs");
  support::write_text(dir / "src/p/A.java", "package p; public class A { void f() {} }");
  support::write_text(dir / "src/p/ATest.java", "package p; public class ATest {}");
  support::write_text(dir / "src/p/Check.java",
                      "package p; public class Check { @Test public void t() { new A(); } }");
  support::write_text(dir / "pairs.txt", "p.A,p.Check\n");
  ExtractOptions opt;
  opt.source_dirs = {dir / "src"};
  opt.pairs_file = dir / "pairs.txt";
  const auto records = extract(opt);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].test_id, "p.Check");
  EXPECT_EQ(records[0].metrics.at(MetricId::T_NOT), 1);
}

TEST(Extraction, UnknownPairedClass) {
  const auto dir = support::scratch_dir("pairs-unknown");
  support::write_text(dir / "src/A.java", "class A {}");
  support::write_text(dir / "pairs.txt", "A,Missing\n");
  ExtractOptions opt;
  opt.source_dirs = {dir / "src"};
  opt.pairs_file = dir / "pairs.txt";
  EXPECT_THROW(extract(opt), Error);
}

TEST(Extraction, EmptyCorpus) {
  const auto dir = support::scratch_dir("empty-corpus");
  ExtractOptions opt;
  opt.source_dirs = {dir};
  try {
    extract(opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no classes found"), std::string::npos);
  }
}

TEST(Extraction, MissingClassFileForNbi) {
  const auto dir = support::scratch_dir("nbi-missing");
  support::write_text(dir / "src/A.java", "class A {}");
  support::write_text(dir / "src/ATest.java", "class ATest {}");
  fs::create_directories(dir / "classes");
  ExtractOptions opt;
  opt.source_dirs = {dir / "src"};
  opt.class_dirs = {dir / "classes"};
  try {
    extract(opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("no class file found for A"), std::string::npos);
  }
}

// ---- the hand-counted fixture corpus

namespace {

std::vector<ClassRecord> extract_fixture() {
  ExtractOptions opt;
  opt.source_dirs = {support::fixtures() / "corpus/main", support::fixtures() / "corpus/test"};
  opt.class_dirs = {support::fixtures() / "corpus/classes"};
  return extract(opt);
}

}  // namespace

TEST(FixtureCorpus, MatchesHandCounts) {
  const auto expected = support::load_expected_metrics();
  ASSERT_GE(expected.size(), 12u);
  ASSERT_EQ(expected[0].values.size(), 34u);
  const auto records = extract_fixture();
  ASSERT_EQ(records.size(), expected.size());
  for (const auto& row : expected) {
    const auto it = std::find_if(records.begin(), records.end(),
                                 [&](const ClassRecord& r) { return r.class_id == row.class_id; });
    ASSERT_NE(it, records.end()) << row.class_id;
    for (const auto& [id, want] : row.values) {
      const auto got = it->metrics.get(id);
      ASSERT_TRUE(got.has_value()) << row.class_id << " " << metric_name(id);
      if (value_domain(id) == ValueDomain::Count) {
        EXPECT_EQ(*got, want) << row.class_id << " " << metric_name(id);
      } else {
        EXPECT_NEAR(*got, want, 1e-9) << row.class_id << " " << metric_name(id);
      }
    }
  }
}

TEST(FixtureCorpus, RecordInvariants) {
  for (const auto& r : extract_fixture()) {
    EXPECT_TRUE(validate_record(r).empty()) << r.class_id;
    const auto& m = r.metrics;
    EXPECT_EQ(m.at(MetricId::NMC), m.at(MetricId::NMCI) + m.at(MetricId::NMCE));
    // each method adds >= 1 to WMC and exactly 1 to RFC's own-method part
    EXPECT_GE(m.at(MetricId::WMC), m.at(MetricId::NPM) + m.at(MetricId::NPRIM));
    EXPECT_GE(m.at(MetricId::RFC), m.at(MetricId::NPM) + m.at(MetricId::NPRIM));
  }
}

TEST(FixtureCorpus, FileOrderDoesNotMatter) {
  auto units = parse_tree({support::fixtures() / "corpus/main", support::fixtures() / "corpus/test"});
  std::vector<std::string> declared;
  for (const auto& u : units) {
    for (const auto& t : u.types) declared.push_back(u.qualified_name(*t));
  }
  const auto pairs = pair_by_convention(declared);
  auto shuffled = parse_tree({support::fixtures() / "corpus/test", support::fixtures() / "corpus/main"});
  std::mt19937 gen(7);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  EXPECT_EQ(extract_records(std::move(units), pairs, nullptr),
            extract_records(std::move(shuffled), pairs, nullptr));
}

TEST(FixtureCorpus, Deterministic) { EXPECT_EQ(extract_fixture(), extract_fixture()); }
