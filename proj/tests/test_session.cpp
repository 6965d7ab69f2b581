#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stratkit/errors.hpp"
#include "stratkit/session.hpp"

using namespace stratkit;

namespace {

std::string theory(const std::string& f) { return std::string(STRATKIT_THEORY_DIR) + "/" + f; }

std::string run(Session& s, const std::string& text) {
  std::ostringstream out;
  s.run(text, out);
  return out.str();
}

}  // namespace

TEST(Session, LoadRiver) {
  Session s;
  run(s, "load " + theory("river.strk") + " .");
  EXPECT_TRUE(s.library().system("RIVER-CROSSING"));
  EXPECT_TRUE(s.library().strategy("RIVER-CROSSING-STRAT"));
}

TEST(Session, EmptyInput) {
  Session s;
  EXPECT_THROW(run(s, "  --- nothing\n"), EmptyInput);
  auto path = std::filesystem::temp_directory_path() / "stratkit-empty.strk";
  std::ofstream(path).close();
  std::ostringstream out;
  EXPECT_THROW(s.load_file(path, out), EmptyInput);
}

TEST(Session, PaperSession) {
  Session s;
  run(s, "load " + theory("ghf.strk") + " . completion N of GHF as GHF-N .");
  EXPECT_EQ(run(s, "(srew < mtRlS, mtRlS, eqs > using Orient ! .)"),
            "result System : < mtRlS, g(x, y) -> a g(x, y) -> h(x, y) h(x, y) -> f(x) h(x, y) -> f(y), mtEqS >\n");
  EXPECT_EQ(run(s, "(cont using deduction ! ; Delete ! .)"),
            "result System : < g(x, y) -> a g(x, y) -> h(x, y) h(x, y) -> f(x) h(x, y) -> f(y), mtRlS, "
            "a =. h(x1, y1) f(x1) =. f(y1) >\n");
  std::string done = run(s, "srew < mtRlS, mtRlS, eqs > using N-COMP .");
  EXPECT_EQ(done.substr(0, done.find('\n')), "result System : < f(x) -> a g(x, y) -> a h(x, y) -> a, mtRlS, mtEqS >");
}

TEST(Session, SrewIdleAndCont) {
  Session s;
  run(s, "load " + theory("river.strk") + " .");
  EXPECT_EQ(run(s, "srew s(left) w(left) using idle ."), "result Group : s(left) w(left)\n");
  EXPECT_EQ(run(s, "cont using idle ."), "result Group : s(left) w(left)\n");
  EXPECT_EQ(run(s, "cont using fail ."), "no solutions\n");
  EXPECT_THROW(run(s, "cont using idle ."), StateError);
}

TEST(Session, ContWithoutResult) {
  Session s;
  run(s, "load " + theory("river.strk") + " .");
  EXPECT_THROW(run(s, "cont using idle ."), StateError);
}

TEST(Session, SrewThenContEqualsConcat) {
  Session a, b;
  run(a, "load " + theory("river.strk") + " .");
  run(b, "load " + theory("river.strk") + " .");
  run(a, "srew s(left) w(left) g(left) c(left) using eating ; oneCrossing .");
  std::string two = run(a, "cont using oneCrossing ; eating .");
  std::string one = run(b, "srew s(left) w(left) g(left) c(left) using eating ; oneCrossing ; oneCrossing ; eating .");
  EXPECT_EQ(one, two);
}

TEST(Session, SolvePrintsRightBank) {
  Session s;
  run(s, "load " + theory("river.strk") + " .");
  EXPECT_EQ(run(s, "srew s(left) w(left) g(left) c(left) using solve ."), "result Group : c(right) g(right) s(right) w(right)\n");
}

TEST(Session, CompleteReport) {
  Session s;
  run(s, "load " + theory("ghf.strk") + " .");
  for (const char* v : {"N", "S", "ANS"}) {
    std::string out = run(s, std::string("complete GHF variant ") + v + " .");
    EXPECT_NE(out.find("SUCCESS"), std::string::npos);
    EXPECT_NE(out.find("  f(x) -> a\n  g(x, y) -> a\n  h(x, y) -> a\n"), std::string::npos);
    EXPECT_NE(out.find("terminating: yes, joinable: yes, equivalent: yes, interreduced: yes"), std::string::npos);
  }
}

TEST(Session, CompleteEmptySet) {
  Session s;
  std::string out = run(s, "mod NONE is sort S . op a : -> S . endm complete NONE .");
  EXPECT_NE(out.find("SUCCESS"), std::string::npos);
  EXPECT_NE(out.find("(no rules)"), std::string::npos);
}

TEST(Session, InlineModulesAndSelect) {
  Session s;
  run(s, "mod M is sort S . ops a b : -> S . rl [ab] : a => b . endm");
  EXPECT_EQ(run(s, "srew a using ab ."), "result S : b\n");
  EXPECT_THROW(run(s, "select NOPE ."), NameError);
}

TEST(Session, ParseErrorHasLocation) {
  Session s;
  try {
    run(s, "mod M is sort S .\n  op a : -> T .\nendm");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  } catch (const Error&) {
  }
}

TEST(Session, BudgetSurfaces) {
  SessionConfig c;
  c.eval.max_states = 3;
  Session s(c);
  run(s, "load " + theory("river.strk") + " .");
  EXPECT_THROW(run(s, "srew s(left) w(left) g(left) c(left) using oneCrossing * ."), BudgetExceeded);
}

TEST(Session, ShowPrintsModule) {
  Session s;
  run(s, "load " + theory("river.strk") + " .");
  std::string out = run(s, "show RIVER-CROSSING-STRAT .");
  EXPECT_NE(out.find("sd eating := (wolf-eats | goat-eats) ! ."), std::string::npos);
  EXPECT_NE(run(s, "show RIVER-CROSSING .").find("rl [wolf] :"), std::string::npos);
  EXPECT_THROW(run(s, "show NOPE ."), NameError);
}
