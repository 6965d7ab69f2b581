#include <gtest/gtest.h>

#include "support.hpp"

using namespace stratkit;
using support::World;

namespace {

const World& alg() {
  static World w(support::kAlgebra);
  return w;
}

Term T(const std::string& s) { return alg().term("ALG", s); }

}  // namespace

TEST(Canonical, ConstantUnchanged) { EXPECT_EQ(canonicalize(T("a")), T("a")); }

TEST(Canonical, FlattensAndSorts) {
  World w = support::river();
  Term t = w.term("RIVER-CROSSING", "(w(left) s(left)) g(left)");
  ASSERT_EQ(t.arity(), 3u);
  for (std::size_t i = 1; i < t.arity(); ++i) EXPECT_LE(term_compare(t.args()[i - 1], t.args()[i]), 0);
  EXPECT_EQ(t, canonicalize(t));
}

TEST(Canonical, AssociativityIsInvisible) {
  World w = support::river();
  EXPECT_EQ(w.term("RIVER-CROSSING", "c(S) (g(S) s(S'))"), w.term("RIVER-CROSSING", "(c(S) g(S)) s(S')"));
}

TEST(Canonical, Idempotent) {
  Term t = T("(b + a) + f(c + a + b)");
  EXPECT_EQ(canonicalize(canonicalize(t)), canonicalize(t));
  EXPECT_TRUE(t.canonical());
}

TEST(Canonical, CommutativeOnlyOrdersArguments) { EXPECT_EQ(T("b & a"), T("a & b")); }

TEST(TermOrder, VariableBeforeApplication) { EXPECT_EQ(term_order(T("x"), T("f(x)")), Order::LT); }
TEST(TermOrder, Equal) { EXPECT_EQ(term_order(T("f(a)"), T("f(a)")), Order::EQ); }
TEST(TermOrder, ByName) { EXPECT_EQ(term_order(T("g(a, a)"), T("f(b)")), Order::GT); }

TEST(TermOrder, TotalAndAntisymmetric) {
  std::vector<Term> ts = {T("a"), T("b"), T("x"), T("f(a)"), T("g(x, a)"), T("a + b"), T("a + b + c"), T("a & x")};
  for (const auto& p : ts)
    for (const auto& q : ts) {
      EXPECT_EQ(term_compare(p, q), -term_compare(q, p));
      EXPECT_EQ(term_compare(p, q) == 0, p == q);
    }
}

TEST(Substitution, Apply) {
  Substitution s;
  s.set({"x", "S"}, T("a"));
  EXPECT_EQ(subst_apply(s, T("g(x, y)")), T("g(a, y)"));
  EXPECT_EQ(subst_apply(Substitution{}, T("g(x, y)")), T("g(x, y)"));
}

TEST(Substitution, ApplyRecanonicalizes) {
  World w = support::river();
  Substitution s;
  s.set({"S", "Side"}, w.term("RIVER-CROSSING", "left"));
  s.set({"S'", "Side"}, w.term("RIVER-CROSSING", "right"));
  EXPECT_EQ(subst_apply(s, w.term("RIVER-CROSSING", "w(S) s(S')")), w.term("RIVER-CROSSING", "s(right) w(left)"));
}

TEST(RenameApart, AddsSuffix) {
  CRule r = rename_apart({T("h(x, y)"), T("f(x)")}, 1);
  EXPECT_EQ(to_string(r.lhs), "h(x1, y1)");
  EXPECT_EQ(to_string(r.rhs), "f(x1)");
}

TEST(RenameApart, GroundUnchanged) {
  CRule r = rename_apart({T("a"), T("b")}, 7);
  EXPECT_EQ(r.lhs, T("a"));
  EXPECT_EQ(r.rhs, T("b"));
}

TEST(RenameApart, DistinctIndicesAreDisjoint) {
  CRule r{T("g(x, y)"), T("x")};
  auto a = variables(rename_apart(r, 1).lhs);
  auto b = variables(rename_apart(r, 2).lhs);
  for (const auto& v : a) EXPECT_EQ(b.count(v), 0u);
}

TEST(Positions, OneBasedAndReplace) {
  Term t = T("g(f(a), b)");
  EXPECT_EQ(subterm_at(t, {1, 1}), T("a"));
  EXPECT_EQ(replace_at(t, {2}, T("c")), T("g(f(a), c)"));
  EXPECT_EQ(positions(t).size(), 4u);
}

TEST(Signature, RejectsIllSortedTerm) {
  World w = support::river();
  EXPECT_THROW(w.term("RIVER-CROSSING", "s(s(left))"), Error);
}

TEST(Printer, MixfixAndParens) {
  EXPECT_EQ(to_string(T("g(a, f(b))")), "g(a, f(b))");
  EXPECT_EQ(to_string(T("(a & b) & c")), "(a & b) & c");
  EXPECT_EQ(to_string(T("a & (b + c)")), "b + c & a");
  EXPECT_EQ(to_string(T("c + (a & b)")), "(a & b) + c");
}

TEST(Printer, RoundTrip) {
  for (const char* s : {"a", "f(x)", "g(x, h(y, a))", "a + b + f(x)", "(a & b) & c", "f(a + b) & x"}) {
    Term t = T(s);
    EXPECT_EQ(T(to_string(t)), t) << s;
  }
}
