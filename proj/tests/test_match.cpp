#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stratkit/unify.hpp"
#include "support.hpp"

using namespace stratkit;
using support::World;

namespace {

const World& riv() {
  static World w = support::river();
  return w;
}
Term R(const std::string& s) { return riv().term("RIVER-CROSSING", s); }
const Signature& rsig() { return riv().sys("RIVER-CROSSING").sig; }

const World& alg() {
  static World w(support::kAlgebra);
  return w;
}
Term A(const std::string& s) { return alg().term("ALG", s); }
const Signature& asig() { return alg().sys("ALG").sig; }

}  // namespace

TEST(MatchTop, Simple) {
  auto ms = match_top(rsig(), R("s(S)"), R("s(left)"));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(*ms[0].subst.lookup(R("S")), R("left"));
}

TEST(MatchTop, ExtensionLeavesRemainder) {
  auto ms = match_top(rsig(), R("w(S) g(S) s(S')"), R("w(left) g(left) s(right) c(left)"));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(*ms[0].subst.lookup(R("S")), R("left"));
  EXPECT_EQ(*ms[0].subst.lookup(R("S'")), R("right"));
  ASSERT_EQ(ms[0].remainder.size(), 1u);
  EXPECT_EQ(ms[0].remainder[0], R("c(left)"));
}

TEST(MatchTop, HeadClash) { EXPECT_TRUE(match_top(asig(), A("f(x)"), A("g(a, a)")).empty()); }

TEST(MatchTop, AgreesWithOracleAtRoot) {
  Term p = R("w(S) g(S) s(S')");
  Term s = R("w(left) g(left) s(right) c(left)");
  auto all = oracle::brute_match_anywhere(p, s);
  oracle::MatchSet root;
  for (const auto& k : all)
    if (std::get<0>(k).empty()) root.insert(k);
  EXPECT_EQ(oracle::key_set(match_top(rsig(), p, s), p), root);
}

TEST(MatchAnywhere, VariableEverywhere) {
  auto ms = match_anywhere(asig(), A("x"), A("f(a)"));
  ASSERT_EQ(ms.size(), 2u);
  std::set<Position> ps;
  for (const auto& m : ms) ps.insert(m.position);
  EXPECT_EQ(ps, (std::set<Position>{{}, {1}}));
}

TEST(MatchAnywhere, Nested) {
  auto ms = match_anywhere(asig(), A("g(x, y)"), A("f(g(a, b))"));
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].position, Position{1});
  EXPECT_EQ(*ms[0].subst.lookup(A("x")), A("a"));
  EXPECT_EQ(*ms[0].subst.lookup(A("y")), A("b"));
}

TEST(MatchAnywhere, ShepherdAndGoat) {
  Term p = R("s(S) g(S)");
  Term s = R("s(left) w(left) g(left) c(left)");
  auto ms = match_anywhere(rsig(), p, s);
  EXPECT_EQ(ms.size(), 1u);
  EXPECT_EQ(oracle::key_set(ms, p), oracle::brute_match_anywhere(p, s));
}

TEST(MatchAnywhere, PlugRebuildsSubject) {
  Term s = A("f(a + b + c)");
  for (const auto& m : match_anywhere(asig(), A("x + b"), s)) EXPECT_EQ(plug(s, m, subst_apply(m.subst, A("x + b"))), s);
}

TEST(MatchExact, CommutativeTriesBothOrders) {
  auto ms = match_exact(asig(), A("x & f(y)"), A("f(a) & f(b)"));
  EXPECT_EQ(ms.size(), 2u);
}

TEST(MatchExact, NonLinearAC) {
  EXPECT_EQ(match_exact(asig(), A("x + x"), A("a + a")).size(), 1u);
  EXPECT_TRUE(match_exact(asig(), A("x + x"), A("a + b")).empty());
  EXPECT_EQ(match_exact(asig(), A("x + y"), A("a + b + c")).size(), 6u);
}

TEST(Unify, VariableToVariable) {
  auto s = unify(asig(), A("f(x)"), A("f(y)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(subst_apply(*s, A("f(x)")), subst_apply(*s, A("f(y)")));
  EXPECT_EQ(s->size(), 1u);
}

TEST(Unify, Decomposition) {
  auto s = unify(asig(), A("g(x, y)"), A("g(x1, a)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(subst_apply(*s, A("g(x, y)")), subst_apply(*s, A("g(x1, a)")));
}

TEST(Unify, OccursCheck) { EXPECT_FALSE(unify(asig(), A("x"), A("f(x)"))); }

TEST(Unify, Clash) { EXPECT_FALSE(unify(asig(), A("f(x)"), A("g(x, y)"))); }

TEST(Unify, Idempotent) {
  auto s = unify(asig(), A("g(x, f(y))"), A("g(f(z), x)"));
  ASSERT_TRUE(s);
  for (const auto& [k, v] : *s) EXPECT_EQ(subst_apply(*s, v), v);
}

TEST(Unify, RejectsAC) { EXPECT_THROW(unify(asig(), A("x + a"), A("b + y")), UnsupportedACUnification); }

TEST(Unify, AgreesWithNaive) {
  std::vector<Term> ts = {A("x"), A("a"), A("f(x)"), A("f(f(y))"), A("g(x, y)"), A("g(y, f(x))"), A("h(a, z)"),
                          A("g(f(z), z)"), A("g(x, x)"), A("f(g(a, y))")};
  for (const auto& p : ts)
    for (const auto& q : ts) {
      auto u = unify(asig(), p, q);
      auto n = oracle::naive_unify(p, q);
      ASSERT_EQ(u.has_value(), n.has_value()) << to_string(p) << " ~ " << to_string(q);
      if (u) {
        EXPECT_EQ(subst_apply(*u, p), subst_apply(*u, q));
        EXPECT_EQ(subst_apply(*u, p).size(), subst_apply(*n, p).size());
      }
    }
}
