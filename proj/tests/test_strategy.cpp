#include <gtest/gtest.h>

#include "support.hpp"

using namespace stratkit;
using support::World;

namespace {

const World& riv() {
  static World w = support::river();
  return w;
}
const SystemModule& rm() { return riv().sys("RIVER-CROSSING"); }
const StrategyModule& rs() { return riv().smod("RIVER-CROSSING-STRAT"); }
Term R(const std::string& s) { return riv().term("RIVER-CROSSING", s); }

TermSet run(const std::string& strategy, const std::string& term, EvalLimits lim = {}) {
  Rewriter rw(rm(), riv().natives);
  Evaluator ev(rw, rs(), lim);
  return ev.eval(parse_strategy(rm(), rs(), strategy, riv().natives), R(term));
}

TermSet set_of(std::initializer_list<const char*> ts) {
  TermSet out;
  for (const char* t : ts) out.insert(R(t));
  return out;
}

const char* kPair = R"(
mod PAIR is
  sort S .
  ops a a' b b' : -> S .
  op f : S S -> S .
  vars u v : S .
  rl [ruleA] : a => a' .
  rl [ruleB] : b => b' .
endm
smod PAIR-STRAT is
  protecting PAIR .
  vars u v : S .
  strat both : @ S .
  sd both := matchrew f(u, v) by u using ruleA, v using ruleB .
endsm
)";

}  // namespace

TEST(Eval, Idle) { EXPECT_EQ(run("idle", "s(left)"), set_of({"s(left)"})); }
TEST(Eval, Fail) { EXPECT_TRUE(run("fail", "s(left)").empty()); }

TEST(Eval, EatingToFixpoint) {
  EXPECT_EQ(run("(wolf-eats | goat-eats) !", "s(right) w(left) g(left)"), set_of({"s(right) w(left)"}));
}

TEST(Eval, SolveReachesRightBank) {
  TermSet r = run("solve", "s(left) w(left) g(left) c(left)");
  EXPECT_EQ(r, set_of({"s(right) w(right) g(right) c(right)"}));
}

TEST(Eval, StarOfFailIsIdle) { EXPECT_EQ(run("fail *", "s(left) w(left)"), set_of({"s(left) w(left)"})); }

TEST(Eval, StarIsIdleOrPlus) {
  EXPECT_EQ(run("oneCrossing *", "s(left) w(left) g(left)"), run("idle | oneCrossing +", "s(left) w(left) g(left)"));
}

TEST(Eval, ShepherdAloneInvolution) {
  EXPECT_EQ(run("shepherd-alone *", "s(left) g(right)"), set_of({"s(left) g(right)", "s(right) g(right)"}));
}

TEST(Eval, OrElseAndNot) {
  EXPECT_EQ(run("wolf-eats orelse idle", "s(left) w(right) g(right)"), set_of({"s(left) w(right)"}));
  EXPECT_EQ(run("wolf-eats orelse idle", "s(left) w(left) g(left)"), set_of({"s(left) w(left) g(left)"}));
  EXPECT_TRUE(run("not(idle)", "s(left)").empty());
  EXPECT_EQ(run("not(fail)", "s(left)"), set_of({"s(left)"}));
}

TEST(Eval, IfThenElse) {
  EXPECT_EQ(run("shepherd-alone ? shepherd-alone : fail", "s(left)"), set_of({"s(left)"}));
  EXPECT_EQ(run("wolf ? idle : shepherd-alone", "s(left) w(right)"), set_of({"s(right) w(right)"}));
}

TEST(Eval, TestsDoNotRewrite) {
  EXPECT_EQ(run("match s(S) w(S)", "s(left) w(left)"), set_of({"s(left) w(left)"}));
  EXPECT_TRUE(run("match s(S)", "s(left) w(left)").empty());
  EXPECT_EQ(run("amatch s(S) w(S)", "s(left) w(left) g(right)"), set_of({"s(left) w(left) g(right)"}));
  EXPECT_TRUE(run("amatch w(S) s(S') s.t. S =/= S'", "s(left) w(left)").empty());
}

TEST(Eval, RuleWithBindings) {
  EXPECT_EQ(run("top(shepherd-alone[S <- left])", "s(left)"), set_of({"s(right)"}));
  EXPECT_TRUE(run("top(shepherd-alone[S <- right])", "s(left)").empty());
}

TEST(Eval, MatchrewWithIdle) {
  EXPECT_EQ(run("matchrew G:Group by G:Group using idle", "s(left) w(left)"), set_of({"s(left) w(left)"}));
}

TEST(Eval, MatchrewProduct) {
  World w(kPair);
  Rewriter rw(w.sys("PAIR"), w.natives);
  Evaluator ev(rw, w.smod("PAIR-STRAT"));
  TermSet r = ev.eval(strat::call("both"), w.term("PAIR", "f(a, b)"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(*r.begin(), w.term("PAIR", "f(a', b')"));
}

TEST(Eval, StateBudget) {
  EvalLimits lim;
  lim.max_states = 2;
  EXPECT_THROW(run("oneCrossing *", "s(left) w(left) g(left) c(left)", lim), StateBudgetExceeded);
}

TEST(Eval, DepthBudget) {
  World w(support::read_theory("river.strk") + R"(
smod DEEP is
  protecting RIVER-CROSSING .
  strat loop : @ Group .
  sd loop := idle ; loop .
endsm
)");
  Rewriter rw(w.sys("RIVER-CROSSING"), w.natives);
  EvalLimits lim;
  lim.max_depth = 50;
  Evaluator ev(rw, w.smod("DEEP"), lim);
  EXPECT_THROW(ev.eval(strat::call("loop"), w.term("RIVER-CROSSING", "s(left)")), DepthExceeded);
}

TEST(Eval, InferenceBudget) {
  Rewriter rw(rm(), riv().natives);
  EvalLimits lim;
  lim.max_inferences = 3;
  Evaluator ev(rw, rs(), lim);
  EXPECT_THROW(ev.eval(strat::call("allCE"), R("s(left) w(left) g(left) c(left)")), InferenceBudgetExceeded);
}

TEST(Eval, FirstIsAMemberOfTheSet) {
  Rewriter rw(rm(), riv().natives);
  Evaluator ev(rw, rs());
  Term t = R("s(left) w(left) g(left) c(left)");
  auto f = ev.first(strat::call("allCE"), t);
  ASSERT_TRUE(f);
  EXPECT_TRUE(ev.eval(strat::call("allCE"), t).count(*f));
}

TEST(Parse, EatingShape) {
  const StratDef* d = rs().defs_for("eating").front();
  ASSERT_EQ(d->body->kind, Strategy::Kind::Bang);
  const StratPtr& u = d->body->subs[0];
  ASSERT_EQ(u->kind, Strategy::Kind::Union);
  EXPECT_EQ(u->subs[0]->kind, Strategy::Kind::RuleApp);
  EXPECT_EQ(u->subs[0]->name, "wolf-eats");
  EXPECT_EQ(u->subs[1]->name, "goat-eats");
}

TEST(Parse, SolveShape) {
  const StratDef* d = rs().defs_for("solve").front();
  ASSERT_EQ(d->body->kind, Strategy::Kind::Concat);
  EXPECT_EQ(d->body->subs[0]->kind, Strategy::Kind::Call);
  EXPECT_EQ(d->body->subs[0]->name, "allCE");
  EXPECT_EQ(d->body->subs[1]->kind, Strategy::Kind::Test);
  EXPECT_TRUE(d->body->subs[1]->top);
}

TEST(Parse, EmptyStrategyModule) {
  World w(support::read_theory("river.strk") + "smod EMPTY is protecting RIVER-CROSSING . endsm\n");
  EXPECT_TRUE(w.smod("EMPTY").defs.empty());
}

TEST(Parse, UndeclaredDefinitionIsAnError) {
  World w;
  EXPECT_THROW(load_modules(support::read_theory("river.strk") +
                                "smod BAD is protecting RIVER-CROSSING . sd nope := idle . endsm\n",
                            w.lib, w.natives),
               ParseError);
}

TEST(Parse, UnknownRuleLabel) {
  EXPECT_THROW(parse_strategy(rm(), rs(), "no-such-rule", riv().natives), Error);
}

TEST(Parse, ConditionStrategyArity) {
  EXPECT_THROW(run("wolf-eats{idle}", "s(left) w(right) g(right)"), ArityError);
}
