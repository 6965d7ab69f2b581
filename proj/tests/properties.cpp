#include "properties.hpp"

#include <random>

#include "support.hpp"

namespace props {

using namespace stratkit;

namespace {

class Gen {
 public:
  Gen(const support::World& w, std::uint32_t seed) : w_(w), rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term state() {
    const char* side[] = {"left", "right"};
    std::string t = std::string("s(") + side[pick(2)] + ")";
    for (const char* item : {"w", "g", "c"})
      if (pick(4) != 0) t += std::string(" ") + item + "(" + side[pick(2)] + ")";
    return w_.term("RIVER-CROSSING", t);
  }

  StratPtr atom() {
    static const char* rules[] = {"wolf-eats", "goat-eats", "shepherd-alone", "wolf", "goat", "cabbage"};
    static const char* pats[] = {"s(S) w(S)", "g(S) c(S)", "w(S)", "s(left)", "g(right)"};
    switch (pick(7)) {
      case 0:
        return pick(2) ? strat::idle() : strat::fail();
      case 1:
      case 2:
        return strat::rule(rules[pick(6)]);
      case 3:
        return strat::call(pick(2) ? "oneCrossing" : "eating");
      case 4:
        return strat::test(false, w_.term("RIVER-CROSSING", pats[pick(5)]));
      default:
        return strat::rule(rules[pick(6)], {}, {}, pick(2) == 0);
    }
  }

  StratPtr expr(int depth) {
    if (depth == 0) return atom();
    switch (pick(9)) {
      case 0:
        return strat::concat(expr(depth - 1), expr(depth - 1));
      case 1:
        return strat::alt(expr(depth - 1), expr(depth - 1));
      case 2:
        return strat::orelse(expr(depth - 1), expr(depth - 1));
      case 3:
        return strat::star(expr(depth - 1));
      case 4:
        return strat::bang(expr(depth - 1));
      case 5:
        return strat::not_(expr(depth - 1));
      case 6:
        return strat::ite(expr(depth - 1), expr(depth - 1), expr(depth - 1));
      default:
        return atom();
    }
  }

  StratPtr rule() {
    static const char* rules[] = {"wolf-eats", "goat-eats", "shepherd-alone", "wolf", "goat", "cabbage"};
    return strat::rule(rules[pick(6)]);
  }

 private:
  const support::World& w_;
  std::mt19937 rng_;
};

bool subset(const TermSet& a, const TermSet& b) {
  for (const auto& t : a)
    if (!b.count(t)) return false;
  return true;
}

}  // namespace

Report strategy_algebra(std::uint32_t seed, std::size_t cases) {
  support::World w = support::river();
  const SystemModule& m = w.sys("RIVER-CROSSING");
  const StrategyModule& sm = w.smod("RIVER-CROSSING-STRAT");
  Rewriter rw(m, w.natives);
  Evaluator ev(rw, sm);
  Gen gen(w, seed);
  Report rep;

  Term group = Term::var("G", "Group");
  Term rest_pattern = w.term("RIVER-CROSSING", "s(S) G:Group");

  for (std::size_t i = 0; i < cases; ++i) {
    Term t = gen.state();
    StratPtr a = gen.expr(2), b = gen.expr(2), c = gen.expr(1);
    auto E = [&](const StratPtr& s) { return ev.eval(s, t); };
    auto check = [&](bool ok, const std::string& law) {
      ++rep.checks;
      if (!ok) rep.violations.push_back(law + " at " + to_string(t));
    };
    TermSet ea = E(a), eb = E(b);

    check(E(strat::concat(strat::idle(), a)) == ea, "idle ; a = a");
    check(E(strat::concat(a, strat::idle())) == ea, "a ; idle = a");
    check(E(strat::concat(strat::fail(), a)).empty(), "fail ; a = fail");
    check(E(strat::concat(a, strat::fail())).empty(), "a ; fail = fail");
    check(E(strat::alt(a, strat::fail())) == ea, "a | fail = a");
    check(E(strat::alt(a, b)) == E(strat::alt(b, a)), "union commutes");
    check(E(strat::alt(strat::alt(a, b), c)) == E(strat::alt(a, strat::alt(b, c))), "union associates");
    check(E(strat::concat(strat::concat(a, b), c)) == E(strat::concat(a, strat::concat(b, c))),
          "concat associates");
    TermSet u = eb;
    u.insert(ea.begin(), ea.end());
    check(E(strat::alt(a, b)) == u, "union is set union");
    check(E(strat::orelse(a, b)) == (ea.empty() ? eb : ea), "orelse law");
    TermSet tested = ea.empty() ? TermSet{} : TermSet{t};
    check(E(strat::test_of(a)) == tested, "test(a) keeps t iff a succeeds");
    check(E(strat::test_of(a)) == E(strat::not_(strat::not_(a))), "test = not not");

    for (const auto& v : E(strat::bang(a))) check(ev.eval(a, v).empty(), "a ! is irreducible");
    TermSet star = E(strat::star(a));
    check(star.count(t) == 1, "t in a *");
    for (const auto& v : star) check(subset(ev.eval(a, v), star), "a * is closed under a");
    check(E(strat::star(a)) == E(strat::alt(strat::idle(), strat::plus(a))), "a * = idle | a +");

    StratPtr r = gen.rule();
    StratPtr top = strat::rule(r->name, {}, {}, true);
    check(subset(E(top), E(r)), "top(r) within r");

    if (t.is_app() && t.arity() >= 2) {
      StratPtr mr = strat::matchrew(true, rest_pattern, {}, {group}, {c});
      std::vector<Term> others;
      Term shepherd = t.args()[0];
      for (const auto& x : t.args()) {
        if (x.name() == "s") shepherd = x;
        else others.push_back(x);
      }
      Term rest = Term::app(t.op_ref(), others);
      TermSet expect;
      // Pattern variables stay bound inside the sub-strategy.
      Substitution env;
      env.set({"S", "Side"}, shepherd.args()[0]);
      env.set({"G", "Group"}, rest);
      for (const auto& v : ev.eval(c, rest, env)) expect.insert(rw.normalize(Term::app(t.op_ref(), {shepherd, v})));
      check(E(mr) == expect, "matchrew acts on the matched subterm only");
    }
    ++rep.cases;
  }
  return rep;
}

}  // namespace props
