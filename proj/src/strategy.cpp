#include "stratkit/strategy.hpp"

namespace stratkit {
namespace strat {

namespace {
std::shared_ptr<Strategy> node(Strategy::Kind k, std::vector<StratPtr> subs = {}) {
  auto s = std::make_shared<Strategy>();
  s->kind = k;
  s->subs = std::move(subs);
  return s;
}
}  // namespace

StratPtr idle() {
  static const StratPtr s = node(Strategy::Kind::Idle);
  return s;
}

StratPtr fail() {
  static const StratPtr s = node(Strategy::Kind::Fail);
  return s;
}

StratPtr rule(std::string label, std::vector<std::pair<std::string, Term>> bindings, std::vector<StratPtr> cond_strats,
              bool top) {
  auto s = node(Strategy::Kind::RuleApp, std::move(cond_strats));
  s->name = std::move(label);
  s->bindings = std::move(bindings);
  s->top = top;
  return s;
}

StratPtr test(bool top, Term pattern, Condition cond) {
  auto s = node(Strategy::Kind::Test);
  s->top = top;
  s->pattern = std::move(pattern);
  s->cond = std::move(cond);
  return s;
}

StratPtr concat(StratPtr a, StratPtr b) { return node(Strategy::Kind::Concat, {std::move(a), std::move(b)}); }
StratPtr alt(StratPtr a, StratPtr b) { return node(Strategy::Kind::Union, {std::move(a), std::move(b)}); }
StratPtr plus(StratPtr a) { return node(Strategy::Kind::Plus, {std::move(a)}); }
StratPtr star(StratPtr a) { return node(Strategy::Kind::Star, {std::move(a)}); }
StratPtr bang(StratPtr a) { return node(Strategy::Kind::Bang, {std::move(a)}); }

StratPtr ite(StratPtr c, StratPtr t, StratPtr e) {
  return node(Strategy::Kind::IfThenElse, {std::move(c), std::move(t), std::move(e)});
}

StratPtr orelse(StratPtr a, StratPtr b) { return node(Strategy::Kind::OrElse, {std::move(a), std::move(b)}); }
StratPtr not_(StratPtr a) { return node(Strategy::Kind::Not, {std::move(a)}); }
StratPtr try_(StratPtr a) { return node(Strategy::Kind::Try, {std::move(a)}); }
StratPtr test_of(StratPtr a) { return node(Strategy::Kind::TestOf, {std::move(a)}); }

StratPtr matchrew(bool top, Term pattern, Condition cond, std::vector<Term> subpatterns, std::vector<StratPtr> using_) {
  auto s = node(Strategy::Kind::MatchRew, std::move(using_));
  s->top = top;
  s->pattern = std::move(pattern);
  s->cond = std::move(cond);
  s->subpatterns = std::move(subpatterns);
  return s;
}

StratPtr call(std::string name, std::vector<DataExpr> args) {
  auto s = node(Strategy::Kind::Call);
  s->name = std::move(name);
  s->args = std::move(args);
  return s;
}

}  // namespace strat

bool StrategyModule::declares(const std::string& strategy) const {
  if (decls.count(strategy)) return true;
  for (const auto& d : defs)
    if (d.name == strategy) return true;
  return false;
}

std::vector<const StratDef*> StrategyModule::defs_for(const std::string& strategy) const {
  std::vector<const StratDef*> out;
  for (const auto& d : defs)
    if (d.name == strategy) out.push_back(&d);
  return out;
}

void StrategyModule::include(const StrategyModule& other) {
  for (const auto& [n, d] : other.decls) decls.emplace(n, d);
  defs.insert(defs.end(), other.defs.begin(), other.defs.end());
  for (const auto& [n, v] : other.vars) vars.emplace(n, v);
}

}  // namespace stratkit
