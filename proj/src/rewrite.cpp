#include "stratkit/rewrite.hpp"

#include <deque>
#include <set>

#include "stratkit/errors.hpp"

namespace stratkit {

Rewriter::Rewriter(const SystemModule& module, const AttachmentRegistry& natives, RewriteLimits limits)
    : module_(module), natives_(natives), limits_(limits) {}

Term Rewriter::normalize(const Term& t) const {
  Term c = canonicalize(t);
  if (!module_.has_equations()) return c;
  std::size_t steps = 0;
  std::unordered_set<Term, TermHash> normal;
  return normalize_rec(c, steps, normal);
}

Term Rewriter::normalize_rec(const Term& t, std::size_t& steps, std::unordered_set<Term, TermHash>& normal) const {
  if (t.is_var() || normal.count(t)) return t;
  Term cur = t;
  if (t.arity() > 0) {
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const auto& a : t.args()) {
      args.push_back(normalize_rec(a, steps, normal));
      changed = changed || !(args.back() == a);
    }
    if (changed) {
      cur = Term::app(t.op_ref(), std::move(args));
      if (cur.is_var() || normal.count(cur)) return cur;
    }
  }
  if (cur.is_app()) {
    for (std::size_t idx : module_.equations_for(cur.op())) {
      const Equation& eq = module_.equations[idx];
      std::optional<Term> reduct;
      visit_matches(module_.sig, eq.lhs, cur, {}, false, [&](const Match& m) {
        auto sols = eval_condition(eq.cond, m.subst);
        if (sols.empty()) return false;
        reduct = plug(cur, m, subst_apply(sols.front(), eq.rhs));
        return true;
      });
      if (reduct) {
        if (++steps > limits_.max_eq_steps)
          throw NonTerminationSuspected("equation step budget of " + std::to_string(limits_.max_eq_steps) +
                                        " exceeded in module " + module_.name);
        return normalize_rec(*reduct, steps, normal);
      }
    }
  }
  normal.insert(cur);
  return cur;
}

std::optional<Term> Rewriter::eval_data(const DataExpr& e, const Substitution& s) const {
  if (const Term* t = std::get_if<Term>(&e)) return normalize(subst_apply(s, *t));
  const auto& call = std::get<NativeCall>(e);
  std::vector<Term> args;
  args.reserve(call.args.size());
  for (const auto& a : call.args) args.push_back(normalize(subst_apply(s, a)));
  auto value = natives_.call(call.name, args, module_);
  if (!value) return std::nullopt;
  return normalize(*value);
}

std::vector<Substitution> Rewriter::eval_condition(const Condition& cond, const Substitution& s,
                                                   const CondSolver* solver) const {
  std::vector<Substitution> sols{s};
  std::size_t rewrite_index = 0;
  for (const auto& frag : cond) {
    std::vector<Substitution> next;
    std::size_t this_rewrite = rewrite_index;
    if (std::holds_alternative<RewriteCond>(frag)) ++rewrite_index;
    for (const auto& cur : sols) {
      std::visit(
          [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, EqualityCond>) {
              if (normalize(subst_apply(cur, f.lhs)) == normalize(subst_apply(cur, f.rhs))) next.push_back(cur);
            } else if constexpr (std::is_same_v<F, DisequalityCond>) {
              if (!(normalize(subst_apply(cur, f.lhs)) == normalize(subst_apply(cur, f.rhs)))) next.push_back(cur);
            } else if constexpr (std::is_same_v<F, MatchAssignCond>) {
              auto value = eval_data(f.source, cur);
              if (!value) return;
              for (auto& m : match_exact(module_.sig, f.pattern, *value, cur)) next.push_back(std::move(m));
            } else if constexpr (std::is_same_v<F, NativeTestCond>) {
              std::vector<Term> args;
              for (const auto& a : f.args) args.push_back(normalize(subst_apply(cur, a)));
              if (natives_.test(f.name, args, module_)) next.push_back(cur);
            } else {
              Term start = normalize(subst_apply(cur, f.lhs));
              std::vector<Term> reached = solver ? (*solver)(this_rewrite, start) : search(start);
              for (const auto& r : reached)
                for (auto& m : match_exact(module_.sig, f.pattern, r, cur)) next.push_back(std::move(m));
            }
          },
          frag);
    }
    sols = std::move(next);
    if (sols.empty()) break;
  }
  // Distinct solutions only.
  std::set<Substitution> seen;
  std::vector<Substitution> out;
  for (auto& x : sols)
    if (seen.insert(x).second) out.push_back(std::move(x));
  return out;
}

std::vector<Match> Rewriter::rule_matches(const Term& t, const Rule& rule, Where where,
                                          const Substitution& init) const {
  return where == Where::Top ? match_top(module_.sig, rule.lhs, t, init) : match_anywhere(module_.sig, rule.lhs, t, init);
}

std::vector<Term> Rewriter::fire(const Term& t, const Rule& rule, const Match& m, const CondSolver* solver) const {
  std::vector<Term> out;
  std::set<VarKey> rhs_vars = variables(rule.rhs);
  for (const auto& sol : eval_condition(rule.cond, m.subst, solver)) {
    for (const auto& v : rhs_vars) {
      if (!sol.contains(v))
        throw ApplicationError("rule " + (rule.label.empty() ? std::string("<unlabeled>") : rule.label) +
                               ": variable " + v.name + " is not bound by matching, condition or substitution");
    }
    Term result = normalize(plug(t, m, subst_apply(sol, rule.rhs)));
    bool dup = false;
    for (const auto& r : out) dup = dup || r == result;
    if (!dup) out.push_back(std::move(result));
  }
  return out;
}

std::vector<Term> Rewriter::rewrite_one(const Term& t, const Rule& rule, Where where, const Substitution& init,
                                        const CondSolver* solver) const {
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  for (const auto& m : rule_matches(t, rule, where, init)) {
    for (auto& r : fire(t, rule, m, solver))
      if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Term> Rewriter::search(const Term& t) const {
  constexpr std::size_t kMaxStates = 100000;
  std::vector<Term> reached{t};
  std::unordered_set<Term, TermHash> seen{t};
  std::vector<Term> frontier{t};
  for (std::size_t depth = 0; depth < limits_.cond_search_depth && !frontier.empty(); ++depth) {
    std::vector<Term> next;
    for (const auto& u : frontier) {
      for (const auto& rule : module_.rules) {
        for (auto& r : rewrite_one(u, rule, Where::Anywhere)) {
          if (!seen.insert(r).second) continue;
          if (seen.size() > kMaxStates) throw StateBudgetExceeded("rewrite-condition search exceeded state budget");
          reached.push_back(r);
          next.push_back(std::move(r));
        }
      }
    }
    frontier = std::move(next);
  }
  return reached;
}

Term normalize_eq(const SystemModule& m, const Term& t, std::size_t max_steps) {
  static const AttachmentRegistry empty;
  RewriteLimits limits;
  limits.max_eq_steps = max_steps;
  return Rewriter(m, empty, limits).normalize(t);
}

}  // namespace stratkit
