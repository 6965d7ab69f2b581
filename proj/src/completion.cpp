#include "stratkit/completion.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>

#include "stratkit/errors.hpp"
#include "stratkit/match.hpp"
#include "stratkit/parser.hpp"
#include "stratkit/printer.hpp"
#include "stratkit/unify.hpp"

namespace stratkit {

Identity::Identity(Term a, Term b) {
  if (term_compare(a, b) > 0) std::swap(a, b);
  lhs = std::move(a);
  rhs = std::move(b);
}

bool rule_less(const CRule& a, const CRule& b) {
  if (int c = term_compare(a.lhs, b.lhs)) return c < 0;
  return term_compare(a.rhs, b.rhs) < 0;
}

bool identity_less(const Identity& a, const Identity& b) {
  if (int c = term_compare(a.lhs, b.lhs)) return c < 0;
  return term_compare(a.rhs, b.rhs) < 0;
}

CRule rename_apart(const CRule& r, std::size_t k) {
  const std::string suffix = std::to_string(k);
  return {rename_variables(r.lhs, suffix), rename_variables(r.rhs, suffix)};
}

namespace {

std::set<std::string> var_names(const CRule& r) {
  std::set<VarKey> vs = variables(r.lhs);
  collect_variables(r.rhs, vs);
  std::set<std::string> out;
  for (const auto& v : vs) out.insert(v.name);
  return out;
}

void add_unique(std::vector<Identity>& out, Identity id) {
  if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(std::move(id));
}

/// Positions in post-order, i.e. leftmost-innermost first.
void post_order(const Term& t, Position& p, std::vector<Position>& out) {
  if (t.is_app()) {
    for (std::size_t i = 0; i < t.arity(); ++i) {
      p.push_back(i + 1);
      post_order(t.args()[i], p, out);
      p.pop_back();
    }
  }
  out.push_back(p);
}

std::vector<CRule> sorted_rules(std::vector<CRule> rules) {
  std::sort(rules.begin(), rules.end(), rule_less);
  return rules;
}

std::optional<Term> reduce_sorted(const Signature& sig, const Term& t, const std::vector<CRule>& rules) {
  if (rules.empty()) return std::nullopt;
  std::vector<Position> ps;
  Position p;
  post_order(t, p, ps);
  for (const auto& pos : ps) {
    const Term& sub = subterm_at(t, pos);
    if (sub.is_var()) continue;
    for (const auto& r : rules) {
      auto ms = match_top(sig, r.lhs, sub, {}, false);
      if (ms.empty()) continue;
      return replace_at(t, pos, subst_apply(ms.front().subst, r.rhs));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Identity> critical_pairs(const Signature& sig, const CRule& r1, const CRule& r2) {
  const bool self = r1 == r2;
  const auto taken = var_names(r1);
  const auto mine = var_names(r2);
  std::size_t k = 1;
  while (true) {
    bool clash = false;
    for (const auto& v : mine) clash = clash || taken.count(v + std::to_string(k));
    if (!clash) break;
    ++k;
  }
  const CRule other = rename_apart(r2, k);
  std::vector<Identity> out;
  for (const auto& p : positions(r1.lhs)) {
    const Term& sub = subterm_at(r1.lhs, p);
    if (sub.is_var()) continue;
    if (self && p.empty()) continue;
    if (sub.op().comm) throw UnsupportedACUnification("critical pair overlap at commutative operator " + sub.op().name);
    auto sigma = unify(sig, sub, other.lhs);
    if (!sigma) continue;
    Term left = subst_apply(*sigma, replace_at(r1.lhs, p, other.rhs));
    Term right = subst_apply(*sigma, r1.rhs);
    add_unique(out, Identity(left, right));
  }
  return out;
}

std::vector<Identity> cp_with_set(const Signature& sig, const CRule& r, const std::vector<CRule>& rules) {
  std::vector<Identity> out;
  for (const auto& q : rules) {
    for (auto& id : critical_pairs(sig, r, q)) add_unique(out, std::move(id));
    for (auto& id : critical_pairs(sig, q, r)) add_unique(out, std::move(id));
  }
  return out;
}

std::optional<Term> reduce(const Signature& sig, const Term& t, const std::vector<CRule>& rules) {
  return reduce_sorted(sig, t, sorted_rules(rules));
}

std::optional<Term> reduce_encompass(const Signature& sig, const CRule& r, const std::vector<CRule>& rules) {
  std::vector<CRule> allowed;
  for (const auto& q : rules) {
    bool encompassed = false;
    for (const auto& p : positions(q.lhs)) {
      if (matches(sig, r.lhs, subterm_at(q.lhs, p))) {
        encompassed = true;
        break;
      }
    }
    if (!encompassed) allowed.push_back(q);
  }
  return reduce(sig, r.lhs, allowed);
}

std::optional<CRule> least_rule(const std::vector<CRule>& rules) {
  std::optional<CRule> best;
  auto weight = [](const CRule& r) { return r.lhs.size() + r.rhs.size(); };
  for (const auto& r : rules) {
    if (!best || weight(r) < weight(*best) || (weight(r) == weight(*best) && rule_less(r, *best))) best = r;
  }
  return best;
}

Term normal_form(const Signature& sig, const Term& t, const std::vector<CRule>& rules, std::size_t max_steps) {
  auto sorted = sorted_rules(rules);
  Term cur = t;
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = reduce_sorted(sig, cur, sorted);
    if (!next) return cur;
    cur = std::move(*next);
  }
  throw NonTerminationSuspected("normal form computation exceeded " + std::to_string(max_steps) + " steps");
}

ConvergenceReport validate_convergent(const Signature& sig, const std::vector<CRule>& rules,
                                      const std::vector<Identity>& e0, const Precedence& prec) {
  ConvergenceReport rep;
  auto show = [](const CRule& r) { return to_string(r.lhs) + " -> " + to_string(r.rhs); };
  auto show_id = [](const Identity& i) { return to_string(i.lhs) + " =. " + to_string(i.rhs); };
  for (const auto& r : rules) {
    if (!lpo_greater(r.lhs, r.rhs, prec)) {
      rep.terminating = false;
      rep.problems.push_back("not decreasing in the path order: " + show(r));
    }
  }
  auto joins = [&](const Identity& id) {
    return normal_form(sig, id.lhs, rules) == normal_form(sig, id.rhs, rules);
  };
  if (rep.terminating) {
    for (const auto& r1 : rules)
      for (const auto& r2 : rules)
        for (const auto& cp : critical_pairs(sig, r1, r2))
          if (!joins(cp)) {
            rep.joinable = false;
            rep.problems.push_back("critical pair does not join: " + show_id(cp));
          }
    for (const auto& id : e0)
      if (!joins(id)) {
        rep.equivalent = false;
        rep.problems.push_back("input identity does not join: " + show_id(id));
      }
  } else {
    rep.joinable = false;
    rep.equivalent = false;
    rep.problems.push_back("joinability not checked without a termination certificate");
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::vector<CRule> others;
    for (std::size_t j = 0; j < rules.size(); ++j)
      if (j != i) others.push_back(rules[j]);
    if (reduce(sig, rules[i].lhs, others)) {
      rep.interreduced = false;
      rep.problems.push_back("left-hand side reducible by another rule: " + show(rules[i]));
    }
    if (reduce(sig, rules[i].rhs, rules)) {
      rep.interreduced = false;
      rep.problems.push_back("right-hand side reducible: " + show(rules[i]));
    }
  }
  return rep;
}

namespace {

void rename_in_order(const Term& t, std::map<VarKey, Term>& names) {
  if (t.is_var()) {
    VarKey k{t.name(), t.sort()};
    if (t.is_free_var() && !names.count(k))
      names.emplace(k, Term::var("v" + std::to_string(names.size() + 1), t.sort()));
    return;
  }
  for (const auto& a : t.args()) rename_in_order(a, names);
}

}  // namespace

CRule canonical_variables(const CRule& r) {
  std::map<VarKey, Term> names;
  rename_in_order(r.lhs, names);
  rename_in_order(r.rhs, names);
  Substitution s;
  for (const auto& [k, v] : names) s.set(k, v);
  return {subst_apply(s, r.lhs), subst_apply(s, r.rhs)};
}

bool same_rules_modulo_renaming(const std::vector<CRule>& a, const std::vector<CRule>& b) {
  auto canon = [](const std::vector<CRule>& rs) {
    std::vector<CRule> out;
    for (const auto& r : rs) out.push_back(canonical_variables(r));
    std::sort(out.begin(), out.end(), rule_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return canon(a) == canon(b);
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::N:
      return "N";
    case Variant::S:
      return "S";
    case Variant::ANS:
      return "ANS";
  }
  return "N";
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "N") return Variant::N;
  if (s == "S") return Variant::S;
  if (s == "ANS") return Variant::ANS;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Attachments over the generated theory. Object variables travel as frozen
// variables; they are thawed for matching and unification.

namespace {

Term set_freeze(const Term& t, bool frozen) {
  if (t.is_var()) return t.is_frozen() == frozen ? t : Term::var(t.name(), t.sort(), frozen);
  if (t.ground() == !frozen && t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(set_freeze(a, frozen));
  return Term::app(t.op_ref(), std::move(args));
}

Term thaw(const Term& t) { return set_freeze(t, false); }
Term freeze(const Term& t) { return set_freeze(t, true); }

std::vector<Term> elements(const Term& t) {
  if (t.is_app() && t.op().is_juxtaposition()) return t.args();
  if (t.is_app() && t.arity() == 0 && (t.name() == "mtRlS" || t.name() == "mtEqS")) return {};
  return {t};
}

CRule as_rule(const Term& t) {
  if (!t.is_app() || t.name() != "_->_" || t.arity() != 2)
    throw SortError("expected a rule s -> t but found " + to_string(t));
  return {thaw(t.args()[0]), thaw(t.args()[1])};
}

std::vector<CRule> as_rules(const Term& t) {
  std::vector<CRule> out;
  for (const auto& e : elements(t)) out.push_back(as_rule(e));
  return out;
}

Term identity_set(const Signature& sig, const std::vector<Identity>& ids) {
  if (ids.empty()) return Term::constant(sig.find("mtEqS", 0));
  OpRef eq = sig.resolve("_=._", {"Term", "Term"});
  std::vector<Term> elems;
  for (const auto& id : ids) elems.push_back(Term::app(eq, {freeze(id.lhs), freeze(id.rhs)}));
  if (elems.size() == 1) return elems.front();
  return Term::app(sig.resolve("__", {"EqS", "EqS"}), std::move(elems));
}

}  // namespace

void register_completion_attachments(AttachmentRegistry& natives) {
  natives.add_function("CP", [](std::span<const Term> a, const SystemModule& m) -> std::optional<Term> {
    if (a.size() != 2) throw ArityError("CP expects a rule and a rule set");
    return identity_set(m.sig, cp_with_set(m.sig, as_rule(a[0]), as_rules(a[1])));
  });
  natives.add_function("reduce", [](std::span<const Term> a, const SystemModule& m) -> std::optional<Term> {
    if (a.size() != 2) throw ArityError("reduce expects a term and a rule set");
    return reduce(m.sig, a[0], as_rules(a[1]));
  });
  natives.add_function("reduce>", [](std::span<const Term> a, const SystemModule& m) -> std::optional<Term> {
    if (a.size() != 2) throw ArityError("reduce> expects a rule and a rule set");
    auto r = reduce_encompass(m.sig, as_rule(a[0]), as_rules(a[1]));
    if (!r) return std::nullopt;
    return freeze(*r);
  });
  natives.add_function("least-rule", [](std::span<const Term> a, const SystemModule&) -> std::optional<Term> {
    if (a.size() != 1) throw ArityError("least-rule expects a rule set");
    std::vector<Term> rs = elements(a[0]);
    std::optional<Term> best;
    auto weight = [](const Term& r) { return r.size(); };
    for (const auto& r : rs) {
      if (!best || weight(r) < weight(*best) || (weight(r) == weight(*best) && term_compare(r, *best) < 0)) best = r;
    }
    return best;
  });
  natives.add_predicate(">", [](std::span<const Term> a, const SystemModule& m) {
    if (a.size() != 2) throw ArityError("> expects two terms");
    return lpo_greater(a[0], a[1], m.prec);
  });
}

// ---------------------------------------------------------------------------
// Theory generation.

namespace {

const char* kTheoryOps = R"(  sorts Term Rl RlS Eq EqS System .
  subsort Rl < RlS .
  subsort Eq < EqS .
  op _->_ : Term Term -> Rl [prec 61] .
  op _=._ : Term Term -> Eq [comm prec 61] .
  op mtRlS : -> RlS .
  op mtEqS : -> EqS .
  op __ : RlS RlS -> RlS [assoc comm id: mtRlS prec 71] .
  op __ : EqS EqS -> EqS [assoc comm id: mtEqS prec 71] .
  op eqs : -> EqS .
)";

const char* kRulesN = R"(  op <_,_,_> : RlS RlS EqS -> System .

  rl [Deduce] : < {R}, {T}, {E} > => < {R}, {T}, {E} {s} =. {t} > .
  crl [Orient] : < {R}, {T}, {E} {s} =. {t} > => < {R}, {T} {s} -> {t}, {E} > if {s} > {t} .
  rl [Delete] : < {R}, {T}, {E} {s} =. {s} > => < {R}, {T}, {E} > .
  crl [Simplify] : < {R}, {T}, {E} {s} =. {t} > => < {R}, {T}, {E} {u} =. {t} >
    if {u} := reduce({s}, {R} {T}) .
  crl [R-Simplify] : < {R} {s} -> {t}, {T}, {E} > => < {R} {s} -> {u}, {T}, {E} >
    if {u} := reduce({t}, {R} {T}) .
  crl [R-Simplify] : < {R}, {T} {s} -> {t}, {E} > => < {R}, {T} {s} -> {u}, {E} >
    if {u} := reduce({t}, {R} {T}) .
  crl [L-Simplify] : < {R} {s} -> {t}, {T}, {E} > => < {R}, {T}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {R} {T}) .
  crl [L-Simplify] : < {R}, {T} {s} -> {t}, {E} > => < {R}, {T}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {R} {T}) .
  rl [move] : < {R}, {r} {T}, {E} > => < {r} {R}, {T}, {E} > .
)";

const char* kStratN = R"(  strats N-COMP success deduce deduction simplify-rules orient simplify-eqs : @ System .
  strat add-crit-pairs : EqS @ System .

  sd N-COMP := success orelse deduce orelse orient .
  sd success := match < {R}, mtRlS, mtEqS > .
  sd deduce := match < {R}, {r} {T}, mtEqS > ;
               deduction ;
               simplify-rules ;
               N-COMP .
  sd deduction := matchrew < {R}, {r'} {T}, {E} > by
                    < {R}, {r'} {T}, {E} > using (add-crit-pairs(CP({r'}, {R} {r'})) ;
                                                  move[{r} <- {r'}]) .
  sd add-crit-pairs(mtEqS) := idle .
  sd add-crit-pairs({s1} =. {t1} {E}) := Deduce[{s} <- {s1} ; {t} <- {t1}] ; add-crit-pairs({E}) .
  sd simplify-rules := (L-Simplify | R-Simplify) ! .
  sd orient := match < {R}, {T}, {e} {E} > ;
               simplify-eqs ;
               ((match < {R}, {T}, mtEqS > ; N-COMP)
                orelse (Orient ; N-COMP)) .
  sd simplify-eqs := (Delete | Simplify) ! .
)";

const char* kRulesS = R"(  op <_,_,_,_> : RlS RlS RlS EqS -> System .

  rl [Deduce] : < {R}, {T}, {S}, {E} > => < {R}, {T}, {S}, {E} {s} =. {t} > .
  crl [Orient] : < {R}, {T}, {S}, {E} {s} =. {t} > => < {R}, {T}, {S} {s} -> {t}, {E} > if {s} > {t} .
  rl [Delete] : < {R}, {T}, {S}, {E} {s} =. {s} > => < {R}, {T}, {S}, {E} > .
  crl [Simplify] : < {R}, {T}, {S}, {E} {s} =. {t} > => < {R}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce({s}, {R} {T} {S}) .
  crl [R-Simplify] : < {R} {s} -> {t}, {T}, {S}, {E} > => < {R} {s} -> {u}, {T}, {S}, {E} >
    if {u} := reduce({t}, {R} {T} {S}) .
  crl [R-Simplify] : < {R}, {T} {s} -> {t}, {S}, {E} > => < {R}, {T} {s} -> {u}, {S}, {E} >
    if {u} := reduce({t}, {R} {T} {S}) .
  crl [L-Simplify] : < {R} {s} -> {t}, {T}, {S}, {E} > => < {R}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {R} {T} {S}) .
  crl [L-Simplify] : < {R}, {T} {s} -> {t}, {S}, {E} > => < {R}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {R} {T} {S}) .
  rl [move] : < {R}, {r} {T}, {S}, {E} > => < {r} {R}, {T}, {S}, {E} > .
  rl [concatT&S] : < {R}, {T}, {S}, {E} > => < {R}, {T} {S}, mtRlS, {E} > .
)";

const char* kStratS = R"(  strats S-COMP success simplify-rules deduce deduction orient simplify-eqs : @ System .
  strat add-crit-pairs : EqS @ System .

  sd S-COMP := success orelse simplify-rules orelse deduce orelse orient .
  sd success := match < {R}, mtRlS, mtRlS, mtEqS > .
  sd simplify-rules := match < {R}, {T}, {r} {S}, {E} > ;
                       (L-Simplify | R-Simplify) ! ;
                       concatT&S ;
                       S-COMP .
  sd deduce := match < {R}, {r} {T}, mtRlS, mtEqS > ;
               deduction ;
               S-COMP .
  sd deduction := matchrew < {R}, {r'} {T}, {S}, {E} > by
                    < {R}, {r'} {T}, {S}, {E} > using (add-crit-pairs(CP({r'}, {R} {r'})) ;
                                                       move[{r} <- {r'}]) .
  sd add-crit-pairs(mtEqS) := idle .
  sd add-crit-pairs({s1} =. {t1} {E}) := Deduce[{s} <- {s1} ; {t} <- {t1}] ; add-crit-pairs({E}) .
  sd orient := match < {R}, {T}, {S}, {e} {E} > ;
               simplify-eqs ;
               ((match < {R}, {T}, {S}, mtEqS > ; S-COMP)
                orelse (Orient ; S-COMP)) .
  sd simplify-eqs := (Delete | Simplify) ! .
)";

const char* kRulesANS = R"(  op <_,_,_,_,_,_> : RlS RlS RlS RlS RlS EqS -> System .

  rl [Deduce] : < {A}, {N}, {C}, {T}, {S}, {E} > => < {A}, {N}, {C}, {T}, {S}, {E} {s} =. {t} > .
  crl [Orient] : < {A}, {N}, {C}, {T}, {S}, {E} {s} =. {t} > => < {A}, {N}, {C}, {T}, {S} {s} -> {t}, {E} >
    if {s} > {t} .
  rl [Delete] : < {A}, {N}, {C}, {T}, {S}, {E} {s} =. {s} > => < {A}, {N}, {C}, {T}, {S}, {E} > .
  crl [Simplify] : < {A}, {N}, {C}, {T}, {S}, {E} {s} =. {t} > => < {A}, {N}, {C}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce({s}, {A} {N} {C} {T} {S}) .
  crl [R-Simplify] : < {A} {s} -> {t}, {N}, {C}, {T}, {S}, {E} > => < {A} {s} -> {u}, {N}, {C}, {T}, {S}, {E} >
    if {u} := reduce({t}, {A} {N} {C} {T} {S}) .
  crl [R-Simplify] : < {A}, {N} {s} -> {t}, {C}, {T}, {S}, {E} > => < {A}, {N} {s} -> {u}, {C}, {T}, {S}, {E} >
    if {u} := reduce({t}, {A} {N} {C} {T} {S}) .
  crl [R-Simplify] : < {A}, {N}, {C} {s} -> {t}, {T}, {S}, {E} > => < {A}, {N}, {C} {s} -> {u}, {T}, {S}, {E} >
    if {u} := reduce({t}, {A} {N} {C} {T} {S}) .
  crl [R-Simplify] : < {A}, {N}, {C}, {T} {s} -> {t}, {S}, {E} > => < {A}, {N}, {C}, {T} {s} -> {u}, {S}, {E} >
    if {u} := reduce({t}, {A} {N} {C} {T} {S}) .
  crl [L-Simplify] : < {A} {s} -> {t}, {N}, {C}, {T}, {S}, {E} > => < {A}, {N}, {C}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {A} {N} {C} {T} {S}) .
  crl [L-Simplify] : < {A}, {N} {s} -> {t}, {C}, {T}, {S}, {E} > => < {A}, {N}, {C}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {A} {N} {C} {T} {S}) .
  crl [L-Simplify] : < {A}, {N}, {C} {s} -> {t}, {T}, {S}, {E} > => < {A}, {N}, {C}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {A} {N} {C} {T} {S}) .
  crl [L-Simplify] : < {A}, {N}, {C}, {T} {s} -> {t}, {S}, {E} > => < {A}, {N}, {C}, {T}, {S}, {E} {u} =. {t} >
    if {u} := reduce>({s} -> {t}, {A} {N} {C} {T} {S}) .
  rl [move] : < {A}, {r} {N}, {C}, {T}, {S}, {E} > => < {r} {A}, {N}, {C}, {T}, {S}, {E} > .
  rl [concatT&S] : < {A}, {N}, {C}, {T}, {S}, {E} > => < {A}, {N}, {C}, {T} {S}, mtRlS, {E} > .
  rl [AC2N] : < {A}, {N}, {C}, {T}, {S}, {E} > => < mtRlS, {A} {N} {C}, mtRlS, {T}, {S}, {E} > .
  crl [fillC] : < {A}, {N}, {C}, {T}, {S}, {E} > => < mtRlS, {A} {N}, {r}, {T'}, {S}, {E} >
    if {r} := least-rule({T}) /\ {r} {T'} := {T} .
)";

const char* kStratANS = R"(  strats ANS-COMP success simplify-rules orient deduce deduction : @ System .
  strats internal-deduction new-loop simplify-eqs : @ System .
  strat add-crit-pairs : EqS @ System .

  sd ANS-COMP := success orelse
                 simplify-rules orelse
                 orient orelse
                 deduce orelse
                 internal-deduction orelse
                 new-loop .
  sd success := match < {A}, {N}, mtRlS, mtRlS, mtRlS, mtEqS > .
  sd simplify-rules := match < {A}, {N}, {C}, {T}, {r} {S}, {E} > ;
                       (L-Simplify | R-Simplify) ! ;
                       concatT&S ;
                       ANS-COMP .
  sd orient := match < {A}, {N}, {C}, {T}, {S}, {e} {E} > ;
               simplify-eqs ;
               ((match < {A}, {N}, {C}, {T}, {S}, mtEqS > ; ANS-COMP)
                orelse (Orient ; ANS-COMP)) .
  sd deduce := match < {A}, {r} {N}, {r'}, {T}, mtRlS, mtEqS > ;
               deduction ;
               ANS-COMP .
  sd deduction := matchrew < {A}, {r'} {N}, {r''}, {T}, {S}, {E} > s.t. {r'} := least-rule({r'} {N}) by
                    < {A}, {r'} {N}, {r''}, {T}, {S}, {E} > using (add-crit-pairs(CP({r''}, {r'})) ;
                                                                 move[{r} <- {r'}]) .
  sd internal-deduction := (matchrew < {A}, mtRlS, {r'}, {T}, mtRlS, mtEqS > by
                              < {A}, mtRlS, {r'}, {T}, mtRlS, mtEqS > using (add-crit-pairs(CP({r'}, {r'})) ;
                                                                            AC2N)) ;
                           ANS-COMP .
  sd new-loop := fillC ; ANS-COMP .
  sd add-crit-pairs(mtEqS) := idle .
  sd add-crit-pairs({s1} =. {t1} {E}) := Deduce[{s} <- {s1} ; {t} <- {t1}] ; add-crit-pairs({E}) .
  sd simplify-eqs := (Delete | Simplify) ! .
)";

std::string fill(std::string text, const std::map<std::string, std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '{') {
      auto close = text.find('}', i);
      auto it = names.find(text.substr(i + 1, close - i - 1));
      if (close != std::string::npos && it != names.end()) {
        out += it->second;
        i = close + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

const std::set<std::string>& reserved_ops() {
  static const std::set<std::string> r = {"_->_", "_=._", "mtRlS", "mtEqS", "__", "eqs", "<_,_,_>", "<_,_,_,_>",
                                          "<_,_,_,_,_,_>"};
  return r;
}

}  // namespace

std::vector<Identity> object_identities(const SystemModule& object) {
  std::vector<Identity> out;
  for (const auto& e : object.equations) {
    if (!e.cond.empty()) throw ConfigError("completion does not accept conditional equations");
    out.emplace_back(e.lhs, e.rhs);
  }
  return out;
}

std::string completion_theory_text(const SystemModule& object, Variant v, const std::string& name) {
  std::set<std::string> taken;
  for (const auto& op : object.sig.ops()) {
    if (reserved_ops().count(op->name))
      throw ConfigError("operator " + op->name + " of " + object.name + " clashes with the completion theory");
    if (op->assoc || op->comm)
      throw UnsupportedACUnification("completion of " + object.name + " would need unification modulo " +
                                     op->name + "'s attributes");
    taken.insert(op->name);
  }
  std::map<std::string, std::string> var_sorts;
  for (const auto& e : object.equations) {
    std::set<VarKey> vs = variables(e.lhs);
    collect_variables(e.rhs, vs);
    for (const auto& k : vs) {
      auto [it, fresh] = var_sorts.emplace(k.name, k.sort);
      if (!fresh && it->second != k.sort)
        throw ConfigError("variable " + k.name + " is used with two sorts in " + object.name);
      taken.insert(k.name);
    }
  }
  std::map<std::string, std::string> names;
  for (const char* n : {"R", "T", "T'", "S", "A", "N", "C", "E", "e", "r", "r'", "r''", "s", "t", "u", "s1", "t1"}) {
    std::string fresh = n;
    while (taken.count(fresh)) fresh += "'";
    taken.insert(fresh);
    names[n] = fresh;
  }

  std::ostringstream out;
  out << "mod " << name << " is\n" << kTheoryOps;
  for (const auto& op : object.sig.ops()) {
    out << "  op " << op->name << " :";
    for (std::size_t i = 0; i < op->arity(); ++i) out << " Term";
    out << " -> Term";
    if (op->is_mixfix()) out << " [prec " << op->prec << "]";
    out << " .\n";
  }
  if (!var_sorts.empty()) {
    out << "  vars";
    for (const auto& [n, _] : var_sorts) out << " " << n;
    out << " : Term [frozen] .\n";
  }
  out << fill(R"(  var {E} : EqS .
  var {e} : Eq .
  vars {r} {r'} {r''} : Rl .
  vars {R} {T} {T'} {S} {A} {N} {C} : RlS .
  vars {s} {t} {u} : Term .
)",
              names);
  std::vector<std::string> chain_lines;
  for (const auto& [hi, lo] : object.prec.declared()) out << "  prec " << hi << " > " << lo << " .\n";
  out << "\n  eq eqs = ";
  auto ids = object_identities(object);
  if (ids.empty()) out << "mtEqS";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out << "\n    ";
    out << "(" << to_string(ids[i].lhs) << " =. " << to_string(ids[i].rhs) << ")";
  }
  out << " .\n";
  out << fill("  eq {r} {r} = {r} .\n  eq {e} {e} = {e} .\n\n", names);
  switch (v) {
    case Variant::N:
      out << fill(kRulesN, names);
      break;
    case Variant::S:
      out << fill(kRulesS, names);
      break;
    case Variant::ANS:
      out << fill(kRulesANS, names);
      break;
  }
  out << "endm\n\nsmod " << name << "-STRAT is\n  protecting " << name << " .\n";
  out << fill(R"(  vars {s1} {t1} : Term .
  var {E} : EqS .
  var {e} : Eq .
  vars {r} {r'} {r''} : Rl .
  vars {R} {T} {S} {A} {N} {C} : RlS .

)",
              names);
  switch (v) {
    case Variant::N:
      out << fill(kStratN, names);
      break;
    case Variant::S:
      out << fill(kStratS, names);
      break;
    case Variant::ANS:
      out << fill(kStratANS, names);
      break;
  }
  out << "endsm\n";
  return out.str();
}

std::string initial_system_text(Variant v) {
  switch (v) {
    case Variant::N:
      return "< mtRlS, mtRlS, eqs >";
    case Variant::S:
      return "< mtRlS, mtRlS, mtRlS, eqs >";
    case Variant::ANS:
      return "< mtRlS, mtRlS, mtRlS, mtRlS, mtRlS, eqs >";
  }
  return "";
}

void run_with_large_stack(const std::function<void()>& fn, std::size_t bytes) {
  struct Job {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } job{&fn, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t th;
  auto body = [](void* p) -> void* {
    auto* j = static_cast<Job*>(p);
    try {
      (*j->fn)();
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  if (pthread_create(&th, &attr, body, &job) != 0) {
    pthread_attr_destroy(&attr);
    fn();
    return;
  }
  pthread_join(th, nullptr);
  pthread_attr_destroy(&attr);
  if (job.error) std::rethrow_exception(job.error);
}

namespace {

/// Maps a theory term over sort Term back to the object signature.
Term lift(const Term& t, const SystemModule& object) {
  if (t.is_var()) {
    auto it = object.vars.find(t.name());
    std::string sort = it != object.vars.end() ? it->second.sort() : std::string();
    if (sort.empty()) {
      std::string base = t.name();
      while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
      auto jt = object.vars.find(base);
      if (jt != object.vars.end()) sort = jt->second.sort();
    }
    if (sort.empty()) throw SortError("cannot find the object sort of variable " + t.name());
    return Term::var(t.name(), sort);
  }
  std::vector<Term> args;
  std::vector<std::string> sorts;
  for (const auto& a : t.args()) {
    args.push_back(lift(a, object));
    sorts.push_back(args.back().sort());
  }
  return Term::app(object.sig.resolve(t.name(), sorts), std::move(args));
}

}  // namespace

CompletionResult run_completion(const SystemModule& object, Variant v, const CompletionLimits& limits) {
  AttachmentRegistry natives;
  register_completion_attachments(natives);
  ModuleLibrary lib;
  const std::string name = object.name + "-" + variant_name(v);
  load_modules(completion_theory_text(object, v, name), lib, natives);
  const SystemModule& theory = *lib.system(name);
  const StrategyModule& strategies = *lib.strategy(name + "-STRAT");

  RewriteLimits rl;
  rl.max_eq_steps = limits.max_eq_steps;
  Rewriter rw(theory, natives, rl);
  EvalLimits el;
  el.max_states = limits.max_states;
  el.max_depth = limits.max_depth;
  el.max_inferences = limits.max_inferences;
  Evaluator ev(rw, strategies, el);

  CompletionResult res;
  Term start = rw.normalize(parse_term(theory, initial_system_text(v)));
  StratPtr entry = strat::call(variant_name(v) + "-COMP");
  std::optional<Term> final;
  try {
    run_with_large_stack([&] { final = ev.first(entry, start); });
  } catch (const BudgetExceeded& e) {
    res.status = CompletionResult::Status::Budget;
    res.message = e.what();
    res.system = ev.last_rewrite() ? ev.last_rewrite() : start;
    res.inferences = ev.inferences();
    return res;
  }
  res.inferences = ev.inferences();
  if (!final) {
    res.status = CompletionResult::Status::Failure;
    res.system = ev.last_rewrite() ? ev.last_rewrite() : start;
    res.message = "no strategy path leads to a completed system";
    return res;
  }
  res.status = CompletionResult::Status::Success;
  res.system = final;
  std::vector<Term> parts;
  if (v == Variant::ANS) {
    parts = {final->args()[0], final->args()[1]};
  } else {
    parts = {final->args()[0]};
  }
  for (const auto& p : parts)
    for (const auto& e : elements(p)) {
      CRule r = as_rule(e);
      res.rules.push_back({lift(r.lhs, object), lift(r.rhs, object)});
    }
  std::sort(res.rules.begin(), res.rules.end(), rule_less);
  return res;
}

}  // namespace stratkit
