#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"

namespace oracle {

namespace {

const char* kFour = R"(
mod FOUR is
  sort S .
  op a : -> S .
  op f : S -> S .
  ops g h : S S -> S .
  vars x y : S .
endm
)";

const char* kBag = R"(
mod BAG is
  sort S .
  ops a b : -> S .
  op f : S -> S .
  op g : S S -> S .
  op _+_ : S S -> S [assoc comm] .
  vars x y z : S .
endm
)";

/// Terms up to `depth` with at most `max_size` nodes.
std::vector<Term> terms_upto(const Signature& sig, const std::vector<Term>& leaves, const std::vector<std::string>& ops,
                             int depth, std::size_t max_size) {
  std::vector<Term> all = leaves;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Term> next = all;
    for (const auto& name : ops) {
      for (const auto& op : sig.ops_named(name)) {
        if (op->arity() == 1) {
          for (const auto& x : all)
            if (x.size() + 1 <= max_size) next.push_back(Term::app(op, {x}));
        } else if (op->arity() == 2) {
          for (const auto& x : all)
            for (const auto& y : all)
              if (x.size() + y.size() + 1 <= max_size) next.push_back(Term::app(op, {x, y}));
        }
      }
    }
    std::sort(next.begin(), next.end(), TermLess{});
    next.erase(std::unique(next.begin(), next.end()), next.end());
    all = std::move(next);
  }
  return all;
}

}  // namespace

Sweep sweep_critical_pairs() {
  support::World w(kFour);
  const SystemModule& m = w.sys("FOUR");
  Term x = w.term("FOUR", "x"), y = w.term("FOUR", "y"), a = w.term("FOUR", "a");
  std::vector<Term> small = terms_upto(m.sig, {a, x, y}, {"f", "g", "h"}, 2, 4);
  std::vector<Term> deep = terms_upto(m.sig, {a, x, y}, {"f", "g", "h"}, 3, 5);
  auto make_rules = [&](const std::vector<Term>& ts) {
    std::vector<CRule> out;
    for (const auto& l : ts) {
      if (l.is_var()) continue;
      auto vs = variables(l);
      Term r = vs.empty() ? a : Term::var(vs.begin()->name, vs.begin()->sort);
      if (r == l) continue;
      out.push_back({l, r});
    }
    return out;
  };
  std::vector<CRule> lefts = make_rules(deep), rights = make_rules(small);
  Sweep sw;
  for (const auto& r1 : lefts)
    for (const auto& r2 : rights) {
      ++sw.instances;
      std::vector<std::pair<Term, Term>> mine;
      for (const auto& i : critical_pairs(m.sig, r1, r2)) mine.emplace_back(i.lhs, i.rhs);
      if (pair_keys(mine) != pair_keys(brute_critical_pairs(r1, r2)))
        sw.discrepancies.push_back(to_string(r1.lhs) + " -> " + to_string(r1.rhs) + " with " + to_string(r2.lhs) +
                                   " -> " + to_string(r2.rhs));
    }
  return sw;
}

Sweep sweep_match_anywhere() {
  support::World w(kBag);
  const SystemModule& m = w.sys("BAG");
  auto T = [&](const char* s) { return w.term("BAG", s); };

  std::vector<Term> patterns = terms_upto(m.sig, {T("a"), T("x"), T("y")}, {"f", "g", "_+_"}, 1, 3);
  for (const char* p : {"x + y + z", "a + x", "x + x", "f(x) + y", "f(x + y)", "g(x, y + a)", "a + b + x",
                        "f(x) + f(y)", "g(x, x)", "x + f(a)"})
    patterns.push_back(T(p));

  std::vector<Term> elems = {T("a"), T("b"), T("f(a)")};
  std::vector<Term> sums;
  std::vector<std::vector<int>> counts;
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; i + j <= 5; ++j)
      for (int k = 0; i + j + k <= 5; ++k) {
        if (i + j + k < 2) continue;
        std::vector<Term> args;
        for (int n = 0; n < i; ++n) args.push_back(elems[0]);
        for (int n = 0; n < j; ++n) args.push_back(elems[1]);
        for (int n = 0; n < k; ++n) args.push_back(elems[2]);
        sums.push_back(Term::app(m.sig.ops_named("_+_").front(), args));
      }
  std::vector<Term> subjects = sums;
  for (std::size_t i = 0; i < sums.size(); i += 3) {
    subjects.push_back(Term::app(m.sig.ops_named("f").front(), {sums[i]}));
    subjects.push_back(Term::app(m.sig.ops_named("g").front(), {sums[i], elems[i % 3]}));
  }
  for (const char* s : {"a", "f(b)", "g(a, b)", "f(a + b) + a", "g(a + b, a + b)", "f(f(a) + b) + f(a) + a"})
    subjects.push_back(T(s));

  Sweep sw;
  for (const auto& p : patterns)
    for (const auto& s : subjects) {
      ++sw.instances;
      if (key_set(match_anywhere(m.sig, p, s), p) != brute_match_anywhere(p, s))
        sw.discrepancies.push_back(to_string(p) + " in " + to_string(s));
    }
  return sw;
}

}  // namespace oracle
