#include "stratkit/match.hpp"

#include <algorithm>
#include <set>

namespace stratkit {

namespace {

// Continuation receives the extended substitution and any AC remainder;
// returning true stops the enumeration.
using Cont = std::function<bool(const Substitution&, const std::vector<Term>&)>;

const std::vector<Term> kNoRemainder;

class Matcher {
 public:
  explicit Matcher(const Signature& sig) : sig_(sig) {}

  bool match(const Term& p, const Term& s, const Substitution& sub, const Cont& k) const {
    if (p.is_var()) {
      if (p.is_frozen()) return p == s ? k(sub, kNoRemainder) : false;
      if (const Term* bound = sub.lookup(p)) return *bound == s ? k(sub, kNoRemainder) : false;
      if (!sig_.leq(s.sort(), p.sort())) return false;
      Substitution next = sub;
      next.set(VarKey{p.name(), p.sort()}, s);
      return k(next, kNoRemainder);
    }
    if (p.ground()) return p == s ? k(sub, kNoRemainder) : false;
    const OpDecl& op = p.op();
    if (op.is_ac()) {
      if (!sig_.leq(s.sort(), op.arg_sorts[0])) return false;
      return match_ac(p.op_ref(), p.args(), ac_elements(op, s), sub, false, k);
    }
    if (!s.is_app() || !same_op(s.op(), op) || s.arity() != p.arity()) return false;
    if (op.is_comm_only()) {
      if (match_args(p.args(), s.args(), 0, sub, k)) return true;
      if (s.args()[0] == s.args()[1]) return false;
      std::vector<Term> swapped{s.args()[1], s.args()[0]};
      return match_args(p.args(), swapped, 0, sub, k);
    }
    return match_args(p.args(), s.args(), 0, sub, k);
  }

  bool match_args(const std::vector<Term>& ps, const std::vector<Term>& ss, std::size_t i, const Substitution& sub,
                  const Cont& k) const {
    if (i == ps.size()) return k(sub, kNoRemainder);
    return match(ps[i], ss[i], sub, [&](const Substitution& next, const std::vector<Term>&) {
      return match_args(ps, ss, i + 1, next, k);
    });
  }

  /// Multiset matching of pattern arguments `pats` against subject elements
  /// `elems` (sorted). With `ext`, unmatched elements are passed on as the
  /// remainder instead of failing.
  bool match_ac(const OpRef& op, const std::vector<Term>& pats, const std::vector<Term>& elems,
                const Substitution& sub, bool ext, const Cont& k) const {
    AcProblem prob{op, *op, {}, {}, elems, std::vector<bool>(elems.size(), false), ext, k};
    for (const auto& p : pats) {
      if (p.is_free_var())
        prob.vars.push_back(p);
      else
        prob.nonvars.push_back(p);
    }
    // Larger patterns first prunes earlier.
    std::stable_sort(prob.nonvars.begin(), prob.nonvars.end(),
                     [](const Term& a, const Term& b) { return a.size() > b.size(); });
    return ac_nonvars(prob, 0, sub);
  }

 private:
  struct AcProblem {
    const OpRef& op_ref;
    const OpDecl& op;
    std::vector<Term> nonvars;
    std::vector<Term> vars;  // with repetitions
    const std::vector<Term>& elems;
    std::vector<bool> used;
    bool ext;
    const Cont& k;
  };

  bool ac_nonvars(AcProblem& prob, std::size_t idx, const Substitution& sub) const {
    if (idx == prob.nonvars.size()) return ac_vars(prob, sub);
    const Term& p = prob.nonvars[idx];
    for (std::size_t j = 0; j < prob.elems.size(); ++j) {
      if (prob.used[j]) continue;
      // Equal unused neighbour already tried at this level.
      if (j > 0 && !prob.used[j - 1] && prob.elems[j] == prob.elems[j - 1]) continue;
      prob.used[j] = true;
      bool stop = match(p, prob.elems[j], sub, [&](const Substitution& next, const std::vector<Term>&) {
        return ac_nonvars(prob, idx + 1, next);
      });
      prob.used[j] = false;
      if (stop) return true;
    }
    return false;
  }

  struct Slot {
    Term var;
    std::size_t mult;
    bool element_only;
    std::vector<std::size_t> take;  // copies of each distinct element
    std::size_t total = 0;
  };

  bool ac_vars(AcProblem& prob, const Substitution& sub) const {
    std::vector<Term> rest;
    for (std::size_t j = 0; j < prob.elems.size(); ++j)
      if (!prob.used[j]) rest.push_back(prob.elems[j]);

    // Group variables (with multiplicity); subtract already-bound ones.
    std::vector<Slot> slots;
    for (const auto& v : prob.vars) {
      if (const Term* bound = sub.lookup(v)) {
        for (const auto& e : ac_elements(prob.op, *bound)) {
          auto it = std::find(rest.begin(), rest.end(), e);
          if (it == rest.end()) return false;
          rest.erase(it);
        }
        continue;
      }
      auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.var == v; });
      if (it != slots.end()) {
        ++it->mult;
      } else {
        slots.push_back(Slot{v, 1, !sig_.leq(prob.op.result_sort, v.sort()), {}, 0});
      }
    }
    std::vector<Term> distinct;
    std::vector<std::size_t> counts;
    for (const auto& e : rest) {
      if (!distinct.empty() && distinct.back() == e) {
        ++counts.back();
      } else {
        distinct.push_back(e);
        counts.push_back(1);
      }
    }
    for (auto& s : slots) s.take.assign(distinct.size(), 0);
    std::vector<std::size_t> rem(distinct.size(), 0);
    return distribute(prob, sub, slots, distinct, counts, rem, 0, 0, counts.empty() ? 0 : counts[0]);
  }

  bool distribute(AcProblem& prob, const Substitution& sub, std::vector<Slot>& slots,
                  const std::vector<Term>& distinct, const std::vector<std::size_t>& counts,
                  std::vector<std::size_t>& rem, std::size_t elem, std::size_t slot, std::size_t left) const {
    if (elem == distinct.size()) return finish(prob, sub, slots, distinct, rem);
    if (slot == slots.size()) {
      if (left > 0 && !prob.ext) return false;
      rem[elem] = left;
      std::size_t next_left = elem + 1 < counts.size() ? counts[elem + 1] : 0;
      bool stop = distribute(prob, sub, slots, distinct, counts, rem, elem + 1, 0, next_left);
      rem[elem] = 0;
      return stop;
    }
    Slot& s = slots[slot];
    std::size_t max_copies = left / s.mult;
    if (s.element_only) max_copies = std::min<std::size_t>(max_copies, s.total == 0 ? 1 : 0);
    if (s.element_only && max_copies > 0 && !sig_.leq(distinct[elem].sort(), s.var.sort())) max_copies = 0;
    // Try larger shares first so full-multiset assignments come out early.
    for (std::size_t c = max_copies + 1; c-- > 0;) {
      s.take[elem] = c;
      s.total += c;
      bool stop = distribute(prob, sub, slots, distinct, counts, rem, elem, slot + 1, left - c * s.mult);
      s.total -= c;
      s.take[elem] = 0;
      if (stop) return true;
    }
    return false;
  }

  bool finish(AcProblem& prob, const Substitution& sub, const std::vector<Slot>& slots,
              const std::vector<Term>& distinct, const std::vector<std::size_t>& rem) const {
    Substitution next = sub;
    for (const auto& s : slots) {
      std::vector<Term> share;
      for (std::size_t i = 0; i < distinct.size(); ++i)
        for (std::size_t c = 0; c < s.take[i]; ++c) share.push_back(distinct[i]);
      Term value;
      if (share.empty()) {
        if (!prob.op.identity || !sig_.leq(prob.op.identity->result_sort, s.var.sort())) return false;
        value = Term::constant(prob.op.identity);
      } else if (share.size() == 1) {
        value = share.front();
      } else {
        value = Term::app(prob.op_ref, std::move(share));
      }
      if (!sig_.leq(value.sort(), s.var.sort())) return false;
      next.set(VarKey{s.var.name(), s.var.sort()}, value);
    }
    std::vector<Term> remainder;
    for (std::size_t i = 0; i < distinct.size(); ++i)
      for (std::size_t c = 0; c < rem[i]; ++c) remainder.push_back(distinct[i]);
    return prob.k(next, remainder);
  }

  const Signature& sig_;
};

}  // namespace

void visit_matches(const Signature& sig, const Term& pattern, const Term& subject, const Substitution& initial,
                   bool anywhere, const MatchVisitor& visit) {
  Matcher m(sig);
  Position pos;
  std::function<bool(const Term&)> at = [&](const Term& s) -> bool {
    bool stop;
    if (pattern.is_app() && pattern.op().is_ac() && s.is_app() && same_op(s.op(), pattern.op())) {
      stop = m.match_ac(pattern.op_ref(), pattern.args(), s.args(), initial, true,
                        [&](const Substitution& sub, const std::vector<Term>& rem) {
                          return visit(Match{pos, sub, rem});
                        });
    } else {
      stop = m.match(pattern, s, initial, [&](const Substitution& sub, const std::vector<Term>&) {
        return visit(Match{pos, sub, {}});
      });
    }
    if (stop || !anywhere) return stop;
    for (std::size_t i = 0; i < s.arity(); ++i) {
      pos.push_back(i + 1);
      bool child_stop = at(s.args()[i]);
      pos.pop_back();
      if (child_stop) return true;
    }
    return false;
  };
  at(subject);
}

namespace {

std::vector<Match> collect(const Signature& sig, const Term& pattern, const Term& subject, const Substitution& initial,
                           bool anywhere, bool extension) {
  std::vector<Match> out;
  if (!extension) {
    Matcher m(sig);
    m.match(pattern, subject, initial, [&](const Substitution& sub, const std::vector<Term>&) {
      out.push_back(Match{{}, sub, {}});
      return false;
    });
  } else {
    visit_matches(sig, pattern, subject, initial, anywhere, [&](const Match& mt) {
      out.push_back(mt);
      return false;
    });
  }
  // Remove duplicate (position, substitution) pairs, keeping first occurrence.
  std::vector<Match> unique;
  std::set<std::pair<Position, Substitution>> seen;
  for (auto& mt : out) {
    if (seen.emplace(mt.position, mt.subst).second) unique.push_back(std::move(mt));
  }
  return unique;
}

}  // namespace

std::vector<Match> match_top(const Signature& sig, const Term& pattern, const Term& subject,
                             const Substitution& initial, bool extension) {
  return collect(sig, pattern, subject, initial, false, extension);
}

std::vector<Match> match_anywhere(const Signature& sig, const Term& pattern, const Term& subject,
                                  const Substitution& initial) {
  return collect(sig, pattern, subject, initial, true, true);
}

std::vector<Substitution> match_exact(const Signature& sig, const Term& pattern, const Term& subject,
                                      const Substitution& initial) {
  std::vector<Substitution> out;
  for (auto& m : collect(sig, pattern, subject, initial, false, false)) out.push_back(std::move(m.subst));
  return out;
}

bool matches(const Signature& sig, const Term& pattern, const Term& subject, const Substitution& initial) {
  Matcher m(sig);
  return m.match(pattern, subject, initial, [](const Substitution&, const std::vector<Term>&) { return true; });
}

Term plug(const Term& subject, const Match& m, const Term& replacement) {
  Term piece = replacement;
  if (!m.remainder.empty()) {
    const Term& at = subterm_at(subject, m.position);
    std::vector<Term> args = m.remainder;
    args.push_back(replacement);
    piece = Term::app(at.op_ref(), std::move(args));
  }
  return replace_at(subject, m.position, piece);
}

}  // namespace stratkit
