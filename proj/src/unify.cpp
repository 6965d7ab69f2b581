#include "stratkit/unify.hpp"

#include <utility>
#include <vector>

#include "stratkit/errors.hpp"

namespace stratkit {

namespace {

// Applies the single binding v -> t to every image of `s`.
void compose_binding(Substitution& s, const VarKey& v, const Term& t) {
  Substitution one;
  one.set(v, t);
  Substitution updated;
  for (const auto& [k, img] : s) updated.set(k, subst_apply(one, img));
  updated.set(v, t);
  s = std::move(updated);
}

}  // namespace

std::optional<Substitution> unify(const Signature& sig, const Term& a, const Term& b) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [l, r] = std::move(work.back());
    work.pop_back();
    l = subst_apply(sigma, l);
    r = subst_apply(sigma, r);
    if (l == r) continue;
    if (!l.is_free_var() && r.is_free_var()) std::swap(l, r);
    if (l.is_free_var()) {
      VarKey v{l.name(), l.sort()};
      if (r.is_free_var() && !sig.leq(r.sort(), l.sort())) {
        if (!sig.leq(l.sort(), r.sort())) return std::nullopt;
        std::swap(l, r);
        v = VarKey{l.name(), l.sort()};
      }
      if (!sig.leq(r.sort(), v.sort)) return std::nullopt;
      if (occurs(v, r)) return std::nullopt;
      compose_binding(sigma, v, r);
      continue;
    }
    if (l.is_var() || r.is_var()) return std::nullopt;  // frozen vs anything else
    if (l.op().is_ac() || l.op().comm || r.op().is_ac() || r.op().comm)
      throw UnsupportedACUnification("unification under AC/C operator " +
                                     (l.op().comm ? l.op().name : r.op().name) + " is not supported");
    if (!same_op(l.op(), r.op()) || l.arity() != r.arity()) return std::nullopt;
    for (std::size_t i = l.arity(); i-- > 0;) work.emplace_back(l.args()[i], r.args()[i]);
  }
  return sigma;
}

}  // namespace stratkit
