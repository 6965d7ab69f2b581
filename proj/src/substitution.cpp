#include "stratkit/substitution.hpp"

#include "stratkit/errors.hpp"

namespace stratkit {

bool Substitution::bind(const VarKey& v, const Term& value) {
  auto [it, inserted] = map_.emplace(v, value);
  return inserted || it->second == value;
}

const Term* Substitution::lookup(const VarKey& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

Substitution Substitution::merged(const Substitution& other) const {
  Substitution out = *this;
  for (const auto& [k, v] : other.map_) out.map_.emplace(k, v);
  return out;
}

bool operator<(const Substitution& a, const Substitution& b) {
  auto ia = a.map_.begin();
  auto ib = b.map_.begin();
  for (; ia != a.map_.end() && ib != b.map_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (int c = term_compare(ia->second, ib->second)) return c < 0;
  }
  return ia == a.map_.end() && ib != b.map_.end();
}

Term subst_apply(const Substitution& s, const Term& t) {
  if (t.ground() || s.empty()) return t;
  if (t.is_var()) {
    const Term* v = s.lookup(t);
    return v ? *v : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(subst_apply(s, a));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::app(t.op_ref(), std::move(args));
}

Term subst_apply(const Signature& sig, const Substitution& s, const Term& t) {
  for (const auto& [k, v] : s) {
    if (!sig.leq(v.sort(), k.sort))
      throw SortError("binding " + k.name + " : " + k.sort + " to a term of sort " + v.sort());
  }
  return subst_apply(s, t);
}

Term rename_variables(const Term& t, const std::string& suffix) {
  if (t.ground()) return t;
  if (t.is_var()) return Term::var(t.name() + suffix, t.sort());
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(rename_variables(a, suffix));
  return Term::app(t.op_ref(), std::move(args));
}

}  // namespace stratkit
