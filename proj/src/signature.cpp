#include "stratkit/signature.hpp"

#include "stratkit/errors.hpp"

namespace stratkit {

void Signature::add_sort(const std::string& s) { sorts_.insert(s); }

void Signature::add_subsort(const std::string& sub, const std::string& super) {
  if (!has_sort(sub)) throw SortError("unknown sort " + sub);
  if (!has_sort(super)) throw SortError("unknown sort " + super);
  if (sub == super || leq(super, sub)) throw SortError("subsort cycle between " + sub + " and " + super);
  std::set<std::string> above = supers_[super];
  above.insert(super);
  for (auto& [s, sup] : supers_) {
    if (s == sub || sup.count(sub)) sup.insert(above.begin(), above.end());
  }
  supers_[sub].insert(above.begin(), above.end());
}

bool Signature::leq(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto it = supers_.find(a);
  return it != supers_.end() && it->second.count(b) != 0;
}

OpRef Signature::add_op(OpDecl decl) {
  for (const auto& s : decl.arg_sorts)
    if (!has_sort(s)) throw SortError("unknown sort " + s + " in declaration of " + decl.name);
  if (!has_sort(decl.result_sort)) throw SortError("unknown sort " + decl.result_sort + " in declaration of " + decl.name);
  if (decl.assoc && !decl.comm)
    throw SortError("operator " + decl.name + ": assoc is only supported together with comm");
  if (decl.assoc || decl.comm) {
    if (decl.arity() != 2) throw SortError("operator " + decl.name + ": assoc/comm requires a binary operator");
    if (decl.assoc && (decl.arg_sorts[0] != decl.result_sort || decl.arg_sorts[1] != decl.result_sort))
      throw SortError("operator " + decl.name + ": assoc requires argument sorts equal to the result sort");
    if (decl.comm && decl.arg_sorts[0] != decl.arg_sorts[1])
      throw SortError("operator " + decl.name + ": comm requires equal argument sorts");
  }
  if (decl.identity) {
    if (!decl.is_ac()) throw SortError("operator " + decl.name + ": id: requires assoc comm");
    if (decl.identity->arity() != 0) throw SortError("operator " + decl.name + ": identity must be a constant");
  }
  for (const auto& [n, existing] : by_name_) {
    (void)n;
    if (existing->name == decl.name && existing->arg_sorts == decl.arg_sorts)
      throw SortError("operator " + decl.name + " already declared with this profile");
  }
  auto ref = std::make_shared<const OpDecl>(std::move(decl));
  add_op_ref(ref);
  return ref;
}

void Signature::add_op_ref(const OpRef& op) {
  auto range = by_name_.equal_range(op->name);
  for (auto it = range.first; it != range.second; ++it) {
    if (same_op(*it->second, *op)) return;
  }
  ops_.push_back(op);
  by_name_.emplace(op->name, op);
}

void Signature::import(const Signature& other) {
  for (const auto& s : other.sorts_) add_sort(s);
  for (const auto& [s, sup] : other.supers_) supers_[s].insert(sup.begin(), sup.end());
  for (const auto& op : other.ops_) add_op_ref(op);
}

std::vector<OpRef> Signature::ops_named(const std::string& name) const {
  std::vector<OpRef> out;
  auto range = by_name_.equal_range(name);
  for (auto it = range.first; it != range.second; ++it) out.push_back(it->second);
  return out;
}

OpRef Signature::find(const std::string& name, std::size_t arity) const {
  OpRef found;
  auto range = by_name_.equal_range(name);
  for (auto it = range.first; it != range.second; ++it) {
    if (it->second->arity() != arity) continue;
    if (found) return nullptr;
    found = it->second;
  }
  return found;
}

OpRef Signature::resolve(const std::string& name, const std::vector<std::string>& arg_sorts) const {
  std::vector<OpRef> fits;
  auto range = by_name_.equal_range(name);
  for (auto it = range.first; it != range.second; ++it) {
    const OpDecl& op = *it->second;
    bool ok = false;
    if (op.is_ac() && arg_sorts.size() >= 2) {
      ok = true;
      for (const auto& s : arg_sorts) ok = ok && leq(s, op.arg_sorts[0]);
    } else if (op.arity() == arg_sorts.size()) {
      ok = true;
      for (std::size_t i = 0; i < arg_sorts.size(); ++i) ok = ok && leq(arg_sorts[i], op.arg_sorts[i]);
    }
    if (ok) fits.push_back(it->second);
  }
  if (fits.empty()) {
    std::string profile;
    for (const auto& s : arg_sorts) profile += (profile.empty() ? "" : " ") + s;
    throw NameError("no operator " + name + " applicable to (" + profile + ")");
  }
  if (fits.size() > 1) {
    // Prefer the declaration whose argument sorts are pointwise smallest.
    for (const auto& cand : fits) {
      bool least = true;
      for (const auto& other : fits) {
        for (std::size_t i = 0; i < cand->arity(); ++i)
          least = least && leq(cand->arg_sorts[i], other->arg_sorts[i]);
      }
      if (least) return cand;
    }
    throw NameError("ambiguous use of operator " + name);
  }
  return fits.front();
}

void Signature::check_sorted(const Term& t) const {
  if (t.is_var()) {
    if (!has_sort(t.sort())) throw SortError("variable " + t.name() + " has unknown sort " + t.sort());
    return;
  }
  const OpDecl& op = t.op();
  if (op.is_ac()) {
    if (t.arity() < 2) throw SortError("AC application of " + op.name + " with fewer than two arguments");
  } else if (t.arity() != op.arity()) {
    throw SortError("wrong number of arguments for " + op.name);
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term& a = t.args()[i];
    const std::string& want = op.is_ac() ? op.arg_sorts[0] : op.arg_sorts[i];
    if (!leq(a.sort(), want))
      throw SortError("argument " + std::to_string(i + 1) + " of " + op.name + " has sort " + a.sort() + ", expected " + want);
    check_sorted(a);
  }
}

bool Signature::well_sorted(const Term& t) const {
  try {
    check_sorted(t);
    return true;
  } catch (const SortError&) {
    return false;
  }
}

}  // namespace stratkit
