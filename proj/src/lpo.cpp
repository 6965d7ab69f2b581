#include "stratkit/lpo.hpp"

#include "stratkit/errors.hpp"

namespace stratkit {

void Precedence::add(const std::string& greater, const std::string& smaller) {
  if (greater == smaller || this->greater(smaller, greater))
    throw ConfigError("precedence cycle between " + greater + " and " + smaller);
  declared_.emplace_back(greater, smaller);
  std::set<std::string> below = above_[smaller];
  below.insert(smaller);
  for (auto& [f, set] : above_) {
    if (f == greater || set.count(greater)) set.insert(below.begin(), below.end());
  }
  above_[greater].insert(below.begin(), below.end());
}

void Precedence::add_chain(const std::vector<std::string>& chain) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) add(chain[i], chain[i + 1]);
}

bool Precedence::greater(const std::string& f, const std::string& g) const {
  auto it = above_.find(f);
  return it != above_.end() && it->second.count(g) != 0;
}

void Precedence::merge(const Precedence& other) {
  for (const auto& [f, g] : other.declared_) {
    if (!greater(f, g)) add(f, g);
  }
}

namespace {

bool is_variable(const Term& t) { return t.is_var(); }

bool contains_var(const Term& s, const Term& v) {
  if (s.is_var()) return s == v;
  for (const auto& a : s.args())
    if (contains_var(a, v)) return true;
  return false;
}

void reject_ac(const Term& t) {
  if (t.is_app() && t.op().comm)
    throw UnsupportedACOrder("LPO is not defined for AC/C operator " + t.op().name);
}

}  // namespace

bool lpo_geq(const Term& s, const Term& t, const Precedence& prec) { return s == t || lpo_greater(s, t, prec); }

bool lpo_greater(const Term& s, const Term& t, const Precedence& prec) {
  reject_ac(s);
  reject_ac(t);
  if (is_variable(s)) return false;
  if (is_variable(t)) return contains_var(s, t);
  // Some argument of s is >= t.
  for (const auto& si : s.args())
    if (lpo_geq(si, t, prec)) return true;
  auto dominates_all = [&]() {
    for (const auto& tj : t.args())
      if (!lpo_greater(s, tj, prec)) return false;
    return true;
  };
  const std::string& f = s.op().name;
  const std::string& g = t.op().name;
  if (f != g || s.arity() != t.arity()) {
    return f != g && prec.greater(f, g) && dominates_all();
  }
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (s.args()[i] == t.args()[i]) continue;
    return lpo_greater(s.args()[i], t.args()[i], prec) && dominates_all();
  }
  return false;
}

}  // namespace stratkit
