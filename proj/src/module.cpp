#include "stratkit/module.hpp"

#include "stratkit/errors.hpp"

namespace stratkit {

std::size_t rewrite_fragment_count(const Condition& c) {
  std::size_t n = 0;
  for (const auto& f : c)
    if (std::holds_alternative<RewriteCond>(f)) ++n;
  return n;
}

void SystemModule::import(const SystemModule& other) {
  sig.import(other.sig);
  for (const auto& [n, v] : other.vars) vars.emplace(n, v);
  equations.insert(equations.end(), other.equations.begin(), other.equations.end());
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  prec.merge(other.prec);
  reindex();
}

std::vector<const Rule*> SystemModule::rules_labeled(const std::string& label) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules)
    if (r.label == label) out.push_back(&r);
  return out;
}

bool SystemModule::has_label(const std::string& label) const {
  for (const auto& r : rules)
    if (r.label == label) return true;
  return false;
}

const std::vector<std::size_t>& SystemModule::equations_for(const OpDecl& op) const {
  static const std::vector<std::size_t> none;
  auto it = eq_index_.find(op.name);
  return it == eq_index_.end() ? none : it->second;
}

void SystemModule::reindex() {
  eq_index_.clear();
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const Term& l = equations[i].lhs;
    if (l.is_app()) eq_index_[l.op().name].push_back(i);
  }
}

std::optional<Term> AttachmentRegistry::call(const std::string& name, std::span<const Term> args,
                                             const SystemModule& m) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw ConfigError("unknown native function " + name);
  return it->second(args, m);
}

bool AttachmentRegistry::test(const std::string& name, std::span<const Term> args, const SystemModule& m) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw ConfigError("unknown native predicate " + name);
  return it->second(args, m);
}

}  // namespace stratkit
