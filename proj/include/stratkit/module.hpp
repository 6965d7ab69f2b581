#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stratkit/lpo.hpp"
#include "stratkit/signature.hpp"
#include "stratkit/substitution.hpp"
#include "stratkit/term.hpp"

namespace stratkit {

/// Call of a native function inside a condition or strategy argument,
/// e.g. `reduce(s, R T)`.
struct NativeCall {
  std::string name;
  std::vector<Term> args;
};

/// Either an ordinary data term or a native call producing one.
using DataExpr = std::variant<Term, NativeCall>;

/// `t = t'`: equal normal forms.
struct EqualityCond {
  Term lhs;
  Term rhs;
};
/// `t =/= t'`.
struct DisequalityCond {
  Term lhs;
  Term rhs;
};
/// `p := t`: match p against the normal form of t, binding new variables.
struct MatchAssignCond {
  Term pattern;
  DataExpr source;
};
/// Native predicate such as `s > t`.
struct NativeTestCond {
  std::string name;
  std::vector<Term> args;
};
/// `t => p`: some rewrite of t matches p.
struct RewriteCond {
  Term lhs;
  Term pattern;
};

using CondFragment = std::variant<EqualityCond, DisequalityCond, MatchAssignCond, NativeTestCond, RewriteCond>;
using Condition = std::vector<CondFragment>;

std::size_t rewrite_fragment_count(const Condition& c);

struct Equation {
  Term lhs;
  Term rhs;
  Condition cond;
};

struct Rule {
  std::string label;
  Term lhs;
  Term rhs;
  Condition cond;
};

/// A system module: signature, variables, equations, labelled rules and an
/// optional precedence for path orders.
class SystemModule {
 public:
  std::string name;
  Signature sig;
  /// Declared variables by name (frozen ones included).
  std::map<std::string, Term> vars;
  std::vector<Equation> equations;
  std::vector<Rule> rules;
  Precedence prec;
  std::vector<std::string> imports;
  /// Source text, when the module was generated or loaded from text.
  std::string source;

  void import(const SystemModule& other);
  std::vector<const Rule*> rules_labeled(const std::string& label) const;
  bool has_label(const std::string& label) const;
  /// Equations whose left-hand side is headed by `op`.
  const std::vector<std::size_t>& equations_for(const OpDecl& op) const;
  bool has_equations() const { return !equations.empty(); }
  /// Rebuilds indexes; call after mutating equations or rules.
  void reindex();

 private:
  std::map<std::string, std::vector<std::size_t>> eq_index_;
};

using SystemModulePtr = std::shared_ptr<const SystemModule>;

/// Native functions and predicates callable from conditions and strategy
/// arguments. A function returning nullopt makes the enclosing condition fail.
class AttachmentRegistry {
 public:
  using Function = std::function<std::optional<Term>(std::span<const Term>, const SystemModule&)>;
  using Predicate = std::function<bool(std::span<const Term>, const SystemModule&)>;

  void add_function(const std::string& name, Function f) { functions_[name] = std::move(f); }
  void add_predicate(const std::string& name, Predicate p) { predicates_[name] = std::move(p); }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool has_predicate(const std::string& name) const { return predicates_.count(name) != 0; }
  /// Throws ConfigError for unknown names.
  std::optional<Term> call(const std::string& name, std::span<const Term> args, const SystemModule& m) const;
  bool test(const std::string& name, std::span<const Term> args, const SystemModule& m) const;

 private:
  std::map<std::string, Function> functions_;
  std::map<std::string, Predicate> predicates_;
};

}  // namespace stratkit
