#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stratkit/term.hpp"

namespace stratkit {

/// Sorts, a subsort relation and operator declarations.
class Signature {
 public:
  void add_sort(const std::string& s);
  bool has_sort(const std::string& s) const { return sorts_.count(s) != 0; }
  const std::set<std::string>& sorts() const { return sorts_; }

  /// Declares `sub < super` and closes transitively. Cycles are rejected.
  void add_subsort(const std::string& sub, const std::string& super);
  /// Reflexive-transitive subsort test.
  bool leq(const std::string& a, const std::string& b) const;

  /// Registers an operator after checking the attribute invariants: `assoc`
  /// requires `comm`, and both require a binary operator whose argument
  /// sorts equal its result sort.
  OpRef add_op(OpDecl decl);
  /// Re-registers an existing declaration (shared, not copied).
  void add_op_ref(const OpRef& op);
  void import(const Signature& other);

  const std::vector<OpRef>& ops() const { return ops_; }
  std::vector<OpRef> ops_named(const std::string& name) const;
  /// Operator with the given name whose argument sorts accept `arg_sorts`.
  /// Throws NameError when none or when the choice is ambiguous.
  OpRef resolve(const std::string& name, const std::vector<std::string>& arg_sorts) const;
  /// Unique constant or operator by name and arity; nullptr if none.
  OpRef find(const std::string& name, std::size_t arity) const;

  /// Throws SortError when `t` is not well sorted.
  void check_sorted(const Term& t) const;
  bool well_sorted(const Term& t) const;

 private:
  std::set<std::string> sorts_;
  std::map<std::string, std::set<std::string>> supers_;  // strict supersorts
  std::vector<OpRef> ops_;
  std::multimap<std::string, OpRef> by_name_;
};

}  // namespace stratkit
