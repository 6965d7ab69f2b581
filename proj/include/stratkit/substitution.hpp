#pragma once

#include <map>
#include <string>

#include "stratkit/signature.hpp"
#include "stratkit/term.hpp"

namespace stratkit {

/// Finite map from variables to terms.
class Substitution {
 public:
  using Map = std::map<VarKey, Term>;

  Substitution() = default;

  /// Binds `v` unless it is already bound to a different term.
  bool bind(const VarKey& v, const Term& value);
  void set(const VarKey& v, const Term& value) { map_[v] = value; }
  const Term* lookup(const VarKey& v) const;
  const Term* lookup(const Term& var) const { return lookup(VarKey{var.name(), var.sort()}); }
  bool contains(const VarKey& v) const { return map_.count(v) != 0; }
  void erase(const VarKey& v) { map_.erase(v); }

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  /// Bindings of `other` added where not already bound here.
  Substitution merged(const Substitution& other) const;

  friend bool operator==(const Substitution& a, const Substitution& b) { return a.map_ == b.map_; }
  friend bool operator<(const Substitution& a, const Substitution& b);

 private:
  Map map_;
};

/// Homomorphic replacement followed by canonicalization. Frozen variables
/// are never replaced.
Term subst_apply(const Substitution& s, const Term& t);
/// As above, but throws SortError if a binding is not sort-preserving.
Term subst_apply(const Signature& sig, const Substitution& s, const Term& t);

/// Renames every free variable `v` to `v` followed by `suffix`.
Term rename_variables(const Term& t, const std::string& suffix);

}  // namespace stratkit
