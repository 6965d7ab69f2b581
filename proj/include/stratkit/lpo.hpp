#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "stratkit/term.hpp"

namespace stratkit {

/// Strict partial order on operator names, kept transitively closed.
class Precedence {
 public:
  /// Adds `f > g > h ...`. Throws ConfigError if this introduces a cycle.
  void add_chain(const std::vector<std::string>& chain);
  void add(const std::string& greater, const std::string& smaller);
  bool greater(const std::string& f, const std::string& g) const;
  bool empty() const { return above_.empty(); }
  /// Declared pairs, for printing (`f > g` edges as given).
  const std::vector<std::pair<std::string, std::string>>& declared() const { return declared_; }
  void merge(const Precedence& other);

 private:
  std::map<std::string, std::set<std::string>> above_;  // f -> everything below f
  std::vector<std::pair<std::string, std::string>> declared_;
};

/// Lexicographic path order with left-to-right status for every symbol.
/// Free and frozen variables both count as variables. Throws
/// UnsupportedACOrder on AC or commutative symbols.
bool lpo_greater(const Term& s, const Term& t, const Precedence& prec);
/// s >= t, i.e. s == t or s > t.
bool lpo_geq(const Term& s, const Term& t, const Precedence& prec);

}  // namespace stratkit
