#pragma once

#include <functional>
#include <vector>

#include "stratkit/signature.hpp"
#include "stratkit/substitution.hpp"
#include "stratkit/term.hpp"

namespace stratkit {

/// One way a pattern matches inside a subject. `remainder` holds the AC
/// siblings left over when the pattern matched a proper sub-multiset of the
/// arguments of the AC node at `position` (extension matching).
struct Match {
  Position position;
  Substitution subst;
  std::vector<Term> remainder;

  friend bool operator==(const Match& a, const Match& b) {
    return a.position == b.position && a.subst == b.subst && a.remainder == b.remainder;
  }
};

/// Matching modulo AC (with identities) and C. Free variables of the subject
/// are treated as constants; frozen variables of the pattern likewise.
std::vector<Match> match_top(const Signature& sig, const Term& pattern, const Term& subject,
                             const Substitution& initial = {}, bool extension = true);

/// match_top at every position of the subject, pre-order, duplicates removed.
std::vector<Match> match_anywhere(const Signature& sig, const Term& pattern, const Term& subject,
                                  const Substitution& initial = {});

/// Matches of the whole subject (no extension).
std::vector<Substitution> match_exact(const Signature& sig, const Term& pattern, const Term& subject,
                                      const Substitution& initial = {});

/// Cheaper existence test for match_exact.
bool matches(const Signature& sig, const Term& pattern, const Term& subject, const Substitution& initial = {});

/// Visits matches (top or anywhere) lazily; the visitor returns true to stop.
using MatchVisitor = std::function<bool(const Match&)>;
void visit_matches(const Signature& sig, const Term& pattern, const Term& subject, const Substitution& initial,
                   bool anywhere, const MatchVisitor& visit);

/// Puts `replacement` together with the match remainder back at the match
/// position of `subject`.
Term plug(const Term& subject, const Match& m, const Term& replacement);

}  // namespace stratkit
