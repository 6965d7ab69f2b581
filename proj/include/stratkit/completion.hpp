#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratkit/eval.hpp"
#include "stratkit/lpo.hpp"
#include "stratkit/module.hpp"

namespace stratkit {

/// Oriented completion rule `lhs -> rhs`.
struct CRule {
  Term lhs;
  Term rhs;
  friend bool operator==(const CRule& a, const CRule& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

/// Unordered pair of terms; the smaller side (term_order) is kept first.
struct Identity {
  Term lhs;
  Term rhs;
  Identity() = default;
  Identity(Term a, Term b);
  bool trivial() const { return lhs == rhs; }
  friend bool operator==(const Identity& a, const Identity& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

bool rule_less(const CRule& a, const CRule& b);
bool identity_less(const Identity& a, const Identity& b);

/// Every variable `v` becomes `v` followed by the decimal index k.
CRule rename_apart(const CRule& r, std::size_t k);

std::vector<Identity> critical_pairs(const Signature& sig, const CRule& r1, const CRule& r2);
/// Both overlap directions between `r` and every member of `rules`.
std::vector<Identity> cp_with_set(const Signature& sig, const CRule& r, const std::vector<CRule>& rules);

/// One leftmost-innermost step; rules are tried in term order.
std::optional<Term> reduce(const Signature& sig, const Term& t, const std::vector<CRule>& rules);
/// One step on the left-hand side of `r`, using only rules whose left-hand
/// side has no subterm that is an instance of `r.lhs`.
std::optional<Term> reduce_encompass(const Signature& sig, const CRule& r, const std::vector<CRule>& rules);
/// Smallest rule by node count of both sides, then term order.
std::optional<CRule> least_rule(const std::vector<CRule>& rules);
/// Exhaustive `reduce`. Throws NonTerminationSuspected past the budget.
Term normal_form(const Signature& sig, const Term& t, const std::vector<CRule>& rules, std::size_t max_steps = 100000);

struct ConvergenceReport {
  bool terminating = true;
  bool joinable = true;
  bool equivalent = true;
  bool interreduced = true;
  std::vector<std::string> problems;
  bool ok() const { return terminating && joinable && equivalent && interreduced; }
};

/// Termination by LPO, joinability of all critical pairs, joinability of
/// the input identities, and interreduction.
ConvergenceReport validate_convergent(const Signature& sig, const std::vector<CRule>& rules,
                                      const std::vector<Identity>& e0, const Precedence& prec);

/// Same rules after renaming variables in order of first occurrence.
bool same_rules_modulo_renaming(const std::vector<CRule>& a, const std::vector<CRule>& b);
CRule canonical_variables(const CRule& r);

enum class Variant { N, S, ANS };
std::string variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& s);

/// Registers `CP`, `reduce`, `reduce>`, `least-rule` and the `>` test.
void register_completion_attachments(AttachmentRegistry& natives);

/// Source text of the completion theory for the equations and precedence
/// of an object module: a system module `name` and a strategy module
/// `name-STRAT` whose entry strategy is `N-COMP`, `S-COMP` or `ANS-COMP`.
std::string completion_theory_text(const SystemModule& object, Variant v, const std::string& name);

/// Initial system term `< mtRlS, ..., eqs >` for a variant.
std::string initial_system_text(Variant v);

struct CompletionLimits {
  std::size_t max_inferences = 10000;
  std::size_t max_states = 1000;
  std::size_t max_depth = 10000;
  std::size_t max_eq_steps = 100000;
};

struct CompletionResult {
  enum class Status { Success, Failure, Budget };
  Status status = Status::Failure;
  /// Completed rules over the object signature (Success only).
  std::vector<CRule> rules;
  /// Final system term, or the last one reached before failing.
  std::optional<Term> system;
  std::string message;
  std::size_t inferences = 0;
};

/// Object-level view of completion results: signature of the object
/// module plus its equations as identities.
std::vector<Identity> object_identities(const SystemModule& object);

CompletionResult run_completion(const SystemModule& object, Variant v, const CompletionLimits& limits = {});

/// Runs `fn` on a thread with a large stack; exceptions are rethrown.
void run_with_large_stack(const std::function<void()>& fn, std::size_t bytes = std::size_t{1} << 29);

}  // namespace stratkit
