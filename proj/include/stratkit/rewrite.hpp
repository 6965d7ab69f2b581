#pragma once

#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "stratkit/match.hpp"
#include "stratkit/module.hpp"

namespace stratkit {

enum class Where { Top, Anywhere };

struct RewriteLimits {
  /// Equation applications per normalization.
  std::size_t max_eq_steps = 100000;
  /// Depth of the default breadth-first search for uncontrolled `t => p`.
  std::size_t cond_search_depth = 16;
};

/// Solves the k-th rewrite fragment of a condition starting from a term;
/// the strategy evaluator supplies one when conditions are controlled.
using CondSolver = std::function<std::vector<Term>(std::size_t fragment, const Term& start)>;

/// Equational normalization, condition evaluation and single rule steps
/// over one system module.
class Rewriter {
 public:
  Rewriter(const SystemModule& module, const AttachmentRegistry& natives, RewriteLimits limits = {});

  const SystemModule& module() const { return module_; }
  const Signature& sig() const { return module_.sig; }
  const AttachmentRegistry& natives() const { return natives_; }
  const RewriteLimits& limits() const { return limits_; }

  /// Leftmost-innermost exhaustive equation application.
  /// Throws NonTerminationSuspected past the step budget.
  Term normalize(const Term& t) const;

  /// Instantiates and normalizes a data expression; nullopt when a native
  /// function fails.
  std::optional<Term> eval_data(const DataExpr& e, const Substitution& s) const;

  /// All substitutions extending `s` that satisfy `cond`, left to right.
  std::vector<Substitution> eval_condition(const Condition& cond, const Substitution& s,
                                           const CondSolver* solver = nullptr) const;

  /// Matches of the (partially instantiated) rule lhs in `t`.
  std::vector<Match> rule_matches(const Term& t, const Rule& rule, Where where, const Substitution& init) const;
  /// Results of firing `rule` at one match: conditions solved, rhs plugged
  /// back, normalized. Throws ApplicationError for unbound rhs variables.
  std::vector<Term> fire(const Term& t, const Rule& rule, const Match& m, const CondSolver* solver = nullptr) const;

  /// One-step rewrites of `t` with `rule`, deduplicated.
  std::vector<Term> rewrite_one(const Term& t, const Rule& rule, Where where, const Substitution& init = {},
                                const CondSolver* solver = nullptr) const;

  /// Uncontrolled rewrites of `t` in zero or more steps with every rule,
  /// breadth first up to the configured depth.
  std::vector<Term> search(const Term& t) const;

 private:
  Term normalize_rec(const Term& t, std::size_t& steps, std::unordered_set<Term, TermHash>& normal) const;

  const SystemModule& module_;
  const AttachmentRegistry& natives_;
  RewriteLimits limits_;
};

/// Convenience wrappers with a default (empty) attachment registry.
Term normalize_eq(const SystemModule& m, const Term& t, std::size_t max_steps = 100000);

}  // namespace stratkit
