#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>

#include "stratkit/rewrite.hpp"
#include "stratkit/strategy.hpp"

namespace stratkit {

using TermSet = std::set<Term, TermLess>;

struct EvalLimits {
  /// Distinct states per fixpoint (`+`, `*`, `!`).
  std::size_t max_states = 100000;
  /// Nesting of strategy calls.
  std::size_t max_depth = 10000;
  /// Rule applications per evaluator; 0 means unlimited.
  std::size_t max_inferences = 0;
};

/// Pull-based result stream of one strategy application. Never yields the
/// same term twice.
class Stream {
 public:
  virtual ~Stream() = default;
  virtual std::optional<Term> next() = 0;
};
using StreamPtr = std::unique_ptr<Stream>;

/// Evaluates strategy expressions with the set semantics `σ @ t`. Results
/// are produced lazily, so asking only for the first solution explores as
/// little of the search space as possible.
class Evaluator {
 public:
  Evaluator(const Rewriter& rewriter, const StrategyModule& strategies, EvalLimits limits = {});

  TermSet eval(const StratPtr& s, const Term& t, const Substitution& env = {}) const;
  /// σ @ U, the union over the inputs.
  TermSet eval(const StratPtr& s, const TermSet& inputs) const;
  std::optional<Term> first(const StratPtr& s, const Term& t, const Substitution& env = {}) const;
  StreamPtr open(const StratPtr& s, const Term& t, const Substitution& env, std::size_t depth = 0) const;

  const Rewriter& rewriter() const { return rw_; }
  const StrategyModule& strategies() const { return strategies_; }
  const EvalLimits& limits() const { return limits_; }
  std::size_t inferences() const { return inferences_; }
  /// Most recent term produced by a rule application.
  const std::optional<Term>& last_rewrite() const { return last_rewrite_; }

  /// Bookkeeping used by the streams.
  void note_rewrite(const Term& t) const;
  void check_states(std::size_t n) const;

 private:
  const Rewriter& rw_;
  const StrategyModule& strategies_;
  EvalLimits limits_;
  mutable std::size_t inferences_ = 0;
  mutable std::optional<Term> last_rewrite_;
};

}  // namespace stratkit
