#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stratkit/module.hpp"

namespace stratkit {

struct Strategy;
using StratPtr = std::shared_ptr<const Strategy>;

/// Strategy expression. One node kind per combinator; the derived ones
/// (orelse, not, try, test) are kept so they print back as written.
struct Strategy {
  enum class Kind {
    Idle,
    Fail,
    RuleApp,
    Test,
    Concat,
    Union,
    Plus,
    Star,
    Bang,
    IfThenElse,
    OrElse,
    Not,
    Try,
    TestOf,
    MatchRew,
    Call,
  };

  Kind kind = Kind::Idle;
  /// Children: operands, condition strategies of a RuleApp, or the `using`
  /// strategies of a MatchRew (one per subpattern).
  std::vector<StratPtr> subs;
  /// Rule label or strategy name.
  std::string name;
  /// `label[x <- t ; ...]`
  std::vector<std::pair<std::string, Term>> bindings;
  /// RuleApp under `top(...)`, `match` rather than `amatch`, `matchrew`
  /// rather than `amatchrew`.
  bool top = false;
  Term pattern;
  Condition cond;
  std::vector<Term> subpatterns;
  std::vector<DataExpr> args;
};

namespace strat {
StratPtr idle();
StratPtr fail();
StratPtr rule(std::string label, std::vector<std::pair<std::string, Term>> bindings = {},
              std::vector<StratPtr> cond_strats = {}, bool top = false);
StratPtr test(bool top, Term pattern, Condition cond = {});
StratPtr concat(StratPtr a, StratPtr b);
StratPtr alt(StratPtr a, StratPtr b);
StratPtr plus(StratPtr a);
StratPtr star(StratPtr a);
StratPtr bang(StratPtr a);
StratPtr ite(StratPtr c, StratPtr t, StratPtr e);
StratPtr orelse(StratPtr a, StratPtr b);
StratPtr not_(StratPtr a);
StratPtr try_(StratPtr a);
StratPtr test_of(StratPtr a);
StratPtr matchrew(bool top, Term pattern, Condition cond, std::vector<Term> subpatterns,
                  std::vector<StratPtr> using_);
StratPtr call(std::string name, std::vector<DataExpr> args = {});
}  // namespace strat

struct StratDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string subject_sort;
};

/// `sd name(p1, ..., pn) := body .` or the conditional `csd` form.
struct StratDef {
  std::string name;
  std::vector<Term> params;
  StratPtr body;
  Condition cond;
};

/// Strategy definitions over one system module. Included strategy modules
/// are flattened in at load time.
class StrategyModule {
 public:
  std::string name;
  std::string system_module;
  std::vector<std::string> includes;
  std::map<std::string, StratDecl> decls;
  std::vector<StratDef> defs;
  /// Variables declared in the strategy module itself.
  std::map<std::string, Term> vars;
  std::string source;

  bool declares(const std::string& strategy) const;
  std::vector<const StratDef*> defs_for(const std::string& strategy) const;
  void include(const StrategyModule& other);
};

using StrategyModulePtr = std::shared_ptr<const StrategyModule>;

}  // namespace stratkit
