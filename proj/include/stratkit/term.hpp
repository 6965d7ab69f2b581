#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace stratkit {

/// Operator declaration. Names containing `_` are mixfix templates with one
/// underscore per argument (`_->_`, `<_,_,_>`, `__`).
struct OpDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  bool assoc = false;
  bool comm = false;
  /// Identity element (a constant) for AC operators, if declared with `id:`.
  std::shared_ptr<const OpDecl> identity;
  /// Mixfix binding strength; lower binds tighter. Unused for prefix syntax.
  int prec = 41;

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_ac() const { return assoc && comm; }
  bool is_comm_only() const { return comm && !assoc; }
  bool is_mixfix() const;
  bool is_juxtaposition() const { return name == "__"; }
};

using OpRef = std::shared_ptr<const OpDecl>;

/// Same name and profile. Modules importing each other share declarations,
/// but regenerated modules may carry structurally identical copies.
bool same_op(const OpDecl& a, const OpDecl& b);

/// Immutable, shared, many-sorted first-order term. Applications built
/// through `Term::app` are kept in AC-canonical form.
class Term {
 public:
  enum class Kind { Variable, Application };

  Term() = default;

  /// A frozen variable behaves as a constant for matching and substitution;
  /// completion uses them to carry object-level variables as data.
  static Term var(std::string name, std::string sort, bool frozen = false);
  static Term constant(OpRef op) { return app(std::move(op), {}); }
  /// Builds and canonicalizes the top node (arguments assumed canonical).
  static Term app(OpRef op, std::vector<Term> args);
  /// Builds without any canonicalization; only for tests and canonicalize().
  static Term raw_app(OpRef op, std::vector<Term> args);

  bool valid() const { return static_cast<bool>(node_); }
  /// Node identity, for cheap sharing checks.
  const void* node_id() const { return node_.get(); }
  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Variable; }
  bool is_free_var() const { return is_var() && !node_->frozen; }
  bool is_frozen() const { return node_->frozen; }
  bool is_app() const { return node_->kind == Kind::Application; }

  /// Variable name, or operator name for applications.
  const std::string& name() const;
  const std::string& sort() const;
  const OpDecl& op() const { return *node_->op; }
  const OpRef& op_ref() const { return node_->op; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }

  std::size_t hash() const { return node_->hash; }
  /// Node count.
  std::size_t size() const { return node_->size; }
  /// No free (non-frozen) variables.
  bool ground() const { return node_->ground; }
  bool canonical() const { return node_->canonical; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;  // variables only
    std::string sort;  // variables only
    bool frozen = false;
    OpRef op;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool ground = true;
    bool canonical = true;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Order { LT, EQ, GT };

/// Total order: variables before applications; variables by (name, sort,
/// frozen); applications by operator name, arity, then arguments left to
/// right, with operator profile as the final tie-break for overloads.
Order term_order(const Term& a, const Term& b);
int term_compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_compare(a, b) < 0; }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Flattens and sorts AC arguments, drops identity elements, sorts the two
/// arguments of commutative operators. Idempotent.
Term canonicalize(const Term& t);

/// 1-based child indices; empty = root.
using Position = std::vector<std::size_t>;

const Term& subterm_at(const Term& t, const Position& p);
/// Replaces the subterm at `p` and re-canonicalizes along the path.
Term replace_at(const Term& t, const Position& p, const Term& replacement);
/// All positions in pre-order.
std::vector<Position> positions(const Term& t);

struct VarKey {
  std::string name;
  std::string sort;
  auto operator<=>(const VarKey&) const = default;
};

/// Free variables of a term.
std::set<VarKey> variables(const Term& t);
void collect_variables(const Term& t, std::set<VarKey>& out);
bool occurs(const VarKey& v, const Term& t);

/// Elements of `t` viewed as a multiset under AC operator `op`.
std::vector<Term> ac_elements(const OpDecl& op, const Term& t);

}  // namespace stratkit

template <>
struct std::hash<stratkit::Term> {
  std::size_t operator()(const stratkit::Term& t) const { return t.hash(); }
};
