#include "stratkit/term.hpp"

#include <algorithm>
#include <cassert>

#include "stratkit/errors.hpp"

namespace stratkit {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t op_hash(const OpDecl& op) {
  std::size_t h = std::hash<std::string>{}(op.name);
  h = mix(h, std::hash<std::string>{}(op.result_sort));
  return mix(h, op.arg_sorts.size());
}

}  // namespace

bool OpDecl::is_mixfix() const {
  if (name.find('_') == std::string::npos) return false;
  return static_cast<std::size_t>(std::count(name.begin(), name.end(), '_')) == arity();
}

bool same_op(const OpDecl& a, const OpDecl& b) {
  if (&a == &b) return true;
  return a.name == b.name && a.result_sort == b.result_sort && a.arg_sorts == b.arg_sorts;
}

Term Term::var(std::string name, std::string sort, bool frozen) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->hash = mix(mix(std::hash<std::string>{}(name), std::hash<std::string>{}(sort)), frozen ? 7 : 3);
  n->name = std::move(name);
  n->sort = std::move(sort);
  n->frozen = frozen;
  n->ground = frozen;
  return Term(std::move(n));
}

Term Term::raw_app(OpRef op, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Application;
  std::size_t h = op_hash(*op);
  std::size_t size = 1;
  bool ground = true;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    ground = ground && a.ground();
  }
  n->hash = h;
  n->size = size;
  n->ground = ground;
  n->op = std::move(op);
  n->args = std::move(args);
  // Canonical iff arguments are and the top needs no work.
  bool canon = std::all_of(n->args.begin(), n->args.end(), [](const Term& a) { return a.canonical(); });
  const OpDecl& o = *n->op;
  if (canon && o.is_ac()) {
    if (n->args.size() < 2) canon = false;
    for (std::size_t i = 0; canon && i < n->args.size(); ++i) {
      const Term& a = n->args[i];
      if (a.is_app() && same_op(a.op(), o)) canon = false;
      if (o.identity && a.is_app() && a.arity() == 0 && same_op(a.op(), *o.identity)) canon = false;
      if (i > 0 && term_compare(n->args[i - 1], a) > 0) canon = false;
    }
  } else if (canon && o.is_comm_only() && n->args.size() == 2) {
    canon = term_compare(n->args[0], n->args[1]) <= 0;
  }
  n->canonical = canon;
  return Term(std::move(n));
}

Term Term::app(OpRef op, std::vector<Term> args) {
  if (!op->is_ac() && args.size() != op->arity())
    throw SortError("operator " + op->name + " expects " + std::to_string(op->arity()) + " arguments");
  const OpDecl& o = *op;
  if (o.is_ac()) {
    std::vector<Term> flat;
    flat.reserve(args.size());
    for (auto& a : args) {
      if (a.is_app() && same_op(a.op(), o)) {
        for (const auto& b : a.args()) flat.push_back(b);
      } else if (o.identity && a.is_app() && a.arity() == 0 && same_op(a.op(), *o.identity)) {
        continue;
      } else {
        flat.push_back(std::move(a));
      }
    }
    if (flat.empty()) {
      if (!o.identity) throw SortError("empty application of " + o.name + " without identity");
      return raw_app(o.identity, {});
    }
    if (flat.size() == 1) return flat.front();
    std::sort(flat.begin(), flat.end(), TermLess{});
    return raw_app(std::move(op), std::move(flat));
  }
  if (o.is_comm_only() && args.size() == 2 && term_compare(args[0], args[1]) > 0) std::swap(args[0], args[1]);
  return raw_app(std::move(op), std::move(args));
}

const std::string& Term::name() const { return is_var() ? node_->name : node_->op->name; }

const std::string& Term::sort() const { return is_var() ? node_->sort : node_->op->result_sort; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash()) return false;
  return term_compare(a, b) == 0;
}

int term_compare(const Term& a, const Term& b) {
  if (a.node_id() == b.node_id()) return 0;
  if (a.kind() != b.kind()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
    if (int c = a.sort().compare(b.sort())) return c < 0 ? -1 : 1;
    if (a.is_frozen() != b.is_frozen()) return a.is_frozen() ? 1 : -1;
    return 0;
  }
  if (int c = a.op().name.compare(b.op().name)) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (int c = term_compare(a.args()[i], b.args()[i])) return c;
  }
  if (same_op(a.op(), b.op())) return 0;
  if (int c = a.op().result_sort.compare(b.op().result_sort)) return c < 0 ? -1 : 1;
  return a.op().arg_sorts < b.op().arg_sorts ? -1 : 1;
}

Order term_order(const Term& a, const Term& b) {
  int c = term_compare(a, b);
  return c < 0 ? Order::LT : (c > 0 ? Order::GT : Order::EQ);
}

Term canonicalize(const Term& t) {
  if (t.is_var() || t.canonical()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(canonicalize(a));
  return Term::app(t.op_ref(), std::move(args));
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (i == 0 || i > cur->arity()) throw Error("invalid position");
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& r) {
  if (depth == p.size()) return r;
  std::size_t i = p[depth];
  if (i == 0 || i > t.arity()) throw Error("invalid position");
  std::vector<Term> args = t.args();
  args[i - 1] = replace_rec(t.args()[i - 1], p, depth + 1, r);
  return Term::app(t.op_ref(), std::move(args));
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(i + 1);
    positions_rec(t.args()[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_rec(t, p, 0, replacement);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  return out;
}

void collect_variables(const Term& t, std::set<VarKey>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(VarKey{t.name(), t.sort()});
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

std::set<VarKey> variables(const Term& t) {
  std::set<VarKey> out;
  collect_variables(t, out);
  return out;
}

bool occurs(const VarKey& v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.name() == v.name && t.sort() == v.sort;
  for (const auto& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

std::vector<Term> ac_elements(const OpDecl& op, const Term& t) {
  if (t.is_app() && same_op(t.op(), op)) return t.args();
  if (op.identity && t.is_app() && t.arity() == 0 && same_op(t.op(), *op.identity)) return {};
  return {t};
}

}  // namespace stratkit
