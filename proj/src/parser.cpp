#include "stratkit/parser.hpp"

#include <climits>
#include <optional>
#include <set>

#include "stratkit/errors.hpp"
#include "stratkit/printer.hpp"

namespace stratkit {

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  bool space = true;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto delim = [](char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      advance(1);
      continue;
    }
    if (src.substr(i, 3) == "---" || src.substr(i, 3) == "***") {
      while (i < src.size() && src[i] != '\n') advance(1);
      space = true;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    t.space_before = space;
    if (delim(c)) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      std::size_t j = i;
      while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) && !delim(src[j])) ++j;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    }
    out.push_back(std::move(t));
    space = false;
  }
  return out;
}

TokenCursor::TokenCursor(std::vector<Token> tokens)
    : tokens_(std::make_shared<const std::vector<Token>>(std::move(tokens))), pos_(0), end_(tokens_->size()) {}

TokenCursor::TokenCursor(std::shared_ptr<const std::vector<Token>> tokens, std::size_t begin, std::size_t end)
    : tokens_(std::move(tokens)), pos_(begin), end_(end) {}

const Token& TokenCursor::peek(std::size_t k) const {
  static const Token eof{"<end of input>", 0, 0, true};
  if (pos_ + k >= end_) return eof;
  return (*tokens_)[pos_ + k];
}

bool TokenCursor::peek_is(const std::string& text, std::size_t k) const {
  return pos_ + k < end_ && (*tokens_)[pos_ + k].text == text;
}

Token TokenCursor::next() {
  if (at_end()) fail("unexpected end of input");
  return (*tokens_)[pos_++];
}

bool TokenCursor::accept(const std::string& text) {
  if (!peek_is(text)) return false;
  ++pos_;
  return true;
}

Token TokenCursor::expect(const std::string& text) {
  if (!peek_is(text)) fail("expected '" + text + "' but found '" + peek().text + "'");
  return next();
}

TokenCursor TokenCursor::statement() {
  std::size_t begin = pos_;
  while (pos_ < end_ && (*tokens_)[pos_].text != ".") ++pos_;
  if (pos_ >= end_) {
    pos_ = begin;
    fail("statement is missing its terminating '.'");
  }
  TokenCursor st(tokens_, begin, pos_);
  ++pos_;
  return st;
}

std::string TokenCursor::text_since(std::size_t begin) const {
  std::string out;
  std::size_t line = 0;
  for (std::size_t i = begin; i < pos_ && i < tokens_->size(); ++i) {
    const Token& t = (*tokens_)[i];
    if (i > begin && t.line > line) {
      out += '\n';
      out.append(t.col > 0 ? t.col - 1 : 0, ' ');
    } else if (i > begin && t.space_before) {
      out += ' ';
    }
    out += t.text;
    line = t.line;
  }
  return out;
}

void TokenCursor::fail(const std::string& msg) const {
  std::size_t line = 0, col = 0;
  if (tokens_ && !tokens_->empty()) {
    const Token& t = pos_ < tokens_->size() ? (*tokens_)[pos_] : tokens_->back();
    line = t.line;
    col = t.col;
  }
  throw ParseError(msg, line, col);
}

const SystemModule* ModuleLibrary::system(const std::string& name) const {
  auto it = systems.find(name);
  return it == systems.end() ? nullptr : it->second.get();
}

const StrategyModule* ModuleLibrary::strategy(const std::string& name) const {
  auto it = strategies.find(name);
  return it == strategies.end() ? nullptr : it->second.get();
}

namespace {

constexpr int kLoosest = INT_MAX;

bool is_strategy_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"s.t.", "by", "using", "if", "=>", "=", ":=", "=/=", "/\\", "|", ";",
                                           "?", ":", "orelse", "<-", ".", "endm", "endsm"};
  return kw.count(s) != 0;
}

class Parser {
 public:
  Parser(TokenCursor& c, const Signature& sig, VarScope vars, const AttachmentRegistry* natives = nullptr)
      : c_(c), sig_(sig), vars_(std::move(vars)), natives_(natives) {
    for (const auto& op : sig_.ops()) {
      if (!op->is_mixfix()) continue;
      auto pieces = mixfix_pieces(op->name);
      if (!pieces.front().empty() && !pieces.back().empty()) closed_heads_.insert(pieces.front());
      if (op->is_juxtaposition() && (!juxt_prec_ || op->prec < *juxt_prec_)) juxt_prec_ = op->prec;
    }
  }

  Term term(int max_prec = kLoosest) {
    Term lhs = primary();
    while (!c_.at_end()) {
      const Token& t = c_.peek();
      if (auto p = infix_prec(t.text); p && *p <= max_prec && starts_term(1)) {
        Token op = c_.next();
        Term rhs = term(*p - 1);
        lhs = build(op, "_" + op.text + "_", {lhs, rhs});
        continue;
      }
      if (juxt_prec_ && *juxt_prec_ <= max_prec && starts_term(0)) {
        Token at = c_.peek();
        Term rhs = term(*juxt_prec_ - 1);
        lhs = build(at, "__", {lhs, rhs});
        continue;
      }
      break;
    }
    return lhs;
  }

  bool starts_term(std::size_t k) const {
    if (c_.remaining() <= k) return false;
    const Token& t = c_.peek(k);
    const std::string& s = t.text;
    if (s == "(") return true;
    if (is_strategy_keyword(s)) return false;
    if (closed_heads_.count(s)) return true;
    if (on_the_fly(s)) return true;
    if (lookup_var(s)) return true;
    for (const auto& op : sig_.ops_named(s))
      if (!op->is_mixfix()) return true;
    return false;
  }

  DataExpr data() {
    const Token& t = c_.peek();
    if (natives_ && natives_->has_function(t.text) && c_.peek_is("(", 1)) {
      NativeCall call{c_.next().text, {}};
      c_.expect("(");
      if (!c_.peek_is(")")) {
        do {
          call.args.push_back(term());
        } while (c_.accept(","));
      }
      c_.expect(")");
      return call;
    }
    return term();
  }

  Condition condition() {
    Condition out;
    do {
      out.push_back(fragment());
    } while (c_.accept("/\\"));
    return out;
  }

  std::optional<Term> lookup_var(const std::string& name) const {
    for (const auto* scope : vars_) {
      auto it = scope->find(name);
      if (it != scope->end()) return it->second;
    }
    return std::nullopt;
  }

  TokenCursor& cursor() { return c_; }

 private:
  std::optional<int> infix_prec(const std::string& tok) const {
    std::optional<int> best;
    for (const auto& op : sig_.ops_named("_" + tok + "_"))
      if (op->arity() == 2 && (!best || op->prec < *best)) best = op->prec;
    return best;
  }

  std::optional<Term> on_the_fly(const std::string& s) const {
    auto colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= s.size()) return std::nullopt;
    std::string sort = s.substr(colon + 1);
    if (!sig_.has_sort(sort)) return std::nullopt;
    return Term::var(s.substr(0, colon), sort);
  }

  Term build(const Token& at, const std::string& name, std::vector<Term> args) {
    std::vector<std::string> sorts;
    for (const auto& a : args) sorts.push_back(a.sort());
    try {
      return Term::app(sig_.resolve(name, sorts), std::move(args));
    } catch (const Error& e) {
      throw ParseError(e.what(), at.line, at.col);
    }
  }

  Term primary() {
    if (c_.at_end()) c_.fail("expected a term");
    Token t = c_.peek();
    if (t.text == "(") {
      c_.next();
      Term x = term();
      c_.expect(")");
      return x;
    }
    if (closed_heads_.count(t.text)) return closed(c_.next());
    if (is_strategy_keyword(t.text)) c_.fail("expected a term but found '" + t.text + "'");
    c_.next();
    if (c_.peek_is("(") && !c_.peek().space_before) {
      bool prefix = false;
      for (const auto& op : sig_.ops_named(t.text)) prefix = prefix || (!op->is_mixfix() && op->arity() > 0);
      if (prefix) {
        c_.next();
        std::vector<Term> args;
        do {
          args.push_back(term());
        } while (c_.accept(","));
        c_.expect(")");
        return build(t, t.text, std::move(args));
      }
    }
    if (auto v = on_the_fly(t.text)) return *v;
    if (auto v = lookup_var(t.text)) return *v;
    for (const auto& op : sig_.ops_named(t.text))
      if (op->arity() == 0) return build(t, t.text, {});
    throw ParseError("unknown operator or variable '" + t.text + "'", t.line, t.col);
  }

  Term closed(const Token& head) {
    std::string name = head.text;
    std::vector<Term> args;
    while (true) {
      args.push_back(term());
      Token sep = c_.next();
      name += "_" + sep.text;
      if (!sig_.ops_named(name).empty()) return build(head, name, std::move(args));
      bool prefix = false;
      for (const auto& op : sig_.ops()) prefix = prefix || op->name.rfind(name + "_", 0) == 0;
      if (!prefix) throw ParseError("unexpected '" + sep.text + "' in " + head.text + "..." + " term", sep.line, sep.col);
    }
  }

  CondFragment fragment() {
    Term lhs = term();
    Token op = c_.next();
    if (op.text == "=") return EqualityCond{lhs, term()};
    if (op.text == "=/=") return DisequalityCond{lhs, term()};
    if (op.text == ":=") return MatchAssignCond{lhs, data()};
    if (op.text == "=>") return RewriteCond{lhs, term()};
    if (natives_ && natives_->has_predicate(op.text)) return NativeTestCond{op.text, {lhs, term()}};
    throw ParseError("expected a condition operator but found '" + op.text + "'", op.line, op.col);
  }

  TokenCursor& c_;
  const Signature& sig_;
  VarScope vars_;
  const AttachmentRegistry* natives_;
  std::set<std::string> closed_heads_;
  std::optional<int> juxt_prec_;
};

void expect_end(const TokenCursor& c) {
  if (!c.at_end()) c.fail("unexpected '" + c.peek().text + "'");
}

std::string join_tokens(TokenCursor& c, const std::string& stop) {
  std::string s;
  while (!c.at_end() && !c.peek_is(stop)) s += c.next().text;
  return s;
}

void parse_op_decl(TokenCursor& st, SystemModule& m, bool many) {
  std::vector<std::string> names;
  if (many) {
    while (!st.at_end() && !st.peek_is(":")) names.push_back(st.next().text);
  } else {
    names.push_back(join_tokens(st, ":"));
  }
  if (names.empty() || names.front().empty()) st.fail("operator name expected");
  st.expect(":");
  std::vector<std::string> args;
  while (!st.at_end() && !st.peek_is("->")) args.push_back(st.next().text);
  st.expect("->");
  std::string result = st.next().text;
  OpDecl proto;
  proto.arg_sorts = args;
  proto.result_sort = result;
  std::string identity;
  Token id_at;
  if (st.accept("[")) {
    while (!st.accept("]")) {
      Token a = st.next();
      if (a.text == "assoc") {
        proto.assoc = true;
      } else if (a.text == "comm") {
        proto.comm = true;
      } else if (a.text == "ctor") {
      } else if (a.text == "id:") {
        id_at = st.peek();
        identity = st.next().text;
      } else if (a.text == "prec") {
        Token n = st.next();
        try {
          proto.prec = std::stoi(n.text);
        } catch (const std::exception&) {
          throw ParseError("precedence must be a number", n.line, n.col);
        }
      } else {
        throw ParseError("unknown operator attribute '" + a.text + "'", a.line, a.col);
      }
    }
  }
  expect_end(st);
  for (const auto& s : args)
    if (!m.sig.has_sort(s)) st.fail("unknown sort " + s);
  if (!m.sig.has_sort(result)) st.fail("unknown sort " + result);
  if (!identity.empty()) {
    proto.identity = m.sig.find(identity, 0);
    if (!proto.identity) throw ParseError("identity element '" + identity + "' is not a declared constant", id_at.line, id_at.col);
  }
  for (const auto& n : names) {
    OpDecl d = proto;
    d.name = n;
    if (n.find('_') != std::string::npos && !d.is_mixfix())
      st.fail("mixfix operator " + n + " needs one underscore per argument");
    m.sig.add_op(std::move(d));
  }
}

void parse_var_decl(TokenCursor& st, std::map<std::string, Term>& vars, const Signature& sig) {
  std::vector<std::string> names;
  while (!st.at_end() && !st.peek_is(":")) names.push_back(st.next().text);
  st.expect(":");
  Token sort = st.next();
  if (!sig.has_sort(sort.text)) throw ParseError("unknown sort " + sort.text, sort.line, sort.col);
  bool frozen = false;
  if (st.accept("[")) {
    Token a = st.next();
    if (a.text != "frozen") throw ParseError("unknown variable attribute '" + a.text + "'", a.line, a.col);
    frozen = true;
    st.expect("]");
  }
  expect_end(st);
  for (const auto& n : names) vars[n] = Term::var(n, sort.text, frozen);
}

std::string resolve_prec_name(const Signature& sig, const Token& t) {
  if (!sig.ops_named(t.text).empty()) return t.text;
  if (!sig.ops_named("_" + t.text + "_").empty()) return "_" + t.text + "_";
  throw ParseError("unknown operator '" + t.text + "' in precedence", t.line, t.col);
}

void parse_system_statement(TokenCursor& st, SystemModule& m, const ModuleLibrary& lib,
                            const AttachmentRegistry& natives) {
  Token kw = st.next();
  const std::string& k = kw.text;
  if (k == "protecting" || k == "pr" || k == "including" || k == "inc" || k == "extending" || k == "ex") {
    Token n = st.next();
    expect_end(st);
    const SystemModule* other = lib.system(n.text);
    if (!other) throw ParseError("unknown module " + n.text, n.line, n.col);
    m.import(*other);
  } else if (k == "sort" || k == "sorts") {
    while (!st.at_end()) m.sig.add_sort(st.next().text);
  } else if (k == "subsort" || k == "subsorts") {
    std::vector<std::vector<std::string>> groups{{}};
    while (!st.at_end()) {
      Token t = st.next();
      if (t.text == "<")
        groups.emplace_back();
      else if (!m.sig.has_sort(t.text))
        throw ParseError("unknown sort " + t.text, t.line, t.col);
      else
        groups.back().push_back(t.text);
    }
    for (std::size_t i = 0; i + 1 < groups.size(); ++i)
      for (const auto& a : groups[i])
        for (const auto& b : groups[i + 1]) m.sig.add_subsort(a, b);
  } else if (k == "op" || k == "ops") {
    parse_op_decl(st, m, k == "ops");
  } else if (k == "var" || k == "vars") {
    parse_var_decl(st, m.vars, m.sig);
  } else if (k == "eq" || k == "ceq") {
    Parser p(st, m.sig, {&m.vars}, &natives);
    Equation e;
    e.lhs = p.term();
    st.expect("=");
    e.rhs = p.term();
    if (k == "ceq") {
      st.expect("if");
      e.cond = p.condition();
    }
    expect_end(st);
    if (e.lhs.is_var()) throw ParseError("equation left-hand side is a variable", kw.line, kw.col);
    m.equations.push_back(std::move(e));
  } else if (k == "rl" || k == "crl") {
    Rule r;
    if (st.accept("[")) {
      r.label = st.next().text;
      st.expect("]");
      st.expect(":");
    }
    Parser p(st, m.sig, {&m.vars}, &natives);
    r.lhs = p.term();
    st.expect("=>");
    r.rhs = p.term();
    if (k == "crl") {
      st.expect("if");
      r.cond = p.condition();
    }
    expect_end(st);
    if (r.lhs.is_var()) throw ParseError("rule left-hand side is a variable", kw.line, kw.col);
    m.rules.push_back(std::move(r));
  } else if (k == "prec") {
    std::vector<std::string> chain;
    chain.push_back(resolve_prec_name(m.sig, st.next()));
    while (st.accept(">")) chain.push_back(resolve_prec_name(m.sig, st.next()));
    expect_end(st);
    m.prec.add_chain(chain);
  } else {
    throw ParseError("unknown declaration '" + k + "'", kw.line, kw.col);
  }
}

class StrategyParser {
 public:
  StrategyParser(TokenCursor& c, const SystemModule& m, const StrategyModule& sm, const AttachmentRegistry& natives)
      : c_(c), m_(m), sm_(sm), terms_(c, m.sig, {&sm.vars, &m.vars}, &natives) {}

  StratPtr expr() {
    StratPtr lhs = alt();
    while (true) {
      if (c_.accept("?")) {
        StratPtr th = expr();
        c_.expect(":");
        StratPtr el = expr();
        return strat::ite(lhs, th, el);
      }
      if (c_.accept("orelse")) {
        lhs = strat::orelse(lhs, alt());
        continue;
      }
      return lhs;
    }
  }

 private:
  StratPtr alt() {
    StratPtr lhs = seq();
    while (c_.accept("|")) lhs = strat::alt(lhs, seq());
    return lhs;
  }

  StratPtr seq() {
    StratPtr lhs = postfix();
    while (c_.accept(";")) lhs = strat::concat(lhs, postfix());
    return lhs;
  }

  StratPtr postfix() {
    StratPtr s = primary();
    while (true) {
      if (c_.accept("+"))
        s = strat::plus(s);
      else if (c_.accept("*"))
        s = strat::star(s);
      else if (c_.accept("!"))
        s = strat::bang(s);
      else
        return s;
    }
  }

  StratPtr parenthesized() {
    c_.expect("(");
    StratPtr s = expr();
    c_.expect(")");
    return s;
  }

  StratPtr primary() {
    if (c_.at_end()) c_.fail("expected a strategy");
    Token t = c_.peek();
    const std::string& k = t.text;
    if (k == "(") return parenthesized();
    if (k == "idle") return c_.next(), strat::idle();
    if (k == "fail") return c_.next(), strat::fail();
    bool declared = sm_.declares(k);
    if (!declared && (k == "top" || k == "not" || k == "try" || k == "test") && c_.peek_is("(", 1)) {
      c_.next();
      StratPtr inner = parenthesized();
      if (k == "not") return strat::not_(inner);
      if (k == "try") return strat::try_(inner);
      if (k == "test") return strat::test_of(inner);
      if (inner->kind != Strategy::Kind::RuleApp) throw ParseError("top applies to rule applications only", t.line, t.col);
      return strat::rule(inner->name, inner->bindings, inner->subs, true);
    }
    if (!declared && (k == "match" || k == "amatch")) {
      c_.next();
      Term p = terms_.term();
      Condition cond;
      if (c_.accept("s.t.")) cond = terms_.condition();
      return strat::test(k == "match", p, cond);
    }
    if (!declared && (k == "matchrew" || k == "amatchrew")) {
      c_.next();
      Term p = terms_.term();
      Condition cond;
      if (c_.accept("s.t.")) cond = terms_.condition();
      c_.expect("by");
      std::vector<Term> subs;
      std::vector<StratPtr> using_;
      do {
        subs.push_back(terms_.term());
        c_.expect("using");
        using_.push_back(expr());
      } while (c_.accept(","));
      return strat::matchrew(k == "matchrew", p, cond, subs, using_);
    }
    if (declared) {
      c_.next();
      std::vector<DataExpr> args;
      if (c_.peek_is("(") && !c_.peek().space_before) {
        c_.next();
        do {
          args.push_back(terms_.data());
        } while (c_.accept(","));
        c_.expect(")");
      }
      return strat::call(k, std::move(args));
    }
    if (m_.has_label(k)) {
      c_.next();
      std::vector<std::pair<std::string, Term>> bindings;
      std::vector<StratPtr> conds;
      if (c_.peek_is("[") && !c_.peek().space_before) {
        c_.next();
        do {
          std::string var = c_.next().text;
          c_.expect("<-");
          bindings.emplace_back(var, terms_.term());
        } while (c_.accept(";"));
        c_.expect("]");
      }
      if (c_.peek_is("{")) {
        c_.next();
        do {
          conds.push_back(expr());
        } while (c_.accept(","));
        c_.expect("}");
      }
      return strat::rule(k, std::move(bindings), std::move(conds));
    }
    throw ParseError("unknown strategy or rule label '" + k + "'", t.line, t.col);
  }

  TokenCursor& c_;
  const SystemModule& m_;
  const StrategyModule& sm_;
  Parser terms_;
};

}  // namespace

std::shared_ptr<SystemModule> parse_system_module(TokenCursor& c, const ModuleLibrary& lib,
                                                  const AttachmentRegistry& natives) {
  const std::size_t begin = c.position();
  c.expect("mod");
  auto m = std::make_shared<SystemModule>();
  m->name = c.next().text;
  c.expect("is");
  while (!c.accept("endm")) {
    if (c.at_end()) c.fail("missing endm");
    TokenCursor st = c.statement();
    parse_system_statement(st, *m, lib, natives);
  }
  m->reindex();
  if (m->source.empty()) m->source = c.text_since(begin);
  return m;
}

std::shared_ptr<StrategyModule> parse_strategy_module(TokenCursor& c, const ModuleLibrary& lib,
                                                      const AttachmentRegistry& natives) {
  const std::size_t begin = c.position();
  c.expect("smod");
  auto sm = std::make_shared<StrategyModule>();
  sm->name = c.next().text;
  c.expect("is");
  std::vector<TokenCursor> bodies;
  const SystemModule* sys = nullptr;
  while (!c.accept("endsm")) {
    if (c.at_end()) c.fail("missing endsm");
    TokenCursor st = c.statement();
    Token kw = st.peek();
    const std::string& k = kw.text;
    if (k == "protecting" || k == "pr" || k == "including" || k == "inc" || k == "extending" || k == "ex") {
      st.next();
      Token n = st.next();
      expect_end(st);
      if (const SystemModule* s = lib.system(n.text)) {
        if (sys && sys != s) throw ParseError("strategy module controls a single system module", n.line, n.col);
        sys = s;
        sm->system_module = n.text;
      } else if (const StrategyModule* other = lib.strategy(n.text)) {
        const SystemModule* s = lib.system(other->system_module);
        if (sys && s && sys != s) throw ParseError("strategy module controls a single system module", n.line, n.col);
        sys = s;
        sm->system_module = other->system_module;
        sm->include(*other);
        sm->includes.push_back(n.text);
      } else {
        throw ParseError("unknown module " + n.text, n.line, n.col);
      }
    } else if (k == "strat" || k == "strats") {
      if (!sys) st.fail("protecting declaration must come first");
      st.next();
      std::vector<std::string> names;
      while (!st.at_end() && !st.peek_is(":")) names.push_back(st.next().text);
      st.expect(":");
      std::vector<std::string> args;
      while (!st.at_end() && !st.peek_is("@")) {
        Token s = st.next();
        if (!sys->sig.has_sort(s.text)) throw ParseError("unknown sort " + s.text, s.line, s.col);
        args.push_back(s.text);
      }
      st.expect("@");
      Token subject = st.next();
      if (!sys->sig.has_sort(subject.text))
        throw ParseError("unknown sort " + subject.text, subject.line, subject.col);
      expect_end(st);
      for (const auto& n : names) sm->decls[n] = StratDecl{n, args, subject.text};
    } else if (k == "var" || k == "vars") {
      if (!sys) st.fail("protecting declaration must come first");
      st.next();
      parse_var_decl(st, sm->vars, sys->sig);
    } else if (k == "sd" || k == "csd") {
      bodies.push_back(st);
    } else {
      throw ParseError("unknown declaration '" + k + "'", kw.line, kw.col);
    }
  }
  if (!sys) throw ConfigError("strategy module " + sm->name + " does not protect a system module");
  for (auto& st : bodies) {
    Token kw = st.next();
    Token name = st.next();
    if (!sm->decls.count(name.text))
      throw ParseError("strategy " + name.text + " is defined but not declared", name.line, name.col);
    StratDef d;
    d.name = name.text;
    Parser terms(st, sys->sig, {&sm->vars, &sys->vars}, &natives);
    if (st.peek_is("(") && !st.peek().space_before) {
      st.next();
      do {
        d.params.push_back(terms.term());
      } while (st.accept(","));
      st.expect(")");
    }
    if (d.params.size() != sm->decls[name.text].arg_sorts.size())
      throw ParseError("strategy " + name.text + " expects " + std::to_string(sm->decls[name.text].arg_sorts.size()) +
                           " arguments",
                       name.line, name.col);
    st.expect(":=");
    StrategyParser sp(st, *sys, *sm, natives);
    d.body = sp.expr();
    if (kw.text == "csd") {
      st.expect("if");
      d.cond = terms.condition();
    }
    expect_end(st);
    sm->defs.push_back(std::move(d));
  }
  sm->source = c.text_since(begin);
  return sm;
}

Term parse_term(TokenCursor& c, const Signature& sig, const VarScope& vars) {
  Parser p(c, sig, vars);
  Term t = p.term();
  expect_end(c);
  return t;
}

Term parse_term(const SystemModule& m, std::string_view text) {
  TokenCursor c(tokenize(text));
  return parse_term(c, m.sig, {&m.vars});
}

StratPtr parse_strategy(TokenCursor& c, const SystemModule& m, const StrategyModule& sm,
                        const AttachmentRegistry& natives) {
  StrategyParser p(c, m, sm, natives);
  StratPtr s = p.expr();
  expect_end(c);
  return s;
}

StratPtr parse_strategy(const SystemModule& m, const StrategyModule& sm, std::string_view text,
                        const AttachmentRegistry& natives) {
  TokenCursor c(tokenize(text));
  return parse_strategy(c, m, sm, natives);
}

void load_modules(std::string_view text, ModuleLibrary& lib, const AttachmentRegistry& natives) {
  TokenCursor c(tokenize(text));
  while (!c.at_end()) {
    if (c.peek_is("mod")) {
      auto m = parse_system_module(c, lib, natives);
      lib.systems[m->name] = m;
    } else if (c.peek_is("smod")) {
      auto sm = parse_strategy_module(c, lib, natives);
      lib.strategies[sm->name] = sm;
    } else {
      c.fail("expected 'mod' or 'smod'");
    }
  }
}

}  // namespace stratkit
