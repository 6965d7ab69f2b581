#include "stratkit/session.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "stratkit/errors.hpp"
#include "stratkit/printer.hpp"

namespace stratkit {

namespace {

std::vector<Token> drain(TokenCursor& c) {
  std::vector<Token> out;
  while (!c.at_end()) out.push_back(c.next());
  return out;
}

std::string join(const std::vector<Token>& ts) {
  std::string out;
  for (const auto& t : ts) {
    if (!out.empty() && t.space_before) out += ' ';
    out += t.text;
  }
  return out;
}

/// Splits a statement at its first `using` outside parentheses.
std::pair<std::vector<Token>, std::vector<Token>> split_using(TokenCursor& st) {
  std::vector<Token> ts = drain(st);
  int depth = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].text == "(") ++depth;
    if (ts[i].text == ")") --depth;
    if (depth == 0 && ts[i].text == "using")
      return {{ts.begin(), ts.begin() + i}, {ts.begin() + i + 1, ts.end()}};
  }
  if (ts.empty()) st.fail("expected 'using'");
  throw ParseError("expected 'using'", ts.front().line, ts.front().col);
}

}  // namespace

std::string format_result(const Term& t) { return "result " + t.sort() + " : " + to_string(t); }

std::string format_report(const CompletionResult& r, const ConvergenceReport* rep) {
  std::ostringstream out;
  switch (r.status) {
    case CompletionResult::Status::Success:
      out << "SUCCESS after " << r.inferences << " inferences\n";
      for (const auto& rule : r.rules) out << "  " << to_string(rule.lhs) << " -> " << to_string(rule.rhs) << "\n";
      if (r.rules.empty()) out << "  (no rules)\n";
      break;
    case CompletionResult::Status::Failure:
      out << "FAILURE after " << r.inferences << " inferences: " << r.message << "\n";
      break;
    case CompletionResult::Status::Budget:
      out << "BUDGET exhausted after " << r.inferences << " inferences: " << r.message << "\n";
      break;
  }
  if (r.status != CompletionResult::Status::Success && r.system) out << "  last system: " << to_string(*r.system) << "\n";
  if (rep) {
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "terminating: " << yn(rep->terminating) << ", joinable: " << yn(rep->joinable)
        << ", equivalent: " << yn(rep->equivalent) << ", interreduced: " << yn(rep->interreduced) << "\n";
    for (const auto& p : rep->problems) out << "  " << p << "\n";
  }
  return out.str();
}

Session::Session(SessionConfig config) : config_(std::move(config)), base_dir_(std::filesystem::current_path()) {
  register_completion_attachments(natives_);
}

void Session::run(std::string_view text, std::ostream& out) {
  TokenCursor c(tokenize(text));
  if (c.at_end()) throw EmptyInput("nothing to run");
  run_tokens(c, out);
}

void Session::load_file(const std::filesystem::path& path, std::ostream& out) {
  std::filesystem::path p = path.is_absolute() ? path : base_dir_ / path;
  if (!std::filesystem::exists(p) && std::filesystem::exists(path)) p = path;
  std::ifstream in(p);
  if (!in) throw NameError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  TokenCursor c(tokenize(buf.str()));
  if (c.at_end()) throw EmptyInput(path.string() + " is empty");
  auto saved = base_dir_;
  base_dir_ = p.parent_path();
  try {
    run_tokens(c, out);
  } catch (...) {
    base_dir_ = saved;
    throw;
  }
  base_dir_ = saved;
}

void Session::run_tokens(TokenCursor& c, std::ostream& out) {
  while (!c.at_end()) {
    if (c.peek_is("mod")) {
      auto m = parse_system_module(c, lib_, natives_);
      lib_.systems[m->name] = m;
      selected_ = m->name;
    } else if (c.peek_is("smod")) {
      auto sm = parse_strategy_module(c, lib_, natives_);
      lib_.strategies[sm->name] = sm;
      selected_ = sm->name;
    } else {
      command(c, out);
    }
  }
}

void Session::command(TokenCursor& c, std::ostream& out) {
  const bool paren = c.accept("(");
  Token kw = c.next();
  TokenCursor st = c.statement();
  if (paren) c.expect(")");
  const std::string& k = kw.text;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, kw.line, kw.col); };

  if (k == "load") {
    std::string path = join(drain(st));
    if (path.empty()) fail("load needs a file name");
    load_file(path, out);
  } else if (k == "select") {
    Token name = st.next();
    if (!st.at_end()) st.fail("unexpected token after module name");
    select(name.text);
  } else if (k == "srew" || k == "rew") {
    auto [term, strat] = split_using(st);
    TermSet r = srew(join(term), join(strat));
    print_results(r, out);
  } else if (k == "cont") {
    st.expect("using");
    TermSet r = cont(join(drain(st)));
    print_results(r, out);
  } else if (k == "complete") {
    Token name = st.next();
    Variant v = Variant::N;
    if (st.accept("variant")) {
      Token vt = st.next();
      auto pv = parse_variant(vt.text);
      if (!pv) throw ParseError("unknown completion variant " + vt.text, vt.line, vt.col);
      v = *pv;
    }
    if (!st.at_end()) st.fail("unexpected token in complete command");
    CompletionResult r = complete(name.text, v);
    std::optional<ConvergenceReport> rep;
    if (r.status == CompletionResult::Status::Success) {
      const SystemModule* m = lib_.system(name.text);
      rep = validate_convergent(m->sig, r.rules, object_identities(*m), m->prec);
    }
    out << format_report(r, rep ? &*rep : nullptr);
    if (r.status == CompletionResult::Status::Budget) throw BudgetExceeded(r.message);
  } else if (k == "completion") {
    Token vt = st.next();
    auto v = parse_variant(vt.text);
    if (!v) throw ParseError("unknown completion variant " + vt.text, vt.line, vt.col);
    st.expect("of");
    Token object = st.next();
    st.expect("as");
    Token name = st.next();
    if (!st.at_end()) st.fail("unexpected token in completion command");
    define_completion(object.text, *v, name.text);
  } else if (k == "show") {
    Token name = st.next();
    if (const SystemModule* m = lib_.system(name.text)) {
      out << m->source << "\n";
    } else if (const StrategyModule* sm = lib_.strategy(name.text)) {
      out << sm->source << "\n";
    } else {
      throw NameError("no module named " + name.text);
    }
  } else if (k == "quit" || k == "q") {
    while (!c.at_end()) c.next();
  } else {
    fail("unknown command '" + k + "'");
  }
}

void Session::select(const std::string& name) {
  if (!lib_.system(name) && !lib_.strategy(name)) throw NameError("no module named " + name);
  selected_ = name;
}

const SystemModule& Session::active_system() const {
  if (selected_.empty()) throw StateError("no module loaded");
  if (const StrategyModule* sm = lib_.strategy(selected_)) {
    const SystemModule* m = lib_.system(sm->system_module);
    if (!m) throw NameError("system module " + sm->system_module + " is not loaded");
    return *m;
  }
  const SystemModule* m = lib_.system(selected_);
  if (!m) throw NameError("no module named " + selected_);
  return *m;
}

const StrategyModule& Session::active_strategies() {
  if (const StrategyModule* sm = lib_.strategy(selected_)) return *sm;
  const SystemModule& m = active_system();
  if (!bare_ || bare_->system_module != m.name) {
    bare_ = std::make_shared<StrategyModule>();
    bare_->name = m.name;
    bare_->system_module = m.name;
  }
  return *bare_;
}

TermSet Session::evaluate(const StratPtr& s, const TermSet& inputs) {
  const SystemModule& m = active_system();
  const StrategyModule& sm = active_strategies();
  Rewriter rw(m, natives_, config_.rewrite);
  Evaluator ev(rw, sm, config_.eval);
  TermSet result;
  run_with_large_stack([&] { result = ev.eval(s, inputs); });
  return result;
}

TermSet Session::srew(std::string_view term, std::string_view strategy) {
  const SystemModule& m = active_system();
  const StrategyModule& sm = active_strategies();
  Rewriter rw(m, natives_, config_.rewrite);
  Term t = rw.normalize(parse_term(m, term));
  StratPtr s = parse_strategy(m, sm, strategy, natives_);
  TermSet r = evaluate(s, TermSet{t});
  last_ = r;
  has_last_ = true;
  last_module_ = &m;
  return r;
}

TermSet Session::cont(std::string_view strategy) {
  if (!has_last_ || last_.empty()) throw StateError("cont needs a previous nonempty result");
  const SystemModule& m = active_system();
  if (&m != last_module_) throw StateError("the selected module changed since the last result");
  StratPtr s = parse_strategy(m, active_strategies(), strategy, natives_);
  TermSet r = evaluate(s, last_);
  last_ = r;
  return r;
}

CompletionResult Session::complete(const std::string& module, Variant v) const {
  const SystemModule* m = lib_.system(module);
  if (!m) throw NameError("no module named " + module);
  return run_completion(*m, v, config_.completion);
}

void Session::define_completion(const std::string& module, Variant v, const std::string& name) {
  const SystemModule* m = lib_.system(module);
  if (!m) throw NameError("no module named " + module);
  load_modules(completion_theory_text(*m, v, name), lib_, natives_);
  selected_ = name + "-STRAT";
}

void Session::print_results(const TermSet& ts, std::ostream& out) const {
  if (ts.empty()) {
    out << "no solutions\n";
    return;
  }
  for (const auto& t : ts) out << format_result(t) << "\n";
}

}  // namespace stratkit
