#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "stratkit/errors.hpp"
#include "stratkit/session.hpp"

using namespace stratkit;

namespace {

/// True once `buf` holds a whole module or a whole command.
bool complete_input(const std::string& buf) {
  std::vector<Token> ts;
  try {
    ts = tokenize(buf);
  } catch (const Error&) {
    return true;
  }
  if (ts.empty()) return false;
  const std::string& head = ts.front().text;
  if (head == "mod" || head == "smod") {
    const std::string end = head == "mod" ? "endm" : "endsm";
    return std::any_of(ts.begin(), ts.end(), [&](const Token& t) { return t.text == end; });
  }
  const bool paren = head == "(";
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i].text == ".") return !paren || (i + 1 < ts.size() && ts[i + 1].text == ")");
  return false;
}

int report(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return dynamic_cast<const BudgetExceeded*>(&e) ? 2 : 1;
}

int repl(Session& session, bool quiet) {
  if (!quiet) std::cout << "stratkit: enter modules and commands, `quit .` to leave\n";
  std::string buf, line;
  if (!quiet) std::cout << "> " << std::flush;
  while (std::getline(std::cin, line)) {
    buf += line;
    buf += '\n';
    if (complete_input(buf)) {
      std::vector<Token> ts = tokenize(buf);
      bool quit = !ts.empty() && (ts.front().text == "quit" || ts.front().text == "q");
      try {
        session.run(buf, std::cout);
      } catch (const std::exception& e) {
        report(e);
      }
      buf.clear();
      if (quit) break;
    }
    if (!quiet) std::cout << (buf.empty() ? "> " : "  ") << std::flush;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewriting with strategies and Knuth-Bendix completion"};
  std::string script;
  SessionConfig config;
  app.add_option("script", script, "Batch script with modules and commands");
  app.add_option("--max-states", config.eval.max_states, "States explored per iteration operator");
  app.add_option("--max-depth", config.eval.max_depth, "Nesting of strategy calls");
  app.add_option("--max-eq-steps", config.rewrite.max_eq_steps, "Equation steps per normalization");
  app.add_flag("--quiet", config.quiet, "No banner or prompts");
  CLI11_PARSE(app, argc, argv);
  config.completion.max_eq_steps = config.rewrite.max_eq_steps;
  config.completion.max_depth = config.eval.max_depth;

  Session session(config);
  if (script.empty()) return repl(session, config.quiet);
  try {
    session.load_file(script, std::cout);
  } catch (const std::exception& e) {
    return report(e);
  }
  return 0;
}
