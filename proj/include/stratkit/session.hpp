#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "stratkit/completion.hpp"
#include "stratkit/eval.hpp"
#include "stratkit/parser.hpp"

namespace stratkit {

struct SessionConfig {
  EvalLimits eval;
  RewriteLimits rewrite;
  CompletionLimits completion;
  bool quiet = false;
};

/// Loaded modules plus the state of an interactive run: the selected
/// module and the results of the last `srew` or `cont`.
class Session {
 public:
  explicit Session(SessionConfig config = {});

  /// Runs modules and commands from `text`, printing results to `out`.
  /// Stops at the first error.
  void run(std::string_view text, std::ostream& out);
  void load_file(const std::filesystem::path& path, std::ostream& out);

  void select(const std::string& name);
  TermSet srew(std::string_view term, std::string_view strategy);
  TermSet cont(std::string_view strategy);
  CompletionResult complete(const std::string& module, Variant v) const;
  /// Adds the completion theory for `module` under `name` and `name-STRAT`,
  /// and selects the strategy module.
  void define_completion(const std::string& module, Variant v, const std::string& name);

  const ModuleLibrary& library() const { return lib_; }
  const TermSet& last() const { return last_; }
  const std::string& selected() const { return selected_; }
  const SessionConfig& config() const { return config_; }

 private:
  void run_tokens(TokenCursor& c, std::ostream& out);
  void command(TokenCursor& c, std::ostream& out);
  void print_results(const TermSet& ts, std::ostream& out) const;
  const SystemModule& active_system() const;
  const StrategyModule& active_strategies();
  TermSet evaluate(const StratPtr& s, const TermSet& inputs);

  SessionConfig config_;
  ModuleLibrary lib_;
  AttachmentRegistry natives_;
  std::string selected_;
  std::shared_ptr<StrategyModule> bare_;
  TermSet last_;
  bool has_last_ = false;
  const SystemModule* last_module_ = nullptr;
  std::filesystem::path base_dir_;
};

std::string format_result(const Term& t);
std::string format_report(const CompletionResult& r, const ConvergenceReport* rep);

}  // namespace stratkit
