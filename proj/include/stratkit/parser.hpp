#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stratkit/module.hpp"
#include "stratkit/strategy.hpp"

namespace stratkit {

struct Token {
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
  bool space_before = true;
};

/// Whitespace-separated tokens; `( ) [ ] { } ,` always stand alone and
/// `---` / `***` start a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view src);

/// A window over a token vector.
class TokenCursor {
 public:
  TokenCursor() = default;
  explicit TokenCursor(std::vector<Token> tokens);
  TokenCursor(std::shared_ptr<const std::vector<Token>> tokens, std::size_t begin, std::size_t end);

  bool at_end() const { return pos_ >= end_; }
  const Token& peek(std::size_t k = 0) const;
  bool peek_is(const std::string& text, std::size_t k = 0) const;
  Token next();
  bool accept(const std::string& text);
  Token expect(const std::string& text);
  /// Everything up to (not including) the next `.` token, which is consumed.
  TokenCursor statement();
  /// Location for error messages: the current token, or the end.
  [[noreturn]] void fail(const std::string& msg) const;
  std::size_t remaining() const { return at_end() ? 0 : end_ - pos_; }
  std::size_t position() const { return pos_; }
  /// Tokens from `begin` up to the current position, laid out on their
  /// original lines (comments are lost).
  std::string text_since(std::size_t begin) const;

 private:
  std::shared_ptr<const std::vector<Token>> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

/// Loaded modules by name.
class ModuleLibrary {
 public:
  std::map<std::string, SystemModulePtr> systems;
  std::map<std::string, StrategyModulePtr> strategies;

  const SystemModule* system(const std::string& name) const;
  const StrategyModule* strategy(const std::string& name) const;
};

using VarScope = std::vector<const std::map<std::string, Term>*>;

/// Parses `mod NAME is ... endm`; the cursor is at `mod`.
std::shared_ptr<SystemModule> parse_system_module(TokenCursor& c, const ModuleLibrary& lib,
                                                  const AttachmentRegistry& natives);
/// Parses `smod NAME is ... endsm`; the cursor is at `smod`.
std::shared_ptr<StrategyModule> parse_strategy_module(TokenCursor& c, const ModuleLibrary& lib,
                                                      const AttachmentRegistry& natives);

/// A whole term filling the cursor.
Term parse_term(TokenCursor& c, const Signature& sig, const VarScope& vars);
Term parse_term(const SystemModule& m, std::string_view text);

/// A whole strategy expression filling the cursor.
StratPtr parse_strategy(TokenCursor& c, const SystemModule& m, const StrategyModule& sm,
                        const AttachmentRegistry& natives);
StratPtr parse_strategy(const SystemModule& m, const StrategyModule& sm, std::string_view text,
                        const AttachmentRegistry& natives);

/// Loads every module in `text` into `lib`. Commands are not allowed.
void load_modules(std::string_view text, ModuleLibrary& lib, const AttachmentRegistry& natives);

}  // namespace stratkit
