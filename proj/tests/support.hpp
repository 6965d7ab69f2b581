#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stratkit/completion.hpp"
#include "stratkit/errors.hpp"
#include "stratkit/eval.hpp"
#include "stratkit/parser.hpp"
#include "stratkit/printer.hpp"

namespace support {

using namespace stratkit;

inline std::string read_theory(const std::string& file) {
  std::ifstream in(std::string(STRATKIT_THEORY_DIR) + "/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A library plus the attachment registry its modules were parsed with.
struct World {
  ModuleLibrary lib;
  AttachmentRegistry natives;

  World() { register_completion_attachments(natives); }
  explicit World(const std::string& text) : World() { load_modules(text, lib, natives); }

  const SystemModule& sys(const std::string& name) const { return *lib.system(name); }
  const StrategyModule& smod(const std::string& name) const { return *lib.strategy(name); }
  Term term(const std::string& mod, const std::string& text) const { return parse_term(sys(mod), text); }
};

inline World river() { return World(read_theory("river.strk")); }

inline std::string show(const TermSet& ts) {
  std::string out = "{";
  for (const auto& t : ts) out += (out.size() > 1 ? ", " : "") + to_string(t);
  return out + "}";
}

/// Terms over a small one-sorted signature used by the unit tests.
inline const char* kAlgebra = R"(
mod ALG is
  sort S .
  ops a b c : -> S .
  op f : S -> S .
  ops g h : S S -> S .
  op _+_ : S S -> S [assoc comm prec 33] .
  op _&_ : S S -> S [comm prec 35] .
  vars x y z x1 y1 : S .
  prec g > h > f > a .
endm
)";

}  // namespace support
