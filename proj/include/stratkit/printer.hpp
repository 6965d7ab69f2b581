#pragma once

#include <string>

#include "stratkit/term.hpp"

namespace stratkit {

/// User-level mixfix syntax that the parser reads back.
std::string to_string(const Term& t);

/// Splits a mixfix name at its underscores: `<_,_>` gives {"<", ",", ">"}.
std::vector<std::string> mixfix_pieces(const std::string& name);

}  // namespace stratkit
