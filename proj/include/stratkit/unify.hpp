#pragma once

#include <optional>

#include "stratkit/signature.hpp"
#include "stratkit/substitution.hpp"
#include "stratkit/term.hpp"

namespace stratkit {

/// Syntactic most general unifier with occurs check. The result is
/// idempotent. Throws UnsupportedACUnification when an AC or commutative
/// symbol has to be decomposed. Frozen variables are constants.
std::optional<Substitution> unify(const Signature& sig, const Term& a, const Term& b);

}  // namespace stratkit
