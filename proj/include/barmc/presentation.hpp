#pragma once

#include <variant>

#include "barmc/dgcore.hpp"

namespace barmc {

/* Structured-text algebra presentations.
 *
 *   # comment
 *   algebra                  (or: lie)
 *   flags: unital commutative
 *   basis:
 *     x 0
 *     y 1
 *   unit: x                  (unital only)
 *   splitting:               (optional, unital only: complement basis vectors)
 *     y
 *   differential:
 *     y -> 3/2 x
 *   product:                 (or: bracket)
 *     x x -> x
 *
 * Parse errors carry line/column; parsed objects must pass check_axioms. */
using Presentation = std::variant<DgAlgebra, DgLieAlgebra>;

Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);

std::string render_presentation(const DgAlgebra& A);

}  // namespace barmc
