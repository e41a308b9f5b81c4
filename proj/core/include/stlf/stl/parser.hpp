#pragma once

#include <string>
#include <string_view>

#include "stlf/stl/formula.hpp"

namespace stlf::stl {

/// Parses STL concrete syntax.
///
/// ASCII and Unicode spellings are interchangeable:
///   G[a,b] / □[a,b]   F[a,b] / ◇[a,b]   φ U[a,b] ψ
///   and / ∧   or / ∨   not / ¬   norm(e) / ||e|| / ∥e∥
///   <= / ≤   >= / ≥   <   >
/// Precedence, tightest first: not and temporal prefixes, U, and, or.
/// A predicate is `expr relation number`; `*` needs a numeric literal on one
/// side. `#` starts a comment that runs to the end of the line.
///
/// Throws SyntaxError (with 1-based line/column) and BoundError.
Formula parse(std::string_view text);

/// Reads and parses a specification file.
Formula parse_file(const std::string& path);

/// Canonical ASCII rendering; parse(print(f)) == f.
std::string print(const Formula& phi);
std::string print(const ScalarExpr& e);

}  // namespace stlf::stl
