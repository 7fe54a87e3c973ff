#pragma once

#include <string>

#include "aidlab/families.hpp"

namespace aidlab {

/// Parses `L:n`, `Q:n`, `R:n`, `W:n`, `F:n`, `heis`, `free:r,c`,
/// `aa:<polyspec>`, `ex32:n`, `ex33`, `sl2nat`.  A polyspec is a list of monic
/// polynomials in x separated by ';', one companion block each, e.g.
/// `aa:x^3;x^2+1`.
FamilySpec parse_family(const std::string& text);

/// Block-diagonal matrix of companion blocks.
Matrix<Rational> companion_blocks(const std::vector<std::vector<Rational>>& monic_polys);

}  // namespace aidlab
