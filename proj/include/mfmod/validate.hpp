#pragma once

#include <vector>

#include "mfmod/ast.hpp"
#include "mfmod/source.hpp"

namespace mfmod {

// Semantic checks over a parsed program: identifier resolution, operand
// kind compatibility, and rejection of recursive PERFORM chains. An empty
// result means the program is executable without resolution failures.
std::vector<Diagnostic> validate(const Program& program);

} // namespace mfmod
