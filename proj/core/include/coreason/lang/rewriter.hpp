#pragma once

#include "coreason/lang/ast.hpp"

namespace coreason::lang {

// Replaces every comparison node with a call to its soft-operator helper
// (a == b -> eq_override(a, b)), recursing into nested boolean expressions,
// comprehensions and condition positions. Returns the number of nodes
// replaced. Idempotent: a second pass replaces nothing.
int rewrite_comparisons(Module& m);

// Residual comparison nodes anywhere in the tree (0 after rewriting).
int count_comparisons(const Module& m);

}  // namespace coreason::lang
