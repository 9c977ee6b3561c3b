#pragma once

#include <string>

#include "coreason/lang/ast.hpp"

namespace coreason::lang {

// Emits solution-language source from an AST. Output re-parses to an
// equivalent tree (4-space indentation, canonical spacing).
std::string print_module(const Module& m);
std::string print_expr(const Expr& e);

}  // namespace coreason::lang
