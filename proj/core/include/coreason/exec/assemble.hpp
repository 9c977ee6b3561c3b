#pragma once

#include <string>

#include "coreason/conceptualizer.hpp"
#include "coreason/program.hpp"

namespace coreason {

// A standalone program file: preamble header, the rewritten source, and a
// trailing call that prints answer()'s return value.
struct ExecutableUnit {
  std::string source;
};

// Renders a TypedValue as a solution-language literal.
std::string render_literal(const TypedValue& value);

// Throws MissingBinding when bindings do not cover every entry parameter;
// extra bindings are ignored.
ExecutableUnit assemble_executable(const RewrittenProgram& program, const BindingMap& bindings);

}  // namespace coreason
