#pragma once

#include <string>

#include "coreason/lang/ast.hpp"
#include "coreason/lang/lexer.hpp"

namespace coreason::lang {

enum class ModuleMode {
  candidate,   // top level: function defs and docstrings only; one answer()
  executable,  // additionally allows module-level statements (trailing call)
};

// Parses and validates source against the solution-language whitelist.
// Throws ParseError with kind:
//   - syntax: malformed or unsupported-but-benign constructs
//   - forbidden: imports, attribute access, while/try/with/..., calls to
//     unknown functions (file, network and process access have no other
//     spelling in this language)
//   - missing_entry: candidate module without exactly one answer()
Module parse_module(const std::string& source, ModuleMode mode);

// Callables provided by the runtime preamble.
bool is_builtin_callable(const std::string& name);
// Bare names that evaluate to type designators (str, int, float, bool, list).
bool is_type_designator(const std::string& name);

}  // namespace coreason::lang
