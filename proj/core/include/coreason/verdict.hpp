#pragma once

#include <string>

namespace coreason {

enum class Verdict { yes, no, unknown };

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& s);

// Normalizes printed program output (or a sentence of prose) to a verdict.
// Token containment, not equality: output that contains the word "yes" and
// not the word "no" is yes, the mirror case is no, anything else is unknown.
Verdict normalize_output(const std::string& raw);

}  // namespace coreason
