#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coreason/conceptualizer.hpp"
#include "coreason/gateway.hpp"
#include "coreason/lang/parser.hpp"

namespace coreason {

// A parsed candidate solution. entry_params are the answer() parameters,
// helper_names the other user-defined functions.
struct SolutionProgram {
  std::string source;
  std::vector<std::string> entry_params;
  std::vector<std::string> helper_names;
};

// The same program after soft-operator rewriting: no raw relational operator
// remains in any comparison position.
struct RewrittenProgram {
  std::string source;
  int rewrite_count = 0;
  std::vector<std::string> entry_params;
  std::vector<std::string> helper_names;
};

// Parses and validates candidate source. Throws lang::ParseError with kind
// syntax / forbidden / missing_entry.
SolutionProgram parse_program(const std::string& source);

// Rewrites every comparison into its *_override call. Programs without
// comparisons come back byte-identical with rewrite_count 0.
RewrittenProgram rewrite_soft_operators(const SolutionProgram& program);

// Pulls program text out of a completion (fenced code block when present,
// otherwise the whole reply).
std::string extract_program_source(const std::string& completion);

// One sampled candidate; unparseable completions are retained as
// parse-error placeholders so they count against the execution rate.
struct Candidate {
  std::optional<SolutionProgram> program;
  std::string raw_completion;
  std::string parse_error;       // empty when parsed
  std::string parse_error_kind;  // "syntax" | "forbidden" | "missing_entry"

  bool parsed() const { return program.has_value(); }
};

// Samples k completions of the program-generation prompt for the annotated
// abstract question and parses each.
std::vector<Candidate> generate_candidates(LlmGateway& gateway, const AbstractQuestion& question,
                                           int k, double temperature, int max_tokens = 1024);

// Parses one completion into a candidate, checking the entry parameters
// against the abstract question's parameter names (order-insensitive).
Candidate parse_candidate(const std::string& completion, const AbstractQuestion& question);

}  // namespace coreason
