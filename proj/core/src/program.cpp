#include "coreason/program.hpp"

#include <algorithm>
#include <set>

#include "coreason/lang/printer.hpp"
#include "coreason/lang/rewriter.hpp"

namespace coreason {

SolutionProgram parse_program(const std::string& source) {
  lang::Module module = lang::parse_module(source, lang::ModuleMode::candidate);
  SolutionProgram program;
  program.source = source;
  for (const auto& stmt : module.body) {
    if (!stmt->is<lang::FunctionDef>()) continue;
    const auto& def = stmt->as<lang::FunctionDef>();
    if (def.name == "answer") {
      for (const auto& p : def.params) program.entry_params.push_back(p.name);
    } else {
      program.helper_names.push_back(def.name);
    }
  }
  return program;
}

RewrittenProgram rewrite_soft_operators(const SolutionProgram& program) {
  lang::Module module = lang::parse_module(program.source, lang::ModuleMode::candidate);
  RewrittenProgram out;
  out.entry_params = program.entry_params;
  out.helper_names = program.helper_names;
  out.rewrite_count = lang::rewrite_comparisons(module);
  out.source = out.rewrite_count == 0 ? program.source : lang::print_module(module);
  return out;
}

std::string extract_program_source(const std::string& completion) {
  size_t fence = completion.find("```");
  if (fence == std::string::npos) {
    size_t b = completion.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = completion.find_last_not_of(" \t\r\n");
    return completion.substr(b, e - b + 1);
  }
  size_t body = completion.find('\n', fence);
  if (body == std::string::npos) return "";
  ++body;
  size_t close = completion.find("```", body);
  if (close == std::string::npos) close = completion.size();
  std::string code = completion.substr(body, close - body);
  size_t e = code.find_last_not_of(" \t\r\n");
  return e == std::string::npos ? "" : code.substr(0, e + 1);
}

Candidate parse_candidate(const std::string& completion, const AbstractQuestion& question) {
  Candidate c;
  c.raw_completion = completion;
  std::string source = extract_program_source(completion);
  try {
    c.program = parse_program(source);
  } catch (const lang::ParseError& e) {
    c.parse_error = e.what();
    switch (e.kind) {
      case lang::ParseError::Kind::syntax: c.parse_error_kind = "syntax"; break;
      case lang::ParseError::Kind::forbidden: c.parse_error_kind = "forbidden"; break;
      case lang::ParseError::Kind::missing_entry: c.parse_error_kind = "missing_entry"; break;
    }
    return c;
  }
  // entry parameters must name exactly the abstract question's parameters
  std::set<std::string> expected;
  for (const auto& p : question.parameters) expected.insert(p.name);
  std::set<std::string> got(c.program->entry_params.begin(), c.program->entry_params.end());
  if (expected != got) {
    c.program.reset();
    c.parse_error = "entry parameters do not match the abstract question's parameters";
    c.parse_error_kind = "missing_entry";
  }
  return c;
}

std::vector<Candidate> generate_candidates(LlmGateway& gateway, const AbstractQuestion& question,
                                           int k, double temperature, int max_tokens) {
  std::map<std::string, std::string> slots{{"question", annotated_question(question)}};
  std::vector<LlmResponse> responses =
      gateway.sample_n("program_gen", slots, k, temperature, max_tokens);
  std::vector<Candidate> out;
  out.reserve(responses.size());
  for (const auto& resp : responses) out.push_back(parse_candidate(resp.text, question));
  return out;
}

}  // namespace coreason
