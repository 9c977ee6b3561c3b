#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coreason/analogy.hpp"
#include "coreason/exec/executor.hpp"
#include "coreason/program.hpp"

namespace coreason {

struct ProgramScore {
  struct CaseResult {
    Verdict predicted = Verdict::unknown;
    bool correct = false;  // execution failures and unknowns count as incorrect
  };

  std::string program_id;
  double accuracy = 0.0;  // #correct / #similar questions scored
  std::map<std::string, CaseResult> per_question;  // similar-question id -> result
  Verdict original_verdict = Verdict::unknown;
};

enum class SelectionMethod { top_majority, weighted, plain_majority };
std::string selection_method_name(SelectionMethod m);

struct SelectionResult {
  Verdict verdict = Verdict::unknown;
  SelectionMethod method = SelectionMethod::plain_majority;
  std::vector<std::string> top_set;
};

// Rank -> majority -> weighted:
//  1. take the maximal exact-equal accuracy tier;
//  2. strict majority over the tier's definite original verdicts wins;
//  3. on a tie (or an all-unknown tier) weighted-vote over ALL programs,
//     each verdict scored by the summed accuracy of its programs; an exact
//     sum tie is unknown.
// Deterministic and permutation-invariant. Throws Error on empty input.
SelectionResult select(const std::vector<ProgramScore>& scores);

// Degraded mode when no similar questions exist: strict majority over the
// definite verdicts; draws are unknown.
SelectionResult plain_majority(const std::vector<ProgramScore>& scores);
Verdict majority_verdict(const std::vector<Verdict>& verdicts);

// Execution record of one program against the similar set + the original.
struct ScoreDetail {
  ProgramScore score;
  ExecutionOutcome original_outcome;
  std::vector<ExecutionOutcome> case_outcomes;  // parallel to the similar set
};

// Executes every (program, similar question) pair plus the original
// bindings. Unparseable/unassemblable cases fold into accuracy as failures.
std::vector<ScoreDetail> score_programs(Executor& executor,
                                        const std::vector<RewrittenProgram>& programs,
                                        const std::vector<std::string>& ids,
                                        const std::vector<ValidatedQuestion>& similar_set,
                                        const BindingMap& original_bindings);

struct FailedCase {
  std::string question_text;
  BindingMap bindings;
  Verdict program_verdict = Verdict::unknown;
  Verdict silver_label = Verdict::unknown;
  std::string rationale;  // a stored CoT rationale agreeing with the silver label
};

struct RefinementFeedback {
  std::string program_id;
  std::vector<FailedCase> cases;
};

// Picks up to max_cases failed cases with a usable rationale. Throws
// NoFailures when the program answered every similar question correctly.
RefinementFeedback build_feedback(const ProgramScore& score,
                                  const std::vector<ValidatedQuestion>& similar_set,
                                  int max_cases);

// The "Failed case N / Failed reason N" block of the refinement prompt.
std::string render_failed_cases(const RefinementFeedback& feedback);

// One refinement round for one program; parse failures discard the
// refinement and leave the pool unchanged.
std::optional<SolutionProgram> refine(LlmGateway& gateway, const AbstractQuestion& question,
                                      const std::string& program_source,
                                      const RefinementFeedback& feedback, double temperature,
                                      int max_tokens = 1024);

struct RefineSelectParams {
  int top_t = 2;
  int max_cases = 2;
  double temperature = 0.7;
  int max_tokens = 1024;
  bool do_refine = true;  // false = selection only
};

struct RefineSelectOutcome {
  SelectionResult selection;
  std::vector<ScoreDetail> original_scores;
  std::vector<ScoreDetail> refined_scores;
  std::vector<std::pair<std::string, std::string>> refined_sources;  // id -> source
  std::vector<RefinementFeedback> feedbacks;
  bool degraded_plain_majority = false;  // similar set was empty
};

// Scores the pool, refines the top_t imperfect programs, rescores the union
// (originals keep their cached executions) and selects over it.
RefineSelectOutcome refine_and_select(LlmGateway& gateway, Executor& executor,
                                      const AbstractQuestion& question,
                                      const std::vector<SolutionProgram>& programs,
                                      const std::vector<std::string>& ids,
                                      const std::vector<ValidatedQuestion>& similar_set,
                                      const RefineSelectParams& params);

}  // namespace coreason
