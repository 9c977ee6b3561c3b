#include "coreason/selection.hpp"

#include <algorithm>

#include "coreason/errors.hpp"

namespace coreason {

std::string selection_method_name(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::top_majority: return "top_majority";
    case SelectionMethod::weighted: return "weighted";
    case SelectionMethod::plain_majority: return "plain_majority";
  }
  return "plain_majority";
}

Verdict majority_verdict(const std::vector<Verdict>& verdicts) {
  int yes = 0, no = 0;
  for (Verdict v : verdicts) {
    if (v == Verdict::yes) ++yes;
    else if (v == Verdict::no) ++no;
  }
  if (yes > no) return Verdict::yes;
  if (no > yes) return Verdict::no;
  return Verdict::unknown;
}

SelectionResult plain_majority(const std::vector<ProgramScore>& scores) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(scores.size());
  for (const auto& s : scores) verdicts.push_back(s.original_verdict);
  SelectionResult result;
  result.method = SelectionMethod::plain_majority;
  result.verdict = majority_verdict(verdicts);
  return result;
}

SelectionResult select(const std::vector<ProgramScore>& scores) {
  if (scores.empty()) throw Error("select requires a non-empty score list");

  double max_accuracy = 0.0;
  for (const auto& s : scores) max_accuracy = std::max(max_accuracy, s.accuracy);

  SelectionResult result;
  std::vector<Verdict> tier_verdicts;
  for (const auto& s : scores) {
    if (s.accuracy == max_accuracy) {  // only exact-equal accuracies tie
      result.top_set.push_back(s.program_id);
      if (s.original_verdict != Verdict::unknown) tier_verdicts.push_back(s.original_verdict);
    }
  }

  Verdict tier_majority = majority_verdict(tier_verdicts);
  if (!tier_verdicts.empty() && tier_majority != Verdict::unknown) {
    result.method = SelectionMethod::top_majority;
    result.verdict = tier_majority;
    return result;
  }

  // Tie (or no definite verdict in the tier): weighted vote over everything.
  result.method = SelectionMethod::weighted;
  double yes_weight = 0.0, no_weight = 0.0;
  for (const auto& s : scores) {
    if (s.original_verdict == Verdict::yes) yes_weight += s.accuracy;
    else if (s.original_verdict == Verdict::no) no_weight += s.accuracy;
  }
  if (yes_weight > no_weight) result.verdict = Verdict::yes;
  else if (no_weight > yes_weight) result.verdict = Verdict::no;
  else result.verdict = Verdict::unknown;  // exact sum tie
  return result;
}

std::vector<ScoreDetail> score_programs(Executor& executor,
                                        const std::vector<RewrittenProgram>& programs,
                                        const std::vector<std::string>& ids,
                                        const std::vector<ValidatedQuestion>& similar_set,
                                        const BindingMap& original_bindings) {
  if (programs.size() != ids.size()) throw Error("score_programs: ids/programs size mismatch");
  std::vector<ScoreDetail> out;
  out.reserve(programs.size());
  for (size_t i = 0; i < programs.size(); ++i) {
    ScoreDetail detail;
    detail.score.program_id = ids[i];
    detail.original_outcome = executor.execute_program(programs[i], original_bindings);
    detail.score.original_verdict = detail.original_outcome.verdict;

    int correct = 0;
    for (size_t s = 0; s < similar_set.size(); ++s) {
      const auto& sq = similar_set[s].question;
      ExecutionOutcome outcome = executor.execute_program(programs[i], sq.bindings);
      ProgramScore::CaseResult cr;
      cr.predicted = outcome.verdict;
      cr.correct = outcome.verdict != Verdict::unknown && outcome.verdict == sq.silver_label;
      if (cr.correct) ++correct;
      detail.score.per_question["s" + std::to_string(s)] = cr;
      detail.case_outcomes.push_back(std::move(outcome));
    }
    detail.score.accuracy =
        similar_set.empty() ? 0.0
                            : static_cast<double>(correct) / static_cast<double>(similar_set.size());
    out.push_back(std::move(detail));
  }
  return out;
}

RefinementFeedback build_feedback(const ProgramScore& score,
                                  const std::vector<ValidatedQuestion>& similar_set,
                                  int max_cases) {
  bool any_failure = false;
  for (const auto& [sid, cr] : score.per_question)
    if (!cr.correct) any_failure = true;
  if (!any_failure) throw NoFailures(score.program_id);

  RefinementFeedback feedback;
  feedback.program_id = score.program_id;
  for (size_t s = 0; s < similar_set.size(); ++s) {
    if (static_cast<int>(feedback.cases.size()) >= max_cases) break;
    auto it = score.per_question.find("s" + std::to_string(s));
    if (it == score.per_question.end() || it->second.correct) continue;
    const ValidatedQuestion& vq = similar_set[s];
    // pick one rationale that agrees with the silver label
    const CoTSample* rationale = nullptr;
    for (const auto& sample : vq.consensus.samples) {
      if (sample.verdict == vq.question.silver_label) {
        rationale = &sample;
        break;
      }
    }
    if (!rationale) continue;  // no usable rationale; skip the case
    FailedCase fc;
    fc.question_text = vq.question.text;
    fc.bindings = vq.question.bindings;
    fc.program_verdict = it->second.predicted;
    fc.silver_label = vq.question.silver_label;
    fc.rationale = rationale->text;
    feedback.cases.push_back(std::move(fc));
  }
  return feedback;
}

namespace {

std::string capitalized_verdict(Verdict v) {
  switch (v) {
    case Verdict::yes: return "Yes";
    case Verdict::no: return "No";
    case Verdict::unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace

std::string render_failed_cases(const RefinementFeedback& feedback) {
  std::string out;
  int n = 0;
  for (const auto& fc : feedback.cases) {
    ++n;
    out += "Failed case " + std::to_string(n) + ": answer(";
    bool first = true;
    for (const auto& [name, value] : fc.bindings) {
      if (!first) out += ", ";
      first = false;
      out += name + "=" + render_literal(value);
    }
    out += ")\n";
    out += "Failed reason " + std::to_string(n) + ": The concrete question in this case is '" +
           fc.question_text + "' " + fc.rationale + " However, the program returned results '" +
           capitalized_verdict(fc.program_verdict) + "'.\n";
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::optional<SolutionProgram> refine(LlmGateway& gateway, const AbstractQuestion& question,
                                      const std::string& program_source,
                                      const RefinementFeedback& feedback, double temperature,
                                      int max_tokens) {
  if (feedback.cases.empty()) return std::nullopt;
  LlmRequest req{"refine",
                 {{"question", annotated_question(question)},
                  {"program", program_source},
                  {"failed_cases", render_failed_cases(feedback)}},
                 temperature,
                 0,
                 max_tokens};
  LlmResponse resp = gateway.complete(req);
  Candidate candidate = parse_candidate(resp.text, question);
  if (!candidate.parsed()) return std::nullopt;
  return std::move(*candidate.program);
}

RefineSelectOutcome refine_and_select(LlmGateway& gateway, Executor& executor,
                                      const AbstractQuestion& question,
                                      const std::vector<SolutionProgram>& programs,
                                      const std::vector<std::string>& ids,
                                      const std::vector<ValidatedQuestion>& similar_set,
                                      const RefineSelectParams& params) {
  RefineSelectOutcome out;

  std::vector<RewrittenProgram> rewritten;
  rewritten.reserve(programs.size());
  for (const auto& p : programs) rewritten.push_back(rewrite_soft_operators(p));

  BindingMap bindings = original_bindings(question);
  out.original_scores = score_programs(executor, rewritten, ids, similar_set, bindings);

  std::vector<ProgramScore> pool;
  for (const auto& d : out.original_scores) pool.push_back(d.score);

  if (similar_set.empty()) {
    out.degraded_plain_majority = true;
    out.selection = plain_majority(pool);
    return out;
  }

  if (params.do_refine) {
    // top accuracies first, ties by pool position
    std::vector<size_t> order(programs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return pool[a].accuracy > pool[b].accuracy;
    });

    int refined_count = 0;
    for (size_t idx : order) {
      if (refined_count >= params.top_t) break;
      RefinementFeedback feedback;
      try {
        feedback = build_feedback(pool[idx], similar_set, params.max_cases);
      } catch (const NoFailures&) {
        continue;  // perfect programs are not refined
      }
      if (feedback.cases.empty()) continue;
      ++refined_count;
      out.feedbacks.push_back(feedback);
      auto refined = refine(gateway, question, programs[idx].source, feedback,
                            params.temperature, params.max_tokens);
      if (!refined) continue;  // discarded refinement leaves the pool unchanged
      std::string refined_id = ids[idx] + "_refined";
      out.refined_sources.emplace_back(refined_id, refined->source);
      std::vector<RewrittenProgram> one{rewrite_soft_operators(*refined)};
      std::vector<ScoreDetail> scored =
          score_programs(executor, one, {refined_id}, similar_set, bindings);
      out.refined_scores.push_back(std::move(scored.front()));
    }
  }

  // union pool: originals keep their executions, refined join them
  for (const auto& d : out.refined_scores) pool.push_back(d.score);
  out.selection = select(pool);
  return out;
}

}  // namespace coreason
