#include "coreason/harness.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "coreason/conceptualizer.hpp"
#include "coreason/cot.hpp"
#include "coreason/exec/executor.hpp"
#include "coreason/program.hpp"
#include "coreason/selection.hpp"

namespace coreason {

namespace {

// Restores the per-thread prompt-key observer on scope exit.
struct KeyObserverGuard {
  explicit KeyObserverGuard(std::vector<CacheKey>* keys) { LlmGateway::set_key_observer(keys); }
  ~KeyObserverGuard() { LlmGateway::set_key_observer(nullptr); }
};

nlohmann::json keys_to_json(const std::vector<CacheKey>& keys) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& k : keys) {
    out.push_back({{"template", k.template_name},
                   {"slots", k.slots},
                   {"temperature", k.temperature},
                   {"sample_index", k.sample_index},
                   {"key_hash", k.hash_hex()}});
  }
  return out;
}

nlohmann::json score_detail_to_json(const ScoreDetail& d) {
  nlohmann::json per_question = nlohmann::json::object();
  for (const auto& [sid, cr] : d.score.per_question) {
    per_question[sid] = {{"predicted", verdict_name(cr.predicted)}, {"correct", cr.correct}};
  }
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& o : d.case_outcomes) cases.push_back(o.to_json(/*include_wall_time=*/false));
  return {{"program_id", d.score.program_id},
          {"accuracy", d.score.accuracy},
          {"original_verdict", verdict_name(d.score.original_verdict)},
          {"per_question", per_question},
          {"original_outcome", d.original_outcome.to_json(false)},
          {"case_outcomes", cases}};
}

nlohmann::json feedback_to_json(const RefinementFeedback& f) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : f.cases) {
    nlohmann::json bindings = nlohmann::json::object();
    for (const auto& [name, value] : c.bindings) bindings[name] = value.to_json();
    cases.push_back({{"question", c.question_text},
                     {"bindings", bindings},
                     {"program_verdict", verdict_name(c.program_verdict)},
                     {"silver_label", verdict_name(c.silver_label)},
                     {"rationale", c.rationale}});
  }
  return {{"program_id", f.program_id}, {"cases", cases}};
}

long count_ok(const ScoreDetail& d) {
  long ok = d.original_outcome.successful() ? 1 : 0;
  for (const auto& o : d.case_outcomes)
    if (o.successful()) ++ok;
  return ok;
}

long count_execs(const ScoreDetail& d) { return 1 + static_cast<long>(d.case_outcomes.size()); }

}  // namespace

Harness::Harness(RunConfig config, LlmGateway& downstream, LlmGateway& conceptualizing)
    : config_(std::move(config)), downstream_(downstream), conceptualizing_(conceptualizing) {
  config_.validate();
}

Harness::QuestionRun Harness::run_question(const DatasetRecord& record) {
  return config_.mode == RunMode::cot ? run_cot(record) : run_programmatic(record);
}

Harness::QuestionRun Harness::run_cot(const DatasetRecord& record) {
  QuestionRun out;
  out.result.id = record.id;
  out.trace["id"] = record.id;
  out.trace["question"] = record.question;
  if (record.gold) out.trace["gold"] = verdict_name(*record.gold);
  out.trace["mode"] = run_mode_name(config_.mode);

  std::vector<CacheKey> keys;
  KeyObserverGuard guard(&keys);
  ConsensusResult consensus =
      cot_consensus(downstream_, record.question, config_.k_samples,
                    config_.inference_temperature, config_.default_max_tokens);
  out.result.verdict = consensus.verdict;
  out.trace["cot"] = consensus.to_json();
  out.trace["verdict"] = verdict_name(consensus.verdict);
  out.trace["prompt_keys"] = keys_to_json(keys);
  out.trace["executions"] = {{"attempted", 0}, {"ok", 0}};
  return out;
}

Harness::QuestionRun Harness::run_programmatic(const DatasetRecord& record) {
  QuestionRun out;
  out.result.id = record.id;
  out.trace["id"] = record.id;
  out.trace["question"] = record.question;
  if (record.gold) out.trace["gold"] = verdict_name(*record.gold);
  out.trace["mode"] = run_mode_name(config_.mode);

  std::vector<CacheKey> keys;
  KeyObserverGuard guard(&keys);

  auto finish = [&](Verdict verdict) {
    out.result.verdict = verdict;
    out.trace["verdict"] = verdict_name(verdict);
    out.trace["prompt_keys"] = keys_to_json(keys);
    out.trace["executions"] = {{"attempted", out.result.execs_attempted},
                               {"ok", out.result.execs_ok}};
  };

  // conceptualization (un-conceptualizable questions are excluded from runs)
  Conceptualizer conceptualizer(conceptualizing_, config_.inference_temperature,
                                config_.default_max_tokens);
  AbstractQuestion abstract;
  try {
    abstract = conceptualizer.conceptualize(
        ConcreteQuestion{record.id, record.question, record.gold});
  } catch (const ConceptualizationFailed& e) {
    out.trace["conceptualization"] = {{"raw", conceptualizer.last_raw()},
                                      {"error", std::string(e.what())}};
    out.result.excluded = true;
    finish(Verdict::unknown);
    return out;
  }
  out.trace["conceptualization"] = {{"raw", conceptualizer.last_raw()},
                                    {"abstract", abstract.to_json()}};

  // K candidate programs
  std::vector<Candidate> candidates = generate_candidates(
      downstream_, abstract, config_.k_samples, config_.inference_temperature,
      config_.program_max_tokens);

  std::vector<SolutionProgram> parsed;
  std::vector<std::string> ids;
  nlohmann::json candidates_json = nlohmann::json::array();
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    nlohmann::json cj{{"raw_completion", c.raw_completion}};
    if (c.parsed()) {
      cj["source"] = c.program->source;
      cj["entry_params"] = c.program->entry_params;
      cj["helpers"] = c.program->helper_names;
      RewrittenProgram rewritten = rewrite_soft_operators(*c.program);
      cj["rewritten_source"] = rewritten.source;
      cj["rewrite_count"] = rewritten.rewrite_count;
      ids.push_back("p" + std::to_string(i));
      parsed.push_back(*c.program);
    } else {
      cj["parse_error"] = c.parse_error;
      cj["parse_error_kind"] = c.parse_error_kind;
      out.result.execs_attempted += 1;  // placeholder slot counts against Exe.%
    }
    candidates_json.push_back(std::move(cj));
  }
  out.trace["candidates"] = std::move(candidates_json);

  SandboxPolicy policy{config_.timeout_seconds, config_.max_llm_calls};
  Executor executor(downstream_, policy);
  BindingMap bindings = original_bindings(abstract);

  if (config_.mode == RunMode::program) {
    // execute all candidates on the original bindings, majority-vote
    std::vector<Verdict> verdicts;
    nlohmann::json outcomes = nlohmann::json::array();
    for (size_t i = 0; i < parsed.size(); ++i) {
      RewrittenProgram rewritten = rewrite_soft_operators(parsed[i]);
      ExecutionOutcome outcome = executor.execute_program(rewritten, bindings);
      out.result.execs_attempted += 1;
      if (outcome.successful()) out.result.execs_ok += 1;
      verdicts.push_back(outcome.verdict);
      outcomes.push_back({{"program_id", ids[i]}, {"outcome", outcome.to_json(false)}});
    }
    out.trace["program_outcomes"] = std::move(outcomes);
    finish(majority_verdict(verdicts));
    return out;
  }

  // selection / refine: acquire the similar set, then score and vote
  std::vector<ValidatedQuestion> similar;
  AnalogyParams analogy_params;
  analogy_params.generation_temperature = config_.generation_temperature;
  analogy_params.validation_temperature = config_.inference_temperature;
  analogy_params.validation_k = config_.k_samples;
  analogy_params.agreement_threshold = config_.agreement_threshold;
  analogy_params.max_tokens = config_.default_max_tokens;
  AnalogyGenerator analogy(downstream_, analogy_params);
  try {
    similar = analogy.acquire_similar_set(abstract, config_.similar_targets);
  } catch (const InsufficientSimilarQuestions& e) {
    out.trace["similar_error"] = std::string(e.what());
    similar.clear();  // degrade to plain majority
  }
  out.trace["similar"] = similar_set_to_json(record.id, similar);

  RefineSelectParams params;
  params.top_t = config_.top_t;
  params.max_cases = config_.max_cases;
  params.temperature = config_.inference_temperature;
  params.max_tokens = config_.program_max_tokens;
  params.do_refine = config_.mode == RunMode::refine;

  if (parsed.empty()) {
    out.trace["selection"] = {{"verdict", "unknown"},
                              {"method", "plain_majority"},
                              {"top_set", nlohmann::json::array()},
                              {"degraded", true}};
    finish(Verdict::unknown);
    return out;
  }

  RefineSelectOutcome rs =
      refine_and_select(downstream_, executor, abstract, parsed, ids, similar, params);

  nlohmann::json scores = nlohmann::json::array();
  for (const auto& d : rs.original_scores) {
    scores.push_back(score_detail_to_json(d));
    out.result.execs_attempted += count_execs(d);
    out.result.execs_ok += count_ok(d);
  }
  out.trace["scores"] = std::move(scores);

  if (config_.mode == RunMode::refine) {
    nlohmann::json feedbacks = nlohmann::json::array();
    for (const auto& f : rs.feedbacks) feedbacks.push_back(feedback_to_json(f));
    nlohmann::json refined = nlohmann::json::array();
    for (size_t i = 0; i < rs.refined_scores.size(); ++i) {
      nlohmann::json rj = score_detail_to_json(rs.refined_scores[i]);
      rj["source"] = rs.refined_sources[i].second;
      refined.push_back(std::move(rj));
      out.result.execs_attempted += count_execs(rs.refined_scores[i]);
      out.result.execs_ok += count_ok(rs.refined_scores[i]);
    }
    out.trace["refinement"] = {{"feedbacks", std::move(feedbacks)},
                               {"refined", std::move(refined)}};
  }

  nlohmann::json top_set = nlohmann::json::array();
  for (const auto& id : rs.selection.top_set) top_set.push_back(id);
  out.trace["selection"] = {{"verdict", verdict_name(rs.selection.verdict)},
                            {"method", selection_method_name(rs.selection.method)},
                            {"top_set", std::move(top_set)},
                            {"degraded", rs.degraded_plain_majority}};
  finish(rs.selection.verdict);
  return out;
}

EvaluationReport Harness::run(const std::vector<LabeledDataset>& datasets,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "traces");
  {
    std::ofstream cfg(fs::path(out_dir) / "config.json");
    cfg << config_.to_json().dump(2) << "\n";
  }

  EvaluationReport report;
  for (const auto& dataset : datasets) {
    std::vector<QuestionResult> results(dataset.records.size());
    std::vector<nlohmann::json> traces(dataset.records.size());

    int workers = std::max(1, config_.workers);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= dataset.records.size()) break;
        QuestionRun qr;
        try {
          qr = run_question(dataset.records[i]);
        } catch (const std::exception& e) {
          // per-question failures never abort the run
          qr.result.id = dataset.records[i].id;
          qr.result.verdict = Verdict::unknown;
          qr.trace = {{"id", dataset.records[i].id},
                      {"question", dataset.records[i].question},
                      {"mode", run_mode_name(config_.mode)},
                      {"error", std::string(e.what())},
                      {"verdict", "unknown"}};
        }
        results[i] = qr.result;
        traces[i] = std::move(qr.trace);
      }
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    for (size_t i = 0; i < traces.size(); ++i) {
      std::ofstream tf(fs::path(out_dir) / "traces" /
                       (dataset.name + "_" + dataset.records[i].id + ".json"));
      tf << traces[i].dump(2) << "\n";
    }

    std::map<std::string, Verdict> gold;
    for (const auto& rec : dataset.records)
      if (rec.gold) gold[rec.id] = *rec.gold;
    report.datasets.push_back(compute_dataset_metrics(dataset.name, results, gold));
  }

  {
    std::ofstream rj(fs::path(out_dir) / "report.json");
    rj << report.to_json().dump(2) << "\n";
    std::ofstream rm(fs::path(out_dir) / "report.md");
    rm << report.to_markdown();
    std::ofstream rc(fs::path(out_dir) / "report.csv");
    rc << report.to_csv();
  }
  return report;
}

}  // namespace coreason
