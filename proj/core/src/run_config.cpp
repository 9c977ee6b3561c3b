#include "coreason/run_config.hpp"

#include <fstream>

#include "coreason/errors.hpp"

namespace coreason {

std::string run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::cot: return "cot";
    case RunMode::program: return "program";
    case RunMode::selection: return "selection";
    case RunMode::refine: return "refine";
  }
  return "program";
}

RunMode run_mode_from_name(const std::string& s) {
  if (s == "cot") return RunMode::cot;
  if (s == "program") return RunMode::program;
  if (s == "selection") return RunMode::selection;
  if (s == "refine") return RunMode::refine;
  throw Error("unknown run mode: " + s);
}

void RunConfig::validate() const {
  if (k_samples < 1) throw Error("k_samples must be >= 1");
  if (agreement_threshold <= 0.0 || agreement_threshold > 1.0)
    throw Error("agreement_threshold must be in (0, 1]");
  if (timeout_seconds <= 0.0) throw Error("timeout_seconds must be positive");
  if (workers < 1) throw Error("workers must be >= 1");
  if (backend.mode != "live" && backend.mode != "record" && backend.mode != "replay")
    throw Error("backend.mode must be live|record|replay");
}

namespace {

nlohmann::json backend_to_json(const BackendSection& b) {
  return {{"mode", b.mode},
          {"endpoint", b.endpoint},
          {"model", b.model},
          {"api_key_env", b.api_key_env},
          {"cache_path", b.cache_path}};
}

BackendSection backend_from_json(const nlohmann::json& j) {
  BackendSection b;
  b.mode = j.value("mode", b.mode);
  b.endpoint = j.value("endpoint", b.endpoint);
  b.model = j.value("model", b.model);
  b.api_key_env = j.value("api_key_env", b.api_key_env);
  b.cache_path = j.value("cache_path", b.cache_path);
  return b;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j{
      {"mode", run_mode_name(mode)},
      {"k_samples", k_samples},
      {"agreement_threshold", agreement_threshold},
      {"temperatures",
       {{"inference", inference_temperature}, {"generation", generation_temperature}}},
      {"top_t", top_t},
      {"max_cases", max_cases},
      {"similar_targets",
       {{"entities_per_parameter", similar_targets.entities_per_parameter},
        {"statements_per_pair", similar_targets.statements_per_pair},
        {"target_validated", similar_targets.target_validated},
        {"minimum_validated", similar_targets.minimum_validated}}},
      {"timeout_seconds", timeout_seconds},
      {"max_llm_calls", max_llm_calls},
      {"program_max_tokens", program_max_tokens},
      {"default_max_tokens", default_max_tokens},
      {"workers", workers},
      {"out_dir", out_dir},
      {"backend", backend_to_json(backend)},
  };
  if (conceptualizer_backend) j["conceptualizer_backend"] = backend_to_json(*conceptualizer_backend);
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("mode")) c.mode = run_mode_from_name(j["mode"].get<std::string>());
  c.k_samples = j.value("k_samples", c.k_samples);
  c.agreement_threshold = j.value("agreement_threshold", c.agreement_threshold);
  if (j.contains("temperatures")) {
    c.inference_temperature = j["temperatures"].value("inference", c.inference_temperature);
    c.generation_temperature = j["temperatures"].value("generation", c.generation_temperature);
  }
  c.top_t = j.value("top_t", c.top_t);
  c.max_cases = j.value("max_cases", c.max_cases);
  if (j.contains("similar_targets")) {
    const auto& t = j["similar_targets"];
    c.similar_targets.entities_per_parameter =
        t.value("entities_per_parameter", c.similar_targets.entities_per_parameter);
    c.similar_targets.statements_per_pair =
        t.value("statements_per_pair", c.similar_targets.statements_per_pair);
    c.similar_targets.target_validated =
        t.value("target_validated", c.similar_targets.target_validated);
    c.similar_targets.minimum_validated =
        t.value("minimum_validated", c.similar_targets.minimum_validated);
  }
  c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  c.max_llm_calls = j.value("max_llm_calls", c.max_llm_calls);
  c.program_max_tokens = j.value("program_max_tokens", c.program_max_tokens);
  c.default_max_tokens = j.value("default_max_tokens", c.default_max_tokens);
  c.workers = j.value("workers", c.workers);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (j.contains("backend")) c.backend = backend_from_json(j["backend"]);
  if (j.contains("conceptualizer_backend"))
    c.conceptualizer_backend = backend_from_json(j["conceptualizer_backend"]);
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace coreason
