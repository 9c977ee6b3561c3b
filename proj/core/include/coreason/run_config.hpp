#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "coreason/analogy.hpp"

namespace coreason {

enum class RunMode { cot, program, selection, refine };
std::string run_mode_name(RunMode m);
RunMode run_mode_from_name(const std::string& s);

struct BackendSection {
  std::string mode = "replay";  // live | record | replay
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  std::string cache_path = "cache.jsonl";
};

struct RunConfig {
  RunMode mode = RunMode::program;
  int k_samples = 10;
  double agreement_threshold = 0.8;
  double inference_temperature = 0.7;
  double generation_temperature = 1.0;  // similar-question prompts
  int top_t = 2;
  int max_cases = 2;
  AnalogyTargets similar_targets;
  double timeout_seconds = 120.0;
  int max_llm_calls = 200;
  int program_max_tokens = 1024;
  int default_max_tokens = 512;
  int workers = 1;
  std::string out_dir = "runs/latest";
  BackendSection backend;
  // the conceptualizing model is configured independently; absent = same
  std::optional<BackendSection> conceptualizer_backend;

  void validate() const;  // throws Error on out-of-range fields
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
};

}  // namespace coreason
