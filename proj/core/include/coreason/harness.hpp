#pragma once

#include <string>
#include <vector>

#include "coreason/dataset.hpp"
#include "coreason/gateway.hpp"
#include "coreason/metrics.hpp"
#include "coreason/run_config.hpp"

namespace coreason {

struct LabeledDataset {
  std::string name;
  std::vector<DatasetRecord> records;
};

// Experiment orchestration across the four inference modes. Per-question
// failures are recorded in traces and never abort a run. Every trace is
// deterministic under replay (no timestamps, no wall-clock fields).
class Harness {
 public:
  Harness(RunConfig config, LlmGateway& downstream, LlmGateway& conceptualizing);

  struct QuestionRun {
    QuestionResult result;
    nlohmann::json trace;
  };

  // The full pipeline for one question under the configured mode.
  QuestionRun run_question(const DatasetRecord& record);

  // Runs every dataset, writes config/traces/report under out_dir, returns
  // the report. Gold labels are required.
  EvaluationReport run(const std::vector<LabeledDataset>& datasets, const std::string& out_dir);

  const RunConfig& config() const { return config_; }

 private:
  QuestionRun run_cot(const DatasetRecord& record);
  QuestionRun run_programmatic(const DatasetRecord& record);

  RunConfig config_;
  LlmGateway& downstream_;
  LlmGateway& conceptualizing_;
};

}  // namespace coreason
