#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coreason/verdict.hpp"

namespace coreason {

// What metrics need to know about one answered question.
struct QuestionResult {
  std::string id;
  Verdict verdict = Verdict::unknown;  // unknown counts as incorrect
  long execs_attempted = 0;            // candidate slots, parse errors included
  long execs_ok = 0;                   // status ok with a definite verdict
  bool excluded = false;               // failed conceptualization; out of the denominator
};

struct DatasetMetrics {
  std::string name;
  long questions = 0;  // evaluated (excluded ones subtracted)
  long correct = 0;
  long excluded = 0;
  double accuracy = 0.0;  // correct / questions, in [0, 1]
  long execs_attempted = 0;
  long execs_ok = 0;

  double execution_rate() const {
    return execs_attempted == 0 ? 0.0
                                : static_cast<double>(execs_ok) /
                                      static_cast<double>(execs_attempted);
  }
};

// Aligns results with gold labels by id. Throws IdMismatch when a result has
// no gold entry.
DatasetMetrics compute_dataset_metrics(const std::string& name,
                                       const std::vector<QuestionResult>& results,
                                       const std::map<std::string, Verdict>& gold);

// Mean per-dataset difference (system - baseline); the Avg.Delta column.
// Inputs must be parallel and non-empty.
double average_delta(const std::vector<double>& system_accuracies,
                     const std::vector<double>& baseline_accuracies);

struct EvaluationReport {
  std::vector<DatasetMetrics> datasets;
  std::string baseline_name;                // empty = no baseline linked
  std::vector<double> baseline_accuracies;  // parallel to datasets when linked

  double unweighted_mean() const;        // plain mean of dataset accuracies
  double instance_weighted_mean() const; // total correct / total questions
  double overall_execution_rate() const; // per-execution aggregation
  bool has_baseline() const { return !baseline_name.empty(); }
  std::optional<double> avg_delta() const;

  // Matches datasets by name. Throws IdMismatch on a missing dataset.
  void link_baseline(const std::string& name, const EvaluationReport& baseline);

  nlohmann::json to_json() const;
  static EvaluationReport from_json(const nlohmann::json& j);
  std::string to_markdown() const;
  std::string to_csv() const;  // lossless: from_csv(to_csv(r)) == r
  static EvaluationReport from_csv(const std::string& text);
};

}  // namespace coreason
