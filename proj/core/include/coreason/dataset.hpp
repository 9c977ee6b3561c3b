#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coreason/gateway.hpp"
#include "coreason/verdict.hpp"

namespace coreason {

struct DatasetRecord {
  std::string id;
  std::string question;
  std::optional<Verdict> gold;  // required for evaluation runs
  std::string origin;           // dataset name
};

// JSONL, one {"id", "question", "answer"} object per line ("answer" may be
// omitted when require_gold is false). Throws MalformedRecord with the line
// number.
std::vector<DatasetRecord> load_dataset_jsonl(const std::string& path, bool require_gold = true,
                                              const std::string& origin = "");

// Deterministic seeded subsample preserving original order. Returns the
// whole input when n >= size.
std::vector<DatasetRecord> sample_records(const std::vector<DatasetRecord>& records, std::size_t n,
                                          std::uint64_t seed);

// Merges a multiple-choice question and its correct answer into a yes/no
// question whose gold answer is yes. Throws ConversionFailed when the reply
// is not an interrogative yes/no form or merely echoes the stem.
DatasetRecord convert_mcq_to_binary(LlmGateway& gateway, const std::string& question,
                                    const std::string& correct_choice, const std::string& id,
                                    const std::string& origin, double temperature = 0.7);

}  // namespace coreason
