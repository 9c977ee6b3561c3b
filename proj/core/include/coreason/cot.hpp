#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "coreason/gateway.hpp"
#include "coreason/verdict.hpp"

namespace coreason {

struct CoTSample {
  std::string text;
  Verdict verdict = Verdict::unknown;  // extract_verdict(text)
};

struct ConsensusResult {
  std::vector<CoTSample> samples;
  Verdict verdict = Verdict::unknown;  // strict majority; draw -> unknown
  double agreement = 0.0;              // max(#yes, #no) / K

  nlohmann::json to_json() const;
  static ConsensusResult from_json(const nlohmann::json& j);
};

// Reads the yes/no token after the last "the answer is" marker
// (case-insensitive); without a marker, falls back to normalizing the final
// sentence. Unresolvable text is unknown.
Verdict extract_verdict(const std::string& text);

// Aggregates verdicts over the given samples: unknowns count toward neither
// side but stay in the agreement denominator.
ConsensusResult aggregate_verdicts(std::vector<CoTSample> samples);

// Samples k chain-of-thought rationales and aggregates them.
ConsensusResult cot_consensus(LlmGateway& gateway, const std::string& question, int k,
                              double temperature, int max_tokens = 512);

}  // namespace coreason
