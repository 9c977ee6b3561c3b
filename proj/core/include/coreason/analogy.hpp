#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coreason/conceptualizer.hpp"
#include "coreason/cot.hpp"
#include "coreason/gateway.hpp"

namespace coreason {

enum class Polarity { positive, negative };
std::string polarity_name(Polarity p);
Polarity polarity_from_name(const std::string& s);

struct EntityCandidate {
  std::string parameter_name;
  std::string value;  // always differs from the original binding
};

struct GeneratedStatement {
  std::string text;
  Polarity polarity = Polarity::positive;
  BindingMap bindings;  // covers all parameters of the abstract question
};

struct SimilarQuestion {
  std::string text;
  BindingMap bindings;
  Verdict silver_label = Verdict::unknown;  // the consensus verdict, not the intent
  double agreement = 0.0;
  Polarity polarity = Polarity::positive;
};

// A validated similar question plus the CoT samples that validated it; the
// samples feed self-refinement later.
struct ValidatedQuestion {
  SimilarQuestion question;
  ConsensusResult consensus;
};

struct AnalogyTargets {
  int entities_per_parameter = 6;
  int statements_per_pair = 5;  // per (entity, polarity)
  int target_validated = 10;
  int minimum_validated = 4;
};

struct AnalogyParams {
  double generation_temperature = 1.0;  // diversity for entity/statement prompts
  double validation_temperature = 0.7;
  int validation_k = 10;
  double agreement_threshold = 0.8;  // accept at >= 8/10
  int max_tokens = 512;
};

// Mechanical declarativization of an auxiliary-led binary question, keeping
// every semantic label intact. Returns nullopt when the shape is not
// recognized (callers fall back to prompting the model).
std::optional<std::string> declarativize(const AbstractQuestion& q, Polarity polarity);

nlohmann::json similar_set_to_json(const std::string& abstract_id,
                                   const std::vector<ValidatedQuestion>& set);
std::vector<ValidatedQuestion> similar_set_from_json(const nlohmann::json& j);

// Entity generation, statement generation, statement-to-question conversion
// and the CoT agreement filter. All prompting goes through the downstream
// gateway, never the conceptualizing one.
class AnalogyGenerator {
 public:
  AnalogyGenerator(LlmGateway& gateway, AnalogyParams params = {});

  // Entities for one parameter, one per line up to the END marker,
  // deduplicated, original value dropped. Throws EmptyGeneration.
  std::vector<EntityCandidate> generate_entities(const AbstractQuestion& q,
                                                 const ParameterSpec& parameter, int n);

  // Statements with the entity fixed and remaining slots filled by the
  // model; negative polarity negates the statement template before
  // prompting. Throws EmptyGeneration when no line parses.
  std::vector<GeneratedStatement> generate_statements(const AbstractQuestion& q,
                                                      const EntityCandidate& entity,
                                                      Polarity polarity, int m);

  // Interrogative form: bindings substituted into the abstract template.
  std::string statement_to_question(const GeneratedStatement& statement,
                                    const AbstractQuestion& q) const;

  // CoT consensus at K samples; accepted iff agreement clears the threshold.
  // The silver label is the consensus verdict even when it contradicts the
  // generation intent. Rejection returns nullopt.
  std::optional<ValidatedQuestion> validate(const std::string& question_text,
                                            const BindingMap& bindings, Polarity intended);

  // Full pipeline: entities -> statements -> questions -> validation, until
  // the target count is reached or candidates are exhausted; positive and
  // negative survivors kept as balanced as the pool allows. Throws
  // InsufficientSimilarQuestions below the minimum.
  std::vector<ValidatedQuestion> acquire_similar_set(const AbstractQuestion& q,
                                                     const AnalogyTargets& targets);

  const AnalogyParams& params() const { return params_; }

 private:
  std::string statement_template(const AbstractQuestion& q, Polarity polarity);

  LlmGateway& gateway_;
  AnalogyParams params_;
};

}  // namespace coreason
