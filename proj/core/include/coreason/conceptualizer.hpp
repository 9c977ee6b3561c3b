#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coreason/gateway.hpp"
#include "coreason/typed_value.hpp"
#include "coreason/verdict.hpp"

namespace coreason {

struct ConcreteQuestion {
  std::string id;
  std::string text;
  std::optional<Verdict> gold;  // absent at pure inference time
};

// One replaced noun phrase: "Rusev" -> "Person X" (person_x: str), plus the
// concrete value bound from the original question.
struct ParameterSpec {
  std::string name;            // snake-case identifier
  std::string semantic_label;  // e.g. "Person X"
  Kind value_kind = Kind::text;
  TypedValue value;
};

struct AbstractQuestion {
  std::string source_id;
  std::string template_text;  // contains every semantic_label verbatim
  std::vector<ParameterSpec> parameters;

  const ParameterSpec* find_parameter(const std::string& name) const;
  const ParameterSpec* find_by_label(const std::string& label) const;

  nlohmann::json to_json() const;
  static AbstractQuestion from_json(const nlohmann::json& j);
};

using BindingMap = std::map<std::string, TypedValue>;  // parameter name -> value

// Replaces every semantic label in template_text with the bound value.
// Throws MissingBinding when a label's parameter has no binding.
std::string substitute_bindings(const AbstractQuestion& q, const BindingMap& bindings);

// Bindings carried by the abstract question itself (the original values).
BindingMap original_bindings(const AbstractQuestion& q);

// template_text with "(name: pytype)" appended after every label occurrence,
// the form program-generation and refinement prompts expect.
std::string annotated_question(const AbstractQuestion& q);

// Parses the structured free-text reply of the conceptualization prompt:
// replacement clauses «"noun" to "Label" (name: kind)», the sentence after
// "So the question becomes", and the assignments after "With parameters".
// Throws MissingAbstractQuestionMarker / MissingParametersMarker /
// NameMismatch / ConceptualizationFailed.
AbstractQuestion parse_conceptualization(const std::string& raw, const std::string& source_id);

// Inverse of parse_conceptualization for syntactically valid structures.
std::string serialize_conceptualization(const AbstractQuestion& q);

class Conceptualizer {
 public:
  // The conceptualizing gateway is configured independently of the
  // downstream model's gateway.
  explicit Conceptualizer(LlmGateway& gateway, double temperature = 0.7, int max_tokens = 512);

  // Single completion, parsed. Throws ConceptualizationFailed (with the raw
  // reply retained in last_raw()) when the reply does not parse.
  AbstractQuestion conceptualize(const ConcreteQuestion& question);

  const std::string& last_raw() const { return last_raw_; }

 private:
  LlmGateway& gateway_;
  double temperature_;
  int max_tokens_;
  std::string last_raw_;
};

}  // namespace coreason
