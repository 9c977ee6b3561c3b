#pragma once

#include <stdexcept>
#include <string>

namespace coreason {

// Base for all library errors so callers can catch the whole family at once.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- gateway ---
struct UnknownTemplate : Error {
  explicit UnknownTemplate(const std::string& name)
      : Error("unknown prompt template: " + name) {}
};
struct UnboundPlaceholder : Error {
  explicit UnboundPlaceholder(const std::string& slot)
      : Error("unbound placeholder: " + slot) {}
};
struct BackendUnavailable : Error {
  explicit BackendUnavailable(const std::string& why)
      : Error("backend unavailable: " + why) {}
};
struct ReplayMiss : Error {
  explicit ReplayMiss(const std::string& key)
      : Error("replay cache miss for key " + key) {}
};
struct RetrievalExhausted : Error {
  explicit RetrievalExhausted(const std::string& query)
      : Error("typed retrieval exhausted after 10 attempts: " + query) {}
};

// --- conceptualizer ---
struct ConceptualizationFailed : Error {
  explicit ConceptualizationFailed(const std::string& why)
      : Error("conceptualization failed: " + why) {}
};
struct MissingAbstractQuestionMarker : ConceptualizationFailed {
  MissingAbstractQuestionMarker()
      : ConceptualizationFailed("missing 'So the question becomes' marker") {}
};
struct MissingParametersMarker : ConceptualizationFailed {
  MissingParametersMarker()
      : ConceptualizationFailed("missing 'With parameters' marker") {}
};
struct NameMismatch : ConceptualizationFailed {
  explicit NameMismatch(const std::string& name)
      : ConceptualizationFailed("replacement/assignment name mismatch: " + name) {}
};

// --- program space ---
struct MissingBinding : Error {
  explicit MissingBinding(const std::string& name)
      : Error("missing binding for entry parameter: " + name) {}
};

// --- analogy ---
struct EmptyGeneration : Error {
  explicit EmptyGeneration(const std::string& what_for)
      : Error("generation produced nothing usable: " + what_for) {}
};
struct InsufficientSimilarQuestions : Error {
  InsufficientSimilarQuestions(int got, int minimum)
      : Error("only " + std::to_string(got) + " similar questions survived validation (minimum " +
              std::to_string(minimum) + ")") {}
};

// --- selector/refiner ---
struct NoFailures : Error {
  explicit NoFailures(const std::string& program_id)
      : Error("program has no failed cases to refine: " + program_id) {}
};

// --- harness ---
struct MalformedRecord : Error {
  MalformedRecord(int line, const std::string& why)
      : Error("malformed dataset record at line " + std::to_string(line) + ": " + why) {}
};
struct ConversionFailed : Error {
  explicit ConversionFailed(const std::string& why)
      : Error("binary-question conversion failed: " + why) {}
};
struct IdMismatch : Error {
  explicit IdMismatch(const std::string& id)
      : Error("trace/gold id mismatch: " + id) {}
};

}  // namespace coreason
