#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "coreason/backend.hpp"
#include "coreason/prompts.hpp"
#include "coreason/replay_cache.hpp"
#include "coreason/typed_value.hpp"

namespace coreason {

enum class GatewayMode { live, record, replay };

GatewayMode gateway_mode_from_name(const std::string& s);
std::string gateway_mode_name(GatewayMode m);

struct LlmRequest {
  std::string template_name;
  std::map<std::string, std::string> slot_values;
  double temperature = 0.7;
  int sample_index = 0;
  int max_tokens = 512;
};

struct LlmResponse {
  enum class Source { live, replay };
  std::string text;
  Source source = Source::live;
};

// Backend-agnostic LLM access with a deterministic record/replay cache and
// the typed-retrieval primitive. Thread-safe; cache appends are serialized
// by the store's single writer.
class LlmGateway {
 public:
  // replay mode needs only a cache; live mode needs only a backend; record
  // mode needs both.
  LlmGateway(PromptCatalog catalog, GatewayMode mode, std::shared_ptr<Backend> backend,
             std::shared_ptr<CacheStore> cache);

  std::vector<ChatMessage> render(const std::string& template_name,
                                  const std::map<std::string, std::string>& slot_values) const;

  LlmResponse complete(const LlmRequest& request);

  // n completions with sample_index 0..n-1, in that order.
  std::vector<LlmResponse> sample_n(const std::string& template_name,
                                    const std::map<std::string, std::string>& slot_values, int n,
                                    double temperature, int max_tokens = 512);

  // Short factual query answered in the expected kind. Retries with fresh
  // samples on parse/cast failure; at most 10 backend calls, then throws
  // RetrievalExhausted.
  TypedValue ask_typed(const std::string& query, Kind expected);

  GatewayMode mode() const { return mode_; }
  const PromptCatalog& catalog() const { return catalog_; }

  // Per-thread observer for trace auditing: receives every cache key this
  // thread issues. The pointer must outlive its installation.
  static void set_key_observer(std::vector<CacheKey>* observer);

  static constexpr int kMaxRetrievalAttempts = 10;

 private:
  PromptCatalog catalog_;
  GatewayMode mode_;
  std::shared_ptr<Backend> backend_;
  std::shared_ptr<CacheStore> cache_;
};

// Extracts the "answer" payload from a retrieval completion. Accepts strict
// JSON objects and the looser near-JSON the few-shot examples exhibit (bare
// string values). Returns false when no payload can be recovered.
bool extract_answer_payload(const std::string& completion, nlohmann::json& out);

}  // namespace coreason
