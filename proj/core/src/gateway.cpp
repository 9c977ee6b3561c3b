#include "coreason/gateway.hpp"

#include <cctype>

#include "coreason/errors.hpp"

namespace coreason {

namespace {
thread_local std::vector<CacheKey>* t_key_observer = nullptr;
}

GatewayMode gateway_mode_from_name(const std::string& s) {
  if (s == "live") return GatewayMode::live;
  if (s == "record") return GatewayMode::record;
  if (s == "replay") return GatewayMode::replay;
  throw Error("unknown gateway mode: " + s);
}

std::string gateway_mode_name(GatewayMode m) {
  switch (m) {
    case GatewayMode::live: return "live";
    case GatewayMode::record: return "record";
    case GatewayMode::replay: return "replay";
  }
  return "live";
}

LlmGateway::LlmGateway(PromptCatalog catalog, GatewayMode mode, std::shared_ptr<Backend> backend,
                       std::shared_ptr<CacheStore> cache)
    : catalog_(std::move(catalog)), mode_(mode), backend_(std::move(backend)),
      cache_(std::move(cache)) {
  if (mode_ != GatewayMode::replay && !backend_) {
    throw BackendUnavailable("no live backend configured for mode " + gateway_mode_name(mode_));
  }
  if (mode_ != GatewayMode::live && !cache_) {
    throw BackendUnavailable("no cache store configured for mode " + gateway_mode_name(mode_));
  }
}

void LlmGateway::set_key_observer(std::vector<CacheKey>* observer) { t_key_observer = observer; }

std::vector<ChatMessage> LlmGateway::render(
    const std::string& template_name,
    const std::map<std::string, std::string>& slot_values) const {
  return catalog_.render(template_name, slot_values);
}

LlmResponse LlmGateway::complete(const LlmRequest& request) {
  CacheKey key{request.template_name, request.slot_values, request.temperature,
               request.sample_index};
  if (t_key_observer) t_key_observer->push_back(key);

  if (mode_ != GatewayMode::live) {
    if (auto hit = cache_->lookup(key)) {
      return {*hit, LlmResponse::Source::replay};
    }
    if (mode_ == GatewayMode::replay) throw ReplayMiss(key.hash_hex());
  }

  // live or record miss: render validates the template and slots up front.
  std::vector<ChatMessage> messages = render(request.template_name, request.slot_values);
  std::string text =
      backend_->complete(messages, request.temperature, request.sample_index, request.max_tokens);
  if (mode_ == GatewayMode::record) cache_->append(key, text);
  return {text, LlmResponse::Source::live};
}

std::vector<LlmResponse> LlmGateway::sample_n(
    const std::string& template_name, const std::map<std::string, std::string>& slot_values,
    int n, double temperature, int max_tokens) {
  if (n < 1) throw Error("sample_n requires n >= 1");
  std::vector<LlmResponse> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    LlmRequest req{template_name, slot_values, temperature, i, max_tokens};
    out.push_back(complete(req));
  }
  return out;
}

bool extract_answer_payload(const std::string& completion, nlohmann::json& out) {
  // Strict pass first: the first {...} span that parses as an object.
  size_t open = completion.find('{');
  while (open != std::string::npos) {
    int depth = 0;
    bool in_string = false;
    for (size_t i = open; i < completion.size(); ++i) {
      char c = completion[i];
      if (in_string) {
        if (c == '\\') ++i;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}') {
        if (--depth == 0) {
          std::string span = completion.substr(open, i - open + 1);
          nlohmann::json j = nlohmann::json::parse(span, nullptr, false);
          if (j.is_object() && j.contains("answer")) {
            out = j["answer"];
            return true;
          }
          break;
        }
      }
    }
    open = completion.find('{', open + 1);
  }

  // Lenient pass: locate "answer" and take whatever follows the colon. The
  // retrieval few-shot itself shows {"answer": singer}, which is not JSON.
  size_t pos = completion.find("\"answer\"");
  if (pos == std::string::npos) pos = completion.find("answer");
  if (pos == std::string::npos) return false;
  size_t colon = completion.find(':', pos);
  if (colon == std::string::npos) return false;
  size_t begin = colon + 1;
  while (begin < completion.size() &&
         std::isspace(static_cast<unsigned char>(completion[begin])))
    ++begin;
  if (begin >= completion.size()) return false;
  size_t end = completion.find_last_of('}');
  if (end == std::string::npos || end < begin) end = completion.size();
  std::string raw = completion.substr(begin, end - begin);
  while (!raw.empty() && (std::isspace(static_cast<unsigned char>(raw.back())) ||
                          raw.back() == '}' || raw.back() == ','))
    raw.pop_back();
  if (raw.empty()) return false;

  nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
  if (!j.is_discarded()) {
    out = j;
    return true;
  }
  // Bare unquoted string value.
  if (raw.front() == '"' && raw.back() == '"' && raw.size() >= 2) {
    out = raw.substr(1, raw.size() - 2);
  } else {
    out = raw;
  }
  return true;
}

TypedValue LlmGateway::ask_typed(const std::string& query, Kind expected) {
  std::map<std::string, std::string> slots{{"query", query}, {"kind", kind_label(expected)}};
  for (int attempt = 0; attempt < kMaxRetrievalAttempts; ++attempt) {
    LlmRequest req{"ask_llm", slots, 0.7, attempt, 512};
    LlmResponse resp = complete(req);
    nlohmann::json payload;
    if (!extract_answer_payload(resp.text, payload)) continue;
    TypedValue value;
    if (cast_json_to_kind(payload, expected, value)) return value;
  }
  throw RetrievalExhausted(query);
}

}  // namespace coreason
