#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coreason/prompts.hpp"

namespace coreason {

// A chat-completion endpoint. Implementations must be safe to call from
// multiple threads. sample_index only disambiguates repeated draws; live
// HTTP backends ignore it.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages, double temperature,
                               int sample_index, int max_tokens) = 0;
};

struct HttpBackendConfig {
  std::string endpoint;     // e.g. https://api.openai.com/v1/chat/completions
  std::string model;
  std::string api_key_env;  // environment variable holding the key
  int connect_timeout_s = 10;
  int read_timeout_s = 180;
};

// OpenAI-style chat completions over HTTP(S). Throws BackendUnavailable on
// transport or protocol failure.
std::unique_ptr<Backend> make_http_backend(const HttpBackendConfig& config);

}  // namespace coreason
