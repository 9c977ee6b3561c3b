#include <cstdlib>

#if defined(COREASON_HAVE_OPENSSL)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

#include "coreason/backend.hpp"
#include "coreason/errors.hpp"

namespace coreason {

namespace {

struct ParsedUrl {
  std::string scheme_host;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw BackendUnavailable("bad endpoint URL: " + url);
  size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    if (!config_.api_key_env.empty()) {
      if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
    }
  }

  std::string complete(const std::vector<ChatMessage>& messages, double temperature,
                       int /*sample_index*/, int max_tokens) override {
    nlohmann::json body;
    body["model"] = config_.model;
    body["temperature"] = temperature;
    body["max_tokens"] = max_tokens;
    auto msgs = nlohmann::json::array();
    for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
    body["messages"] = std::move(msgs);

    ParsedUrl url = split_url(config_.endpoint);
    httplib::Client client(url.scheme_host);
    client.set_connection_timeout(config_.connect_timeout_s);
    client.set_read_timeout(config_.read_timeout_s);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(url.path, headers, body.dump(), "application/json");
    if (!res) {
      throw BackendUnavailable(config_.endpoint + ": " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw BackendUnavailable(config_.endpoint + ": HTTP " + std::to_string(res->status) +
                               " " + res->body.substr(0, 400));
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) throw BackendUnavailable("non-JSON completion body");
    try {
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendUnavailable(std::string("unexpected completion shape: ") + e.what());
    }
  }

 private:
  HttpBackendConfig config_;
  std::string api_key_;
};

}  // namespace

std::unique_ptr<Backend> make_http_backend(const HttpBackendConfig& config) {
  return std::make_unique<HttpBackend>(config);
}

}  // namespace coreason
