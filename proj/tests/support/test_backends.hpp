#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "coreason/backend.hpp"
#include "coreason/errors.hpp"
#include "coreason/gateway.hpp"

namespace coreason::testing {

// Serves a fixed reply queue; complete() pops the front.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  std::string complete(const std::vector<ChatMessage>&, double, int, int) override {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    if (next_ >= replies_.size()) throw BackendUnavailable("scripted backend exhausted");
    return replies_[next_++];
  }

  int calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> replies_;
  size_t next_ = 0;
  int calls_ = 0;
};

// Routes every request through a user function.
class LambdaBackend final : public Backend {
 public:
  using Fn = std::function<std::string(const std::vector<ChatMessage>&, double, int, int)>;
  explicit LambdaBackend(Fn fn) : fn_(std::move(fn)) {}

  std::string complete(const std::vector<ChatMessage>& messages, double temperature,
                       int sample_index, int max_tokens) override {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    return fn_(messages, temperature, sample_index, max_tokens);
  }

  int calls() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return calls_;
  }

 private:
  mutable std::mutex mutex_;
  Fn fn_;
  int calls_ = 0;
};

// Gateway in live mode over a backend (no cache involved).
inline LlmGateway live_gateway(std::shared_ptr<Backend> backend) {
  return LlmGateway(PromptCatalog::builtin(), GatewayMode::live, std::move(backend), nullptr);
}

// Unique scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::mt19937_64 gen(std::random_device{}());
    path = std::filesystem::temp_directory_path() /
           ("coreason_test_" + std::to_string(gen()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace coreason::testing
