#pragma once

#include <string>

#include "json.hpp"

#include "coreason/exec/assemble.hpp"
#include "coreason/gateway.hpp"
#include "coreason/program.hpp"
#include "coreason/verdict.hpp"

namespace coreason {

enum class ExecStatus { ok, runtime_error, timeout, parse_error };

std::string exec_status_name(ExecStatus s);
ExecStatus exec_status_from_name(const std::string& s);

struct ExecutionOutcome {
  ExecStatus status = ExecStatus::runtime_error;
  std::string raw_output;
  Verdict verdict = Verdict::unknown;  // definite only when status == ok
  int llm_calls = 0;
  double wall_time_ms = 0;
  std::string error;  // diagnostic when status != ok

  bool successful() const { return status == ExecStatus::ok && verdict != Verdict::unknown; }

  // wall time is volatile across runs; trace files omit it.
  nlohmann::json to_json(bool include_wall_time = true) const;
  static ExecutionOutcome from_json(const nlohmann::json& j);
};

struct SandboxPolicy {
  double timeout_seconds = 120.0;
  int max_llm_calls = 200;
  std::size_t memory_limit_mb = 512;
};

// Runs executable units in a forked child process. The child has no
// capability beyond a pipe back to this process, which services ask_llm
// requests through the gateway (so record/replay covers in-program
// retrievals). The child self-enforces the deadline and call budget; the
// parent SIGKILLs it as a backstop.
class Executor {
 public:
  explicit Executor(LlmGateway& gateway, SandboxPolicy policy = {});

  ExecutionOutcome execute(const ExecutableUnit& unit);

  // assemble + execute; assembly failures fold into the outcome as
  // runtime errors.
  ExecutionOutcome execute_program(const RewrittenProgram& program, const BindingMap& bindings);

  const SandboxPolicy& policy() const { return policy_; }

 private:
  LlmGateway& gateway_;
  SandboxPolicy policy_;
};

}  // namespace coreason
