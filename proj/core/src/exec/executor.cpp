#include "coreason/exec/executor.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>

#include "coreason/lang/interpreter.hpp"
#include "coreason/lang/parser.hpp"

namespace coreason {

namespace {

using Clock = std::chrono::steady_clock;

Kind kind_from_label(const std::string& label) {
  if (label == "bool") return Kind::boolean;
  if (label == "int") return Kind::integer;
  if (label == "float") return Kind::real;
  if (label == "str") return Kind::text;
  if (label == "list") return Kind::list_of_text;
  throw Error("unknown kind label: " + label);
}

bool send_all(int fd, const std::string& data) {
  size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    sent += static_cast<size_t>(n);
  }
  return true;
}

bool send_line(int fd, const nlohmann::json& msg) { return send_all(fd, msg.dump() + "\n"); }

// Blocking line reader for the child side.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}

  bool next(std::string& line) {
    while (true) {
      size_t nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return true;
      }
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      if (n == 0) return false;
      buffer_.append(chunk, static_cast<size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

// ask_llm proxy inside the sandboxed child.
class PipeBridge final : public lang::RetrievalBridge {
 public:
  explicit PipeBridge(int fd) : fd_(fd), reader_(fd) {}

  TypedValue ask(const std::string& query, Kind kind) override {
    nlohmann::json req{{"t", "ask"}, {"q", query}, {"k", kind_label(kind)}};
    if (!send_line(fd_, req))
      throw lang::ExecError(lang::ExecError::Kind::runtime, "retrieval bridge closed");
    std::string line;
    if (!reader_.next(line))
      throw lang::ExecError(lang::ExecError::Kind::runtime, "retrieval bridge closed");
    nlohmann::json reply = nlohmann::json::parse(line, nullptr, false);
    if (reply.is_discarded() || !reply.contains("ok"))
      throw lang::ExecError(lang::ExecError::Kind::runtime, "malformed bridge reply");
    if (!reply["ok"].get<bool>()) {
      throw lang::ExecError(lang::ExecError::Kind::runtime,
                            reply.value("e", std::string("retrieval failed")));
    }
    return TypedValue::from_json(reply.at("v"));
  }

 private:
  int fd_;
  LineReader reader_;
};

[[noreturn]] void child_main(int fd, const std::string& source, const SandboxPolicy& policy) {
  // CPU backstop slightly above the wall deadline; the interpreter's own
  // deadline check is what normally fires.
  rlimit cpu{};
  cpu.rlim_cur = static_cast<rlim_t>(std::ceil(policy.timeout_seconds)) + 2;
  cpu.rlim_max = cpu.rlim_cur + 2;
  setrlimit(RLIMIT_CPU, &cpu);
  if (policy.memory_limit_mb > 0) {
    rlimit mem{};
    mem.rlim_cur = mem.rlim_max = policy.memory_limit_mb * 1024ull * 1024ull;
    setrlimit(RLIMIT_AS, &mem);
  }

  std::string status = "ok";
  std::string err;
  std::string printed;
  int calls = 0;
  try {
    lang::Module module = lang::parse_module(source, lang::ModuleMode::executable);
    PipeBridge bridge(fd);
    lang::InterpreterLimits limits;
    limits.has_deadline = true;
    limits.deadline =
        Clock::now() + std::chrono::milliseconds(
                           static_cast<long long>(policy.timeout_seconds * 1000.0));
    limits.max_llm_calls = policy.max_llm_calls;
    lang::Interpreter interp(module, &bridge, limits);
    try {
      interp.run_module();
    } catch (...) {
      printed = interp.printed_output();
      calls = interp.llm_calls();
      throw;
    }
    printed = interp.printed_output();
    calls = interp.llm_calls();
  } catch (const lang::ParseError& e) {
    status = "parse_error";
    err = e.what();
  } catch (const lang::ExecError& e) {
    status = e.kind == lang::ExecError::Kind::timeout ? "timeout" : "runtime_error";
    err = e.what();
  } catch (const std::exception& e) {
    status = "runtime_error";
    err = e.what();
  }
  nlohmann::json res{{"t", "res"}, {"status", status}, {"out", printed},
                     {"calls", calls}, {"err", err}};
  send_line(fd, res);
  _exit(0);
}

}  // namespace

std::string exec_status_name(ExecStatus s) {
  switch (s) {
    case ExecStatus::ok: return "ok";
    case ExecStatus::runtime_error: return "runtime_error";
    case ExecStatus::timeout: return "timeout";
    case ExecStatus::parse_error: return "parse_error";
  }
  return "runtime_error";
}

ExecStatus exec_status_from_name(const std::string& s) {
  if (s == "ok") return ExecStatus::ok;
  if (s == "timeout") return ExecStatus::timeout;
  if (s == "parse_error") return ExecStatus::parse_error;
  return ExecStatus::runtime_error;
}

nlohmann::json ExecutionOutcome::to_json(bool include_wall_time) const {
  nlohmann::json j{{"status", exec_status_name(status)},
                   {"raw_output", raw_output},
                   {"verdict", verdict_name(verdict)},
                   {"llm_calls", llm_calls}};
  if (!error.empty()) j["error"] = error;
  if (include_wall_time) j["wall_time_ms"] = wall_time_ms;
  return j;
}

ExecutionOutcome ExecutionOutcome::from_json(const nlohmann::json& j) {
  ExecutionOutcome o;
  o.status = exec_status_from_name(j.at("status").get<std::string>());
  o.raw_output = j.at("raw_output").get<std::string>();
  o.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  o.llm_calls = j.at("llm_calls").get<int>();
  o.error = j.value("error", "");
  o.wall_time_ms = j.value("wall_time_ms", 0.0);
  return o;
}

Executor::Executor(LlmGateway& gateway, SandboxPolicy policy)
    : gateway_(gateway), policy_(policy) {}

ExecutionOutcome Executor::execute(const ExecutableUnit& unit) {
  ExecutionOutcome outcome;
  auto start = Clock::now();

  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, sv) != 0) {
    outcome.error = std::string("socketpair failed: ") + std::strerror(errno);
    return outcome;
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    outcome.error = std::string("fork failed: ") + std::strerror(errno);
    return outcome;
  }
  if (pid == 0) {
    ::close(sv[0]);
    child_main(sv[1], unit.source, policy_);
  }
  ::close(sv[1]);
  int fd = sv[0];

  // Give the child's clean self-timeout a grace window before force-killing.
  auto deadline = start + std::chrono::milliseconds(static_cast<long long>(
                              (policy_.timeout_seconds + 1.0) * 1000.0));
  std::string buffer;
  int asks_serviced = 0;
  bool got_result = false;
  bool forced_timeout = false;

  auto handle_line = [&](const std::string& line) {
    nlohmann::json msg = nlohmann::json::parse(line, nullptr, false);
    if (msg.is_discarded() || !msg.contains("t")) return;
    std::string type = msg["t"].get<std::string>();
    if (type == "ask") {
      ++asks_serviced;
      nlohmann::json reply;
      try {
        TypedValue v = gateway_.ask_typed(msg.at("q").get<std::string>(),
                                          kind_from_label(msg.at("k").get<std::string>()));
        reply = {{"t", "ans"}, {"ok", true}, {"v", v.to_json()}};
      } catch (const std::exception& e) {
        reply = {{"t", "ans"}, {"ok", false}, {"e", std::string(e.what())}};
      }
      send_line(fd, reply);
      return;
    }
    if (type == "res") {
      got_result = true;
      outcome.status = exec_status_from_name(msg.value("status", "runtime_error"));
      outcome.raw_output = msg.value("out", "");
      outcome.llm_calls = msg.value("calls", 0);
      outcome.error = msg.value("err", "");
    }
  };

  while (!got_result) {
    auto now = Clock::now();
    if (now >= deadline) {
      forced_timeout = true;
      break;
    }
    auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd pfd{fd, POLLIN, 0};
    int pr = ::poll(&pfd, 1, static_cast<int>(remaining));
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;  // loop re-checks the deadline
    char chunk[4096];
    ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;  // child closed without (or after) a result
    buffer.append(chunk, static_cast<size_t>(n));
    size_t nl;
    while (!got_result && (nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      handle_line(line);
    }
  }

  ::kill(pid, SIGKILL);
  int wstatus = 0;
  ::waitpid(pid, &wstatus, 0);
  ::close(fd);

  auto elapsed = std::chrono::duration<double, std::milli>(Clock::now() - start);
  outcome.wall_time_ms = elapsed.count();

  if (!got_result) {
    double timeout_ms = policy_.timeout_seconds * 1000.0;
    if (forced_timeout || outcome.wall_time_ms >= timeout_ms) {
      outcome.status = ExecStatus::timeout;
      outcome.error = "killed after exceeding the execution deadline";
    } else {
      outcome.status = ExecStatus::runtime_error;
      outcome.error = "sandbox exited without reporting a result";
    }
    outcome.llm_calls = asks_serviced;
  }
  outcome.verdict =
      outcome.status == ExecStatus::ok ? normalize_output(outcome.raw_output) : Verdict::unknown;
  return outcome;
}

ExecutionOutcome Executor::execute_program(const RewrittenProgram& program,
                                           const BindingMap& bindings) {
  ExecutableUnit unit;
  try {
    unit = assemble_executable(program, bindings);
  } catch (const Error& e) {
    ExecutionOutcome outcome;
    outcome.status = ExecStatus::runtime_error;
    outcome.error = e.what();
    return outcome;
  }
  return execute(unit);
}

}  // namespace coreason
