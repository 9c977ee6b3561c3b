#include "doctest.h"

#include "test_backends.hpp"

#include "coreason/exec/executor.hpp"

using namespace coreason;
using coreason::testing::LambdaBackend;
using coreason::testing::ScriptedBackend;

namespace {

LlmGateway ask_gateway(std::function<std::string(const std::string&)> answer_for_query) {
  auto backend = std::make_shared<LambdaBackend>(
      [fn = std::move(answer_for_query)](const std::vector<ChatMessage>& messages, double, int,
                                         int) { return fn(messages.back().content); });
  return coreason::testing::live_gateway(backend);
}

RewrittenProgram prepare(const std::string& source) {
  return rewrite_soft_operators(parse_program(source));
}

}  // namespace

TEST_SUITE("executor") {

TEST_CASE("constant program prints its return verbatim") {
  LlmGateway gw = ask_gateway([](const std::string&) { return R"({"answer": true})"; });
  Executor executor(gw, {5.0, 50});
  RewrittenProgram p = prepare("def answer():\n    return \"Must be yes\"\n");
  ExecutionOutcome outcome = executor.execute_program(p, {});
  CHECK(outcome.status == ExecStatus::ok);
  CHECK(outcome.raw_output == "Must be yes\n");
  CHECK(outcome.verdict == Verdict::yes);
  CHECK(outcome.llm_calls == 0);
}

TEST_CASE("bindings reach the entry function typed") {
  LlmGateway gw = ask_gateway([](const std::string&) { return "{}"; });
  Executor executor(gw, {5.0, 50});
  RewrittenProgram p = prepare(
      "def answer(city_x: str, population_y: int):\n"
      "    if population_y > 50000:\n"
      "        return \"Must be yes\"\n"
      "    return \"Must be no\"\n");
  BindingMap bindings{{"city_x", TypedValue::text("Albany, Georgia")},
                      {"population_y", TypedValue::integer(100000)}};
  ExecutionOutcome outcome = executor.execute_program(p, bindings);
  CHECK(outcome.status == ExecStatus::ok);
  CHECK(outcome.verdict == Verdict::yes);
}

TEST_CASE("missing binding folds into a runtime error outcome") {
  LlmGateway gw = ask_gateway([](const std::string&) { return "{}"; });
  Executor executor(gw, {5.0, 50});
  RewrittenProgram p = prepare("def answer(x: str):\n    return \"Must be yes\"\n");
  ExecutionOutcome outcome = executor.execute_program(p, {});
  CHECK(outcome.status == ExecStatus::runtime_error);
  CHECK(outcome.verdict == Verdict::unknown);
  // direct assembly still throws for API users
  CHECK_THROWS_AS(assemble_executable(p, {}), MissingBinding);
}

TEST_CASE("in-program retrieval goes through the gateway bridge") {
  LlmGateway gw = ask_gateway([](const std::string& query) -> std::string {
    if (query.find("Which countries") != std::string::npos)
      return R"({"answer": ["Portugal", "Spain"]})";
    return R"({"answer": true})";
  });
  Executor executor(gw, {5.0, 50});
  RewrittenProgram p = prepare(
      "def countries(war: str) -> list:\n"
      "    return ask_llm(f\"Which countries were involved in {war}?\", list)\n"
      "def answer(war_x: str):\n"
      "    for c in countries(war_x):\n"
      "        if in_override(c, [\"Spain\"]):\n"
      "            return \"Must be yes\"\n"
      "    return \"Must be no\"\n");
  ExecutionOutcome outcome =
      executor.execute_program(p, {{"war_x", TypedValue::text("some war")}});
  CHECK(outcome.status == ExecStatus::ok);
  CHECK(outcome.verdict == Verdict::yes);
  // one list retrieval + soft membership checks (reflexive hit for Spain is free)
  CHECK(outcome.llm_calls >= 2);
}

TEST_CASE("retrieval exhaustion surfaces as a runtime error") {
  auto backend = std::make_shared<ScriptedBackend>(
      std::vector<std::string>(30, "no payload here"));
  LlmGateway gw = coreason::testing::live_gateway(backend);
  Executor executor(gw, {5.0, 50});
  RewrittenProgram p = prepare(
      "def answer():\n"
      "    x = ask_llm(\"q\", int)\n"
      "    return \"Must be yes\"\n");
  ExecutionOutcome outcome = executor.execute_program(p, {});
  CHECK(outcome.status == ExecStatus::runtime_error);
  CHECK(outcome.verdict == Verdict::unknown);
  CHECK(outcome.error.find("exhausted") != std::string::npos);
  CHECK_FALSE(outcome.successful());  // counts against the execution rate
}

TEST_CASE("runaway recursion times out") {
  LlmGateway gw = ask_gateway([](const std::string&) { return "{}"; });
  Executor executor(gw, {1.0, 10});
  // depth stays under the recursion cap while work grows exponentially
  RewrittenProgram p = prepare(
      "def burn(n: int) -> int:\n"
      "    if n < 2:\n"
      "        return 1\n"
      "    return burn(n - 1) + burn(n - 2)\n"
      "def answer():\n"
      "    x = burn(150)\n"
      "    return \"Must be yes\"\n");
  ExecutionOutcome outcome = executor.execute_program(p, {});
  CHECK(outcome.status == ExecStatus::timeout);
  CHECK(outcome.verdict == Verdict::unknown);
}

TEST_CASE("parse failures inside the unit report parse_error") {
  LlmGateway gw = ask_gateway([](const std::string&) { return "{}"; });
  Executor executor(gw, {5.0, 50});
  ExecutableUnit unit;
  unit.source = "def answer(:\n";
  ExecutionOutcome outcome = executor.execute(unit);
  CHECK(outcome.status == ExecStatus::parse_error);
  CHECK(outcome.verdict == Verdict::unknown);
}

TEST_CASE("normalize_output drives the verdict") {
  CHECK(normalize_output("Must be yes") == Verdict::yes);
  CHECK(normalize_output("Must be no") == Verdict::no);
  CHECK(normalize_output("") == Verdict::unknown);
  CHECK(normalize_output("maybe yes maybe no") == Verdict::unknown);
  CHECK(normalize_output("YES!") == Verdict::yes);
  CHECK(normalize_output("I know nothing") == Verdict::unknown);  // token boundaries
  CHECK(normalize_output("eyes wide") == Verdict::unknown);
}

TEST_CASE("outcome json omits wall time for traces") {
  ExecutionOutcome o;
  o.status = ExecStatus::ok;
  o.raw_output = "Must be no\n";
  o.verdict = Verdict::no;
  o.llm_calls = 3;
  o.wall_time_ms = 12.5;
  nlohmann::json with_time = o.to_json(true);
  CHECK(with_time.contains("wall_time_ms"));
  nlohmann::json trace = o.to_json(false);
  CHECK_FALSE(trace.contains("wall_time_ms"));
  ExecutionOutcome back = ExecutionOutcome::from_json(with_time);
  CHECK(back.status == o.status);
  CHECK(back.llm_calls == 3);
}

}  // TEST_SUITE
