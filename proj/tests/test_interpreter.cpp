#include "doctest.h"

#include <functional>

#include "coreason/lang/interpreter.hpp"
#include "coreason/lang/parser.hpp"

using namespace coreason;
using namespace coreason::lang;

namespace {

class LambdaBridge final : public RetrievalBridge {
 public:
  using Fn = std::function<TypedValue(const std::string&, Kind)>;
  explicit LambdaBridge(Fn fn) : fn_(std::move(fn)) {}
  TypedValue ask(const std::string& query, Kind kind) override {
    ++calls_;
    return fn_(query, kind);
  }
  int calls() const { return calls_; }

 private:
  Fn fn_;
  int calls_ = 0;
};

std::string run_source(const std::string& src, RetrievalBridge* bridge = nullptr) {
  Module m = parse_module(src, ModuleMode::executable);
  Interpreter interp(m, bridge);
  interp.run_module();
  return interp.printed_output();
}

}  // namespace

TEST_SUITE("interpreter") {

TEST_CASE("arithmetic follows the source language's division and precedence") {
  CHECK(run_source("print(2 + 3 * 4)\n") == "14\n");
  CHECK(run_source("print(7 / 2)\n") == "3.5\n");  // true division
  CHECK(run_source("print((2 + 3) * -2)\n") == "-10\n");
  CHECK(run_source("print(1.5 + 1)\n") == "2.5\n");
}

TEST_CASE("string and list concatenation") {
  CHECK(run_source("print(\"ab\" + \"cd\")\n") == "abcd\n");
  CHECK(run_source("print([1, 2] + [3])\n") == "[1, 2, 3]\n");
  CHECK_THROWS_AS(run_source("print(\"a\" + 1)\n"), ExecError);
}

TEST_CASE("division by zero is a runtime error") {
  CHECK_THROWS_AS(run_source("print(1 / 0)\n"), ExecError);
}

TEST_CASE("truthiness and short-circuit connectives") {
  CHECK(run_source("print(\"x\" and 2)\n") == "2\n");
  CHECK(run_source("print(0 or \"fallback\")\n") == "fallback\n");
  CHECK(run_source("print(not [])\n") == "True\n");
  CHECK(run_source("print(True and False or True)\n") == "True\n");
}

TEST_CASE("f-strings render with str() semantics") {
  CHECK(run_source("name = \"K2\"\nprint(f\"peak {name} is {8611} m\")\n") ==
        "peak K2 is 8611 m\n");
  CHECK(run_source("print(f\"{[1, 'a']}\")\n") == "[1, 'a']\n");
}

TEST_CASE("functions, conditionals, loops and comprehensions") {
  const char* src =
      "def double_all(xs: list) -> list:\n"
      "    return [x * 2 for x in xs if x > 0]\n"
      "def answer(n: int):\n"
      "    total = 0\n"
      "    for v in double_all([1, -2, 3, n]):\n"
      "        total = total + v\n"
      "    return \"Must be yes\" if total > 10 else \"Must be no\"\n"
      "print(answer(n=2))\n";
  CHECK(run_source(src) == "Must be yes\n");
}

TEST_CASE("native comparisons on values") {
  CHECK(run_source("print(1 == 1.0)\n") == "True\n");
  CHECK(run_source("print(\"abc\" < \"abd\")\n") == "True\n");
  CHECK(run_source("print(\"b\" in \"abc\")\n") == "True\n");
  CHECK(run_source("print(2 in [1, 2])\n") == "True\n");
  CHECK(run_source("print(\"x\" not in [\"y\"])\n") == "True\n");
  CHECK_THROWS_AS(run_source("print(1 < \"a\")\n"), ExecError);
}

TEST_CASE("functions without return yield None") {
  CHECK(run_source("def noop(x: int):\n    pass\nprint(noop(1))\n") == "None\n");
}

TEST_CASE("recursion depth is bounded") {
  CHECK_THROWS_AS(run_source("def f(n: int) -> int:\n    return f(n + 1)\nprint(f(0))\n"),
                  ExecError);
}

TEST_CASE("ask_llm passes the query and kind through the bridge") {
  LambdaBridge bridge([](const std::string& query, Kind kind) {
    CHECK(query == "What is the capital of France? extra");
    CHECK(kind == Kind::text);
    return TypedValue::text("Paris");
  });
  const char* src =
      "def answer():\n"
      "    q = f\"What is the capital of {'France'}? extra\"\n"
      "    return ask_llm(q, str)\n"
      "print(answer())\n";
  CHECK(run_source(src, &bridge) == "Paris\n");
  CHECK(bridge.calls() == 1);
}

TEST_CASE("ask_gpt is an alias and lists convert to values") {
  LambdaBridge bridge([](const std::string&, Kind) {
    return TypedValue::list({"Portugal", "Spain"});
  });
  const char* src =
      "def answer():\n"
      "    xs = ask_gpt(\"countries?\", list)\n"
      "    count = 0\n"
      "    for x in xs:\n"
      "        count = count + 1\n"
      "    return count\n"
      "print(answer())\n";
  CHECK(run_source(src, &bridge) == "2\n");
}

TEST_CASE("llm call budget is enforced") {
  LambdaBridge bridge([](const std::string&, Kind) { return TypedValue::boolean(true); });
  Module m = parse_module(
      "def answer():\n"
      "    total = 0\n"
      "    for i in [1, 2, 3, 4, 5]:\n"
      "        flag = ask_llm(\"q\", bool)\n"
      "        total = total + 1\n"
      "    return total\n"
      "print(answer())\n",
      ModuleMode::executable);
  InterpreterLimits limits;
  limits.max_llm_calls = 3;
  Interpreter interp(m, &bridge, limits);
  CHECK_THROWS_AS(interp.run_module(), ExecError);
  CHECK(interp.llm_calls() == 3);
}

TEST_CASE("int() and str() conversions") {
  CHECK(run_source("print(int(3.9))\n") == "3\n");
  CHECK(run_source("print(int(\" 42 \"))\n") == "42\n");
  CHECK(run_source("print(int(2 * 2.5))\n") == "5\n");
  CHECK(run_source("print(str(12) + \"!\")\n") == "12!\n");
  CHECK_THROWS_AS(run_source("print(int(\"x\"))\n"), ExecError);
}

// --- soft comparisons ---

TEST_CASE("numeric operands never reach the model") {
  LambdaBridge bridge([](const std::string&, Kind) -> TypedValue {
    FAIL("no query expected");
    return TypedValue::boolean(false);
  });
  CHECK(soft_compare(ComparisonKind::gt, Value::integer(5895), Value::integer(3742), bridge));
  CHECK_FALSE(
      soft_compare(ComparisonKind::gt, Value::integer(3742), Value::integer(5895), bridge));
  // numeric-parseable strings use the fast path too
  CHECK(soft_compare(ComparisonKind::lt, Value::text("3742"), Value::text("5895.0"), bridge));
  CHECK(bridge.calls() == 0);
}

TEST_CASE("equal operands are reflexively equal before any query") {
  LambdaBridge bridge([](const std::string&, Kind) -> TypedValue {
    FAIL("no query expected");
    return TypedValue::boolean(false);
  });
  CHECK(soft_compare(ComparisonKind::eq, Value::text("father-son"), Value::text("father-son"),
                     bridge));
  CHECK(bridge.calls() == 0);
}

TEST_CASE("text comparisons resolve through boolean retrieval") {
  LambdaBridge bridge([](const std::string& query, Kind kind) {
    CHECK(kind == Kind::boolean);
    CHECK(query ==
          "Consider the implied value, is father-son roughly the same as descendent?");
    return TypedValue::boolean(true);
  });
  CHECK(soft_compare(ComparisonKind::eq, Value::text("father-son"), Value::text("descendent"),
                     bridge));
  CHECK(bridge.calls() == 1);
}

TEST_CASE("membership query uses the list wording") {
  LambdaBridge bridge([](const std::string& query, Kind) {
    CHECK(query ==
          "Considered the implied value, is Portugal included or mentioned by the list "
          "[Spain, Portugal]?");
    return TypedValue::boolean(true);
  });
  Value list = Value::list({Value::text("Spain"), Value::text("Portugal")});
  CHECK(soft_compare(ComparisonKind::inc, Value::text("Portugal"), list, bridge));
}

TEST_CASE("compositions negate or combine base operators") {
  int seen = 0;
  LambdaBridge bridge([&](const std::string&, Kind) {
    ++seen;
    return TypedValue::boolean(false);
  });
  // neq = not eq
  CHECK(soft_compare(ComparisonKind::neq, Value::text("a"), Value::text("b"), bridge));
  // ninc = not in
  CHECK(soft_compare(ComparisonKind::ninc, Value::text("a"),
                     Value::list({Value::text("b")}), bridge));
  CHECK(seen == 2);
}

TEST_CASE("gte issues at most two queries, short-circuited") {
  {
    LambdaBridge bridge([](const std::string& query, Kind) {
      // gt asked first and answered true: eq never needed
      CHECK(query.find("roughly larger") != std::string::npos);
      return TypedValue::boolean(true);
    });
    CHECK(soft_compare(ComparisonKind::gte, Value::text("a"), Value::text("b"), bridge));
    CHECK(bridge.calls() == 1);
  }
  {
    LambdaBridge bridge([](const std::string&, Kind) { return TypedValue::boolean(false); });
    CHECK_FALSE(soft_compare(ComparisonKind::gte, Value::text("a"), Value::text("b"), bridge));
    CHECK(bridge.calls() == 2);  // gt then eq
  }
  {
    LambdaBridge bridge([](const std::string&, Kind) { return TypedValue::boolean(false); });
    // lte with equal operands: lt query, then reflexive eq without a query
    CHECK(soft_compare(ComparisonKind::lte, Value::text("a"), Value::text("a"), bridge));
    CHECK(bridge.calls() == 1);
  }
}

}  // TEST_SUITE
