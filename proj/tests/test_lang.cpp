#include "doctest.h"

#include "example_programs.hpp"

#include "coreason/lang/parser.hpp"
#include "coreason/lang/printer.hpp"
#include "coreason/program.hpp"
#include "coreason/prompts.hpp"

using namespace coreason;
using lang::ParseError;

TEST_SUITE("lang") {

TEST_CASE("the school programs parse with their helpers") {
  SolutionProgram p1 = parse_program(coreason::testing::kSchoolProgram1);
  CHECK(p1.entry_params == std::vector<std::string>{"school_x", "sports_team_y"});
  CHECK(p1.helper_names == std::vector<std::string>{"students_preferences", "school_budget"});

  SolutionProgram p2 = parse_program(coreason::testing::kSchoolProgram2);
  CHECK(p2.helper_names == std::vector<std::string>{"has_sports_team", "popularity_of_sport"});
}

TEST_CASE("the demonstration program parses with its entry parameters") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const auto& turns = catalog.get("program_gen").few_shot_turns;
  // the assistant turn of the single demonstration
  SolutionProgram p = parse_program(turns[1].content);
  CHECK(p.entry_params == std::vector<std::string>{"rapper_x", "award_y", "multiplier_n"});
  CHECK(p.helper_names.size() == 4);
}

TEST_CASE("empty source is a missing entry") {
  try {
    parse_program("");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::missing_entry);
  }
}

TEST_CASE("missing answer function is a missing entry") {
  try {
    parse_program("def helper(x: str) -> str:\n    return x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::missing_entry);
  }
}

TEST_CASE("imports are forbidden constructs") {
  try {
    parse_program("import os\ndef answer():\n    return \"Must be yes\"\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::forbidden);
  }
}

TEST_CASE("attribute access, while loops and unknown calls are forbidden") {
  auto expect_forbidden = [](const char* src) {
    try {
      parse_program(src);
      FAIL_CHECK("expected forbidden ParseError for: ", src);
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseError::Kind::forbidden);
    }
  };
  expect_forbidden("def answer():\n    return os.path\n");
  expect_forbidden("def answer():\n    while True:\n        pass\n    return \"yes\"\n");
  expect_forbidden("def answer():\n    f = open(\"x\")\n    return \"yes\"\n");
  expect_forbidden("def answer():\n    exec(\"code\")\n    return \"yes\"\n");
  expect_forbidden("def answer():\n    try:\n        pass\n    except:\n        pass\n");
  expect_forbidden("def answer():\n    with open(\"f\") as g:\n        pass\n");
  expect_forbidden("def answer():\n    x = lambda v: v\n    return \"yes\"\n");
  expect_forbidden("x = 5\ndef answer():\n    return \"yes\"\n");  // module-level statement
}

TEST_CASE("unsupported-but-benign syntax is a syntax error") {
  auto expect_syntax = [](const char* src) {
    try {
      parse_program(src);
      FAIL_CHECK("expected syntax ParseError for: ", src);
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseError::Kind::syntax);
    }
  };
  expect_syntax("def answer():\n    x = {\"a\": 1}\n    return \"yes\"\n");
  expect_syntax("def answer():\n    x = 1\n    x += 1\n    return \"yes\"\n");
  expect_syntax("def answer():\n    return 5 % 2\n");
  expect_syntax("def answer():\n    return 1 < 2 < 3\n");  // chained comparison
  expect_syntax("def answer(xs: list):\n    return xs[0]\n");
}

TEST_CASE("conditional expressions, comprehensions and kwargs parse") {
  const char* src =
      "def judge(flag: bool) -> str:\n"
      "    return \"Must be yes\" if flag else \"Must be no\"\n"
      "def answer(n: int):\n"
      "    values = [x * 2 for x in [1, 2, 3] if x > 1]\n"
      "    return judge(flag=n > 2)\n";
  SolutionProgram p = parse_program(src);
  CHECK(p.entry_params == std::vector<std::string>{"n"});
}

TEST_CASE("printing a parsed module re-parses to the same print") {
  const char* sources[] = {coreason::testing::kSchoolProgram1,
                           coreason::testing::kSchoolProgram2,
                           coreason::testing::kWarProgram,
                           coreason::testing::kWarProgramRefined};
  for (const char* src : sources) {
    lang::Module m = lang::parse_module(src, lang::ModuleMode::candidate);
    std::string printed = lang::print_module(m);
    lang::Module again = lang::parse_module(printed, lang::ModuleMode::candidate);
    CHECK(lang::print_module(again) == printed);
  }
}

TEST_CASE("f-strings keep literal braces and nested calls") {
  lang::Module m = lang::parse_module(
      "def answer(n: int):\n    return f\"{{literal}} {str(n)} and {n + 1}\"\n",
      lang::ModuleMode::candidate);
  std::string printed = lang::print_module(m);
  CHECK(printed.find("{{literal}}") != std::string::npos);
  CHECK(printed.find("{str(n)}") != std::string::npos);
  CHECK(printed.find("{n + 1}") != std::string::npos);
}

TEST_CASE("executable mode allows the trailing module-level call") {
  const char* src =
      "def answer(x: int):\n"
      "    return \"Must be yes\" if x > 0 else \"Must be no\"\n"
      "print(answer(x=3))\n";
  CHECK_NOTHROW(lang::parse_module(src, lang::ModuleMode::executable));
  try {
    lang::parse_module(src, lang::ModuleMode::candidate);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseError::Kind::forbidden);
  }
}

TEST_CASE("candidate extraction strips code fences") {
  std::string fenced = "Here is the program:\n```python\ndef answer():\n    return "
                       "\"Must be yes\"\n```\nHope it helps!";
  CHECK(extract_program_source(fenced) == "def answer():\n    return \"Must be yes\"");
  CHECK(extract_program_source("  def answer():\n    return \"x\"\n  ") ==
        "def answer():\n    return \"x\"");
}

}  // TEST_SUITE
