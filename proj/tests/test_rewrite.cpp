#include "doctest.h"

#include "example_programs.hpp"

#include "coreason/lang/parser.hpp"
#include "coreason/lang/rewriter.hpp"
#include "coreason/program.hpp"

using namespace coreason;

TEST_SUITE("rewrite") {

TEST_CASE("membership rewrites into in_override at the documented site") {
  RewrittenProgram r = rewrite_soft_operators(parse_program(coreason::testing::kWarProgram));
  CHECK(r.rewrite_count == 1);
  CHECK(r.source.find("in_override(country_x, war_y_countries)") != std::string::npos);
  CHECK(r.source.find(" in war_y_countries") == std::string::npos);
}

TEST_CASE("budget comparison rewrites into gte_override") {
  RewrittenProgram r = rewrite_soft_operators(parse_program(coreason::testing::kSchoolProgram1));
  CHECK(r.rewrite_count == 1);
  CHECK(r.source.find("gte_override(budget, 5000000)") != std::string::npos);
}

TEST_CASE("existing override calls survive untouched") {
  SolutionProgram p = parse_program(coreason::testing::kSchoolProgram2);
  RewrittenProgram r = rewrite_soft_operators(p);
  CHECK(r.rewrite_count == 0);
  CHECK(r.source == p.source);  // byte-identical on comparison-free programs
  CHECK(r.source.find("eq_override(school_popularity, 'very popular')") != std::string::npos);
}

TEST_CASE("every operator maps to its helper") {
  struct OpCase {
    const char* expr;
    const char* expected;
  };
  const OpCase cases[] = {
      {"a == b", "eq_override(a, b)"},
      {"a != b", "neq_override(a, b)"},
      {"a > b", "gt_override(a, b)"},
      {"a >= b", "gte_override(a, b)"},
      {"a < b", "lt_override(a, b)"},
      {"a <= b", "lte_override(a, b)"},
      {"a in b", "in_override(a, b)"},
      {"a not in b", "not_in_override(a, b)"},
  };
  for (const auto& c : cases) {
    std::string src = std::string("def answer(a: str, b: str):\n    return ") + c.expr + "\n";
    RewrittenProgram r = rewrite_soft_operators(parse_program(src));
    CHECK(r.rewrite_count == 1);
    CHECK_MESSAGE(r.source.find(c.expected) != std::string::npos, "missing ", c.expected,
                  " in:\n", r.source);
  }
}

TEST_CASE("rewriting recurses into nested positions") {
  const char* src =
      "def answer(a: int, b: int, c: int):\n"
      "    flags = [x > 1 for x in [a, b] if x != c]\n"
      "    verdict = \"Must be yes\" if a == b and (b < c or a >= c) else \"Must be no\"\n"
      "    return verdict\n";
  SolutionProgram p = parse_program(src);
  RewrittenProgram r = rewrite_soft_operators(p);
  CHECK(r.rewrite_count == 6);
  lang::Module m = lang::parse_module(r.source, lang::ModuleMode::candidate);
  CHECK(lang::count_comparisons(m) == 0);
  for (const char* helper : {"gt_override(x, 1)", "neq_override(x, c)", "eq_override(a, b)",
                             "lt_override(b, c)", "gte_override(a, c)"}) {
    CHECK_MESSAGE(r.source.find(helper) != std::string::npos, "missing ", helper);
  }
}

TEST_CASE("rewriting is idempotent") {
  const char* sources[] = {coreason::testing::kSchoolProgram1, coreason::testing::kWarProgram,
                           coreason::testing::kWarProgramRefined};
  for (const char* src : sources) {
    RewrittenProgram first = rewrite_soft_operators(parse_program(src));
    SolutionProgram reparsed = parse_program(first.source);
    RewrittenProgram second = rewrite_soft_operators(reparsed);
    CHECK(second.rewrite_count == 0);
    CHECK(second.source == first.source);
  }
}

TEST_CASE("comparison-free programs come back identical") {
  const char* src = "def answer():\n    return \"Must be yes\"\n";
  SolutionProgram p = parse_program(src);
  RewrittenProgram r = rewrite_soft_operators(p);
  CHECK(r.rewrite_count == 0);
  CHECK(r.source == src);
}

}  // TEST_SUITE
