#include "doctest.h"

#include <random>

#include "test_backends.hpp"

#include "coreason/conceptualizer.hpp"
#include "coreason/errors.hpp"
#include "coreason/prompts.hpp"

using namespace coreason;
using coreason::testing::ScriptedBackend;

TEST_SUITE("conceptualizer") {

TEST_CASE("all six demonstration replies parse") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const PromptTemplate& t = catalog.get("conceptualize");
  int parsed = 0;
  for (const auto& turn : t.few_shot_turns) {
    if (turn.role != "assistant") continue;
    AbstractQuestion q = parse_conceptualization(turn.content, "demo");
    CHECK(!q.parameters.empty());
    for (const auto& p : q.parameters) {
      CHECK(q.template_text.find(p.semantic_label) != std::string::npos);
    }
    ++parsed;
  }
  CHECK(parsed == 6);
}

TEST_CASE("single-replacement reply yields one text parameter") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const auto& reply = catalog.get("conceptualize").few_shot_turns[1].content;
  AbstractQuestion q = parse_conceptualization(reply, "q1");
  CHECK(q.template_text ==
        "Does Person X have to worry about human overpopulation in his homeland?");
  REQUIRE(q.parameters.size() == 1);
  CHECK(q.parameters[0].name == "person_x");
  CHECK(q.parameters[0].semantic_label == "Person X");
  CHECK(q.parameters[0].value_kind == Kind::text);
  CHECK(q.parameters[0].value.as_text() == "Rusev");
}

TEST_CASE("mixed text and integer parameters parse with their kinds") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const auto& reply = catalog.get("conceptualize").few_shot_turns[5].content;
  AbstractQuestion q = parse_conceptualization(reply, "q3");
  CHECK(q.template_text == "Will City X reach Population Y before City Z?");
  REQUIRE(q.parameters.size() == 3);
  CHECK(q.parameters[0].name == "city_x");
  CHECK(q.parameters[0].value.as_text() == "Albany, Georgia");  // comma inside the value
  CHECK(q.parameters[1].name == "population_y");
  CHECK(q.parameters[1].value_kind == Kind::integer);
  CHECK(q.parameters[1].value.as_int() == 100000);
  CHECK(q.parameters[2].name == "city_z");
  CHECK(q.parameters[2].value.as_text() == "Albany, New York");
}

TEST_CASE("two text parameters for the war walkthrough") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const auto& reply = catalog.get("conceptualize").few_shot_turns[9].content;
  AbstractQuestion q = parse_conceptualization(reply, "q5");
  REQUIRE(q.parameters.size() == 2);
  CHECK(q.parameters[0].name == "war_x");
  CHECK(q.parameters[0].value_kind == Kind::text);
  CHECK(q.parameters[1].name == "war_y");
  CHECK(q.parameters[1].value.as_text() == "WWII");
}

TEST_CASE("missing markers are rejected") {
  CHECK_THROWS_AS(parse_conceptualization("no structure at all", "x"),
                  MissingAbstractQuestionMarker);
  CHECK_THROWS_AS(parse_conceptualization(
                      R"(we can replace "A" to "Thing X" (thing_x: str) So the question becomes Is Thing X real?)",
                      "x"),
                  MissingParametersMarker);
}

TEST_CASE("replacement clauses and assignments must agree on names") {
  // assignment names a parameter never introduced by a replacement clause
  CHECK_THROWS_AS(parse_conceptualization(
                      "So the question becomes Is Thing X real? With parameters thing_x=\"A\"",
                      "x"),
                  NameMismatch);
  // replacement clause whose name never gets a value
  CHECK_THROWS_AS(
      parse_conceptualization(
          R"(replace "A" to "Thing X" (thing_x: str) "B" to "Other Y" (other_y: str) So the question becomes Is Thing X near Other Y? With parameters thing_x="A")",
          "x"),
      NameMismatch);
}

TEST_CASE("labels must occur in the abstract question") {
  CHECK_THROWS_AS(parse_conceptualization(
                      R"(we can replace "A" to "Thing X" (thing_x: str) So the question becomes Is something real? With parameters thing_x="A")",
                      "x"),
                  ConceptualizationFailed);
}

TEST_CASE("parse of serialize is the identity on generated structures") {
  std::mt19937_64 gen(11);
  const char* labels[] = {"Person X", "City Y", "War Z", "Award Q", "Team R"};
  const char* names[] = {"person_x", "city_y", "war_z", "award_q", "team_r"};
  for (int iter = 0; iter < 200; ++iter) {
    AbstractQuestion q;
    q.source_id = "gen";
    size_t count = 1 + gen() % 4;
    std::string text = "Is it true that";
    for (size_t i = 0; i < count; ++i) {
      ParameterSpec p;
      p.name = names[i];
      p.semantic_label = labels[i];
      if (gen() % 3 == 0) {
        p.value_kind = Kind::integer;
        p.value = TypedValue::integer(static_cast<std::int64_t>(gen() % 1000000));
      } else {
        p.value_kind = Kind::text;
        std::string v;
        for (size_t n = 1 + gen() % 10; n > 0; --n)
          v.push_back(static_cast<char>('a' + gen() % 26));
        p.value = TypedValue::text(v);
      }
      text += std::string(" ") + labels[i] + " and";
      q.parameters.push_back(std::move(p));
    }
    text += " nothing else matters?";
    q.template_text = text;

    AbstractQuestion back = parse_conceptualization(serialize_conceptualization(q), "gen");
    REQUIRE(back.parameters.size() == q.parameters.size());
    CHECK(back.template_text == q.template_text);
    for (size_t i = 0; i < q.parameters.size(); ++i) {
      CHECK(back.parameters[i].name == q.parameters[i].name);
      CHECK(back.parameters[i].semantic_label == q.parameters[i].semantic_label);
      CHECK(back.parameters[i].value_kind == q.parameters[i].value_kind);
      CHECK(back.parameters[i].value == q.parameters[i].value);
    }
  }
}

TEST_CASE("substitution closure leaves no residual labels") {
  PromptCatalog catalog = PromptCatalog::builtin();
  const auto& reply = catalog.get("conceptualize").few_shot_turns[9].content;
  AbstractQuestion q = parse_conceptualization(reply, "q5");
  std::string concrete = substitute_bindings(q, original_bindings(q));
  CHECK(concrete == "Did any country in Portuguese Colonial War take a general neutral role in WWII?");
  for (const auto& p : q.parameters) {
    CHECK(concrete.find(p.semantic_label) == std::string::npos);
  }
}

TEST_CASE("annotated question tags every label occurrence") {
  AbstractQuestion q;
  q.source_id = "x";
  q.template_text = "Is Rapper X better than Rapper X's rival?";
  ParameterSpec p;
  p.name = "rapper_x";
  p.semantic_label = "Rapper X";
  p.value_kind = Kind::text;
  p.value = TypedValue::text("Lil Jon");
  q.parameters.push_back(p);
  CHECK(annotated_question(q) ==
        "Is Rapper X (rapper_x: str) better than Rapper X (rapper_x: str)'s rival?");
}

TEST_CASE("conceptualize() marks unparseable replies as failed") {
  auto backend = std::make_shared<ScriptedBackend>(
      std::vector<std::string>{"I cannot conceptualize this."});
  LlmGateway gw = coreason::testing::live_gateway(backend);
  Conceptualizer c(gw);
  CHECK_THROWS_AS(c.conceptualize({"q1", "Why?", std::nullopt}), ConceptualizationFailed);
  CHECK(c.last_raw() == "I cannot conceptualize this.");
}

TEST_CASE("conceptualize() parses a well-formed reply") {
  PromptCatalog catalog = PromptCatalog::builtin();
  auto backend = std::make_shared<ScriptedBackend>(
      std::vector<std::string>{catalog.get("conceptualize").few_shot_turns[1].content});
  LlmGateway gw = coreason::testing::live_gateway(backend);
  Conceptualizer c(gw);
  AbstractQuestion q = c.conceptualize(
      {"q1", "Does Rusev have to worry about human overpopulation in his homeland?",
       Verdict::yes});
  CHECK(q.source_id == "q1");
  CHECK(q.parameters.size() == 1);
}

}  // TEST_SUITE
