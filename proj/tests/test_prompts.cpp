#include "doctest.h"

#include "coreason/errors.hpp"
#include "coreason/prompts.hpp"

using namespace coreason;

TEST_SUITE("prompts") {

TEST_CASE("catalog carries the expected templates") {
  PromptCatalog catalog = PromptCatalog::builtin();
  for (const char* name : {"conceptualize", "cot", "ask_llm", "entity_gen", "statement_gen",
                           "refine", "program_gen", "mcq_to_binary", "declarativize"}) {
    CHECK(catalog.has(name));
  }
}

TEST_CASE("declared placeholders cover everything in the body") {
  PromptCatalog catalog = PromptCatalog::builtin();
  for (const auto& name : catalog.names()) {
    const PromptTemplate& t = catalog.get(name);
    auto scanned = t.scan_placeholders();
    for (const auto& slot : scanned) {
      bool declared = false;
      for (const auto& p : t.placeholders) declared |= (p == slot);
      CHECK_MESSAGE(declared, name, " is missing placeholder ", slot);
    }
  }
}

TEST_CASE("rendering substitutes the question slot") {
  PromptCatalog catalog = PromptCatalog::builtin();
  auto messages = catalog.render("cot", {{"question", "Does table tennis use prime numbers?"}});
  REQUIRE(!messages.empty());
  CHECK(messages.front().role == "system");
  CHECK(messages.back().role == "user");
  CHECK(messages.back().content == "Does table tennis use prime numbers?");
  // the demonstrations survive untouched
  bool found_demo = false;
  for (const auto& m : messages)
    if (m.content.find("Table tennis plays to 11 points") != std::string::npos) found_demo = true;
  CHECK(found_demo);
}

TEST_CASE("zero-placeholder template renders verbatim") {
  PromptCatalog catalog;
  PromptTemplate t;
  t.name = "static";
  t.system_message = "You answer in one word.";
  t.few_shot_turns = {{"user", "Ready?"}};
  catalog.add(t);
  auto messages = catalog.render("static", {});
  REQUIRE(messages.size() == 2);
  CHECK(messages[0].content == "You answer in one word.");
  CHECK(messages[1].content == "Ready?");
}

TEST_CASE("missing slot raises UnboundPlaceholder") {
  PromptCatalog catalog = PromptCatalog::builtin();
  CHECK_THROWS_AS(catalog.render("cot", {}), UnboundPlaceholder);
}

TEST_CASE("unknown template raises UnknownTemplate") {
  PromptCatalog catalog = PromptCatalog::builtin();
  CHECK_THROWS_AS(catalog.render("nope", {}), UnknownTemplate);
}

TEST_CASE("retrieval few-shot keeps literal JSON braces") {
  PromptCatalog catalog = PromptCatalog::builtin();
  auto messages = catalog.render("ask_llm", {{"query", "How tall is K2?"}, {"kind", "int"}});
  bool found = false;
  for (const auto& m : messages)
    if (m.content.find(R"({"answer": 35000000})") != std::string::npos) found = true;
  CHECK(found);
  CHECK(messages.back().content == "How tall is K2? (int)");
}

}  // TEST_SUITE
