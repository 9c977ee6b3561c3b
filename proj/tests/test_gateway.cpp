#include "doctest.h"

#include <set>

#include "test_backends.hpp"

#include "coreason/gateway.hpp"
#include "coreason/replay_cache.hpp"

using namespace coreason;
using coreason::testing::LambdaBackend;
using coreason::testing::ScriptedBackend;
using coreason::testing::TempDir;

TEST_SUITE("gateway") {

TEST_CASE("cache keys differ whenever any component differs") {
  CacheKey base{"cot", {{"question", "Q"}}, 0.7, 0};
  CacheKey other_template = base;
  other_template.template_name = "ask_llm";
  CacheKey other_slots = base;
  other_slots.slots["question"] = "Q2";
  CacheKey other_temp = base;
  other_temp.temperature = 1.0;
  CacheKey other_index = base;
  other_index.sample_index = 1;
  std::set<std::string> canonicals{base.canonical(), other_template.canonical(),
                                   other_slots.canonical(), other_temp.canonical(),
                                   other_index.canonical()};
  CHECK(canonicals.size() == 5);
}

TEST_CASE("slot values cannot be confused across boundaries") {
  CacheKey a{"t", {{"x", "ab"}, {"y", "c"}}, 0.7, 0};
  CacheKey b{"t", {{"x", "a"}, {"y", "bc"}}, 0.7, 0};
  CHECK(a.canonical() != b.canonical());
}

TEST_CASE("record mode serves the second identical request from cache") {
  TempDir dir;
  auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"reply one"});
  auto cache = std::make_shared<CacheStore>(dir.file("cache.jsonl"));
  LlmGateway gw(PromptCatalog::builtin(), GatewayMode::record, backend, cache);

  LlmRequest req{"cot", {{"question", "Q?"}}, 0.7, 0, 128};
  LlmResponse first = gw.complete(req);
  LlmResponse second = gw.complete(req);
  CHECK(first.text == "reply one");
  CHECK(second.text == first.text);
  CHECK(second.source == LlmResponse::Source::replay);
  CHECK(backend->calls() == 1);
}

TEST_CASE("distinct sample indices occupy distinct cache entries") {
  TempDir dir;
  auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"r0", "r1"});
  auto cache = std::make_shared<CacheStore>(dir.file("cache.jsonl"));
  LlmGateway gw(PromptCatalog::builtin(), GatewayMode::record, backend, cache);

  LlmRequest req{"cot", {{"question", "Q?"}}, 0.7, 0, 128};
  gw.complete(req);
  req.sample_index = 1;
  gw.complete(req);
  CHECK(cache->size() == 2);
  CHECK(backend->calls() == 2);
}

TEST_CASE("replay mode answers from the file and misses loudly") {
  TempDir dir;
  std::string path = dir.file("cache.jsonl");
  {
    auto backend = std::make_shared<ScriptedBackend>(std::vector<std::string>{"recorded"});
    auto cache = std::make_shared<CacheStore>(path);
    LlmGateway gw(PromptCatalog::builtin(), GatewayMode::record, backend, cache);
    gw.complete({"cot", {{"question", "Q?"}}, 0.7, 0, 128});
  }
  auto cache = std::make_shared<CacheStore>(path);
  LlmGateway replay(PromptCatalog::builtin(), GatewayMode::replay, nullptr, cache);
  LlmResponse hit = replay.complete({"cot", {{"question", "Q?"}}, 0.7, 0, 128});
  CHECK(hit.text == "recorded");
  CHECK(hit.source == LlmResponse::Source::replay);
  CHECK_THROWS_AS(replay.complete({"cot", {{"question", "unseen"}}, 0.7, 0, 128}), ReplayMiss);
}

TEST_CASE("sample_n returns n completions ordered by sample index") {
  auto backend = std::make_shared<LambdaBackend>(
      [](const std::vector<ChatMessage>&, double, int sample_index, int) {
        return "sample " + std::to_string(sample_index);
      });
  LlmGateway gw = coreason::testing::live_gateway(backend);
  auto responses = gw.sample_n("cot", {{"question", "Q?"}}, 10, 0.7);
  REQUIRE(responses.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(responses[i].text == "sample " + std::to_string(i));
  auto one = gw.sample_n("cot", {{"question", "Q?"}}, 1, 0.7);
  CHECK(one.size() == 1);
}

TEST_CASE("ask_typed answers the frozen retrieval examples") {
  auto backend = std::make_shared<LambdaBackend>(
      [](const std::vector<ChatMessage>& messages, double, int, int) -> std::string {
        const std::string& q = messages.back().content;
        if (q.find("Genghis Khan") != std::string::npos) return R"({"answer": 35000000})";
        if (q.find("KBS") != std::string::npos) return R"({"answer": false})";
        return R"({"answer": "?"})";
      });
  LlmGateway gw = coreason::testing::live_gateway(backend);
  TypedValue count = gw.ask_typed("How many people today are related to Genghis Khan?",
                                  Kind::integer);
  CHECK(count.as_int() == 35000000);
  TypedValue spoken = gw.ask_typed("Does anchors on KBS speak Arabic?", Kind::boolean);
  CHECK_FALSE(spoken.as_bool());
}

TEST_CASE("ask_typed tolerates the unquoted-string reply style") {
  auto backend = std::make_shared<ScriptedBackend>(
      std::vector<std::string>{R"({"answer": singer})"});
  LlmGateway gw = coreason::testing::live_gateway(backend);
  CHECK(gw.ask_typed("What is the profession of Michael Jackson?", Kind::text).as_text() ==
        "singer");
}

TEST_CASE("ask_typed succeeds on the tenth attempt but never the eleventh") {
  std::vector<std::string> nine_bad_one_good(9, "garbage with no payload");
  nine_bad_one_good.push_back(R"({"answer": 42})");
  auto backend = std::make_shared<ScriptedBackend>(nine_bad_one_good);
  LlmGateway gw = coreason::testing::live_gateway(backend);
  CHECK(gw.ask_typed("q", Kind::integer).as_int() == 42);
  CHECK(backend->calls() == 10);

  auto all_bad = std::make_shared<ScriptedBackend>(
      std::vector<std::string>(20, "garbage with no payload"));
  LlmGateway gw2 = coreason::testing::live_gateway(all_bad);
  CHECK_THROWS_AS(gw2.ask_typed("q", Kind::integer), RetrievalExhausted);
  CHECK(all_bad->calls() == 10);  // retry bound: at most 10 backend calls
}

TEST_CASE("ask_typed retries on wrong-kind payloads") {
  auto backend = std::make_shared<ScriptedBackend>(
      std::vector<std::string>{R"({"answer": "not a number"})", R"({"answer": 7})"});
  LlmGateway gw = coreason::testing::live_gateway(backend);
  CHECK(gw.ask_typed("q", Kind::integer).as_int() == 7);
  CHECK(backend->calls() == 2);
}

}  // TEST_SUITE
