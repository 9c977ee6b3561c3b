#include "doctest.h"

#include <algorithm>
#include <random>

#include "test_backends.hpp"

#include "coreason/cot.hpp"

using namespace coreason;
using coreason::testing::LambdaBackend;

TEST_SUITE("cot") {

TEST_CASE("verdict extraction reads the marker") {
  CHECK(extract_verdict("11 is a prime number. As a result, if I have to guess an answer, "
                        "the answer is yes.") == Verdict::yes);
  CHECK(extract_verdict("As a result, if I have to guess an answer, the answer is no.") ==
        Verdict::no);
  CHECK(extract_verdict("") == Verdict::unknown);
  CHECK(extract_verdict("The Answer Is YES.") == Verdict::yes);
}

TEST_CASE("the last marker wins") {
  CHECK(extract_verdict("the answer is no ... but on reflection the answer is yes") ==
        Verdict::yes);
  CHECK(extract_verdict("the answer is yes. Wait. The answer is no.") == Verdict::no);
}

TEST_CASE("marker-less text falls back to the final sentence") {
  CHECK(extract_verdict("Some reasoning. Final word: yes.") == Verdict::yes);
  CHECK(extract_verdict("It contains yes early. But the closing sentence says nothing.") ==
        Verdict::unknown);
}

TEST_CASE("unreadable marker token is unknown") {
  CHECK(extract_verdict("the answer is maybe") == Verdict::unknown);
}

TEST_CASE("consensus arithmetic over synthetic samples") {
  auto consensus = [](int yes, int no, int unknown) {
    std::vector<CoTSample> samples;
    for (int i = 0; i < yes; ++i) samples.push_back({"the answer is yes", Verdict::yes});
    for (int i = 0; i < no; ++i) samples.push_back({"the answer is no", Verdict::no});
    for (int i = 0; i < unknown; ++i) samples.push_back({"??", Verdict::unknown});
    return aggregate_verdicts(std::move(samples));
  };
  ConsensusResult six_four = consensus(6, 4, 0);
  CHECK(six_four.verdict == Verdict::yes);
  CHECK(six_four.agreement == doctest::Approx(0.6));

  ConsensusResult draw = consensus(5, 5, 0);
  CHECK(draw.verdict == Verdict::unknown);  // draws count as unknown

  ConsensusResult unanimous = consensus(10, 0, 0);
  CHECK(unanimous.verdict == Verdict::yes);
  CHECK(unanimous.agreement == doctest::Approx(1.0));

  // unknowns count toward neither side yet stay in the denominator
  ConsensusResult diluted = consensus(8, 0, 2);
  CHECK(diluted.verdict == Verdict::yes);
  CHECK(diluted.agreement == doctest::Approx(0.8));
}

TEST_CASE("aggregation is permutation-invariant") {
  std::mt19937_64 gen(3);
  std::vector<CoTSample> samples;
  for (int i = 0; i < 9; ++i) {
    Verdict v = i % 3 == 0 ? Verdict::unknown : (i % 2 == 0 ? Verdict::yes : Verdict::no);
    samples.push_back({"t" + std::to_string(i), v});
  }
  ConsensusResult base = aggregate_verdicts(samples);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(samples.begin(), samples.end(), gen);
    ConsensusResult shuffled = aggregate_verdicts(samples);
    CHECK(shuffled.verdict == base.verdict);
    CHECK(shuffled.agreement == doctest::Approx(base.agreement));
  }
}

TEST_CASE("cot_consensus samples K rationales through the gateway") {
  auto backend = std::make_shared<LambdaBackend>(
      [](const std::vector<ChatMessage>&, double, int sample_index, int) {
        return sample_index < 6 ? "... the answer is yes." : "... the answer is no.";
      });
  LlmGateway gw = coreason::testing::live_gateway(backend);
  ConsensusResult r = cot_consensus(gw, "Q?", 10, 0.7);
  CHECK(r.samples.size() == 10);
  CHECK(r.verdict == Verdict::yes);
  CHECK(r.agreement == doctest::Approx(0.6));
  CHECK(backend->calls() == 10);
}

TEST_CASE("consensus serialization retains all sample texts") {
  std::vector<CoTSample> samples{{"first rationale, the answer is yes", Verdict::yes},
                                 {"second rationale, the answer is no", Verdict::no}};
  ConsensusResult r = aggregate_verdicts(samples);
  ConsensusResult back = ConsensusResult::from_json(r.to_json());
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[0].text == samples[0].text);
  CHECK(back.samples[1].verdict == Verdict::no);
  CHECK(back.verdict == r.verdict);
}

}  // TEST_SUITE
