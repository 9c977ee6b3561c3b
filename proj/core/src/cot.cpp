#include "coreason/cot.hpp"

#include <algorithm>
#include <cctype>

namespace coreason {

namespace {

std::string lowered(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// The last sentence-ish segment, for marker-less rationales.
std::string final_sentence(const std::string& text) {
  size_t end = text.find_last_not_of(" \t\r\n");
  if (end == std::string::npos) return "";
  size_t cut = text.find_last_of(".!?", end == 0 ? std::string::npos : end - 1);
  size_t begin = cut == std::string::npos ? 0 : cut + 1;
  return text.substr(begin, end - begin + 1);
}

}  // namespace

Verdict extract_verdict(const std::string& text) {
  static const std::string marker = "the answer is";
  std::string low = lowered(text);
  size_t pos = low.rfind(marker);
  if (pos == std::string::npos) return normalize_output(final_sentence(text));
  size_t i = pos + marker.size();
  while (i < low.size() && !std::isalpha(static_cast<unsigned char>(low[i]))) ++i;
  size_t j = i;
  while (j < low.size() && std::isalpha(static_cast<unsigned char>(low[j]))) ++j;
  std::string token = low.substr(i, j - i);
  if (token == "yes") return Verdict::yes;
  if (token == "no") return Verdict::no;
  return Verdict::unknown;
}

ConsensusResult aggregate_verdicts(std::vector<CoTSample> samples) {
  ConsensusResult result;
  result.samples = std::move(samples);
  int yes = 0, no = 0;
  for (const auto& s : result.samples) {
    if (s.verdict == Verdict::yes) ++yes;
    else if (s.verdict == Verdict::no) ++no;
  }
  if (yes > no) result.verdict = Verdict::yes;
  else if (no > yes) result.verdict = Verdict::no;
  else result.verdict = Verdict::unknown;  // draws count as unknown
  result.agreement =
      result.samples.empty() ? 0.0 : static_cast<double>(std::max(yes, no)) /
                                         static_cast<double>(result.samples.size());
  return result;
}

ConsensusResult cot_consensus(LlmGateway& gateway, const std::string& question, int k,
                              double temperature, int max_tokens) {
  std::vector<LlmResponse> responses =
      gateway.sample_n("cot", {{"question", question}}, k, temperature, max_tokens);
  std::vector<CoTSample> samples;
  samples.reserve(responses.size());
  for (const auto& r : responses) samples.push_back({r.text, extract_verdict(r.text)});
  return aggregate_verdicts(std::move(samples));
}

nlohmann::json ConsensusResult::to_json() const {
  nlohmann::json samples_json = nlohmann::json::array();
  for (const auto& s : samples)
    samples_json.push_back({{"text", s.text}, {"verdict", verdict_name(s.verdict)}});
  return {{"samples", samples_json},
          {"verdict", verdict_name(verdict)},
          {"agreement", agreement}};
}

ConsensusResult ConsensusResult::from_json(const nlohmann::json& j) {
  ConsensusResult r;
  for (const auto& sj : j.at("samples")) {
    r.samples.push_back({sj.at("text").get<std::string>(),
                         verdict_from_name(sj.at("verdict").get<std::string>())});
  }
  r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  r.agreement = j.at("agreement").get<double>();
  return r;
}

}  // namespace coreason
