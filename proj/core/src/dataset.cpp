#include "coreason/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>

#include "json.hpp"

#include "coreason/errors.hpp"

namespace coreason {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lowered(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const std::set<std::string> kInterrogativeAux = {
    "is", "are", "was", "were", "do", "does", "did", "can", "could", "will",
    "would", "should", "shall", "may", "might", "must", "has", "have", "had",
};

}  // namespace

std::vector<DatasetRecord> load_dataset_jsonl(const std::string& path, bool require_gold,
                                              const std::string& origin) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file: " + path);
  std::vector<DatasetRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw MalformedRecord(lineno, "not a JSON object");
    DatasetRecord rec;
    if (!j.contains("id") || !j["id"].is_string()) throw MalformedRecord(lineno, "missing 'id'");
    rec.id = j["id"].get<std::string>();
    if (!j.contains("question") || !j["question"].is_string())
      throw MalformedRecord(lineno, "missing 'question'");
    rec.question = j["question"].get<std::string>();
    if (rec.question.empty()) throw MalformedRecord(lineno, "empty question text");
    if (j.contains("answer")) {
      std::string answer = lowered(trim(j["answer"].is_string()
                                            ? j["answer"].get<std::string>()
                                            : j["answer"].dump()));
      if (answer == "yes" || answer == "true") rec.gold = Verdict::yes;
      else if (answer == "no" || answer == "false") rec.gold = Verdict::no;
      else throw MalformedRecord(lineno, "answer must be yes/no, got '" + answer + "'");
    } else if (require_gold) {
      throw MalformedRecord(lineno, "missing 'answer'");
    }
    rec.origin = j.value("origin", origin);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<DatasetRecord> sample_records(const std::vector<DatasetRecord>& records, std::size_t n,
                                          std::uint64_t seed) {
  if (n >= records.size()) return records;
  // explicit draws instead of std::shuffle so the subset is identical on
  // every platform
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> indices(records.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(gen() % (indices.size() - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(n);
  std::sort(indices.begin(), indices.end());
  std::vector<DatasetRecord> out;
  out.reserve(n);
  for (std::size_t i : indices) out.push_back(records[i]);
  return out;
}

DatasetRecord convert_mcq_to_binary(LlmGateway& gateway, const std::string& question,
                                    const std::string& correct_choice, const std::string& id,
                                    const std::string& origin, double temperature) {
  if (trim(correct_choice).empty()) throw ConversionFailed("empty correct choice");
  LlmRequest req{"mcq_to_binary",
                 {{"question", question}, {"answer", correct_choice}},
                 temperature,
                 0,
                 256};
  std::string reply = trim(gateway.complete(req).text);
  if (reply.empty()) throw ConversionFailed("empty reply");

  // take the first line that ends with a question mark
  std::string converted;
  size_t pos = 0;
  while (pos <= reply.size()) {
    size_t nl = reply.find('\n', pos);
    std::string line = trim(nl == std::string::npos ? reply.substr(pos)
                                                    : reply.substr(pos, nl - pos));
    pos = nl == std::string::npos ? reply.size() + 1 : nl + 1;
    if (!line.empty() && line.back() == '?') {
      converted = line;
      break;
    }
  }
  if (converted.empty()) throw ConversionFailed("reply contains no question");
  if (lowered(converted) == lowered(trim(question)))
    throw ConversionFailed("reply echoes the original stem");
  size_t space = converted.find(' ');
  std::string first = lowered(space == std::string::npos ? converted : converted.substr(0, space));
  if (!kInterrogativeAux.count(first))
    throw ConversionFailed("reply is not a yes/no interrogative: " + converted);

  DatasetRecord rec;
  rec.id = id;
  rec.question = converted;
  rec.gold = Verdict::yes;  // by construction
  rec.origin = origin;
  return rec;
}

}  // namespace coreason
