#include "coreason/metrics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "coreason/errors.hpp"

namespace coreason {

DatasetMetrics compute_dataset_metrics(const std::string& name,
                                       const std::vector<QuestionResult>& results,
                                       const std::map<std::string, Verdict>& gold) {
  DatasetMetrics m;
  m.name = name;
  for (const auto& r : results) {
    m.execs_attempted += r.execs_attempted;
    m.execs_ok += r.execs_ok;
    if (r.excluded) {
      ++m.excluded;
      continue;
    }
    auto it = gold.find(r.id);
    if (it == gold.end()) throw IdMismatch(r.id);
    ++m.questions;
    if (r.verdict != Verdict::unknown && r.verdict == it->second) ++m.correct;
  }
  m.accuracy = m.questions == 0 ? 0.0
                                : static_cast<double>(m.correct) /
                                      static_cast<double>(m.questions);
  return m;
}

double average_delta(const std::vector<double>& system_accuracies,
                     const std::vector<double>& baseline_accuracies) {
  if (system_accuracies.empty() || system_accuracies.size() != baseline_accuracies.size())
    throw Error("average_delta requires parallel non-empty accuracy lists");
  double sum = 0.0;
  for (size_t i = 0; i < system_accuracies.size(); ++i)
    sum += system_accuracies[i] - baseline_accuracies[i];
  return sum / static_cast<double>(system_accuracies.size());
}

double EvaluationReport::unweighted_mean() const {
  if (datasets.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& d : datasets) sum += d.accuracy;
  return sum / static_cast<double>(datasets.size());
}

double EvaluationReport::instance_weighted_mean() const {
  long questions = 0, correct = 0;
  for (const auto& d : datasets) {
    questions += d.questions;
    correct += d.correct;
  }
  return questions == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(questions);
}

double EvaluationReport::overall_execution_rate() const {
  long attempted = 0, ok = 0;
  for (const auto& d : datasets) {
    attempted += d.execs_attempted;
    ok += d.execs_ok;
  }
  return attempted == 0 ? 0.0 : static_cast<double>(ok) / static_cast<double>(attempted);
}

std::optional<double> EvaluationReport::avg_delta() const {
  if (!has_baseline()) return std::nullopt;
  std::vector<double> sys;
  sys.reserve(datasets.size());
  for (const auto& d : datasets) sys.push_back(d.accuracy);
  return average_delta(sys, baseline_accuracies);
}

void EvaluationReport::link_baseline(const std::string& name, const EvaluationReport& baseline) {
  std::vector<double> accuracies;
  for (const auto& d : datasets) {
    const DatasetMetrics* match = nullptr;
    for (const auto& b : baseline.datasets)
      if (b.name == d.name) match = &b;
    if (!match) throw IdMismatch("baseline has no dataset named '" + d.name + "'");
    accuracies.push_back(match->accuracy);
  }
  baseline_name = name;
  baseline_accuracies = std::move(accuracies);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string percent1(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
  return buf;
}

}  // namespace

nlohmann::json EvaluationReport::to_json() const {
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : datasets) {
    ds.push_back({{"name", d.name},
                  {"questions", d.questions},
                  {"correct", d.correct},
                  {"excluded", d.excluded},
                  {"accuracy", d.accuracy},
                  {"execs_attempted", d.execs_attempted},
                  {"execs_ok", d.execs_ok}});
  }
  nlohmann::json j{{"datasets", ds},
                   {"all_unweighted", unweighted_mean()},
                   {"all_instance_weighted", instance_weighted_mean()},
                   {"execution_rate", overall_execution_rate()}};
  if (has_baseline()) {
    j["baseline"] = baseline_name;
    j["baseline_accuracies"] = baseline_accuracies;
    j["avg_delta"] = *avg_delta();
  }
  return j;
}

EvaluationReport EvaluationReport::from_json(const nlohmann::json& j) {
  EvaluationReport r;
  for (const auto& dj : j.at("datasets")) {
    DatasetMetrics d;
    d.name = dj.at("name").get<std::string>();
    d.questions = dj.at("questions").get<long>();
    d.correct = dj.at("correct").get<long>();
    d.excluded = dj.at("excluded").get<long>();
    d.accuracy = dj.at("accuracy").get<double>();
    d.execs_attempted = dj.at("execs_attempted").get<long>();
    d.execs_ok = dj.at("execs_ok").get<long>();
    r.datasets.push_back(std::move(d));
  }
  if (j.contains("baseline")) {
    r.baseline_name = j["baseline"].get<std::string>();
    r.baseline_accuracies = j["baseline_accuracies"].get<std::vector<double>>();
  }
  return r;
}

std::string EvaluationReport::to_markdown() const {
  std::ostringstream out;
  out << "| Dataset | N | Accuracy |";
  if (has_baseline()) out << " Delta |";
  out << "\n|---|---|---|";
  if (has_baseline()) out << "---|";
  out << "\n";
  for (size_t i = 0; i < datasets.size(); ++i) {
    const auto& d = datasets[i];
    out << "| " << d.name << " | " << d.questions << " | " << percent1(d.accuracy) << " |";
    if (has_baseline()) {
      double delta = (d.accuracy - baseline_accuracies[i]) * 100.0;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%+.1f", delta);
      out << " " << buf << " |";
    }
    out << "\n";
  }
  out << "| All (unweighted) | - | " << percent1(unweighted_mean()) << " |";
  if (has_baseline()) out << " |";
  out << "\n";
  out << "| All (instance-weighted) | - | " << percent1(instance_weighted_mean()) << " |";
  if (has_baseline()) out << " |";
  out << "\n";
  long attempted = 0;
  for (const auto& d : datasets) attempted += d.execs_attempted;
  if (attempted > 0) {
    out << "| Exe.% | - | " << percent1(overall_execution_rate()) << " |";
    if (has_baseline()) out << " |";
    out << "\n";
  }
  if (has_baseline()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.1f", *avg_delta() * 100.0);
    out << "\nAvg.Delta vs " << baseline_name << ": " << buf << " points\n";
  }
  return out.str();
}

std::string EvaluationReport::to_csv() const {
  std::ostringstream out;
  out << "dataset,questions,correct,excluded,accuracy,execs_attempted,execs_ok\n";
  for (const auto& d : datasets) {
    out << d.name << "," << d.questions << "," << d.correct << "," << d.excluded << ","
        << format_double(d.accuracy) << "," << d.execs_attempted << "," << d.execs_ok << "\n";
  }
  return out.str();
}

EvaluationReport EvaluationReport::from_csv(const std::string& text) {
  EvaluationReport r;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() != 7) throw Error("bad report CSV row: " + line);
    DatasetMetrics d;
    d.name = cols[0];
    d.questions = std::stol(cols[1]);
    d.correct = std::stol(cols[2]);
    d.excluded = std::stol(cols[3]);
    {
      double acc = 0.0;
      auto [ptr, ec] = std::from_chars(cols[4].data(), cols[4].data() + cols[4].size(), acc);
      if (ec != std::errc{}) throw Error("bad accuracy in CSV: " + cols[4]);
      d.accuracy = acc;
    }
    d.execs_attempted = std::stol(cols[5]);
    d.execs_ok = std::stol(cols[6]);
    r.datasets.push_back(std::move(d));
  }
  return r;
}

}  // namespace coreason
