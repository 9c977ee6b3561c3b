#include "coreason/analogy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "coreason/errors.hpp"

namespace coreason {

std::string polarity_name(Polarity p) { return p == Polarity::positive ? "positive" : "negative"; }

Polarity polarity_from_name(const std::string& s) {
  if (s == "positive") return Polarity::positive;
  if (s == "negative") return Polarity::negative;
  throw Error("unknown polarity: " + s);
}

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

const std::set<std::string> kAuxiliaries = {
    "is", "are", "was", "were", "do", "does", "did", "can", "could", "will",
    "would", "should", "shall", "may", "might", "must", "has", "have", "had",
};

// All balanced {...} spans that parse as JSON objects, in order.
std::vector<nlohmann::json> scan_json_objects(const std::string& text) {
  std::vector<nlohmann::json> out;
  size_t pos = 0;
  while ((pos = text.find('{', pos)) != std::string::npos) {
    int depth = 0;
    bool in_string = false;
    size_t end = std::string::npos;
    for (size_t i = pos; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (c == '\\') ++i;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}' && --depth == 0) {
        end = i;
        break;
      }
    }
    if (end == std::string::npos) break;
    nlohmann::json j = nlohmann::json::parse(text.substr(pos, end - pos + 1), nullptr, false);
    if (j.is_object()) {
      out.push_back(std::move(j));
      pos = end + 1;
    } else {
      pos += 1;
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> declarativize(const AbstractQuestion& q, Polarity polarity) {
  std::string text = trim(q.template_text);
  if (text.empty()) return std::nullopt;
  if (text.back() == '?') text.pop_back();
  text = trim(text);

  size_t space = text.find(' ');
  if (space == std::string::npos) return std::nullopt;
  std::string aux = lowered(text.substr(0, space));
  if (!kAuxiliaries.count(aux)) return std::nullopt;
  std::string remainder = trim(text.substr(space + 1));

  // The subject ends with the earliest semantic label in the remainder.
  size_t subject_end = std::string::npos;
  for (const auto& p : q.parameters) {
    size_t at = remainder.find(p.semantic_label);
    if (at == std::string::npos) continue;
    size_t end = at + p.semantic_label.size();
    if (subject_end == std::string::npos || end < subject_end) subject_end = end;
  }
  if (subject_end == std::string::npos) return std::nullopt;
  std::string subject = trim(remainder.substr(0, subject_end));
  std::string predicate = trim(remainder.substr(subject_end));
  if (subject.empty()) return std::nullopt;

  subject[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(subject[0])));
  std::string statement = subject + " " + aux;
  if (polarity == Polarity::negative) statement += " not";
  if (!predicate.empty()) statement += " " + predicate;
  statement += ".";
  return statement;
}

AnalogyGenerator::AnalogyGenerator(LlmGateway& gateway, AnalogyParams params)
    : gateway_(gateway), params_(params) {}

std::vector<EntityCandidate> AnalogyGenerator::generate_entities(const AbstractQuestion& q,
                                                                 const ParameterSpec& parameter,
                                                                 int n) {
  if (!q.find_parameter(parameter.name))
    throw Error("parameter '" + parameter.name + "' does not belong to the abstract question");
  std::map<std::string, std::string> slots{{"question", q.template_text},
                                           {"entity", parameter.semantic_label},
                                           {"example", parameter.value.display()}};
  LlmRequest req{"entity_gen", slots, params_.generation_temperature, 0, params_.max_tokens};
  LlmResponse resp = gateway_.complete(req);

  std::vector<EntityCandidate> out;
  std::set<std::string> seen;
  std::string original = lowered(trim(parameter.value.display()));
  size_t pos = 0;
  const std::string& text = resp.text;
  bool done = false;
  while (pos <= text.size() && !done && static_cast<int>(out.size()) < n) {
    size_t nl = text.find('\n', pos);
    std::string line = trim(nl == std::string::npos ? text.substr(pos)
                                                    : text.substr(pos, nl - pos));
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    if (line == "END") break;
    if (line.size() > 4 && line.compare(line.size() - 4, 4, " END") == 0) {
      line = trim(line.substr(0, line.size() - 4));
      done = true;
    }
    if (line.empty()) continue;
    if (lowered(line) == original) continue;  // never echo the original entity
    if (!seen.insert(line).second) continue;
    out.push_back({parameter.name, line});
  }
  if (out.empty()) throw EmptyGeneration("entities for " + parameter.semantic_label);
  return out;
}

std::string AnalogyGenerator::statement_template(const AbstractQuestion& q, Polarity polarity) {
  if (auto mechanical = declarativize(q, polarity)) return *mechanical;
  // model fallback for question shapes the mechanical rules cannot handle
  LlmRequest req{"declarativize",
                 {{"question", q.template_text}, {"form", polarity_name(polarity)}},
                 params_.validation_temperature,
                 0,
                 params_.max_tokens};
  std::string reply = trim(gateway_.complete(req).text);
  size_t nl = reply.find('\n');
  if (nl != std::string::npos) reply = trim(reply.substr(0, nl));
  for (const auto& p : q.parameters) {
    if (reply.find(p.semantic_label) == std::string::npos)
      throw EmptyGeneration("declarative form of: " + q.template_text);
  }
  return reply;
}

std::vector<GeneratedStatement> AnalogyGenerator::generate_statements(
    const AbstractQuestion& q, const EntityCandidate& entity, Polarity polarity, int m) {
  const ParameterSpec* varied = q.find_parameter(entity.parameter_name);
  if (!varied) throw Error("unknown parameter: " + entity.parameter_name);

  std::string tmpl = statement_template(q, polarity);

  // Fix the varied entity in the statement template.
  std::string fixed = tmpl;
  size_t at = 0;
  while ((at = fixed.find(varied->semantic_label, at)) != std::string::npos) {
    fixed.replace(at, varied->semantic_label.size(), entity.value);
    at += entity.value.size();
  }

  TypedValue entity_value;
  if (!cast_json_to_kind(nlohmann::json(entity.value), varied->value_kind, entity_value))
    throw EmptyGeneration("entity '" + entity.value + "' does not fit kind " +
                          kind_name(varied->value_kind));

  std::vector<const ParameterSpec*> remaining;
  for (const auto& p : q.parameters)
    if (p.name != varied->name) remaining.push_back(&p);

  if (remaining.empty()) {
    GeneratedStatement st;
    st.text = fixed;
    st.polarity = polarity;
    st.bindings[varied->name] = entity_value;
    return {st};
  }

  std::string entity_specs;
  for (size_t i = 0; i < remaining.size(); ++i) {
    if (i) entity_specs += ", ";
    entity_specs += remaining[i]->semantic_label + ": " +
                    kind_python_name(remaining[i]->value_kind) + " (e.g., " +
                    remaining[i]->value.display() + ")";
  }

  LlmRequest req{"statement_gen",
                 {{"statement", fixed}, {"entity_specs", entity_specs}},
                 params_.generation_temperature,
                 0,
                 params_.max_tokens};
  LlmResponse resp = gateway_.complete(req);

  std::vector<GeneratedStatement> out;
  for (const auto& obj : scan_json_objects(resp.text)) {
    if (static_cast<int>(out.size()) >= m) break;
    if (!obj.contains("statement") || !obj["statement"].is_string()) continue;
    GeneratedStatement st;
    st.text = obj["statement"].get<std::string>();
    st.polarity = polarity;
    st.bindings[varied->name] = entity_value;
    bool complete = true;
    for (const ParameterSpec* p : remaining) {
      auto it = obj.find(p->semantic_label);
      TypedValue value;
      if (it == obj.end() || !cast_json_to_kind(*it, p->value_kind, value)) {
        complete = false;
        break;
      }
      st.bindings[p->name] = std::move(value);
    }
    if (!complete) continue;  // skip lines missing or mistyping an entity
    out.push_back(std::move(st));
  }
  if (out.empty())
    throw EmptyGeneration("statements for " + varied->semantic_label + " = " + entity.value);
  return out;
}

std::string AnalogyGenerator::statement_to_question(const GeneratedStatement& statement,
                                                    const AbstractQuestion& q) const {
  return substitute_bindings(q, statement.bindings);
}

std::optional<ValidatedQuestion> AnalogyGenerator::validate(const std::string& question_text,
                                                            const BindingMap& bindings,
                                                            Polarity intended) {
  ConsensusResult consensus = cot_consensus(gateway_, question_text, params_.validation_k,
                                            params_.validation_temperature, params_.max_tokens);
  if (consensus.verdict == Verdict::unknown) return std::nullopt;
  if (consensus.agreement + 1e-9 < params_.agreement_threshold) return std::nullopt;
  ValidatedQuestion v;
  v.question.text = question_text;
  v.question.bindings = bindings;
  v.question.silver_label = consensus.verdict;  // the silver label wins over intent
  v.question.agreement = consensus.agreement;
  v.question.polarity = intended;
  v.consensus = std::move(consensus);
  return v;
}

std::vector<ValidatedQuestion> AnalogyGenerator::acquire_similar_set(
    const AbstractQuestion& q, const AnalogyTargets& targets) {
  struct PendingQuestion {
    std::string text;
    BindingMap bindings;
    Polarity polarity;
  };
  std::deque<PendingQuestion> positive, negative;
  std::set<std::string> seen_texts{substitute_bindings(q, original_bindings(q))};

  for (const auto& parameter : q.parameters) {
    std::vector<EntityCandidate> entities;
    try {
      entities = generate_entities(q, parameter, targets.entities_per_parameter);
    } catch (const EmptyGeneration&) {
      continue;
    }
    for (const auto& entity : entities) {
      for (Polarity polarity : {Polarity::positive, Polarity::negative}) {
        std::vector<GeneratedStatement> statements;
        try {
          statements = generate_statements(q, entity, polarity, targets.statements_per_pair);
        } catch (const EmptyGeneration&) {
          continue;
        }
        for (const auto& st : statements) {
          std::string text;
          try {
            text = statement_to_question(st, q);
          } catch (const MissingBinding&) {
            continue;
          }
          if (!seen_texts.insert(text).second) continue;
          auto& queue = polarity == Polarity::positive ? positive : negative;
          queue.push_back({text, st.bindings, polarity});
        }
      }
    }
  }

  // Validate alternating polarity so survivors stay balanced.
  std::vector<ValidatedQuestion> validated;
  int accepted_positive = 0, accepted_negative = 0;
  bool prefer_positive = true;
  while (static_cast<int>(validated.size()) < targets.target_validated &&
         (!positive.empty() || !negative.empty())) {
    bool take_positive;
    if (positive.empty()) take_positive = false;
    else if (negative.empty()) take_positive = true;
    else if (accepted_positive < accepted_negative) take_positive = true;
    else if (accepted_negative < accepted_positive) take_positive = false;
    else take_positive = prefer_positive;
    prefer_positive = !take_positive;

    auto& queue = take_positive ? positive : negative;
    PendingQuestion pending = std::move(queue.front());
    queue.pop_front();
    if (auto v = validate(pending.text, pending.bindings, pending.polarity)) {
      validated.push_back(std::move(*v));
      (take_positive ? accepted_positive : accepted_negative) += 1;
    }
  }

  if (static_cast<int>(validated.size()) < targets.minimum_validated)
    throw InsufficientSimilarQuestions(static_cast<int>(validated.size()),
                                       targets.minimum_validated);
  return validated;
}

nlohmann::json similar_set_to_json(const std::string& abstract_id,
                                   const std::vector<ValidatedQuestion>& set) {
  nlohmann::json questions = nlohmann::json::array();
  for (const auto& v : set) {
    nlohmann::json bindings = nlohmann::json::object();
    for (const auto& [name, value] : v.question.bindings) bindings[name] = value.to_json();
    questions.push_back({{"text", v.question.text},
                         {"bindings", bindings},
                         {"silver_label", verdict_name(v.question.silver_label)},
                         {"agreement", v.question.agreement},
                         {"polarity", polarity_name(v.question.polarity)},
                         {"samples", v.consensus.to_json()["samples"]}});
  }
  return {{"abstract_id", abstract_id}, {"questions", questions}};
}

std::vector<ValidatedQuestion> similar_set_from_json(const nlohmann::json& j) {
  std::vector<ValidatedQuestion> out;
  for (const auto& qj : j.at("questions")) {
    ValidatedQuestion v;
    v.question.text = qj.at("text").get<std::string>();
    for (auto it = qj.at("bindings").begin(); it != qj.at("bindings").end(); ++it) {
      v.question.bindings[it.key()] = TypedValue::from_json(it.value());
    }
    v.question.silver_label = verdict_from_name(qj.at("silver_label").get<std::string>());
    v.question.agreement = qj.at("agreement").get<double>();
    v.question.polarity = polarity_from_name(qj.at("polarity").get<std::string>());
    std::vector<CoTSample> samples;
    for (const auto& sj : qj.at("samples")) {
      samples.push_back({sj.at("text").get<std::string>(),
                         verdict_from_name(sj.at("verdict").get<std::string>())});
    }
    v.consensus = aggregate_verdicts(std::move(samples));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace coreason
