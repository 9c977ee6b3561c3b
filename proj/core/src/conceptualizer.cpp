#include "coreason/conceptualizer.hpp"

#include <regex>
#include <set>

#include "coreason/errors.hpp"

namespace coreason {

const ParameterSpec* AbstractQuestion::find_parameter(const std::string& name) const {
  for (const auto& p : parameters)
    if (p.name == name) return &p;
  return nullptr;
}

const ParameterSpec* AbstractQuestion::find_by_label(const std::string& label) const {
  for (const auto& p : parameters)
    if (p.semantic_label == label) return &p;
  return nullptr;
}

nlohmann::json AbstractQuestion::to_json() const {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : parameters) {
    params.push_back({{"name", p.name},
                      {"semantic_label", p.semantic_label},
                      {"value_kind", kind_name(p.value_kind)},
                      {"value", p.value.to_json().at("value")}});
  }
  return {{"source_id", source_id}, {"template_text", template_text}, {"parameters", params}};
}

AbstractQuestion AbstractQuestion::from_json(const nlohmann::json& j) {
  AbstractQuestion q;
  q.source_id = j.at("source_id").get<std::string>();
  q.template_text = j.at("template_text").get<std::string>();
  for (const auto& pj : j.at("parameters")) {
    ParameterSpec p;
    p.name = pj.at("name").get<std::string>();
    p.semantic_label = pj.at("semantic_label").get<std::string>();
    p.value_kind = kind_from_name(pj.at("value_kind").get<std::string>());
    if (!cast_json_to_kind(pj.at("value"), p.value_kind, p.value)) {
      throw Error("parameter value does not match declared kind: " + p.name);
    }
    q.parameters.push_back(std::move(p));
  }
  return q;
}

std::string substitute_bindings(const AbstractQuestion& q, const BindingMap& bindings) {
  std::string out = q.template_text;
  for (const auto& p : q.parameters) {
    auto it = bindings.find(p.name);
    if (it == bindings.end()) throw MissingBinding(p.name);
    std::string value = it->second.display();
    size_t pos = 0;
    while ((pos = out.find(p.semantic_label, pos)) != std::string::npos) {
      out.replace(pos, p.semantic_label.size(), value);
      pos += value.size();
    }
  }
  return out;
}

BindingMap original_bindings(const AbstractQuestion& q) {
  BindingMap b;
  for (const auto& p : q.parameters) b[p.name] = p.value;
  return b;
}

std::string annotated_question(const AbstractQuestion& q) {
  std::string out = q.template_text;
  for (const auto& p : q.parameters) {
    std::string annotated =
        p.semantic_label + " (" + p.name + ": " + kind_python_name(p.value_kind) + ")";
    size_t pos = 0;
    while ((pos = out.find(p.semantic_label, pos)) != std::string::npos) {
      // Skip occurrences we already annotated.
      out.replace(pos, p.semantic_label.size(), annotated);
      pos += annotated.size();
    }
  }
  return out;
}

namespace {

constexpr const char* kQuestionMarker = "So the question becomes";
constexpr const char* kParametersMarker = "With parameters";

Kind kind_from_python_label(const std::string& label, bool& known) {
  known = true;
  if (label == "str") return Kind::text;
  if (label == "int") return Kind::integer;
  if (label == "float") return Kind::real;
  if (label == "bool") return Kind::boolean;
  if (label == "list") return Kind::list_of_text;
  known = false;  // unexpected kind label; treated as text downstream
  return Kind::text;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

AbstractQuestion parse_conceptualization(const std::string& raw, const std::string& source_id) {
  // (a) replacement clauses: "noun" to "Label" (name: kind)
  static const std::regex replacement_re(
      R"re("([^"]+)"\s+to\s+"([^"]+)"\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*([A-Za-z]+)\s*\))re");
  struct Replacement {
    std::string label, name;
    Kind kind;
  };
  std::map<std::string, Replacement> replacements;
  std::vector<std::string> replacement_order;
  for (auto it = std::sregex_iterator(raw.begin(), raw.end(), replacement_re);
       it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    bool known = false;
    Replacement r{m[2].str(), m[3].str(), kind_from_python_label(m[4].str(), known)};
    if (!replacements.count(r.name)) replacement_order.push_back(r.name);
    replacements[r.name] = std::move(r);
  }

  // (b) the abstract question sentence
  size_t q_pos = raw.find(kQuestionMarker);
  if (q_pos == std::string::npos) throw MissingAbstractQuestionMarker();
  size_t q_begin = q_pos + std::string(kQuestionMarker).size();
  size_t p_pos = raw.find(kParametersMarker, q_begin);
  if (p_pos == std::string::npos) throw MissingParametersMarker();
  std::string template_text = trim(raw.substr(q_begin, p_pos - q_begin));
  if (template_text.empty()) throw MissingAbstractQuestionMarker();

  // (c) the assignment list
  std::string assignment_text = raw.substr(p_pos + std::string(kParametersMarker).size());
  static const std::regex assignment_re(
      R"re(([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?:"([^"]*)"|(-?\d+(?:\.\d+)?)))re");
  std::map<std::string, std::string> quoted_values;
  std::map<std::string, std::string> numeric_values;
  std::vector<std::string> assignment_order;
  for (auto it = std::sregex_iterator(assignment_text.begin(), assignment_text.end(),
                                      assignment_re);
       it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    std::string name = m[1].str();
    if (!quoted_values.count(name) && !numeric_values.count(name))
      assignment_order.push_back(name);
    if (m[2].matched) quoted_values[name] = m[2].str();
    else numeric_values[name] = m[3].str();
  }
  if (assignment_order.empty()) throw ConceptualizationFailed("no parameter assignments found");

  // pair (a) with (c) on name
  for (const auto& name : replacement_order) {
    if (!quoted_values.count(name) && !numeric_values.count(name)) throw NameMismatch(name);
  }
  for (const auto& name : assignment_order) {
    if (!replacements.count(name)) throw NameMismatch(name);
  }

  AbstractQuestion q;
  q.source_id = source_id;
  q.template_text = template_text;
  for (const auto& name : replacement_order) {
    const Replacement& r = replacements.at(name);
    ParameterSpec p;
    p.name = name;
    p.semantic_label = r.label;
    p.value_kind = r.kind;
    nlohmann::json payload;
    if (auto it = quoted_values.find(name); it != quoted_values.end()) {
      payload = it->second;
    } else {
      payload = nlohmann::json::parse(numeric_values.at(name));
    }
    if (!cast_json_to_kind(payload, p.value_kind, p.value)) {
      throw ConceptualizationFailed("value for '" + name + "' does not fit declared kind " +
                                    kind_name(p.value_kind));
    }
    q.parameters.push_back(std::move(p));
  }

  if (q.parameters.empty()) throw ConceptualizationFailed("no replaced nouns");
  std::set<std::string> seen;
  for (const auto& p : q.parameters) {
    if (!seen.insert(p.name).second)
      throw ConceptualizationFailed("duplicate parameter name: " + p.name);
    if (q.template_text.find(p.semantic_label) == std::string::npos) {
      throw ConceptualizationFailed("semantic label '" + p.semantic_label +
                                    "' missing from abstract question");
    }
  }
  return q;
}

std::string serialize_conceptualization(const AbstractQuestion& q) {
  std::string out =
      "We first identify all named entities, special nouns and numerical values. As a result, "
      "we can replace ";
  for (const auto& p : q.parameters) {
    out += "\"" + p.value.display() + "\" to \"" + p.semantic_label + "\" (" + p.name + ": " +
           kind_python_name(p.value_kind) + ") ";
  }
  out += std::string(kQuestionMarker) + " " + q.template_text + " " + kParametersMarker + " ";
  for (size_t i = 0; i < q.parameters.size(); ++i) {
    const auto& p = q.parameters[i];
    if (i) out += ", ";
    out += p.name + "=";
    if (p.value_kind == Kind::integer || p.value_kind == Kind::real) {
      out += p.value.display();
    } else {
      out += "\"" + p.value.display() + "\"";
    }
  }
  return out;
}

Conceptualizer::Conceptualizer(LlmGateway& gateway, double temperature, int max_tokens)
    : gateway_(gateway), temperature_(temperature), max_tokens_(max_tokens) {}

AbstractQuestion Conceptualizer::conceptualize(const ConcreteQuestion& question) {
  if (question.text.empty()) throw ConceptualizationFailed("empty question text");
  LlmRequest req{"conceptualize", {{"question", question.text}}, temperature_, 0, max_tokens_};
  LlmResponse resp = gateway_.complete(req);
  last_raw_ = resp.text;
  return parse_conceptualization(resp.text, question.id);
}

}  // namespace coreason
