#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace coreason {

// The five payload kinds a typed retrieval can produce.
enum class Kind { boolean, integer, real, text, list_of_text };

std::string kind_name(Kind k);              // "boolean", "integer", ...
Kind kind_from_name(const std::string& s);  // inverse of kind_name, throws Error

// Short label appended to retrieval queries, e.g. "(int)".
std::string kind_label(Kind k);  // "bool", "int", "float", "str", "list"
// Python-style annotation used when rendering parameter specs into prompts.
std::string kind_python_name(Kind k);  // "bool", "int", "float", "str", "list"

class TypedValue {
 public:
  using List = std::vector<std::string>;

  TypedValue() : kind_(Kind::text), payload_(std::string{}) {}
  static TypedValue boolean(bool v) { return TypedValue(Kind::boolean, v); }
  static TypedValue integer(std::int64_t v) { return TypedValue(Kind::integer, v); }
  static TypedValue real(double v) { return TypedValue(Kind::real, v); }
  static TypedValue text(std::string v) { return TypedValue(Kind::text, std::move(v)); }
  static TypedValue list(List v) { return TypedValue(Kind::list_of_text, std::move(v)); }

  Kind kind() const { return kind_; }
  bool as_bool() const { return std::get<bool>(payload_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(payload_); }
  double as_real() const { return std::get<double>(payload_); }
  const std::string& as_text() const { return std::get<std::string>(payload_); }
  const List& as_list() const { return std::get<List>(payload_); }

  // Lossless JSON surface form: {"kind": ..., "value": ...}.
  nlohmann::json to_json() const;
  static TypedValue from_json(const nlohmann::json& j);

  // How the value reads when substituted into natural-language text.
  std::string display() const;

  bool operator==(const TypedValue& other) const = default;

 private:
  template <typename T>
  TypedValue(Kind k, T v) : kind_(k), payload_(std::move(v)) {}

  Kind kind_;
  std::variant<bool, std::int64_t, double, std::string, List> payload_;
};

// Lenient cast of a raw JSON value (the model's "answer" payload) into the
// expected kind. Booleans accept true/false and the strings
// "true"/"false"/"yes"/"no" (case-insensitive); integers accept JSON numbers
// and digit strings but reject non-integral reals; lists accept any JSON
// array, stringifying the elements. Returns false when the payload cannot be
// coerced.
bool cast_json_to_kind(const nlohmann::json& payload, Kind expected, TypedValue& out);

}  // namespace coreason
