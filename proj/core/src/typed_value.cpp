#include "coreason/typed_value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "coreason/errors.hpp"

namespace coreason {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::boolean: return "boolean";
    case Kind::integer: return "integer";
    case Kind::real: return "real";
    case Kind::text: return "text";
    case Kind::list_of_text: return "list_of_text";
  }
  return "text";
}

Kind kind_from_name(const std::string& s) {
  if (s == "boolean") return Kind::boolean;
  if (s == "integer") return Kind::integer;
  if (s == "real") return Kind::real;
  if (s == "text") return Kind::text;
  if (s == "list_of_text") return Kind::list_of_text;
  throw Error("unknown kind name: " + s);
}

std::string kind_label(Kind k) {
  switch (k) {
    case Kind::boolean: return "bool";
    case Kind::integer: return "int";
    case Kind::real: return "float";
    case Kind::text: return "str";
    case Kind::list_of_text: return "list";
  }
  return "str";
}

std::string kind_python_name(Kind k) { return kind_label(k); }

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Shortest round-trip formatting, so display() is deterministic.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string stringify_scalar(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  if (j.is_number_float()) return format_double(j.get<double>());
  return j.dump();
}

bool parse_int_string(const std::string& raw, std::int64_t& out) {
  std::string s = trim(raw);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_real_string(const std::string& raw, double& out) {
  std::string s = trim(raw);
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

nlohmann::json TypedValue::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind_);
  switch (kind_) {
    case Kind::boolean: j["value"] = as_bool(); break;
    case Kind::integer: j["value"] = as_int(); break;
    case Kind::real: j["value"] = as_real(); break;
    case Kind::text: j["value"] = as_text(); break;
    case Kind::list_of_text: j["value"] = as_list(); break;
  }
  return j;
}

TypedValue TypedValue::from_json(const nlohmann::json& j) {
  Kind k = kind_from_name(j.at("kind").get<std::string>());
  const auto& v = j.at("value");
  switch (k) {
    case Kind::boolean: return boolean(v.get<bool>());
    case Kind::integer: return integer(v.get<std::int64_t>());
    case Kind::real: return real(v.get<double>());
    case Kind::text: return text(v.get<std::string>());
    case Kind::list_of_text: return list(v.get<List>());
  }
  throw Error("unreachable kind");
}

std::string TypedValue::display() const {
  switch (kind_) {
    case Kind::boolean: return as_bool() ? "true" : "false";
    case Kind::integer: return std::to_string(as_int());
    case Kind::real: return format_double(as_real());
    case Kind::text: return as_text();
    case Kind::list_of_text: {
      std::string out = "[";
      const auto& xs = as_list();
      for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i];
      }
      out += "]";
      return out;
    }
  }
  return "";
}

bool cast_json_to_kind(const nlohmann::json& payload, Kind expected, TypedValue& out) {
  switch (expected) {
    case Kind::boolean: {
      if (payload.is_boolean()) {
        out = TypedValue::boolean(payload.get<bool>());
        return true;
      }
      if (payload.is_string()) {
        std::string s = lower(trim(payload.get<std::string>()));
        if (s == "true" || s == "yes") { out = TypedValue::boolean(true); return true; }
        if (s == "false" || s == "no") { out = TypedValue::boolean(false); return true; }
      }
      return false;
    }
    case Kind::integer: {
      if (payload.is_number_integer() || payload.is_number_unsigned()) {
        out = TypedValue::integer(payload.get<std::int64_t>());
        return true;
      }
      if (payload.is_number_float()) {
        double d = payload.get<double>();
        if (std::floor(d) != d) return false;  // non-integral reals rejected
        out = TypedValue::integer(static_cast<std::int64_t>(d));
        return true;
      }
      if (payload.is_string()) {
        std::int64_t v = 0;
        if (parse_int_string(payload.get<std::string>(), v)) {
          out = TypedValue::integer(v);
          return true;
        }
      }
      return false;
    }
    case Kind::real: {
      if (payload.is_number()) {
        out = TypedValue::real(payload.get<double>());
        return true;
      }
      if (payload.is_string()) {
        double v = 0;
        if (parse_real_string(payload.get<std::string>(), v)) {
          out = TypedValue::real(v);
          return true;
        }
      }
      return false;
    }
    case Kind::text: {
      if (payload.is_string() || payload.is_boolean() || payload.is_number()) {
        out = TypedValue::text(stringify_scalar(payload));
        return true;
      }
      return false;
    }
    case Kind::list_of_text: {
      if (!payload.is_array()) return false;
      TypedValue::List xs;
      xs.reserve(payload.size());
      for (const auto& el : payload) xs.push_back(stringify_scalar(el));
      out = TypedValue::list(std::move(xs));
      return true;
    }
  }
  return false;
}

}  // namespace coreason
