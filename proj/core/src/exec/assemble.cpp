#include "coreason/exec/assemble.hpp"

#include <charconv>

#include "coreason/errors.hpp"

namespace coreason {

namespace {

std::string quote(const std::string& v) {
  std::string out = "\"";
  for (char c : v) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

constexpr const char* kPreamble =
    "# Runtime preamble: the executor provides these helpers natively.\n"
    "#   ask_llm(query, type) / ask_gpt(query, type) -> typed knowledge retrieval\n"
    "#   eq_override, neq_override, gt_override, gte_override,\n"
    "#   lt_override, lte_override, in_override, not_in_override -> soft comparisons\n"
    "#   printed output is captured as the program's prediction\n";

}  // namespace

std::string render_literal(const TypedValue& value) {
  switch (value.kind()) {
    case Kind::boolean: return value.as_bool() ? "True" : "False";
    case Kind::integer: return std::to_string(value.as_int());
    case Kind::real: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value.as_real());
      std::string s(buf, ptr);
      if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) s += ".0";
      return s;
    }
    case Kind::text: return quote(value.as_text());
    case Kind::list_of_text: {
      std::string out = "[";
      const auto& xs = value.as_list();
      for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += quote(xs[i]);
      }
      return out + "]";
    }
  }
  return "None";
}

ExecutableUnit assemble_executable(const RewrittenProgram& program, const BindingMap& bindings) {
  std::string call = "print(answer(";
  for (size_t i = 0; i < program.entry_params.size(); ++i) {
    const std::string& name = program.entry_params[i];
    auto it = bindings.find(name);
    if (it == bindings.end()) throw MissingBinding(name);
    if (i) call += ", ";
    call += name + "=" + render_literal(it->second);
  }
  call += "))\n";

  ExecutableUnit unit;
  unit.source = std::string(kPreamble) + "\n" + program.source;
  if (unit.source.empty() || unit.source.back() != '\n') unit.source += "\n";
  unit.source += "\n" + call;
  return unit;
}

}  // namespace coreason
