#include "coreason/verdict.hpp"

#include <cctype>

#include "coreason/errors.hpp"

namespace coreason {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

Verdict verdict_from_name(const std::string& s) {
  if (s == "yes") return Verdict::yes;
  if (s == "no") return Verdict::no;
  if (s == "unknown") return Verdict::unknown;
  throw Error("unknown verdict name: " + s);
}

namespace {

bool contains_word(const std::string& text, const std::string& word) {
  size_t pos = 0;
  while ((pos = text.find(word, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !std::isalpha(static_cast<unsigned char>(text[pos - 1]));
    size_t end = pos + word.size();
    bool right_ok = end >= text.size() || !std::isalpha(static_cast<unsigned char>(text[end]));
    if (left_ok && right_ok) return true;
    pos += 1;
  }
  return false;
}

}  // namespace

Verdict normalize_output(const std::string& raw) {
  std::string low;
  low.reserve(raw.size());
  for (char c : raw) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  bool has_yes = contains_word(low, "yes");
  bool has_no = contains_word(low, "no");
  if (has_yes && !has_no) return Verdict::yes;
  if (has_no && !has_yes) return Verdict::no;
  return Verdict::unknown;
}

}  // namespace coreason
