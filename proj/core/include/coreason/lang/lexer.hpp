#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coreason/errors.hpp"

namespace coreason::lang {

struct ParseError : Error {
  enum class Kind { syntax, forbidden, missing_entry };
  Kind kind;
  int line;
  ParseError(Kind k, int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), kind(k), line(line_) {}
};

enum class TokType { name, keyword, int_lit, real_lit, str_lit, fstring, op, newline, indent, dedent, eof };

struct Token {
  TokType type = TokType::eof;
  std::string text;            // name/keyword/op spelling; raw body for fstring
  std::string str_value;       // decoded value for str_lit
  std::int64_t int_value = 0;
  double real_value = 0;
  int line = 1;
};

// Tokenizes solution-language source. Indentation-sensitive with implicit
// line joining inside () and [], and explicit backslash continuation.
// Throws ParseError (forbidden for blacklisted keywords is left to the
// parser; the lexer only reports lexical problems).
std::vector<Token> tokenize(const std::string& source);

bool is_keyword(const std::string& word);
bool is_forbidden_keyword(const std::string& word);

}  // namespace coreason::lang
