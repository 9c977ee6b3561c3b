#include "coreason/lang/lexer.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace coreason::lang {

namespace {

const std::set<std::string> kKeywords = {
    "def", "return", "if", "elif", "else", "for", "in", "not", "and", "or",
    "True", "False", "None", "pass",
    // recognized so the parser can reject them as forbidden constructs
    "import", "from", "while", "try", "except", "finally", "raise", "with",
    "class", "lambda", "global", "nonlocal", "del", "assert", "yield",
    "async", "await", "is", "break", "continue",
};

const std::set<std::string> kForbidden = {
    "import", "from", "while", "try", "except", "finally", "raise", "with",
    "class", "lambda", "global", "nonlocal", "del", "assert", "yield",
    "async", "await",
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int paren_depth = 0;
  bool at_line_start = true;
  std::vector<std::string> indents{""};
  std::vector<Token> out;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, line, msg);
  }

  char peek(size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  bool eof() const { return pos >= src.size(); }

  void push(TokType t, std::string text = "") {
    Token tok;
    tok.type = t;
    tok.text = std::move(text);
    tok.line = line;
    out.push_back(std::move(tok));
  }

  void handle_indentation() {
    // Measure leading whitespace of the next logical line; skip blank and
    // comment-only lines entirely.
    while (true) {
      size_t start = pos;
      std::string indent;
      while (!eof() && (peek() == ' ' || peek() == '\t')) indent.push_back(src[pos++]);
      if (eof()) return;
      if (peek() == '\n') {
        ++pos;
        ++line;
        continue;
      }
      if (peek() == '\r') {
        ++pos;
        continue;
      }
      if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
        continue;
      }
      const std::string& current = indents.back();
      if (indent == current) return;
      if (indent.size() > current.size() && indent.compare(0, current.size(), current) == 0) {
        indents.push_back(indent);
        push(TokType::indent);
        return;
      }
      while (indents.size() > 1 && indent.size() < indents.back().size()) {
        indents.pop_back();
        push(TokType::dedent);
      }
      if (indent != indents.back()) fail("inconsistent indentation");
      (void)start;
      return;
    }
  }

  void lex_string(bool is_fstring) {
    char quote = peek();
    bool triple = peek(1) == quote && peek(2) == quote;
    pos += triple ? 3 : 1;
    std::string value;  // decoded for plain strings, raw for f-strings
    while (true) {
      if (eof()) fail("unterminated string literal");
      char c = peek();
      if (!triple && c == '\n') fail("unterminated string literal");
      if (c == quote && (!triple || (peek(1) == quote && peek(2) == quote))) {
        pos += triple ? 3 : 1;
        break;
      }
      if (c == '\\' && !is_fstring) {
        char esc = peek(1);
        switch (esc) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case 'r': value.push_back('\r'); break;
          case '\\': value.push_back('\\'); break;
          case '\'': value.push_back('\''); break;
          case '"': value.push_back('"'); break;
          case '\n': ++line; break;  // line continuation inside string
          default: value.push_back(esc); break;
        }
        pos += 2;
        continue;
      }
      if (c == '\\' && is_fstring) {
        // keep escapes raw; the parser decodes literal segments
        value.push_back(c);
        value.push_back(peek(1));
        pos += 2;
        continue;
      }
      if (c == '\n') ++line;
      value.push_back(c);
      ++pos;
    }
    Token tok;
    tok.type = is_fstring ? TokType::fstring : TokType::str_lit;
    if (is_fstring) tok.text = value;
    else tok.str_value = value;
    tok.line = line;
    out.push_back(std::move(tok));
  }

  void lex_number() {
    size_t start = pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    bool is_real = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_real = true;
      ++pos;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    }
    if (peek() == 'e' || peek() == 'E') {
      size_t save = pos;
      ++pos;
      if (peek() == '+' || peek() == '-') ++pos;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        is_real = true;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
      } else {
        pos = save;
      }
    }
    std::string text = src.substr(start, pos - start);
    Token tok;
    tok.line = line;
    if (is_real) {
      tok.type = TokType::real_lit;
      tok.real_value = std::stod(text);
    } else {
      tok.type = TokType::int_lit;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size())
        fail("integer literal out of range: " + text);
      tok.int_value = v;
    }
    out.push_back(std::move(tok));
  }

  void lex_name() {
    size_t start = pos;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos;
    std::string word = src.substr(start, pos - start);
    Token tok;
    tok.line = line;
    tok.type = kKeywords.count(word) ? TokType::keyword : TokType::name;
    tok.text = std::move(word);
    out.push_back(std::move(tok));
  }

  void lex_operator() {
    static const char* two_char[] = {"==", "!=", ">=", "<=", "->", "**", "//",
                                     "<<", ">>", "+=", "-=", "*=", "/="};
    for (const char* op : two_char) {
      if (peek() == op[0] && peek(1) == op[1]) {
        push(TokType::op, op);
        pos += 2;
        return;
      }
    }
    char c = peek();
    static const std::string singles = "()[],:+-*/<>=.%&|^~@";
    if (singles.find(c) != std::string::npos) {
      if (c == '(' || c == '[') ++paren_depth;
      if (c == ')' || c == ']') --paren_depth;
      push(TokType::op, std::string(1, c));
      ++pos;
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::vector<Token> run() {
    while (true) {
      if (at_line_start && paren_depth == 0) {
        handle_indentation();
        at_line_start = false;
        if (eof()) break;
      }
      if (eof()) break;
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
        continue;
      }
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos;
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {
        pos += 2;
        ++line;
        continue;
      }
      if (c == '\n') {
        ++pos;
        ++line;
        if (paren_depth == 0) {
          push(TokType::newline);
          at_line_start = true;
        }
        continue;
      }
      if ((c == 'f' || c == 'F') && (peek(1) == '"' || peek(1) == '\'')) {
        ++pos;
        lex_string(/*is_fstring=*/true);
        continue;
      }
      if (c == '"' || c == '\'') {
        lex_string(/*is_fstring=*/false);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_name();
        continue;
      }
      lex_operator();
    }
    if (!out.empty() && out.back().type != TokType::newline) push(TokType::newline);
    while (indents.size() > 1) {
      indents.pop_back();
      push(TokType::dedent);
    }
    push(TokType::eof);
    return std::move(out);
  }
};

}  // namespace

std::vector<Token> tokenize(const std::string& source) { return Lexer(source).run(); }

bool is_keyword(const std::string& word) { return kKeywords.count(word) > 0; }
bool is_forbidden_keyword(const std::string& word) { return kForbidden.count(word) > 0; }

}  // namespace coreason::lang
