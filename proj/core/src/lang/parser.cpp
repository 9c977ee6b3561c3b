#include "coreason/lang/parser.hpp"

#include <set>

namespace coreason::lang {

namespace {

const std::set<std::string> kBuiltinCallables = {
    "ask_llm", "ask_gpt", "int", "str", "print",
    "eq_override", "neq_override", "gt_override", "gte_override",
    "lt_override", "lte_override", "in_override", "not_in_override",
};

const std::set<std::string> kTypeDesignators = {"str", "int", "float", "bool", "list"};

struct Parser {
  std::vector<Token> tokens;
  size_t idx = 0;

  const Token& cur() const { return tokens[idx]; }
  const Token& peek(size_t ahead = 1) const {
    size_t i = idx + ahead;
    return i < tokens.size() ? tokens[i] : tokens.back();
  }
  Token advance() { return tokens[idx++]; }

  [[noreturn]] void fail_syntax(const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, cur().line, msg);
  }
  [[noreturn]] void fail_forbidden(const std::string& msg) const {
    throw ParseError(ParseError::Kind::forbidden, cur().line, msg);
  }

  bool at_op(const std::string& text) const {
    return cur().type == TokType::op && cur().text == text;
  }
  bool at_keyword(const std::string& text) const {
    return cur().type == TokType::keyword && cur().text == text;
  }
  void expect_op(const std::string& text) {
    if (!at_op(text)) fail_syntax("expected '" + text + "'");
    advance();
  }
  void expect_newline() {
    if (cur().type != TokType::newline) fail_syntax("expected end of line");
    advance();
  }
  void skip_newlines() {
    while (cur().type == TokType::newline) advance();
  }

  // ---- expressions ----

  ExprPtr make(int line, auto node) {
    auto e = std::make_unique<Expr>();
    e->line = line;
    e->node = std::move(node);
    return e;
  }

  ExprPtr parse_expression() {  // ternary
    ExprPtr value = parse_or();
    if (at_keyword("if")) {
      int line = cur().line;
      advance();
      ExprPtr condition = parse_or();
      if (!at_keyword("else")) fail_syntax("conditional expression missing 'else'");
      advance();
      ExprPtr other = parse_expression();
      Conditional c;
      c.condition = std::move(condition);
      c.then_value = std::move(value);
      c.else_value = std::move(other);
      return make(line, std::move(c));
    }
    return value;
  }

  ExprPtr parse_or() {
    ExprPtr first = parse_and();
    if (!at_keyword("or")) return first;
    BoolChain chain;
    chain.op = BoolOp::or_;
    int line = first->line;
    chain.operands.push_back(std::move(first));
    while (at_keyword("or")) {
      advance();
      chain.operands.push_back(parse_and());
    }
    return make(line, std::move(chain));
  }

  ExprPtr parse_and() {
    ExprPtr first = parse_not();
    if (!at_keyword("and")) return first;
    BoolChain chain;
    chain.op = BoolOp::and_;
    int line = first->line;
    chain.operands.push_back(std::move(first));
    while (at_keyword("and")) {
      advance();
      chain.operands.push_back(parse_not());
    }
    return make(line, std::move(chain));
  }

  ExprPtr parse_not() {
    if (at_keyword("not") && !(peek().type == TokType::keyword && peek().text == "in")) {
      int line = cur().line;
      advance();
      Unary u;
      u.op = UnaryOp::logical_not;
      u.operand = parse_not();
      return make(line, std::move(u));
    }
    return parse_comparison();
  }

  bool at_comparison_op() const {
    if (cur().type == TokType::op &&
        (cur().text == "==" || cur().text == "!=" || cur().text == ">" || cur().text == ">=" ||
         cur().text == "<" || cur().text == "<="))
      return true;
    if (at_keyword("in")) return true;
    if (at_keyword("not") && peek().type == TokType::keyword && peek().text == "in") return true;
    return false;
  }

  ComparisonKind take_comparison_op() {
    if (cur().type == TokType::op) {
      std::string op = advance().text;
      if (op == "==") return ComparisonKind::eq;
      if (op == "!=") return ComparisonKind::neq;
      if (op == ">") return ComparisonKind::gt;
      if (op == ">=") return ComparisonKind::gte;
      if (op == "<") return ComparisonKind::lt;
      if (op == "<=") return ComparisonKind::lte;
    }
    if (at_keyword("in")) {
      advance();
      return ComparisonKind::inc;
    }
    // not in
    advance();
    advance();
    return ComparisonKind::ninc;
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_arith();
    if (at_keyword("is")) fail_syntax("'is' comparisons are not supported");
    if (!at_comparison_op()) return lhs;
    int line = cur().line;
    Compare cmp;
    cmp.op = take_comparison_op();
    cmp.lhs = std::move(lhs);
    cmp.rhs = parse_arith();
    if (at_comparison_op()) fail_syntax("chained comparisons are not supported");
    return make(line, std::move(cmp));
  }

  ExprPtr parse_arith() {
    ExprPtr lhs = parse_term();
    while (at_op("+") || at_op("-")) {
      int line = cur().line;
      BinaryOp op = advance().text == "+" ? BinaryOp::add : BinaryOp::sub;
      Binary b;
      b.op = op;
      b.lhs = std::move(lhs);
      b.rhs = parse_term();
      lhs = make(line, std::move(b));
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (at_op("*") || at_op("/")) {
      int line = cur().line;
      BinaryOp op = advance().text == "*" ? BinaryOp::mul : BinaryOp::div;
      Binary b;
      b.op = op;
      b.lhs = std::move(lhs);
      b.rhs = parse_factor();
      lhs = make(line, std::move(b));
    }
    if (cur().type == TokType::op &&
        (cur().text == "%" || cur().text == "//" || cur().text == "**" || cur().text == "&" ||
         cur().text == "|" || cur().text == "^" || cur().text == "<<" || cur().text == ">>" ||
         cur().text == "~" || cur().text == "@"))
      fail_syntax("operator '" + cur().text + "' is not part of the solution language");
    return lhs;
  }

  ExprPtr parse_factor() {
    if (at_op("-") || at_op("+")) {
      int line = cur().line;
      UnaryOp op = advance().text == "-" ? UnaryOp::neg : UnaryOp::pos;
      Unary u;
      u.op = op;
      u.operand = parse_factor();
      return make(line, std::move(u));
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr atom = parse_atom();
    while (true) {
      if (at_op("(")) {
        if (!atom->is<NameRef>()) fail_syntax("only named functions can be called");
        int line = atom->line;
        Call call;
        call.callee = atom->as<NameRef>().id;
        advance();
        bool saw_keyword_arg = false;
        while (!at_op(")")) {
          CallArg arg;
          if (cur().type == TokType::name && peek().type == TokType::op && peek().text == "=") {
            arg.keyword = advance().text;
            advance();  // '='
            saw_keyword_arg = true;
          } else if (saw_keyword_arg) {
            fail_syntax("positional argument after keyword argument");
          }
          arg.value = parse_expression();
          call.args.push_back(std::move(arg));
          if (at_op(",")) {
            advance();
            continue;
          }
          break;
        }
        expect_op(")");
        atom = make(line, std::move(call));
        continue;
      }
      if (at_op(".")) fail_forbidden("attribute access is not allowed");
      if (at_op("[")) fail_syntax("subscripting is not part of the solution language");
      break;
    }
    return atom;
  }

  ExprPtr parse_atom() {
    const Token& t = cur();
    switch (t.type) {
      case TokType::int_lit: {
        int line = t.line;
        IntLit lit{advance().int_value};
        return make(line, lit);
      }
      case TokType::real_lit: {
        int line = t.line;
        RealLit lit{advance().real_value};
        return make(line, lit);
      }
      case TokType::str_lit: {
        int line = t.line;
        StrLit lit{advance().str_value};
        return make(line, std::move(lit));
      }
      case TokType::fstring:
        return parse_fstring();
      case TokType::name: {
        int line = t.line;
        NameRef ref{advance().text};
        return make(line, std::move(ref));
      }
      case TokType::keyword: {
        if (t.text == "True" || t.text == "False") {
          int line = t.line;
          BoolLit lit{advance().text == "True"};
          return make(line, lit);
        }
        if (t.text == "None") {
          int line = t.line;
          advance();
          return make(line, NoneLit{});
        }
        if (is_forbidden_keyword(t.text))
          fail_forbidden("'" + t.text + "' is not allowed in the solution language");
        fail_syntax("unexpected keyword '" + t.text + "'");
      }
      case TokType::op: {
        if (t.text == "(") {
          advance();
          ExprPtr inner = parse_expression();
          if (at_op(",")) fail_syntax("tuples are not part of the solution language");
          expect_op(")");
          return inner;
        }
        if (t.text == "[") return parse_list_display();
        fail_syntax("unexpected '" + t.text + "'");
      }
      default:
        fail_syntax("unexpected end of expression");
    }
  }

  ExprPtr parse_list_display() {
    int line = cur().line;
    expect_op("[");
    if (at_op("]")) {
      advance();
      return make(line, ListLit{});
    }
    ExprPtr first = parse_expression();
    if (at_keyword("for")) {
      advance();
      if (cur().type != TokType::name) fail_syntax("expected comprehension variable");
      ListComp comp;
      comp.element = std::move(first);
      comp.var = advance().text;
      if (!at_keyword("in")) fail_syntax("expected 'in' in comprehension");
      advance();
      comp.iterable = parse_or();
      if (at_keyword("if")) {
        advance();
        comp.condition = parse_or();
      }
      if (at_keyword("for")) fail_syntax("nested comprehensions are not supported");
      expect_op("]");
      return make(line, std::move(comp));
    }
    ListLit lit;
    lit.elements.push_back(std::move(first));
    while (at_op(",")) {
      advance();
      if (at_op("]")) break;  // trailing comma
      lit.elements.push_back(parse_expression());
    }
    expect_op("]");
    return make(line, std::move(lit));
  }

  ExprPtr parse_fstring() {
    Token tok = advance();
    FString fs;
    const std::string& raw = tok.text;
    std::string literal;
    auto flush_literal = [&]() {
      if (literal.empty()) return;
      FStringPart part;
      part.literal = decode_escapes(literal, tok.line);
      fs.parts.push_back(std::move(part));
      literal.clear();
    };
    size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (c == '{' && i + 1 < raw.size() && raw[i + 1] == '{') {
        literal += "\\{";  // keep escaped; decode below understands it
        i += 2;
        continue;
      }
      if (c == '}' && i + 1 < raw.size() && raw[i + 1] == '}') {
        literal += "\\}";
        i += 2;
        continue;
      }
      if (c == '}') {
        throw ParseError(ParseError::Kind::syntax, tok.line, "single '}' in f-string");
      }
      if (c == '{') {
        flush_literal();
        size_t end = find_expr_end(raw, i + 1, tok.line);
        std::string inner = raw.substr(i + 1, end - i - 1);
        FStringPart part;
        part.expr = parse_fragment(inner, tok.line);
        fs.parts.push_back(std::move(part));
        i = end + 1;
        continue;
      }
      if (c == '\\' && i + 1 < raw.size()) {
        literal += raw.substr(i, 2);
        i += 2;
        continue;
      }
      literal.push_back(c);
      ++i;
    }
    flush_literal();
    return make(tok.line, std::move(fs));
  }

  static std::string decode_escapes(const std::string& raw, int line) {
    std::string out;
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '\\' || i + 1 >= raw.size()) {
        out.push_back(raw[i]);
        continue;
      }
      char esc = raw[++i];
      switch (esc) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '{': out.push_back('{'); break;
        case '}': out.push_back('}'); break;
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        default: out.push_back(esc); break;
      }
    }
    (void)line;
    return out;
  }

  static size_t find_expr_end(const std::string& raw, size_t start, int line) {
    int depth = 0;
    char quote = 0;
    for (size_t i = start; i < raw.size(); ++i) {
      char c = raw[i];
      if (quote) {
        if (c == '\\') ++i;
        else if (c == quote) quote = 0;
        continue;
      }
      if (c == '\'' || c == '"') {
        quote = c;
        continue;
      }
      if (c == '(' || c == '[') ++depth;
      else if (c == ')' || c == ']') --depth;
      else if (depth == 0 && c == ':')
        throw ParseError(ParseError::Kind::syntax, line,
                         "f-string format specifications are not supported");
      else if (depth == 0 && c == '}')
        return i;
    }
    throw ParseError(ParseError::Kind::syntax, line, "unterminated expression in f-string");
  }

  ExprPtr parse_fragment(const std::string& text, int line) {
    if (text.empty())
      throw ParseError(ParseError::Kind::syntax, line, "empty expression in f-string");
    Parser sub{tokenize(text)};
    ExprPtr e = sub.parse_expression();
    sub.skip_newlines();
    if (sub.cur().type != TokType::eof)
      throw ParseError(ParseError::Kind::syntax, line, "trailing tokens in f-string expression");
    return e;
  }

  // ---- statements ----

  StmtPtr make_stmt(int line, auto node) {
    auto s = std::make_unique<Stmt>();
    s->line = line;
    s->node = std::move(node);
    return s;
  }

  StmtPtr parse_statement() {
    if (cur().type == TokType::keyword) {
      const std::string& kw = cur().text;
      if (kw == "def") return parse_funcdef();
      if (kw == "if") return parse_if(/*as_elif=*/false);
      if (kw == "for") return parse_for();
      if (is_forbidden_keyword(kw))
        fail_forbidden("'" + kw + "' is not allowed in the solution language");
      if (kw == "break" || kw == "continue")
        fail_syntax("'" + kw + "' is not part of the solution language");
    }
    StmtPtr s = parse_simple_statement();
    expect_newline();
    return s;
  }

  StmtPtr parse_simple_statement() {
    int line = cur().line;
    if (at_keyword("return")) {
      advance();
      ReturnStmt ret;
      if (cur().type != TokType::newline && cur().type != TokType::eof &&
          !(cur().type == TokType::op && cur().text == ";"))
        ret.value = parse_expression();
      return make_stmt(line, std::move(ret));
    }
    if (at_keyword("pass")) {
      advance();
      return make_stmt(line, PassStmt{});
    }
    if (cur().type == TokType::name && peek().type == TokType::op) {
      const std::string& op = peek().text;
      if (op == "=") {
        AssignStmt assign;
        assign.target = advance().text;
        advance();  // '='
        assign.value = parse_expression();
        return make_stmt(line, std::move(assign));
      }
      if (op == "+=" || op == "-=" || op == "*=" || op == "/=")
        fail_syntax("augmented assignment is not part of the solution language");
    }
    ExprStmt es;
    es.value = parse_expression();
    if (at_op("=")) fail_syntax("invalid assignment target");
    return make_stmt(line, std::move(es));
  }

  std::vector<StmtPtr> parse_suite() {
    expect_op(":");
    std::vector<StmtPtr> body;
    if (cur().type == TokType::newline) {
      advance();
      skip_newlines();
      if (cur().type != TokType::indent) fail_syntax("expected an indented block");
      advance();
      while (cur().type != TokType::dedent && cur().type != TokType::eof) {
        skip_newlines();
        if (cur().type == TokType::dedent || cur().type == TokType::eof) break;
        body.push_back(parse_statement());
        skip_newlines();
      }
      if (cur().type == TokType::dedent) advance();
    } else {
      body.push_back(parse_simple_statement());
      expect_newline();
    }
    if (body.empty()) fail_syntax("empty block");
    return body;
  }

  StmtPtr parse_funcdef() {
    int line = cur().line;
    advance();  // def
    if (cur().type != TokType::name) fail_syntax("expected function name");
    FunctionDef def;
    def.name = advance().text;
    expect_op("(");
    while (!at_op(")")) {
      if (cur().type != TokType::name) fail_syntax("expected parameter name");
      Param p;
      p.name = advance().text;
      if (at_op(":")) {
        advance();
        if (cur().type != TokType::name && cur().type != TokType::keyword)
          fail_syntax("expected parameter annotation");
        p.annotation = advance().text;
      }
      if (at_op("=")) fail_syntax("default parameter values are not supported");
      def.params.push_back(std::move(p));
      if (at_op(",")) {
        advance();
        continue;
      }
      break;
    }
    expect_op(")");
    if (at_op("->")) {
      advance();
      if (cur().type != TokType::name && cur().type != TokType::keyword)
        fail_syntax("expected return annotation");
      def.return_annotation = advance().text;
    }
    def.body = parse_suite();
    return make_stmt(line, std::move(def));
  }

  StmtPtr parse_if(bool as_elif) {
    int line = cur().line;
    advance();  // if / elif
    IfStmt node;
    node.elif_continuation = as_elif;
    node.condition = parse_expression();
    node.then_body = parse_suite();
    skip_newlines();
    if (at_keyword("elif")) {
      node.else_body.push_back(parse_if(/*as_elif=*/true));
    } else if (at_keyword("else")) {
      advance();
      node.else_body = parse_suite();
    }
    return make_stmt(line, std::move(node));
  }

  StmtPtr parse_for() {
    int line = cur().line;
    advance();  // for
    if (cur().type != TokType::name) fail_syntax("expected loop variable");
    ForStmt node;
    node.var = advance().text;
    if (at_op(",")) fail_syntax("tuple unpacking in for-loops is not supported");
    if (!at_keyword("in")) fail_syntax("expected 'in'");
    advance();
    node.iterable = parse_expression();
    node.body = parse_suite();
    return make_stmt(line, std::move(node));
  }

  Module parse(ModuleMode mode) {
    Module m;
    skip_newlines();
    while (cur().type != TokType::eof) {
      if (cur().type == TokType::indent) fail_syntax("unexpected indentation");
      m.body.push_back(parse_statement());
      skip_newlines();
    }
    validate(m, mode);
    return m;
  }

  // ---- whitelist validation ----

  void validate(const Module& m, ModuleMode mode) {
    std::set<std::string> defined;
    int answer_defs = 0;
    for (const auto& stmt : m.body) {
      if (stmt->is<FunctionDef>()) {
        const auto& def = stmt->as<FunctionDef>();
        defined.insert(def.name);
        if (def.name == "answer") ++answer_defs;
        continue;
      }
      if (mode == ModuleMode::candidate) {
        bool is_docstring = stmt->is<ExprStmt>() && stmt->as<ExprStmt>().value->is<StrLit>();
        if (!is_docstring && !stmt->is<PassStmt>())
          throw ParseError(ParseError::Kind::forbidden, stmt->line,
                           "module-level statements are not allowed in a candidate program");
      }
    }
    if (mode == ModuleMode::candidate) {
      if (answer_defs == 0)
        throw ParseError(ParseError::Kind::missing_entry, 1,
                         "program must define exactly one function named 'answer'");
      if (answer_defs > 1)
        throw ParseError(ParseError::Kind::missing_entry, 1,
                         "multiple definitions of 'answer'");
    }
    for (const auto& stmt : m.body) check_stmt(*stmt, defined, /*depth=*/0);
  }

  void check_stmt(const Stmt& s, const std::set<std::string>& defined, int depth) {
    if (s.is<FunctionDef>()) {
      if (depth > 0)
        throw ParseError(ParseError::Kind::syntax, s.line,
                         "nested function definitions are not supported");
      for (const auto& inner : s.as<FunctionDef>().body) check_stmt(*inner, defined, depth + 1);
      return;
    }
    if (s.is<AssignStmt>()) {
      check_expr(*s.as<AssignStmt>().value, defined);
    } else if (s.is<ExprStmt>()) {
      check_expr(*s.as<ExprStmt>().value, defined);
    } else if (s.is<ReturnStmt>()) {
      if (s.as<ReturnStmt>().value) check_expr(*s.as<ReturnStmt>().value, defined);
    } else if (s.is<IfStmt>()) {
      const auto& node = s.as<IfStmt>();
      check_expr(*node.condition, defined);
      for (const auto& inner : node.then_body) check_stmt(*inner, defined, depth + 1);
      for (const auto& inner : node.else_body) check_stmt(*inner, defined, depth + 1);
    } else if (s.is<ForStmt>()) {
      const auto& node = s.as<ForStmt>();
      check_expr(*node.iterable, defined);
      for (const auto& inner : node.body) check_stmt(*inner, defined, depth + 1);
    }
  }

  void check_expr(const Expr& e, const std::set<std::string>& defined) {
    if (e.is<Call>()) {
      const auto& call = e.as<Call>();
      if (!defined.count(call.callee) && !kBuiltinCallables.count(call.callee)) {
        throw ParseError(ParseError::Kind::forbidden, e.line,
                         "call to unknown function '" + call.callee + "'");
      }
      for (const auto& arg : call.args) check_expr(*arg.value, defined);
      return;
    }
    if (e.is<FString>()) {
      for (const auto& part : e.as<FString>().parts)
        if (part.expr) check_expr(*part.expr, defined);
      return;
    }
    if (e.is<ListLit>()) {
      for (const auto& el : e.as<ListLit>().elements) check_expr(*el, defined);
      return;
    }
    if (e.is<ListComp>()) {
      const auto& comp = e.as<ListComp>();
      check_expr(*comp.element, defined);
      check_expr(*comp.iterable, defined);
      if (comp.condition) check_expr(*comp.condition, defined);
      return;
    }
    if (e.is<Unary>()) return check_expr(*e.as<Unary>().operand, defined);
    if (e.is<Binary>()) {
      check_expr(*e.as<Binary>().lhs, defined);
      check_expr(*e.as<Binary>().rhs, defined);
      return;
    }
    if (e.is<BoolChain>()) {
      for (const auto& op : e.as<BoolChain>().operands) check_expr(*op, defined);
      return;
    }
    if (e.is<Compare>()) {
      check_expr(*e.as<Compare>().lhs, defined);
      check_expr(*e.as<Compare>().rhs, defined);
      return;
    }
    if (e.is<Conditional>()) {
      const auto& c = e.as<Conditional>();
      check_expr(*c.condition, defined);
      check_expr(*c.then_value, defined);
      check_expr(*c.else_value, defined);
      return;
    }
  }
};

}  // namespace

Module parse_module(const std::string& source, ModuleMode mode) {
  Parser p{tokenize(source)};
  return p.parse(mode);
}

bool is_builtin_callable(const std::string& name) { return kBuiltinCallables.count(name) > 0; }
bool is_type_designator(const std::string& name) { return kTypeDesignators.count(name) > 0; }

}  // namespace coreason::lang
