#include "coreason/lang/printer.hpp"

#include <charconv>

namespace coreason::lang {

namespace {

// Higher binds tighter.
enum Prec {
  kTernary = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCompare = 5,
  kArith = 6,
  kTerm = 7,
  kUnary = 8,
  kAtom = 9,
};

int precedence(const Expr& e) {
  if (e.is<Conditional>()) return kTernary;
  if (e.is<BoolChain>()) return e.as<BoolChain>().op == BoolOp::or_ ? kOr : kAnd;
  if (e.is<Unary>()) return e.as<Unary>().op == UnaryOp::logical_not ? kNot : kUnary;
  if (e.is<Compare>()) return kCompare;
  if (e.is<Binary>()) {
    BinaryOp op = e.as<Binary>().op;
    return (op == BinaryOp::add || op == BinaryOp::sub) ? kArith : kTerm;
  }
  return kAtom;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  // ensure the literal re-lexes as a real
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string quote_string(const std::string& v) {
  char quote = '"';
  if (v.find('"') != std::string::npos && v.find('\'') == std::string::npos) quote = '\'';
  std::string out(1, quote);
  for (char c : v) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default:
        if (c == quote) out.push_back('\\');
        out.push_back(c);
    }
  }
  out.push_back(quote);
  return out;
}

struct Printer {
  std::string out;

  void expr(const Expr& e, int parent_prec) {
    bool parens = precedence(e) < parent_prec;
    if (parens) out += "(";
    emit(e);
    if (parens) out += ")";
  }

  void emit(const Expr& e) {
    if (e.is<IntLit>()) {
      out += std::to_string(e.as<IntLit>().value);
    } else if (e.is<RealLit>()) {
      out += format_real(e.as<RealLit>().value);
    } else if (e.is<StrLit>()) {
      out += quote_string(e.as<StrLit>().value);
    } else if (e.is<BoolLit>()) {
      out += e.as<BoolLit>().value ? "True" : "False";
    } else if (e.is<NoneLit>()) {
      out += "None";
    } else if (e.is<NameRef>()) {
      out += e.as<NameRef>().id;
    } else if (e.is<FString>()) {
      emit_fstring(e.as<FString>());
    } else if (e.is<ListLit>()) {
      out += "[";
      const auto& elements = e.as<ListLit>().elements;
      for (size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ", ";
        expr(*elements[i], kTernary);
      }
      out += "]";
    } else if (e.is<ListComp>()) {
      const auto& comp = e.as<ListComp>();
      out += "[";
      expr(*comp.element, kTernary);
      out += " for " + comp.var + " in ";
      expr(*comp.iterable, kOr);
      if (comp.condition) {
        out += " if ";
        expr(*comp.condition, kOr);
      }
      out += "]";
    } else if (e.is<Unary>()) {
      const auto& u = e.as<Unary>();
      if (u.op == UnaryOp::logical_not) {
        out += "not ";
        expr(*u.operand, kNot);
      } else {
        out += u.op == UnaryOp::neg ? "-" : "+";
        expr(*u.operand, kUnary);
      }
    } else if (e.is<Binary>()) {
      const auto& b = e.as<Binary>();
      int prec = precedence(e);
      expr(*b.lhs, prec);
      switch (b.op) {
        case BinaryOp::add: out += " + "; break;
        case BinaryOp::sub: out += " - "; break;
        case BinaryOp::mul: out += " * "; break;
        case BinaryOp::div: out += " / "; break;
      }
      expr(*b.rhs, prec + 1);
    } else if (e.is<BoolChain>()) {
      const auto& chain = e.as<BoolChain>();
      int prec = precedence(e);
      const char* sep = chain.op == BoolOp::and_ ? " and " : " or ";
      for (size_t i = 0; i < chain.operands.size(); ++i) {
        if (i) out += sep;
        expr(*chain.operands[i], prec + 1);
      }
    } else if (e.is<Compare>()) {
      const auto& cmp = e.as<Compare>();
      expr(*cmp.lhs, kArith);
      out += " ";
      out += comparison_token(cmp.op);
      out += " ";
      expr(*cmp.rhs, kArith);
    } else if (e.is<Call>()) {
      const auto& call = e.as<Call>();
      out += call.callee + "(";
      for (size_t i = 0; i < call.args.size(); ++i) {
        if (i) out += ", ";
        if (!call.args[i].keyword.empty()) out += call.args[i].keyword + "=";
        expr(*call.args[i].value, kTernary);
      }
      out += ")";
    } else {
      const auto& c = e.as<Conditional>();
      expr(*c.then_value, kOr);
      out += " if ";
      expr(*c.condition, kOr);
      out += " else ";
      expr(*c.else_value, kTernary);
    }
  }

  void emit_fstring(const FString& fs) {
    out += "f\"";
    for (const auto& part : fs.parts) {
      if (part.expr) {
        out += "{";
        expr(*part.expr, kTernary);
        out += "}";
        continue;
      }
      for (char c : part.literal) {
        switch (c) {
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          case '\r': out += "\\r"; break;
          case '\\': out += "\\\\"; break;
          case '"': out += "\\\""; break;
          case '{': out += "{{"; break;
          case '}': out += "}}"; break;
          default: out.push_back(c);
        }
      }
    }
    out += "\"";
  }

  void indent(int level) { out.append(static_cast<size_t>(level) * 4, ' '); }

  void stmt(const Stmt& s, int level) {
    if (s.is<FunctionDef>()) {
      const auto& def = s.as<FunctionDef>();
      indent(level);
      out += "def " + def.name + "(";
      for (size_t i = 0; i < def.params.size(); ++i) {
        if (i) out += ", ";
        out += def.params[i].name;
        if (!def.params[i].annotation.empty()) out += ": " + def.params[i].annotation;
      }
      out += ")";
      if (!def.return_annotation.empty()) out += " -> " + def.return_annotation;
      out += ":\n";
      for (const auto& inner : def.body) stmt(*inner, level + 1);
      return;
    }
    if (s.is<IfStmt>()) {
      emit_if(s.as<IfStmt>(), level, /*as_elif=*/false);
      return;
    }
    if (s.is<ForStmt>()) {
      const auto& node = s.as<ForStmt>();
      indent(level);
      out += "for " + node.var + " in ";
      expr(*node.iterable, kTernary);
      out += ":\n";
      for (const auto& inner : node.body) stmt(*inner, level + 1);
      return;
    }
    indent(level);
    if (s.is<AssignStmt>()) {
      const auto& node = s.as<AssignStmt>();
      out += node.target + " = ";
      expr(*node.value, kTernary);
    } else if (s.is<ExprStmt>()) {
      expr(*s.as<ExprStmt>().value, kTernary);
    } else if (s.is<ReturnStmt>()) {
      out += "return";
      if (s.as<ReturnStmt>().value) {
        out += " ";
        expr(*s.as<ReturnStmt>().value, kTernary);
      }
    } else if (s.is<PassStmt>()) {
      out += "pass";
    }
    out += "\n";
  }

  void emit_if(const IfStmt& node, int level, bool as_elif) {
    indent(level);
    out += as_elif ? "elif " : "if ";
    expr(*node.condition, kTernary);
    out += ":\n";
    for (const auto& inner : node.then_body) stmt(*inner, level + 1);
    if (node.else_body.empty()) return;
    if (node.else_body.size() == 1 && node.else_body[0]->is<IfStmt>() &&
        node.else_body[0]->as<IfStmt>().elif_continuation) {
      emit_if(node.else_body[0]->as<IfStmt>(), level, /*as_elif=*/true);
      return;
    }
    indent(level);
    out += "else:\n";
    for (const auto& inner : node.else_body) stmt(*inner, level + 1);
  }
};

}  // namespace

std::string print_module(const Module& m) {
  Printer p;
  for (const auto& s : m.body) p.stmt(*s, 0);
  return p.out;
}

std::string print_expr(const Expr& e) {
  Printer p;
  p.expr(e, kTernary);
  return p.out;
}

}  // namespace coreason::lang
