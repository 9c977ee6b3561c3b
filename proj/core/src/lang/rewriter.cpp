#include "coreason/lang/rewriter.hpp"

namespace coreason::lang {

namespace {

void rewrite_expr(ExprPtr& slot, int& count) {
  Expr& e = *slot;
  if (e.is<FString>()) {
    for (auto& part : e.as<FString>().parts)
      if (part.expr) rewrite_expr(part.expr, count);
    return;
  }
  if (e.is<ListLit>()) {
    for (auto& el : e.as<ListLit>().elements) rewrite_expr(el, count);
    return;
  }
  if (e.is<ListComp>()) {
    auto& comp = e.as<ListComp>();
    rewrite_expr(comp.element, count);
    rewrite_expr(comp.iterable, count);
    if (comp.condition) rewrite_expr(comp.condition, count);
    return;
  }
  if (e.is<Unary>()) {
    rewrite_expr(e.as<Unary>().operand, count);
    return;
  }
  if (e.is<Binary>()) {
    rewrite_expr(e.as<Binary>().lhs, count);
    rewrite_expr(e.as<Binary>().rhs, count);
    return;
  }
  if (e.is<BoolChain>()) {
    for (auto& op : e.as<BoolChain>().operands) rewrite_expr(op, count);
    return;
  }
  if (e.is<Call>()) {
    for (auto& arg : e.as<Call>().args) rewrite_expr(arg.value, count);
    return;
  }
  if (e.is<Conditional>()) {
    auto& c = e.as<Conditional>();
    rewrite_expr(c.condition, count);
    rewrite_expr(c.then_value, count);
    rewrite_expr(c.else_value, count);
    return;
  }
  if (e.is<Compare>()) {
    auto& cmp = e.as<Compare>();
    rewrite_expr(cmp.lhs, count);
    rewrite_expr(cmp.rhs, count);
    Call call;
    call.callee = comparison_helper_name(cmp.op);
    call.args.push_back({"", std::move(cmp.lhs)});
    call.args.push_back({"", std::move(cmp.rhs)});
    auto replacement = std::make_unique<Expr>();
    replacement->line = e.line;
    replacement->node = std::move(call);
    slot = std::move(replacement);
    ++count;
    return;
  }
}

void rewrite_stmt(Stmt& s, int& count) {
  if (s.is<AssignStmt>()) {
    rewrite_expr(s.as<AssignStmt>().value, count);
  } else if (s.is<ExprStmt>()) {
    rewrite_expr(s.as<ExprStmt>().value, count);
  } else if (s.is<ReturnStmt>()) {
    if (s.as<ReturnStmt>().value) rewrite_expr(s.as<ReturnStmt>().value, count);
  } else if (s.is<IfStmt>()) {
    auto& node = s.as<IfStmt>();
    rewrite_expr(node.condition, count);
    for (auto& inner : node.then_body) rewrite_stmt(*inner, count);
    for (auto& inner : node.else_body) rewrite_stmt(*inner, count);
  } else if (s.is<ForStmt>()) {
    auto& node = s.as<ForStmt>();
    rewrite_expr(node.iterable, count);
    for (auto& inner : node.body) rewrite_stmt(*inner, count);
  } else if (s.is<FunctionDef>()) {
    for (auto& inner : s.as<FunctionDef>().body) rewrite_stmt(*inner, count);
  }
}

void count_expr(const Expr& e, int& count) {
  if (e.is<Compare>()) {
    ++count;
    count_expr(*e.as<Compare>().lhs, count);
    count_expr(*e.as<Compare>().rhs, count);
    return;
  }
  if (e.is<FString>()) {
    for (const auto& part : e.as<FString>().parts)
      if (part.expr) count_expr(*part.expr, count);
  } else if (e.is<ListLit>()) {
    for (const auto& el : e.as<ListLit>().elements) count_expr(*el, count);
  } else if (e.is<ListComp>()) {
    const auto& comp = e.as<ListComp>();
    count_expr(*comp.element, count);
    count_expr(*comp.iterable, count);
    if (comp.condition) count_expr(*comp.condition, count);
  } else if (e.is<Unary>()) {
    count_expr(*e.as<Unary>().operand, count);
  } else if (e.is<Binary>()) {
    count_expr(*e.as<Binary>().lhs, count);
    count_expr(*e.as<Binary>().rhs, count);
  } else if (e.is<BoolChain>()) {
    for (const auto& op : e.as<BoolChain>().operands) count_expr(*op, count);
  } else if (e.is<Call>()) {
    for (const auto& arg : e.as<Call>().args) count_expr(*arg.value, count);
  } else if (e.is<Conditional>()) {
    const auto& c = e.as<Conditional>();
    count_expr(*c.condition, count);
    count_expr(*c.then_value, count);
    count_expr(*c.else_value, count);
  }
}

void count_stmt(const Stmt& s, int& count) {
  if (s.is<AssignStmt>()) {
    count_expr(*s.as<AssignStmt>().value, count);
  } else if (s.is<ExprStmt>()) {
    count_expr(*s.as<ExprStmt>().value, count);
  } else if (s.is<ReturnStmt>()) {
    if (s.as<ReturnStmt>().value) count_expr(*s.as<ReturnStmt>().value, count);
  } else if (s.is<IfStmt>()) {
    const auto& node = s.as<IfStmt>();
    count_expr(*node.condition, count);
    for (const auto& inner : node.then_body) count_stmt(*inner, count);
    for (const auto& inner : node.else_body) count_stmt(*inner, count);
  } else if (s.is<ForStmt>()) {
    const auto& node = s.as<ForStmt>();
    count_expr(*node.iterable, count);
    for (const auto& inner : node.body) count_stmt(*inner, count);
  } else if (s.is<FunctionDef>()) {
    for (const auto& inner : s.as<FunctionDef>().body) count_stmt(*inner, count);
  }
}

}  // namespace

int rewrite_comparisons(Module& m) {
  int count = 0;
  for (auto& s : m.body) rewrite_stmt(*s, count);
  return count;
}

int count_comparisons(const Module& m) {
  int count = 0;
  for (const auto& s : m.body) count_stmt(*s, count);
  return count;
}

}  // namespace coreason::lang
