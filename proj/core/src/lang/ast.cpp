#include "coreason/lang/ast.hpp"

namespace coreason::lang {

const char* comparison_helper_name(ComparisonKind k) {
  switch (k) {
    case ComparisonKind::eq: return "eq_override";
    case ComparisonKind::neq: return "neq_override";
    case ComparisonKind::gt: return "gt_override";
    case ComparisonKind::gte: return "gte_override";
    case ComparisonKind::lt: return "lt_override";
    case ComparisonKind::lte: return "lte_override";
    case ComparisonKind::inc: return "in_override";
    case ComparisonKind::ninc: return "not_in_override";
  }
  return "eq_override";
}

const char* comparison_token(ComparisonKind k) {
  switch (k) {
    case ComparisonKind::eq: return "==";
    case ComparisonKind::neq: return "!=";
    case ComparisonKind::gt: return ">";
    case ComparisonKind::gte: return ">=";
    case ComparisonKind::lt: return "<";
    case ComparisonKind::lte: return "<=";
    case ComparisonKind::inc: return "in";
    case ComparisonKind::ninc: return "not in";
  }
  return "==";
}

namespace {

std::vector<ExprPtr> clone_all(const std::vector<ExprPtr>& xs) {
  std::vector<ExprPtr> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(clone(*x));
  return out;
}

std::vector<StmtPtr> clone_all(const std::vector<StmtPtr>& xs) {
  std::vector<StmtPtr> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(clone(*x));
  return out;
}

}  // namespace

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->line = e.line;
  if (e.is<IntLit>() || e.is<RealLit>() || e.is<StrLit>() || e.is<BoolLit>() || e.is<NoneLit>() ||
      e.is<NameRef>()) {
    out->node = std::visit(
        [](const auto& n) -> decltype(out->node) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, RealLit> ||
                        std::is_same_v<T, StrLit> || std::is_same_v<T, BoolLit> ||
                        std::is_same_v<T, NoneLit> || std::is_same_v<T, NameRef>) {
            return T(n);
          } else {
            return IntLit{};
          }
        },
        e.node);
    return out;
  }
  if (e.is<FString>()) {
    FString fs;
    for (const auto& part : e.as<FString>().parts) {
      FStringPart p;
      p.literal = part.literal;
      if (part.expr) p.expr = clone(*part.expr);
      fs.parts.push_back(std::move(p));
    }
    out->node = std::move(fs);
    return out;
  }
  if (e.is<ListLit>()) {
    ListLit lit;
    lit.elements = clone_all(e.as<ListLit>().elements);
    out->node = std::move(lit);
    return out;
  }
  if (e.is<ListComp>()) {
    const auto& c = e.as<ListComp>();
    ListComp comp;
    comp.element = clone(*c.element);
    comp.var = c.var;
    comp.iterable = clone(*c.iterable);
    if (c.condition) comp.condition = clone(*c.condition);
    out->node = std::move(comp);
    return out;
  }
  if (e.is<Unary>()) {
    const auto& u = e.as<Unary>();
    Unary copy;
    copy.op = u.op;
    copy.operand = clone(*u.operand);
    out->node = std::move(copy);
    return out;
  }
  if (e.is<Binary>()) {
    const auto& b = e.as<Binary>();
    Binary copy;
    copy.op = b.op;
    copy.lhs = clone(*b.lhs);
    copy.rhs = clone(*b.rhs);
    out->node = std::move(copy);
    return out;
  }
  if (e.is<BoolChain>()) {
    const auto& b = e.as<BoolChain>();
    BoolChain copy;
    copy.op = b.op;
    copy.operands = clone_all(b.operands);
    out->node = std::move(copy);
    return out;
  }
  if (e.is<Compare>()) {
    const auto& c = e.as<Compare>();
    Compare copy;
    copy.op = c.op;
    copy.lhs = clone(*c.lhs);
    copy.rhs = clone(*c.rhs);
    out->node = std::move(copy);
    return out;
  }
  if (e.is<Call>()) {
    const auto& c = e.as<Call>();
    Call copy;
    copy.callee = c.callee;
    for (const auto& arg : c.args) {
      CallArg a;
      a.keyword = arg.keyword;
      a.value = clone(*arg.value);
      copy.args.push_back(std::move(a));
    }
    out->node = std::move(copy);
    return out;
  }
  const auto& c = e.as<Conditional>();
  Conditional copy;
  copy.condition = clone(*c.condition);
  copy.then_value = clone(*c.then_value);
  copy.else_value = clone(*c.else_value);
  out->node = std::move(copy);
  return out;
}

StmtPtr clone(const Stmt& s) {
  auto out = std::make_unique<Stmt>();
  out->line = s.line;
  if (s.is<AssignStmt>()) {
    const auto& a = s.as<AssignStmt>();
    AssignStmt copy;
    copy.target = a.target;
    copy.value = clone(*a.value);
    out->node = std::move(copy);
  } else if (s.is<ExprStmt>()) {
    ExprStmt copy;
    copy.value = clone(*s.as<ExprStmt>().value);
    out->node = std::move(copy);
  } else if (s.is<ReturnStmt>()) {
    ReturnStmt copy;
    if (s.as<ReturnStmt>().value) copy.value = clone(*s.as<ReturnStmt>().value);
    out->node = std::move(copy);
  } else if (s.is<PassStmt>()) {
    out->node = PassStmt{};
  } else if (s.is<IfStmt>()) {
    const auto& i = s.as<IfStmt>();
    IfStmt copy;
    copy.condition = clone(*i.condition);
    copy.then_body = clone_all(i.then_body);
    copy.else_body = clone_all(i.else_body);
    copy.elif_continuation = i.elif_continuation;
    out->node = std::move(copy);
  } else if (s.is<ForStmt>()) {
    const auto& f = s.as<ForStmt>();
    ForStmt copy;
    copy.var = f.var;
    copy.iterable = clone(*f.iterable);
    copy.body = clone_all(f.body);
    out->node = std::move(copy);
  } else {
    const auto& d = s.as<FunctionDef>();
    FunctionDef copy;
    copy.name = d.name;
    copy.params = d.params;
    copy.return_annotation = d.return_annotation;
    copy.body = clone_all(d.body);
    out->node = std::move(copy);
  }
  return out;
}

Module clone(const Module& m) {
  Module out;
  out.body = clone_all(m.body);
  return out;
}

}  // namespace coreason::lang
