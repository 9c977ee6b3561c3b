#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace coreason::lang {

// The paper's eight relational operators.
enum class ComparisonKind { eq, neq, gt, gte, lt, lte, inc, ninc };

// Name of the runtime helper a comparison rewrites into.
const char* comparison_helper_name(ComparisonKind k);
const char* comparison_token(ComparisonKind k);  // "==", "not in", ...

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

enum class UnaryOp { neg, pos, logical_not };
enum class BinaryOp { add, sub, mul, div };
enum class BoolOp { and_, or_ };

struct IntLit { std::int64_t value = 0; };
struct RealLit { double value = 0; };
struct StrLit { std::string value; };
struct BoolLit { bool value = false; };
struct NoneLit {};
struct NameRef { std::string id; };

struct FStringPart {
  std::string literal;  // used when expr is null
  ExprPtr expr;
};
struct FString { std::vector<FStringPart> parts; };

struct ListLit { std::vector<ExprPtr> elements; };

// [element for var in iterable if condition]; condition may be null.
struct ListComp {
  ExprPtr element;
  std::string var;
  ExprPtr iterable;
  ExprPtr condition;
};

struct Unary { UnaryOp op; ExprPtr operand; };
struct Binary { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };

// Short-circuit chain: a and b and c.
struct BoolChain { BoolOp op; std::vector<ExprPtr> operands; };

struct Compare { ComparisonKind op; ExprPtr lhs; ExprPtr rhs; };

struct CallArg {
  std::string keyword;  // empty = positional
  ExprPtr value;
};
struct Call {
  std::string callee;
  std::vector<CallArg> args;
};

// then_value if condition else else_value
struct Conditional { ExprPtr condition; ExprPtr then_value; ExprPtr else_value; };

struct Expr {
  int line = 0;
  std::variant<IntLit, RealLit, StrLit, BoolLit, NoneLit, NameRef, FString, ListLit, ListComp,
               Unary, Binary, BoolChain, Compare, Call, Conditional>
      node;

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  T& as() { return std::get<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }
};

struct Param {
  std::string name;
  std::string annotation;  // "" when absent
};

struct AssignStmt { std::string target; ExprPtr value; };
struct ExprStmt { ExprPtr value; };
struct ReturnStmt { ExprPtr value; };  // null for bare return
struct PassStmt {};
struct IfStmt {
  ExprPtr condition;
  std::vector<StmtPtr> then_body;
  std::vector<StmtPtr> else_body;  // an elif chain nests a single IfStmt here
  bool elif_continuation = false;  // this if was written as "elif"
};
struct ForStmt {
  std::string var;
  ExprPtr iterable;
  std::vector<StmtPtr> body;
};
struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  std::string return_annotation;  // "" when absent
  std::vector<StmtPtr> body;
};

struct Stmt {
  int line = 0;
  std::variant<AssignStmt, ExprStmt, ReturnStmt, PassStmt, IfStmt, ForStmt, FunctionDef> node;

  template <typename T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  T& as() { return std::get<T>(node); }
  template <typename T>
  const T& as() const { return std::get<T>(node); }
};

struct Module {
  std::vector<StmtPtr> body;
};

ExprPtr clone(const Expr& e);
StmtPtr clone(const Stmt& s);
Module clone(const Module& m);

}  // namespace coreason::lang
