#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "coreason/errors.hpp"
#include "coreason/lang/ast.hpp"
#include "coreason/typed_value.hpp"

namespace coreason::lang {

class Value;
using ValueList = std::vector<Value>;

// Runtime value of the solution language.
class Value {
 public:
  enum class Type { none, boolean, integer, real, text, list, type_designator };

  Value() : type_(Type::none) {}
  static Value none() { return Value(); }
  static Value boolean(bool v) { return Value(Type::boolean, v); }
  static Value integer(std::int64_t v) { return Value(Type::integer, v); }
  static Value real(double v) { return Value(Type::real, v); }
  static Value text(std::string v) { return Value(Type::text, std::move(v)); }
  static Value list(ValueList v);
  static Value designator(Kind k) { return Value(Type::type_designator, k); }
  static Value from_typed(const TypedValue& tv);

  Type type() const { return type_; }
  bool as_bool() const { return std::get<bool>(payload_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(payload_); }
  double as_real() const { return std::get<double>(payload_); }
  const std::string& as_text() const { return std::get<std::string>(payload_); }
  const ValueList& as_list() const;
  Kind as_designator() const { return std::get<Kind>(payload_); }

  bool is_numeric() const {
    return type_ == Type::boolean || type_ == Type::integer || type_ == Type::real;
  }
  double numeric() const;  // boolean -> 0/1, integer widened

  bool truthy() const;
  std::string str() const;   // print / f-string rendering
  std::string repr() const;  // list-element rendering (strings quoted)
  bool equals(const Value& other) const;

  const char* type_name() const;

 private:
  template <typename T>
  Value(Type t, T v) : type_(t), payload_(std::move(v)) {}

  Type type_;
  std::variant<std::monostate, bool, std::int64_t, double, std::string,
               std::shared_ptr<const ValueList>, Kind>
      payload_;
};

// An execution failure. timeout is distinguished so outcomes can report it.
struct ExecError : Error {
  enum class Kind { runtime, timeout };
  Kind kind;
  ExecError(Kind k, const std::string& what) : Error(what), kind(k) {}
};

// ask_llm as seen from inside a running program. Implementations throw
// ExecError(runtime, ...) when retrieval fails.
class RetrievalBridge {
 public:
  virtual ~RetrievalBridge() = default;
  virtual TypedValue ask(const std::string& query, Kind kind) = 0;
};

// The soft relational operation backing the *_override helpers: numeric
// operands compare natively; everything else renders the operator's query
// and resolves it as a boolean retrieval. neq/gte/lte/ninc are compositions
// of eq/gt/lt/in. eq short-circuits on exactly equal operands before any
// query is issued.
bool soft_compare(ComparisonKind kind, const Value& a, const Value& b, RetrievalBridge& bridge);

// The natural-language query soft_compare issues for a base operator.
std::string soft_operator_query(ComparisonKind base, const Value& a, const Value& b);

struct InterpreterLimits {
  bool has_deadline = false;
  std::chrono::steady_clock::time_point deadline{};
  int max_llm_calls = 200;
  int max_recursion_depth = 200;
  std::uint64_t max_steps = 200'000'000;  // backstop against runaway loops
};

// Tree-walking evaluator. The whitelist grammar has no spelling for file,
// network or process access, so runs are hermetic by construction; resource
// use is bounded by the limits.
class Interpreter {
 public:
  Interpreter(const Module& module, RetrievalBridge* bridge, InterpreterLimits limits = {});

  // Registers function definitions, then executes the remaining module-level
  // statements in order. Throws ExecError.
  void run_module();

  // Calls a defined function with keyword arguments.
  Value call(const std::string& function, const std::map<std::string, Value>& kwargs);

  const std::string& printed_output() const { return printed_; }
  int llm_calls() const { return llm_calls_; }

 private:
  friend struct EvalVisitor;
  struct Frame {
    std::map<std::string, Value> locals;
  };

  Value eval(const Expr& e);
  // Returns true when a return statement fired; *result holds its value.
  bool exec(const Stmt& s, Value* result);
  bool exec_block(const std::vector<StmtPtr>& body, Value* result);

  Value call_function(const FunctionDef& def, std::vector<Value> positional,
                      std::map<std::string, Value> keyword, int line);
  Value call_builtin(const std::string& name, const std::vector<Value>& args, int line);
  Value lookup(const std::string& name, int line);
  void tick(int line);

  [[noreturn]] static void fail(int line, const std::string& msg);

  const Module& module_;
  RetrievalBridge* bridge_;
  InterpreterLimits limits_;
  std::map<std::string, const FunctionDef*> functions_;
  std::vector<Frame> frames_;  // frames_[0] is the module frame
  std::string printed_;
  int llm_calls_ = 0;
  int depth_ = 0;
  std::uint64_t steps_ = 0;
};

// Native comparison semantics (used when a comparison was not rewritten).
bool compare_values(ComparisonKind kind, const Value& a, const Value& b, int line);

}  // namespace coreason::lang
