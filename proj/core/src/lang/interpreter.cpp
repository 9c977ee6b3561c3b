#include "coreason/lang/interpreter.hpp"

#include <charconv>
#include <cmath>

#include "coreason/lang/parser.hpp"

namespace coreason::lang {

namespace {

std::string format_real_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) s += ".0";
  return s;
}

[[noreturn]] void runtime_fail(int line, const std::string& msg) {
  throw ExecError(ExecError::Kind::runtime, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Value Value::list(ValueList v) {
  return Value(Type::list, std::make_shared<const ValueList>(std::move(v)));
}

Value Value::from_typed(const TypedValue& tv) {
  switch (tv.kind()) {
    case Kind::boolean: return boolean(tv.as_bool());
    case Kind::integer: return integer(tv.as_int());
    case Kind::real: return real(tv.as_real());
    case Kind::text: return text(tv.as_text());
    case Kind::list_of_text: {
      ValueList xs;
      xs.reserve(tv.as_list().size());
      for (const auto& s : tv.as_list()) xs.push_back(text(s));
      return list(std::move(xs));
    }
  }
  return none();
}

const ValueList& Value::as_list() const {
  return *std::get<std::shared_ptr<const ValueList>>(payload_);
}

double Value::numeric() const {
  switch (type_) {
    case Type::boolean: return as_bool() ? 1.0 : 0.0;
    case Type::integer: return static_cast<double>(as_int());
    case Type::real: return as_real();
    default: return 0.0;
  }
}

bool Value::truthy() const {
  switch (type_) {
    case Type::none: return false;
    case Type::boolean: return as_bool();
    case Type::integer: return as_int() != 0;
    case Type::real: return as_real() != 0.0;
    case Type::text: return !as_text().empty();
    case Type::list: return !as_list().empty();
    case Type::type_designator: return true;
  }
  return false;
}

std::string Value::str() const {
  switch (type_) {
    case Type::none: return "None";
    case Type::boolean: return as_bool() ? "True" : "False";
    case Type::integer: return std::to_string(as_int());
    case Type::real: return format_real_value(as_real());
    case Type::text: return as_text();
    case Type::list: {
      std::string out = "[";
      const auto& xs = as_list();
      for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i].repr();
      }
      return out + "]";
    }
    case Type::type_designator: return "<type " + kind_label(as_designator()) + ">";
  }
  return "";
}

std::string Value::repr() const {
  if (type_ == Type::text) return "'" + as_text() + "'";
  return str();
}

bool Value::equals(const Value& other) const {
  if (is_numeric() && other.is_numeric()) return numeric() == other.numeric();
  if (type_ != other.type_) return false;
  switch (type_) {
    case Type::none: return true;
    case Type::text: return as_text() == other.as_text();
    case Type::list: {
      const auto& a = as_list();
      const auto& b = other.as_list();
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].equals(b[i])) return false;
      return true;
    }
    case Type::type_designator: return as_designator() == other.as_designator();
    default: return false;
  }
}

const char* Value::type_name() const {
  switch (type_) {
    case Type::none: return "NoneType";
    case Type::boolean: return "bool";
    case Type::integer: return "int";
    case Type::real: return "float";
    case Type::text: return "str";
    case Type::list: return "list";
    case Type::type_designator: return "type";
  }
  return "?";
}

namespace {

// -1 / 0 / +1 ordering; throws on unordered operand types.
int order_values(const Value& a, const Value& b, int line) {
  if (a.is_numeric() && b.is_numeric()) {
    double x = a.numeric(), y = b.numeric();
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.type() == Value::Type::text && b.type() == Value::Type::text) {
    int c = a.as_text().compare(b.as_text());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.type() == Value::Type::list && b.type() == Value::Type::list) {
    const auto& xs = a.as_list();
    const auto& ys = b.as_list();
    for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
      int c = order_values(xs[i], ys[i], line);
      if (c != 0) return c;
    }
    return xs.size() < ys.size() ? -1 : (xs.size() > ys.size() ? 1 : 0);
  }
  runtime_fail(line, std::string("unorderable types: ") + a.type_name() + " and " +
                         b.type_name());
}

bool membership(const Value& needle, const Value& haystack, int line) {
  if (haystack.type() == Value::Type::list) {
    for (const auto& el : haystack.as_list())
      if (el.equals(needle)) return true;
    return false;
  }
  if (haystack.type() == Value::Type::text) {
    if (needle.type() != Value::Type::text)
      runtime_fail(line, "'in <str>' requires a string operand");
    return haystack.as_text().find(needle.as_text()) != std::string::npos;
  }
  runtime_fail(line, std::string("argument of type '") + haystack.type_name() +
                         "' is not iterable");
}

}  // namespace

bool compare_values(ComparisonKind kind, const Value& a, const Value& b, int line) {
  switch (kind) {
    case ComparisonKind::eq: return a.equals(b);
    case ComparisonKind::neq: return !a.equals(b);
    case ComparisonKind::gt: return order_values(a, b, line) > 0;
    case ComparisonKind::gte: return order_values(a, b, line) >= 0;
    case ComparisonKind::lt: return order_values(a, b, line) < 0;
    case ComparisonKind::lte: return order_values(a, b, line) <= 0;
    case ComparisonKind::inc: return membership(a, b, line);
    case ComparisonKind::ninc: return !membership(a, b, line);
  }
  return false;
}

namespace {

// Renders an operand into a soft-operator query.
std::string operand_text(const Value& v) { return v.str(); }

bool numeric_parseable(const Value& v, double& out) {
  if (v.is_numeric()) {
    out = v.numeric();
    return true;
  }
  if (v.type() != Value::Type::text) return false;
  const std::string& raw = v.as_text();
  size_t b = raw.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return false;
  size_t e = raw.find_last_not_of(" \t\r\n");
  const char* first = raw.data() + b;
  const char* last = raw.data() + e + 1;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool soft_base(ComparisonKind base, const Value& a, const Value& b, RetrievalBridge& bridge) {
  double x = 0, y = 0;
  if (numeric_parseable(a, x) && numeric_parseable(b, y)) {
    switch (base) {
      case ComparisonKind::eq: return x == y;
      case ComparisonKind::gt: return x > y;
      case ComparisonKind::lt: return x < y;
      default: break;  // "in" between numbers falls through to the query
    }
  }
  if (base == ComparisonKind::eq && a.equals(b)) return true;  // reflexivity, no query
  TypedValue answer = bridge.ask(soft_operator_query(base, a, b), Kind::boolean);
  return answer.as_bool();
}

}  // namespace

std::string soft_operator_query(ComparisonKind base, const Value& a, const Value& b) {
  switch (base) {
    case ComparisonKind::eq:
      return "Consider the implied value, is " + operand_text(a) + " roughly the same as " +
             operand_text(b) + "?";
    case ComparisonKind::gt:
      return "Consider the implied value, is " + operand_text(a) + " roughly larger than " +
             operand_text(b) + "?";
    case ComparisonKind::lt:
      return "Consider the implied value, is " + operand_text(a) + " roughly smaller than " +
             operand_text(b) + "?";
    case ComparisonKind::inc:
      return "Considered the implied value, is " + operand_text(a) +
             " included or mentioned by the list " + operand_text(b) + "?";
    default:
      return "";
  }
}

bool soft_compare(ComparisonKind kind, const Value& a, const Value& b, RetrievalBridge& bridge) {
  switch (kind) {
    case ComparisonKind::eq: return soft_base(ComparisonKind::eq, a, b, bridge);
    case ComparisonKind::neq: return !soft_base(ComparisonKind::eq, a, b, bridge);
    case ComparisonKind::gt: return soft_base(ComparisonKind::gt, a, b, bridge);
    case ComparisonKind::lt: return soft_base(ComparisonKind::lt, a, b, bridge);
    case ComparisonKind::gte:
      return soft_base(ComparisonKind::gt, a, b, bridge) ||
             soft_base(ComparisonKind::eq, a, b, bridge);
    case ComparisonKind::lte:
      return soft_base(ComparisonKind::lt, a, b, bridge) ||
             soft_base(ComparisonKind::eq, a, b, bridge);
    case ComparisonKind::inc: return soft_base(ComparisonKind::inc, a, b, bridge);
    case ComparisonKind::ninc: return !soft_base(ComparisonKind::inc, a, b, bridge);
  }
  return false;
}

Interpreter::Interpreter(const Module& module, RetrievalBridge* bridge, InterpreterLimits limits)
    : module_(module), bridge_(bridge), limits_(limits) {
  frames_.push_back({});
  for (const auto& s : module_.body) {
    if (s->is<FunctionDef>()) {
      const auto& def = s->as<FunctionDef>();
      functions_[def.name] = &def;  // later definitions win
    }
  }
}

void Interpreter::fail(int line, const std::string& msg) { runtime_fail(line, msg); }

void Interpreter::tick(int line) {
  if (++steps_ % 1024 != 0) return;
  if (steps_ > limits_.max_steps) fail(line, "step budget exceeded");
  if (limits_.has_deadline && std::chrono::steady_clock::now() > limits_.deadline) {
    throw ExecError(ExecError::Kind::timeout, "execution deadline exceeded");
  }
}

void Interpreter::run_module() {
  Value ignored;
  for (const auto& s : module_.body) {
    if (s->is<FunctionDef>()) continue;
    if (exec(*s, &ignored)) break;  // a stray module-level return just stops
  }
}

Value Interpreter::call(const std::string& function, const std::map<std::string, Value>& kwargs) {
  auto it = functions_.find(function);
  if (it == functions_.end())
    throw ExecError(ExecError::Kind::runtime, "no function named '" + function + "'");
  return call_function(*it->second, {}, kwargs, it->second->body.empty() ? 0 : 1);
}

Value Interpreter::lookup(const std::string& name, int line) {
  if (!frames_.empty()) {
    auto& locals = frames_.back().locals;
    if (auto it = locals.find(name); it != locals.end()) return it->second;
  }
  if (frames_.size() > 1) {
    auto& globals = frames_.front().locals;
    if (auto it = globals.find(name); it != globals.end()) return it->second;
  }
  if (is_type_designator(name)) {
    if (name == "str") return Value::designator(Kind::text);
    if (name == "int") return Value::designator(Kind::integer);
    if (name == "float") return Value::designator(Kind::real);
    if (name == "bool") return Value::designator(Kind::boolean);
    return Value::designator(Kind::list_of_text);
  }
  fail(line, "name '" + name + "' is not defined");
}

Value Interpreter::eval(const Expr& e) {
  tick(e.line);
  if (e.is<IntLit>()) return Value::integer(e.as<IntLit>().value);
  if (e.is<RealLit>()) return Value::real(e.as<RealLit>().value);
  if (e.is<StrLit>()) return Value::text(e.as<StrLit>().value);
  if (e.is<BoolLit>()) return Value::boolean(e.as<BoolLit>().value);
  if (e.is<NoneLit>()) return Value::none();
  if (e.is<NameRef>()) return lookup(e.as<NameRef>().id, e.line);

  if (e.is<FString>()) {
    std::string out;
    for (const auto& part : e.as<FString>().parts) {
      if (part.expr) out += eval(*part.expr).str();
      else out += part.literal;
    }
    return Value::text(std::move(out));
  }

  if (e.is<ListLit>()) {
    ValueList xs;
    xs.reserve(e.as<ListLit>().elements.size());
    for (const auto& el : e.as<ListLit>().elements) xs.push_back(eval(*el));
    return Value::list(std::move(xs));
  }

  if (e.is<ListComp>()) {
    const auto& comp = e.as<ListComp>();
    Value iterable = eval(*comp.iterable);
    if (iterable.type() != Value::Type::list)
      fail(e.line, std::string("comprehension over non-list ") + iterable.type_name());
    ValueList out;
    auto& locals = frames_.back().locals;
    auto saved = locals.find(comp.var) != locals.end()
                     ? std::optional<Value>(locals[comp.var])
                     : std::nullopt;
    for (const auto& item : iterable.as_list()) {
      tick(e.line);
      locals[comp.var] = item;
      if (comp.condition && !eval(*comp.condition).truthy()) continue;
      out.push_back(eval(*comp.element));
    }
    if (saved) locals[comp.var] = *saved;
    else locals.erase(comp.var);
    return Value::list(std::move(out));
  }

  if (e.is<Unary>()) {
    const auto& u = e.as<Unary>();
    Value v = eval(*u.operand);
    if (u.op == UnaryOp::logical_not) return Value::boolean(!v.truthy());
    if (!v.is_numeric())
      fail(e.line, std::string("bad operand type for unary ") +
                       (u.op == UnaryOp::neg ? "-" : "+") + ": " + v.type_name());
    if (u.op == UnaryOp::pos)
      return v.type() == Value::Type::boolean ? Value::integer(v.as_bool() ? 1 : 0) : v;
    if (v.type() == Value::Type::real) return Value::real(-v.as_real());
    if (v.type() == Value::Type::boolean) return Value::integer(v.as_bool() ? -1 : 0);
    return Value::integer(-v.as_int());
  }

  if (e.is<Binary>()) {
    const auto& b = e.as<Binary>();
    Value lhs = eval(*b.lhs);
    Value rhs = eval(*b.rhs);
    switch (b.op) {
      case BinaryOp::add: {
        if (lhs.type() == Value::Type::text && rhs.type() == Value::Type::text)
          return Value::text(lhs.as_text() + rhs.as_text());
        if (lhs.type() == Value::Type::list && rhs.type() == Value::Type::list) {
          ValueList xs = lhs.as_list();
          const auto& ys = rhs.as_list();
          xs.insert(xs.end(), ys.begin(), ys.end());
          return Value::list(std::move(xs));
        }
        break;
      }
      default: break;
    }
    if (!lhs.is_numeric() || !rhs.is_numeric()) {
      static const char* names[] = {"+", "-", "*", "/"};
      fail(e.line, std::string("unsupported operand types for ") +
                       names[static_cast<int>(b.op)] + ": " + lhs.type_name() + " and " +
                       rhs.type_name());
    }
    bool real_result = lhs.type() == Value::Type::real || rhs.type() == Value::Type::real;
    if (b.op == BinaryOp::div) {
      double denom = rhs.numeric();
      if (denom == 0.0) fail(e.line, "division by zero");
      return Value::real(lhs.numeric() / denom);
    }
    if (real_result) {
      double x = lhs.numeric(), y = rhs.numeric();
      switch (b.op) {
        case BinaryOp::add: return Value::real(x + y);
        case BinaryOp::sub: return Value::real(x - y);
        case BinaryOp::mul: return Value::real(x * y);
        default: break;
      }
    }
    std::int64_t x = lhs.type() == Value::Type::boolean ? (lhs.as_bool() ? 1 : 0) : lhs.as_int();
    std::int64_t y = rhs.type() == Value::Type::boolean ? (rhs.as_bool() ? 1 : 0) : rhs.as_int();
    std::int64_t r = 0;
    bool overflow = false;
    switch (b.op) {
      case BinaryOp::add: overflow = __builtin_add_overflow(x, y, &r); break;
      case BinaryOp::sub: overflow = __builtin_sub_overflow(x, y, &r); break;
      case BinaryOp::mul: overflow = __builtin_mul_overflow(x, y, &r); break;
      default: break;
    }
    if (overflow) {
      // widen rather than wrap
      double xf = static_cast<double>(x), yf = static_cast<double>(y);
      switch (b.op) {
        case BinaryOp::add: return Value::real(xf + yf);
        case BinaryOp::sub: return Value::real(xf - yf);
        case BinaryOp::mul: return Value::real(xf * yf);
        default: break;
      }
    }
    return Value::integer(r);
  }

  if (e.is<BoolChain>()) {
    const auto& chain = e.as<BoolChain>();
    Value last;
    for (size_t i = 0; i < chain.operands.size(); ++i) {
      last = eval(*chain.operands[i]);
      if (i + 1 == chain.operands.size()) break;
      if (chain.op == BoolOp::and_ && !last.truthy()) break;
      if (chain.op == BoolOp::or_ && last.truthy()) break;
    }
    return last;
  }

  if (e.is<Compare>()) {
    const auto& cmp = e.as<Compare>();
    Value lhs = eval(*cmp.lhs);
    Value rhs = eval(*cmp.rhs);
    return Value::boolean(compare_values(cmp.op, lhs, rhs, e.line));
  }

  if (e.is<Conditional>()) {
    const auto& c = e.as<Conditional>();
    return eval(*c.condition).truthy() ? eval(*c.then_value) : eval(*c.else_value);
  }

  // Call
  const auto& call_node = e.as<Call>();
  std::vector<Value> positional;
  std::map<std::string, Value> keyword;
  for (const auto& arg : call_node.args) {
    if (arg.keyword.empty()) positional.push_back(eval(*arg.value));
    else keyword[arg.keyword] = eval(*arg.value);
  }
  if (auto it = functions_.find(call_node.callee); it != functions_.end()) {
    return call_function(*it->second, std::move(positional), std::move(keyword), e.line);
  }
  if (!keyword.empty()) fail(e.line, call_node.callee + "() takes no keyword arguments");
  return call_builtin(call_node.callee, positional, e.line);
}

Value Interpreter::call_function(const FunctionDef& def, std::vector<Value> positional,
                                 std::map<std::string, Value> keyword, int line) {
  if (++depth_ > limits_.max_recursion_depth) {
    --depth_;
    fail(line, "maximum recursion depth exceeded");
  }
  Frame frame;
  if (positional.size() > def.params.size())
    fail(line, def.name + "() takes " + std::to_string(def.params.size()) + " arguments but " +
                   std::to_string(positional.size()) + " were given");
  for (size_t i = 0; i < def.params.size(); ++i) {
    const std::string& pname = def.params[i].name;
    if (i < positional.size()) {
      if (keyword.count(pname)) fail(line, "multiple values for argument '" + pname + "'");
      frame.locals[pname] = std::move(positional[i]);
      continue;
    }
    auto it = keyword.find(pname);
    if (it == keyword.end()) fail(line, def.name + "() missing argument '" + pname + "'");
    frame.locals[pname] = std::move(it->second);
    keyword.erase(it);
  }
  if (!keyword.empty())
    fail(line, def.name + "() got an unexpected keyword argument '" + keyword.begin()->first +
                   "'");
  frames_.push_back(std::move(frame));
  Value result;
  bool returned = exec_block(def.body, &result);
  frames_.pop_back();
  --depth_;
  return returned ? std::move(result) : Value::none();
}

Value Interpreter::call_builtin(const std::string& name, const std::vector<Value>& args,
                                int line) {
  auto soft = [&](ComparisonKind kind) -> Value {
    if (args.size() != 2) fail(line, name + "() expects 2 arguments");
    if (!bridge_) fail(line, "no retrieval bridge configured");
    return Value::boolean(soft_compare(kind, args[0], args[1], *bridge_));
  };
  if (name == "eq_override") return soft(ComparisonKind::eq);
  if (name == "neq_override") return soft(ComparisonKind::neq);
  if (name == "gt_override") return soft(ComparisonKind::gt);
  if (name == "gte_override") return soft(ComparisonKind::gte);
  if (name == "lt_override") return soft(ComparisonKind::lt);
  if (name == "lte_override") return soft(ComparisonKind::lte);
  if (name == "in_override") return soft(ComparisonKind::inc);
  if (name == "not_in_override") return soft(ComparisonKind::ninc);

  if (name == "ask_llm" || name == "ask_gpt") {
    if (args.size() != 2) fail(line, name + "(query, type) expects 2 arguments");
    if (!bridge_) fail(line, "no retrieval bridge configured");
    if (llm_calls_ >= limits_.max_llm_calls)
      fail(line, "LLM call budget exceeded (" + std::to_string(limits_.max_llm_calls) + ")");
    ++llm_calls_;
    std::string query =
        args[0].type() == Value::Type::text ? args[0].as_text() : args[0].str();
    Kind kind;
    if (args[1].type() == Value::Type::type_designator) {
      kind = args[1].as_designator();
    } else if (args[1].type() == Value::Type::text) {
      const std::string& label = args[1].as_text();
      if (label == "str") kind = Kind::text;
      else if (label == "int") kind = Kind::integer;
      else if (label == "float") kind = Kind::real;
      else if (label == "bool") kind = Kind::boolean;
      else if (label == "list") kind = Kind::list_of_text;
      else fail(line, "unknown retrieval type '" + label + "'");
    } else {
      fail(line, "second argument of " + name + "() must be a type");
    }
    return Value::from_typed(bridge_->ask(query, kind));
  }

  if (name == "int") {
    if (args.size() != 1) fail(line, "int() expects 1 argument");
    const Value& v = args[0];
    switch (v.type()) {
      case Value::Type::integer: return v;
      case Value::Type::boolean: return Value::integer(v.as_bool() ? 1 : 0);
      case Value::Type::real: {
        double d = v.as_real();
        if (std::isnan(d) || std::isinf(d)) fail(line, "cannot convert " + v.str() + " to int");
        return Value::integer(static_cast<std::int64_t>(std::trunc(d)));
      }
      case Value::Type::text: {
        const std::string& raw = v.as_text();
        size_t b = raw.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) fail(line, "invalid literal for int(): '" + raw + "'");
        size_t end = raw.find_last_not_of(" \t\r\n");
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(raw.data() + b, raw.data() + end + 1, out);
        if (ec != std::errc{} || ptr != raw.data() + end + 1)
          fail(line, "invalid literal for int(): '" + raw + "'");
        return Value::integer(out);
      }
      default: fail(line, std::string("int() argument must be a number or string, not ") +
                              v.type_name());
    }
  }

  if (name == "str") {
    if (args.size() != 1) fail(line, "str() expects 1 argument");
    return Value::text(args[0].str());
  }

  if (name == "print") {
    std::string lineout;
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) lineout += " ";
      lineout += args[i].str();
    }
    printed_ += lineout + "\n";
    return Value::none();
  }

  fail(line, "call to unknown function '" + name + "'");
}

bool Interpreter::exec_block(const std::vector<StmtPtr>& body, Value* result) {
  for (const auto& s : body) {
    if (exec(*s, result)) return true;
  }
  return false;
}

bool Interpreter::exec(const Stmt& s, Value* result) {
  tick(s.line);
  if (s.is<FunctionDef>()) return false;  // registered at construction
  if (s.is<PassStmt>()) return false;
  if (s.is<AssignStmt>()) {
    const auto& node = s.as<AssignStmt>();
    frames_.back().locals[node.target] = eval(*node.value);
    return false;
  }
  if (s.is<ExprStmt>()) {
    eval(*s.as<ExprStmt>().value);
    return false;
  }
  if (s.is<ReturnStmt>()) {
    const auto& node = s.as<ReturnStmt>();
    *result = node.value ? eval(*node.value) : Value::none();
    return true;
  }
  if (s.is<IfStmt>()) {
    const auto& node = s.as<IfStmt>();
    if (eval(*node.condition).truthy()) return exec_block(node.then_body, result);
    return exec_block(node.else_body, result);
  }
  // ForStmt
  const auto& node = s.as<ForStmt>();
  Value iterable = eval(*node.iterable);
  if (iterable.type() != Value::Type::list)
    fail(s.line, std::string("'for' expects a list, got ") + iterable.type_name());
  // iteration is over a snapshot; rebinding the variable inside is fine
  for (const auto& item : iterable.as_list()) {
    tick(s.line);
    frames_.back().locals[node.var] = item;
    if (exec_block(node.body, result)) return true;
  }
  return false;
}

}  // namespace coreason::lang
