// Copyright 2026 The Seedguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seedguard/interpreter.hpp"

#include <limits>

namespace seedguard {

const char* crash_kind_name(CrashKind k) {
  switch (k) {
    case CrashKind::NullDeref: return "NullDeref";
    case CrashKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case CrashKind::NegativeArraySize: return "NegativeArraySize";
    case CrashKind::DivByZero: return "DivByZero";
    case CrashKind::BadCast: return "BadCast";
    case CrashKind::UserThrown: return "UserThrown";
  }
  return "?";
}

CrashKind crash_kind_from_name(std::string_view name) {
  for (CrashKind k : kAllCrashKinds)
    if (name == crash_kind_name(k)) return k;
  throw std::invalid_argument("unknown crash kind '" + std::string(name) + "'");
}

const char* builtin_exception_name(CrashKind k) {
  switch (k) {
    case CrashKind::NullDeref: return "NullPointerException";
    case CrashKind::IndexOutOfBounds: return "ArrayIndexOutOfBoundsException";
    case CrashKind::NegativeArraySize: return "NegativeArraySizeException";
    case CrashKind::DivByZero: return "ArithmeticException";
    case CrashKind::BadCast: return "ClassCastException";
    case CrashKind::UserThrown: return "Exception";
  }
  return "Exception";
}

namespace {

struct Value {
  enum class Tag : std::uint8_t { Int, Bool, Null, Ref };
  Tag tag = Tag::Null;
  std::int64_t v = 0;

  static Value I(std::int64_t x) { return {Tag::Int, x}; }
  static Value B(bool b) { return {Tag::Bool, b ? 1 : 0}; }
  static Value N() { return {}; }
  static Value R(std::int64_t h) { return {Tag::Ref, h}; }
  bool operator==(const Value&) const = default;
};

struct Cell {
  int cls = -1;  // -1 for arrays
  std::vector<Value> slots;
};

struct Fault {
  CrashKind kind;
  std::string name;
  NodeId node;
  std::vector<std::pair<int, NodeId>> stack;  // (method, current stmt)
};

struct OutOfBudget {};

enum class Flow { Normal, Return, Break };

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

Value default_value(const Type& t) {
  switch (t.kind) {
    case TypeKind::Int: return Value::I(0);
    case TypeKind::Bool: return Value::B(false);
    default: return Value::N();
  }
}

class Machine {
 public:
  Machine(const Program& p, const ExecOptions& opts) : p_(p), opts_(opts) {}

  Outcome run(int method_index, const Environment& env) {
    Outcome out;
    try {
      std::vector<Value> args;
      args.reserve(env.args.size());
      for (const auto& a : env.args) args.push_back(materialize(a));
      Value r = call(method_index, std::move(args));
      out.kind = Outcome::Kind::Returned;
      switch (r.tag) {
        case Value::Tag::Int: out.value_kind = EnvValue::Kind::Int; out.value = r.v; break;
        case Value::Tag::Bool: out.value_kind = EnvValue::Kind::Bool; out.value = r.v; break;
        case Value::Tag::Null: out.value_kind = EnvValue::Kind::Null; break;
        case Value::Tag::Ref:
          out.is_ref = true;
          out.value_kind = heap_[r.v].cls < 0 ? EnvValue::Kind::Array : EnvValue::Kind::Object;
          break;
      }
    } catch (const Fault& f) {
      out.kind = Outcome::Kind::Crashed;
      CrashReport& c = out.crash;
      c.kind = f.kind;
      c.exception_name = f.name;
      c.fault_node = f.node;
      c.loc.node_id = f.stack.front().second;
      c.in_callee = f.stack.size() > 1;
      for (std::size_t i = 1; i < f.stack.size(); ++i)
        c.callee_stack.push_back({p_.methods[f.stack[i].first].name, {f.stack[i].second, 0}});
    } catch (const OutOfBudget&) {
      out.kind = Outcome::Kind::BudgetExceeded;
    }
    return out;
  }

 private:
  struct Frame {
    int method;
    NodeId cur = kNoNode;
  };

  const Program& p_;
  const ExecOptions& opts_;
  std::vector<Cell> heap_;
  std::size_t cells_ = 0;
  std::int64_t steps_ = 0;
  std::vector<Frame> stack_;
  Value ret_;

  void tick() {
    if (++steps_ > opts_.budget) throw OutOfBudget{};
  }

  void charge(std::size_t n) {
    cells_ += n;
    if (cells_ > opts_.heap_limit) throw OutOfBudget{};
  }

  [[noreturn]] void fault(CrashKind k, NodeId node, std::string name = {}) {
    Fault f{k, name.empty() ? builtin_exception_name(k) : std::move(name), node, {}};
    f.stack.reserve(stack_.size());
    for (const auto& fr : stack_) f.stack.emplace_back(fr.method, fr.cur);
    throw f;
  }

  int depth() const { return static_cast<int>(stack_.size()) - 1; }

  void trace_expr(const Expr& e) {
    if (opts_.tracer) opts_.tracer->on_expr(depth(), stack_.back().cur, e.id);
  }

  Value materialize(const EnvValue& v) {
    switch (v.kind) {
      case EnvValue::Kind::Int: return Value::I(v.num);
      case EnvValue::Kind::Bool: return Value::B(v.num != 0);
      case EnvValue::Kind::Null: return Value::N();
      case EnvValue::Kind::Array: {
        charge(1 + v.items.size());
        Cell c;
        c.slots.reserve(v.items.size());
        for (const auto& x : v.items) c.slots.push_back(materialize(x));
        heap_.push_back(std::move(c));
        return Value::R(static_cast<std::int64_t>(heap_.size() - 1));
      }
      case EnvValue::Kind::Object: {
        int ci = p_.class_index(v.cls);
        const ClassDecl& cd = p_.classes[ci];
        charge(1 + cd.all_fields.size());
        Cell c;
        c.cls = ci;
        c.slots.resize(cd.all_fields.size());
        for (std::size_t i = 0; i < cd.all_fields.size(); ++i) {
          for (std::size_t j = 0; j < v.field_names.size(); ++j)
            if (v.field_names[j] == cd.all_fields[i].name) c.slots[i] = materialize(v.items[j]);
        }
        heap_.push_back(std::move(c));
        return Value::R(static_cast<std::int64_t>(heap_.size() - 1));
      }
    }
    return Value::N();
  }

  Value call(int mi, std::vector<Value> args) {
    if (static_cast<int>(stack_.size()) >= kMaxCallDepth) throw OutOfBudget{};
    const MethodDef& m = p_.methods[mi];
    std::vector<Value> locals(static_cast<std::size_t>(m.num_slots));
    for (std::size_t i = 0; i < args.size(); ++i) locals[i] = args[i];
    stack_.push_back({mi, m.id});
    struct Pop {
      std::vector<Frame>& s;
      ~Pop() { s.pop_back(); }
    } pop{stack_};
    ret_ = Value::N();
    Flow f = block(m.body, locals);
    if (f != Flow::Return) ret_ = Value::N();
    return ret_;
  }

  Flow block(const std::vector<Stmt>& b, std::vector<Value>& L) {
    for (const auto& s : b) {
      Flow f = stmt(s, L);
      if (f != Flow::Normal) return f;
    }
    return Flow::Normal;
  }

  void enter(const Stmt& s) {
    tick();
    stack_.back().cur = s.id;
    if (opts_.tracer) opts_.tracer->on_stmt(depth(), s.id);
  }

  Flow stmt(const Stmt& s, std::vector<Value>& L) {
    enter(s);
    switch (s.kind) {
      case StmtKind::VarDecl:
        L[s.slot] = eval(s.exprs[0], L);
        return Flow::Normal;
      case StmtKind::Assign:
        assign(s.exprs[0], s.exprs[1], L);
        return Flow::Normal;
      case StmtKind::If:
        if (eval(s.exprs[0], L).v) return block(s.body, L);
        return block(s.alt, L);
      case StmtKind::While:
        for (;;) {
          stack_.back().cur = s.id;
          if (!eval(s.exprs[0], L).v) return Flow::Normal;
          Flow f = block(s.body, L);
          if (f == Flow::Break) return Flow::Normal;
          if (f == Flow::Return) return f;
          tick();
        }
      case StmtKind::Return:
        ret_ = s.exprs.empty() ? Value::N() : eval(s.exprs[0], L);
        return Flow::Return;
      case StmtKind::Throw:
        fault(CrashKind::UserThrown, s.id, s.name);
      case StmtKind::TryCatch: {
        try {
          return block(s.body, L);
        } catch (const Fault& f) {
          if (s.name != kCatchAll && s.name != f.name) throw;
          // Callee frames were popped during unwinding.
          stack_.back().cur = s.id;
          return block(s.alt, L);
        }
      }
      case StmtKind::ExprStmt:
        eval(s.exprs[0], L);
        return Flow::Normal;
      case StmtKind::Block:
        return block(s.body, L);
      case StmtKind::Break:
        return Flow::Break;
    }
    return Flow::Normal;
  }

  Cell& deref(const Value& v, NodeId node) {
    if (v.tag != Value::Tag::Ref) fault(CrashKind::NullDeref, node);
    return heap_[static_cast<std::size_t>(v.v)];
  }

  void assign(const Expr& lhs, const Expr& rhs, std::vector<Value>& L) {
    switch (lhs.kind) {
      case ExprKind::Var: {
        Value v = eval(rhs, L);
        L[lhs.slot] = v;
        break;
      }
      case ExprKind::Field: {
        Value recv = eval(lhs.kids[0], L);
        Value v = eval(rhs, L);
        tick();
        deref(recv, lhs.id).slots[lhs.field_index] = v;
        break;
      }
      case ExprKind::Index: {
        Value arr = eval(lhs.kids[0], L);
        Value idx = eval(lhs.kids[1], L);
        Value v = eval(rhs, L);
        tick();
        Cell& c = deref(arr, lhs.id);
        if (idx.v < 0 || idx.v >= static_cast<std::int64_t>(c.slots.size()))
          fault(CrashKind::IndexOutOfBounds, lhs.id);
        c.slots[static_cast<std::size_t>(idx.v)] = v;
        break;
      }
      default:
        break;
    }
    trace_expr(lhs);
  }

  Value eval(const Expr& e, std::vector<Value>& L) {
    Value r = eval_inner(e, L);
    trace_expr(e);
    return r;
  }

  Value eval_inner(const Expr& e, std::vector<Value>& L) {
    tick();
    switch (e.kind) {
      case ExprKind::IntLit: return Value::I(e.value);
      case ExprKind::BoolLit: return Value::B(e.value != 0);
      case ExprKind::Null: return Value::N();
      case ExprKind::Var: return L[e.slot];
      case ExprKind::Unary: {
        Value v = eval(e.kids[0], L);
        return e.unop == UnOp::Not ? Value::B(!v.v) : Value::I(wrap_sub(0, v.v));
      }
      case ExprKind::Binary: {
        if (e.binop == BinOp::And || e.binop == BinOp::Or) {
          Value l = eval(e.kids[0], L);
          if (e.binop == BinOp::And ? !l.v : l.v) return l;
          return Value::B(eval(e.kids[1], L).v != 0);
        }
        Value l = eval(e.kids[0], L);
        Value r = eval(e.kids[1], L);
        switch (e.binop) {
          case BinOp::Add: return Value::I(wrap_add(l.v, r.v));
          case BinOp::Sub: return Value::I(wrap_sub(l.v, r.v));
          case BinOp::Mul: return Value::I(wrap_mul(l.v, r.v));
          case BinOp::Div:
          case BinOp::Mod: {
            if (r.v == 0) fault(CrashKind::DivByZero, e.id);
            if (l.v == std::numeric_limits<std::int64_t>::min() && r.v == -1)
              return Value::I(e.binop == BinOp::Div ? l.v : 0);
            return Value::I(e.binop == BinOp::Div ? l.v / r.v : l.v % r.v);
          }
          case BinOp::Lt: return Value::B(l.v < r.v);
          case BinOp::Le: return Value::B(l.v <= r.v);
          case BinOp::Gt: return Value::B(l.v > r.v);
          case BinOp::Ge: return Value::B(l.v >= r.v);
          case BinOp::Eq: return Value::B(l == r);
          case BinOp::Ne: return Value::B(!(l == r));
          default: break;
        }
        return Value::N();
      }
      case ExprKind::Field: {
        Value recv = eval(e.kids[0], L);
        Cell& c = deref(recv, e.id);
        if (e.field_index < 0) return Value::I(static_cast<std::int64_t>(c.slots.size()));
        return c.slots[e.field_index];
      }
      case ExprKind::Index: {
        Value arr = eval(e.kids[0], L);
        Value idx = eval(e.kids[1], L);
        Cell& c = deref(arr, e.id);
        if (idx.v < 0 || idx.v >= static_cast<std::int64_t>(c.slots.size()))
          fault(CrashKind::IndexOutOfBounds, e.id);
        return c.slots[static_cast<std::size_t>(idx.v)];
      }
      case ExprKind::NewObject: {
        const ClassDecl& cd = p_.classes[e.class_index];
        charge(1 + cd.all_fields.size());
        Cell c;
        c.cls = e.class_index;
        for (const auto& f : cd.all_fields) c.slots.push_back(default_value(f.type));
        heap_.push_back(std::move(c));
        return Value::R(static_cast<std::int64_t>(heap_.size() - 1));
      }
      case ExprKind::NewArray: {
        Value n = eval(e.kids[0], L);
        if (n.v < 0) fault(CrashKind::NegativeArraySize, e.id);
        if (static_cast<std::uint64_t>(n.v) > opts_.heap_limit) throw OutOfBudget{};
        charge(1 + static_cast<std::size_t>(n.v));
        Cell c;
        c.slots.assign(static_cast<std::size_t>(n.v), default_value(e.alloc_type));
        heap_.push_back(std::move(c));
        return Value::R(static_cast<std::int64_t>(heap_.size() - 1));
      }
      case ExprKind::Cast: {
        Value v = eval(e.kids[0], L);
        if (v.tag == Value::Tag::Null) return v;
        if (!p_.is_subclass(heap_[v.v].cls, e.class_index)) fault(CrashKind::BadCast, e.id);
        return v;
      }
      case ExprKind::InstanceOf: {
        Value v = eval(e.kids[0], L);
        if (v.tag == Value::Tag::Null) return Value::B(false);
        return Value::B(p_.is_subclass(heap_[v.v].cls, e.class_index));
      }
      case ExprKind::Call: {
        std::vector<Value> args;
        args.reserve(e.kids.size());
        for (const auto& k : e.kids) args.push_back(eval(k, L));
        Value r = call(e.method_index, std::move(args));
        return r;
      }
    }
    return Value::N();
  }
};

bool shape_ok(const Program& p, const Type& t, const EnvValue& v, std::string& why) {
  using K = EnvValue::Kind;
  switch (t.kind) {
    case TypeKind::Int:
      if (v.kind == K::Int) return true;
      break;
    case TypeKind::Bool:
      if (v.kind == K::Bool) return true;
      break;
    case TypeKind::Array:
      if (v.kind == K::Null) return true;
      if (v.kind == K::Array) {
        for (const auto& x : v.items)
          if (!shape_ok(p, t.element(), x, why)) return false;
        return true;
      }
      break;
    case TypeKind::Class: {
      if (v.kind == K::Null) return true;
      if (v.kind != K::Object) break;
      int dyn = p.class_index(v.cls);
      if (dyn < 0 || !p.is_subclass(dyn, p.class_index(t.cls))) {
        why = "object of class '" + v.cls + "' is not a " + t.cls;
        return false;
      }
      const ClassDecl& cd = p.classes[dyn];
      if (v.field_names.size() != cd.all_fields.size() || v.items.size() != v.field_names.size()) {
        why = "object of class " + v.cls + " has the wrong field set";
        return false;
      }
      for (const auto& f : cd.all_fields) {
        bool found = false;
        for (std::size_t j = 0; j < v.field_names.size(); ++j) {
          if (v.field_names[j] == f.name) {
            if (!shape_ok(p, f.type, v.items[j], why)) return false;
            found = true;
          }
        }
        if (!found) {
          why = "object of class " + v.cls + " is missing field " + f.name;
          return false;
        }
      }
      return true;
    }
    default:
      break;
  }
  if (why.empty()) why = "value does not match declared type " + t.str();
  return false;
}

}  // namespace

void check_shape(const Program& program, const MethodDef& method, const Environment& env) {
  if (env.args.size() != method.params.size())
    throw ContractViolation("method " + method.name + " expects " +
                            std::to_string(method.params.size()) + " arguments, got " +
                            std::to_string(env.args.size()));
  for (std::size_t i = 0; i < env.args.size(); ++i) {
    std::string why;
    if (!shape_ok(program, method.params[i].type, env.args[i], why))
      throw ContractViolation("argument '" + method.params[i].name + "': " + why);
  }
}

Outcome eval_method(const Program& program, int method_index, const Environment& env,
                    const ExecOptions& opts) {
  check_shape(program, program.methods.at(method_index), env);
  Machine m(program, opts);
  return m.run(method_index, env);
}

Outcome eval_method(const Program& program, std::string_view method, const Environment& env,
                    const ExecOptions& opts) {
  int mi = program.method_index(method);
  if (mi < 0) throw ContractViolation("no method named '" + std::string(method) + "'");
  return eval_method(program, mi, env, opts);
}

PreOutcome to_pre_outcome(const Outcome& o) {
  PreOutcome r;
  switch (o.kind) {
    case Outcome::Kind::Returned:
      r.verdict = o.value ? PreVerdict::True : PreVerdict::False;
      break;
    case Outcome::Kind::Crashed:
      r.verdict = PreVerdict::Crashed;
      r.crash = o.crash;
      break;
    case Outcome::Kind::BudgetExceeded:
      r.verdict = PreVerdict::BudgetExceeded;
      break;
  }
  return r;
}

PreOutcome eval_precondition(const Program& program, std::string_view pre_method,
                             const Environment& env, const ExecOptions& opts) {
  const MethodDef* m = program.find_method(pre_method);
  if (!m) throw ContractViolation("no method named '" + std::string(pre_method) + "'");
  if (m->return_type.kind != TypeKind::Bool)
    throw ContractViolation("precondition '" + m->name + "' does not return bool");
  return to_pre_outcome(eval_method(program, pre_method, env, opts));
}

}  // namespace seedguard
