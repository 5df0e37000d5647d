#ifndef MICHEL_ALBERT_EVAL_HPP
#define MICHEL_ALBERT_EVAL_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "michel/albert/ast.hpp"
#include "michel/albert/typecheck.hpp"
#include "michel/errors.hpp"
#include "michel/value.hpp"

namespace michel::albert {

struct AlbertResult {
  bool failed = false;
  AValue value;   // success: the produced record
  Value payload;  // failure: FAILWITH payload in Michelson form
};

namespace detail {

struct FailSignal {
  Value payload;
};

// Michelson form of a payload without type context. Records become nested
// pairs over their sorted fields; bool variants become bool. Other variants
// would need their declared type and are rejected upstream.
inline Value untyped_to_michelson(const AValue& v) {
  switch (v.kind) {
    case AValue::Kind::Base:
      return v.base;
    case AValue::Kind::Record: {
      if (v.fields.empty())
        throw std::logic_error("empty record has no Michelson form");
      Value out = untyped_to_michelson(v.fields.back().second);
      for (std::size_t i = v.fields.size() - 1; i-- > 0;) {
        out = Value::pair(untyped_to_michelson(v.fields[i].second), std::move(out));
      }
      return out;
    }
    case AValue::Kind::Variant:
      if (v.ctor == "True") return Value::boolean(true);
      if (v.ctor == "False") return Value::boolean(false);
      throw std::logic_error("variant payloads need a type to compile");
  }
  throw std::logic_error("bad AValue");
}

class AlbertEval {
 public:
  AlbertEval(const AlbertContract& c, std::int64_t amount) : c_(c), amount_(amount) {}

  // Produced record fields of `f` applied to `arg`.
  AValue run_fun(const AFun& f, const AValue& arg) {
    if (arg.kind != AValue::Kind::Record)
      throw std::logic_error("function argument must be a record value");
    REnv env;
    for (const auto& [label, value] : arg.fields) env.emplace(label, Slot{value, false});
    run_stmts(f.body, env);
    std::vector<std::pair<std::string, AValue>> produced;
    produced.reserve(f.produced.fields.size());
    for (const auto& [label, ty] : f.produced.fields) {
      produced.emplace_back(label, consume(env, label));
    }
    assert_all_consumed(env);
    return AValue::record(std::move(produced));
  }

 private:
  struct Slot {
    AValue value;
    bool consumed = false;
  };
  using REnv = std::map<std::string, Slot>;

  const AlbertContract& c_;
  std::int64_t amount_;

  // Instrumented linear read: a second read of the same binding is a bug in
  // the static discipline, not a contract failure.
  static AValue consume(REnv& env, const std::string& name) {
    auto it = env.find(name);
    if (it == env.end() || it->second.consumed)
      throw std::logic_error("linearity violation at runtime: '" + name + "'");
    it->second.consumed = true;
    return std::move(it->second.value);
  }

  static void bind(REnv& env, const std::string& name, AValue v) {
    auto it = env.find(name);
    if (it != env.end()) {
      if (!it->second.consumed)
        throw std::logic_error("rebinding live variable '" + name + "'");
      it->second = Slot{std::move(v), false};
      return;
    }
    env.emplace(name, Slot{std::move(v), false});
  }

  static void assert_all_consumed(const REnv& env) {
    for (const auto& [name, slot] : env) {
      if (!slot.consumed)
        throw std::logic_error("binding '" + name + "' was never consumed");
    }
  }

  AValue eval_expr(const AExpr& e, REnv& env) {
    switch (e.kind) {
      case AExpr::Kind::Var:
        return consume(env, e.name);
      case AExpr::Kind::IntConst:
        return AValue::base_v(e.num >= 0 ? Value::nat(e.num) : Value::integer(e.num));
      case AExpr::Kind::StrConst:
        return AValue::base_v(Value::str(e.str));
      case AExpr::Kind::BoolConst:
        return AValue::boolean(e.flag);
      case AExpr::Kind::EmptyList:
        return AValue::base_v(Value::list({}));
      case AExpr::Kind::RecordLit: {
        std::vector<std::pair<std::string, AValue>> fields;
        fields.reserve(e.rec_fields.size());
        for (const auto& [label, operand] : e.rec_fields)
          fields.emplace_back(label, eval_expr(operand, env));
        return AValue::record(std::move(fields));
      }
      case AExpr::Kind::Proj: {
        AValue v = consume(env, e.args[0]);
        const AValue* f = v.field(e.label);
        if (!f) throw std::logic_error("projection from a non-record value");
        return *f;  // the rest of the record is discarded
      }
      case AExpr::Kind::MapGet: {
        AValue m = consume(env, e.args[0]);
        AValue k = consume(env, e.args[1]);
        const Value* hit = map_find(m.base, k.base);
        return AValue::base_v(hit ? Value::some(*hit) : Value::none());
      }
      case AExpr::Kind::Dup:
        throw std::logic_error("dup reached expression evaluation");
      case AExpr::Kind::Add: {
        AValue l = consume(env, e.args[0]);
        AValue r = consume(env, e.args[1]);
        if (l.base.tag == ValueTag::Nat)
          return AValue::base_v(Value::nat(l.base.num + r.base.num));
        std::uint64_t sum =
            static_cast<std::uint64_t>(l.base.tez) + static_cast<std::uint64_t>(r.base.tez);
        if (sum > static_cast<std::uint64_t>(kMutezMax))
          throw FailSignal{Value::unit()};  // token exhaustion
        return AValue::base_v(Value::mutez(static_cast<std::int64_t>(sum)));
      }
      case AExpr::Kind::Ge: {
        AValue l = consume(env, e.args[0]);
        AValue r = consume(env, e.args[1]);
        return AValue::boolean(compare_value(l.base, r.base) >= 0);
      }
      case AExpr::Kind::SomeApp: {
        AValue v = consume(env, e.args[0]);
        return AValue::base_v(Value::some(std::move(v.base)));
      }
      case AExpr::Kind::CtorApp: {
        AValue v = consume(env, e.args[0]);
        if (e.name == "True" || e.name == "False") return AValue::boolean(e.name == "True");
        return AValue::variant(e.name, std::move(v));
      }
      case AExpr::Kind::Call: {
        const AFun* f = c_.fun(e.name);
        if (!f) throw std::logic_error("call to unknown function");
        AValue arg = consume(env, e.args[0]);
        return run_fun(*f, arg);
      }
      case AExpr::Kind::Amount:
        return AValue::base_v(Value::mutez(amount_));
      case AExpr::Kind::UpdateCall: {
        AValue m = consume(env, e.args[0]);
        AValue k = consume(env, e.args[1]);
        AValue v = consume(env, e.args[2]);
        Value updated = v.base.tag == ValueTag::Some
                            ? map_update(std::move(m.base), k.base, &v.base.kids[0])
                            : map_update(std::move(m.base), k.base, nullptr);
        return AValue::base_v(std::move(updated));
      }
      case AExpr::Kind::AssertSome: {
        AValue v = consume(env, e.args[0]);
        if (v.base.tag == ValueTag::None) throw FailSignal{Value::unit()};
        return AValue::record({{"res", AValue::base_v(std::move(v.base.kids[0]))}});
      }
    }
    throw std::logic_error("bad expression");
  }

  void run_stmts(const std::vector<AStmt>& body, REnv& env) {
    for (const AStmt& s : body) run_stmt(s, env);
  }

  void run_stmt(const AStmt& s, REnv& env) {
    switch (s.kind) {
      case AStmt::Kind::Assign: {
        if (s.rhs.kind == AExpr::Kind::Dup) {
          AValue v = consume(env, s.rhs.args[0]);
          bind(env, s.lhs_vars[0], v);
          bind(env, s.lhs_vars[1], std::move(v));
          return;
        }
        AValue v = eval_expr(s.rhs, env);
        switch (s.lhs) {
          case AStmt::Lhs::Var:
            bind(env, s.lhs_vars[0], std::move(v));
            return;
          case AStmt::Lhs::Tuple:
            throw std::logic_error("tuple pattern without dup");
          case AStmt::Lhs::Record: {
            for (const auto& [label, var] : s.lhs_rec) {
              const AValue* f = v.field(label);
              if (!f) throw std::logic_error("missing record field in destructuring");
              bind(env, var, *f);
            }
            return;
          }
        }
        return;
      }
      case AStmt::Kind::BareCall: {
        const AFun* f = c_.fun(s.callee);
        if (!f) throw std::logic_error("call to unknown function");
        AValue arg = consume(env, s.arg);
        AValue produced = run_fun(*f, arg);
        for (auto& [label, value] : produced.fields) bind(env, label, std::move(value));
        return;
      }
      case AStmt::Kind::Match: {
        AValue v = consume(env, s.match_var);
        if (v.kind != AValue::Kind::Variant)
          throw std::logic_error("match on a non-variant value");
        for (const AStmt::Arm& arm : s.arms) {
          if (arm.ctor != v.ctor) continue;
          bind(env, arm.payload, std::move(v.payload[0]));
          run_stmts(arm.body, env);
          return;
        }
        throw std::logic_error("no arm for constructor " + v.ctor);
      }
      case AStmt::Kind::FailWith: {
        AValue payload = eval_expr(s.rhs, env);
        throw FailSignal{untyped_to_michelson(payload)};
      }
      case AStmt::Kind::Drop:
        consume(env, s.drop_var);
        return;
    }
  }
};

}  // namespace detail

// Big-step reference evaluation of one function application. Albert in
// scope has no loops or recursion, so there is no fuel.
inline AlbertResult eval_albert(const TypedAlbert& t, const std::string& fun_name,
                                const AValue& arg, std::int64_t amount) {
  const AFun* f = t.contract.fun(fun_name);
  if (!f) throw TypeError("unknown function '" + fun_name + "'");
  detail::AlbertEval ev(t.contract, amount);
  AlbertResult out;
  try {
    out.value = ev.run_fun(*f, arg);
  } catch (const detail::FailSignal& sig) {
    out.failed = true;
    out.payload = sig.payload;
  }
  return out;
}

}  // namespace michel::albert

#endif  // MICHEL_ALBERT_EVAL_HPP
