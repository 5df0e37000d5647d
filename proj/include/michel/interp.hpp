#ifndef MICHEL_INTERP_HPP
#define MICHEL_INTERP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "michel/typecheck.hpp"
#include "michel/value.hpp"

namespace michel {

// Interpreter budget: one unit per instruction node evaluated. Seq wrappers
// are free; Dip/If bodies are charged as they are entered; every LOOP
// iteration re-charges the loop node and its body.
using Fuel = std::int64_t;

namespace detail {

class Interp {
 public:
  explicit Interp(const Env& env) : env_(env) {}

  // nullopt = keep going (stack updated in place).
  std::optional<ExecResult> run_seq(const TypedSeq& s, Fuel& fuel, Stack& st) {
    for (const TInstr& i : s.instrs) {
      if (auto stop = run_instr(i, fuel, st)) return stop;
    }
    return std::nullopt;
  }

 private:
  const Env& env_;

  static Value pop(Stack& st) {
    if (st.empty()) throw std::logic_error("eval: stack underflow on typed code");
    Value v = std::move(st.front());
    st.erase(st.begin());
    return v;
  }

  static bool pop_bool(Stack& st) {
    Value v = pop(st);
    if (v.tag != ValueTag::Bool) throw std::logic_error("eval: expected bool on typed code");
    return v.b;
  }

  std::optional<ExecResult> run_instr(const TInstr& i, Fuel& fuel, Stack& st) {
    if (i.op == Op::Seq) return run_seq(i.bodies[0], fuel, st);
    if (i.dead) throw std::logic_error("eval: reached dead instruction");
    if (fuel <= 0) return ExecResult::out_of_fuel();
    --fuel;
    switch (i.op) {
      case Op::Push:
        st.insert(st.begin(), i.push_value);
        return std::nullopt;
      case Op::Drop:
        st.erase(st.begin(), st.begin() + i.n);
        return std::nullopt;
      case Op::Dup:
        st.insert(st.begin(), st.front());
        return std::nullopt;
      case Op::Swap:
        std::swap(st[0], st[1]);
        return std::nullopt;
      case Op::Dig: {
        Value lifted = std::move(st[i.n]);
        st.erase(st.begin() + i.n);
        st.insert(st.begin(), std::move(lifted));
        return std::nullopt;
      }
      case Op::Dug: {
        Value buried = std::move(st[0]);
        st.erase(st.begin());
        st.insert(st.begin() + i.n, std::move(buried));
        return std::nullopt;
      }
      case Op::Dip: {
        Stack saved(std::make_move_iterator(st.begin()),
                    std::make_move_iterator(st.begin() + i.n));
        st.erase(st.begin(), st.begin() + i.n);
        if (auto stop = run_seq(i.bodies[0], fuel, st)) return stop;
        st.insert(st.begin(), std::make_move_iterator(saved.begin()),
                  std::make_move_iterator(saved.end()));
        return std::nullopt;
      }
      case Op::If:
        return run_seq(i.bodies[pop_bool(st) ? 0 : 1], fuel, st);
      case Op::IfNone: {
        Value v = pop(st);
        if (v.tag == ValueTag::None) return run_seq(i.bodies[0], fuel, st);
        st.insert(st.begin(), std::move(v.kids[0]));
        return run_seq(i.bodies[1], fuel, st);
      }
      case Op::IfLeft: {
        Value v = pop(st);
        bool left = v.tag == ValueTag::Left;
        st.insert(st.begin(), std::move(v.kids[0]));
        return run_seq(i.bodies[left ? 0 : 1], fuel, st);
      }
      case Op::Loop: {
        while (pop_bool(st)) {
          if (auto stop = run_seq(i.bodies[0], fuel, st)) return stop;
          if (fuel <= 0) return ExecResult::out_of_fuel();
          --fuel;  // re-evaluating the loop node
        }
        return std::nullopt;
      }
      case Op::FailWith:
        return ExecResult::failed(pop(st));
      case Op::Unit:
        st.insert(st.begin(), Value::unit());
        return std::nullopt;
      case Op::Pair: {
        Value a = pop(st);
        Value b = pop(st);
        st.insert(st.begin(), Value::pair(std::move(a), std::move(b)));
        return std::nullopt;
      }
      case Op::Car:
      case Op::Cdr: {
        Value p = pop(st);
        st.insert(st.begin(), std::move(p.kids[i.op == Op::Car ? 0 : 1]));
        return std::nullopt;
      }
      case Op::Some: {
        Value v = pop(st);
        st.insert(st.begin(), Value::some(std::move(v)));
        return std::nullopt;
      }
      case Op::None:
        st.insert(st.begin(), Value::none());
        return std::nullopt;
      case Op::Left: {
        Value v = pop(st);
        st.insert(st.begin(), Value::left(std::move(v)));
        return std::nullopt;
      }
      case Op::Right: {
        Value v = pop(st);
        st.insert(st.begin(), Value::right(std::move(v)));
        return std::nullopt;
      }
      case Op::Nil:
        st.insert(st.begin(), Value::list({}));
        return std::nullopt;
      case Op::Cons: {
        Value head = pop(st);
        st[0].kids.insert(st[0].kids.begin(), std::move(head));
        return std::nullopt;
      }
      case Op::EmptyMap:
        st.insert(st.begin(), Value::empty_map());
        return std::nullopt;
      case Op::Get: {
        Value key = pop(st);
        const Value* found = map_find(st[0], key);
        Value res = found ? Value::some(*found) : Value::none();
        st[0] = std::move(res);
        return std::nullopt;
      }
      case Op::Update: {
        Value key = pop(st);
        Value opt = pop(st);
        Value m = pop(st);
        if (opt.tag == ValueTag::Some) {
          m = map_update(std::move(m), key, &opt.kids[0]);
        } else {
          m = map_update(std::move(m), key, nullptr);
        }
        st.insert(st.begin(), std::move(m));
        return std::nullopt;
      }
      case Op::Mem: {
        Value key = pop(st);
        bool found = map_mem(st[0], key);
        st[0] = Value::boolean(found);
        return std::nullopt;
      }
      case Op::Add:
      case Op::Sub: {
        Value a = pop(st);
        Value b = pop(st);
        switch (i.ov) {
          case Overload::AddNatNat:
            st.insert(st.begin(), Value::nat(a.num + b.num));
            return std::nullopt;
          case Overload::AddInt:
            st.insert(st.begin(), Value::integer(a.num + b.num));
            return std::nullopt;
          case Overload::SubInt:
            st.insert(st.begin(), Value::integer(a.num - b.num));
            return std::nullopt;
          case Overload::AddMutez: {
            // operands are within [0, 2^63-1]; the unsigned sum cannot wrap
            std::uint64_t sum =
                static_cast<std::uint64_t>(a.tez) + static_cast<std::uint64_t>(b.tez);
            if (sum > static_cast<std::uint64_t>(kMutezMax))
              return ExecResult::failed(Value::unit());  // token exhaustion
            st.insert(st.begin(), Value::mutez(static_cast<std::int64_t>(sum)));
            return std::nullopt;
          }
          case Overload::SubMutez: {
            if (a.tez < b.tez) return ExecResult::failed(Value::unit());
            st.insert(st.begin(), Value::mutez(a.tez - b.tez));
            return std::nullopt;
          }
          case Overload::NotOverloaded:
            break;
        }
        throw std::logic_error("eval: ADD/SUB without resolved overload");
      }
      case Op::Compare: {
        Value a = pop(st);
        Value b = pop(st);
        st.insert(st.begin(), Value::integer(compare_value(a, b)));
        return std::nullopt;
      }
      case Op::Eq:
      case Op::Neq:
      case Op::Gt:
      case Op::Ge:
      case Op::Lt:
      case Op::Le: {
        Value v = pop(st);
        bool r = false;
        switch (i.op) {
          case Op::Eq: r = v.num == 0; break;
          case Op::Neq: r = v.num != 0; break;
          case Op::Gt: r = v.num > 0; break;
          case Op::Ge: r = v.num >= 0; break;
          case Op::Lt: r = v.num < 0; break;
          default: r = v.num <= 0; break;
        }
        st.insert(st.begin(), Value::boolean(r));
        return std::nullopt;
      }
      case Op::Not:
        st[0] = Value::boolean(!st[0].b);
        return std::nullopt;
      case Op::Amount:
        st.insert(st.begin(), Value::mutez(env_.amount));
        return std::nullopt;
      case Op::Seq:
      case Op::MacroFail:
      case Op::MacroAssertSome:
        break;
    }
    throw std::logic_error("eval: unhandled instruction");
  }
};

}  // namespace detail

inline ExecResult eval(const TypedSeq& s, Fuel fuel, Stack input, const Env& env) {
  detail::Interp in(env);
  if (auto stop = in.run_seq(s, fuel, input)) return *stop;
  return ExecResult::success(std::move(input));
}

struct RunResult {
  ExecResult::Kind kind = ExecResult::Kind::Success;
  Value operations;   // Success: always a List value
  Value new_storage;  // Success
  Value payload;      // Failed

  bool is_success() const { return kind == ExecResult::Kind::Success; }
};

// Contract-level runner: wraps eval in the Michelson calling convention and
// unpacks the final pair.
inline RunResult run_contract(const TypedContract& c, Value param, Value storage, const Env& env,
                              Fuel fuel) {
  if (!value_has_type(param, c.parameter_ty))
    throw TypeError("parameter value does not have type " + to_string(c.parameter_ty));
  if (!value_has_type(storage, c.storage_ty))
    throw TypeError("storage value does not have type " + to_string(c.storage_ty));
  Stack input;
  input.push_back(Value::pair(std::move(param), std::move(storage)));
  ExecResult r = eval(c.code, fuel, std::move(input), env);
  RunResult out;
  out.kind = r.kind;
  if (r.is_success()) {
    out.operations = std::move(r.stack[0].kids[0]);
    out.new_storage = std::move(r.stack[0].kids[1]);
  } else if (r.is_failed()) {
    out.payload = std::move(r.payload);
  }
  return out;
}

}  // namespace michel

#endif  // MICHEL_INTERP_HPP
