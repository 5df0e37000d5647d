#ifndef MICHEL_WP_HPP
#define MICHEL_WP_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "michel/interp.hpp"
#include "michel/typecheck.hpp"
#include "michel/value.hpp"

namespace michel {

// Computable postcondition/precondition over stacks; total on stacks of its
// declared stack type.
struct Predicate {
  std::function<bool(const Stack&)> fn;
  std::string desc;

  bool operator()(const Stack& st) const { return fn(st); }
};

namespace detail {

// Predicate-transformer semantics: wp walks the instruction structure and
// threads a continuation over (remaining fuel, stack). Failure and fuel
// exhaustion both collapse to false, so
//   wp(i, fuel, psi)(st)  ==  eval(i, fuel, st) = Success(out) /\ psi(out)
// which check_wp_correct verifies pointwise at sampled stacks. The stack
// effects here are written functionally and independently of the
// interpreter; the agreement of the two routes is the tested property.
class WpEngine {
 public:
  using Cont = std::function<bool(Fuel, const Stack&)>;

  explicit WpEngine(Env env) : env_(env) {}

  bool seq(const TypedSeq& s, std::size_t idx, Fuel f, const Stack& st, const Cont& k) const {
    if (idx == s.instrs.size()) return k(f, st);
    const TInstr& node = s.instrs[idx];
    Cont rest = [this, &s, idx, k](Fuel f2, const Stack& st2) {
      return seq(s, idx + 1, f2, st2, k);
    };
    return instr(node, f, st, rest);
  }

 private:
  Env env_;

  static Stack popped(const Stack& st, std::size_t n = 1) {
    return Stack(st.begin() + static_cast<std::ptrdiff_t>(n), st.end());
  }

  static Stack pushed(const Stack& st, Value v) {
    Stack out;
    out.reserve(st.size() + 1);
    out.push_back(std::move(v));
    out.insert(out.end(), st.begin(), st.end());
    return out;
  }

  bool instr(const TInstr& i, Fuel f, const Stack& st, const Cont& k) const {
    if (i.op == Op::Seq) return seq(i.bodies[0], 0, f, st, k);
    if (i.dead) throw std::logic_error("wp: reached dead instruction");
    if (f <= 0) return false;  // fuel exhaustion is not a successful run
    const Fuel f2 = f - 1;
    switch (i.op) {
      case Op::FailWith:
        return false;  // Failed _ => False
      case Op::Push:
        return k(f2, pushed(st, i.push_value));
      case Op::Drop:
        return k(f2, popped(st, i.n));
      case Op::Dup:
        return k(f2, pushed(st, st[0]));
      case Op::Swap: {
        Stack out = st;
        std::swap(out[0], out[1]);
        return k(f2, out);
      }
      case Op::Dig: {
        Stack out = st;
        Value lifted = out[i.n];
        out.erase(out.begin() + i.n);
        out.insert(out.begin(), std::move(lifted));
        return k(f2, out);
      }
      case Op::Dug: {
        Stack out = st;
        Value buried = out[0];
        out.erase(out.begin());
        out.insert(out.begin() + i.n, std::move(buried));
        return k(f2, out);
      }
      case Op::Dip: {
        Stack prefix(st.begin(), st.begin() + i.n);
        Cont reattach = [prefix, k](Fuel f3, const Stack& sub) {
          Stack full = prefix;
          full.insert(full.end(), sub.begin(), sub.end());
          return k(f3, full);
        };
        return seq(i.bodies[0], 0, f2, popped(st, i.n), reattach);
      }
      case Op::If:
        return seq(i.bodies[st[0].b ? 0 : 1], 0, f2, popped(st), k);
      case Op::IfNone: {
        if (st[0].tag == ValueTag::None) return seq(i.bodies[0], 0, f2, popped(st), k);
        Stack bound = popped(st);
        bound.insert(bound.begin(), st[0].kids[0]);
        return seq(i.bodies[1], 0, f2, bound, k);
      }
      case Op::IfLeft: {
        Stack bound = popped(st);
        bound.insert(bound.begin(), st[0].kids[0]);
        return seq(i.bodies[st[0].tag == ValueTag::Left ? 0 : 1], 0, f2, bound, k);
      }
      case Op::Loop: {
        if (!st[0].b) return k(f2, popped(st));
        Cont again = [this, &i, k](Fuel f3, const Stack& st3) { return instr(i, f3, st3, k); };
        return seq(i.bodies[0], 0, f2, popped(st), again);
      }
      case Op::Unit:
        return k(f2, pushed(st, Value::unit()));
      case Op::Pair: {
        Stack out = popped(st, 2);
        out.insert(out.begin(), Value::pair(st[0], st[1]));
        return k(f2, out);
      }
      case Op::Car:
        return k(f2, pushed(popped(st), st[0].kids[0]));
      case Op::Cdr:
        return k(f2, pushed(popped(st), st[0].kids[1]));
      case Op::Some:
        return k(f2, pushed(popped(st), Value::some(st[0])));
      case Op::None:
        return k(f2, pushed(st, Value::none()));
      case Op::Left:
        return k(f2, pushed(popped(st), Value::left(st[0])));
      case Op::Right:
        return k(f2, pushed(popped(st), Value::right(st[0])));
      case Op::Nil:
        return k(f2, pushed(st, Value::list({})));
      case Op::Cons: {
        Value lst = st[1];
        lst.kids.insert(lst.kids.begin(), st[0]);
        return k(f2, pushed(popped(st, 2), std::move(lst)));
      }
      case Op::EmptyMap:
        return k(f2, pushed(st, Value::empty_map()));
      case Op::Get: {
        const Value* hit = map_find(st[1], st[0]);
        return k(f2, pushed(popped(st, 2), hit ? Value::some(*hit) : Value::none()));
      }
      case Op::Update: {
        Value updated = st[1].tag == ValueTag::Some ? map_update(st[2], st[0], &st[1].kids[0])
                                                    : map_update(st[2], st[0], nullptr);
        return k(f2, pushed(popped(st, 3), std::move(updated)));
      }
      case Op::Mem:
        return k(f2, pushed(popped(st, 2), Value::boolean(map_mem(st[1], st[0]))));
      case Op::Add:
      case Op::Sub:
        switch (i.ov) {
          case Overload::AddNatNat:
            return k(f2, pushed(popped(st, 2), Value::nat(st[0].num + st[1].num)));
          case Overload::AddInt:
            return k(f2, pushed(popped(st, 2), Value::integer(st[0].num + st[1].num)));
          case Overload::SubInt:
            return k(f2, pushed(popped(st, 2), Value::integer(st[0].num - st[1].num)));
          case Overload::AddMutez: {
            std::uint64_t sum =
                static_cast<std::uint64_t>(st[0].tez) + static_cast<std::uint64_t>(st[1].tez);
            if (sum > static_cast<std::uint64_t>(kMutezMax)) return false;  // token exhaustion
            return k(f2, pushed(popped(st, 2), Value::mutez(static_cast<std::int64_t>(sum))));
          }
          case Overload::SubMutez:
            if (st[0].tez < st[1].tez) return false;
            return k(f2, pushed(popped(st, 2), Value::mutez(st[0].tez - st[1].tez)));
          case Overload::NotOverloaded:
            break;
        }
        throw std::logic_error("wp: ADD/SUB without resolved overload");
      case Op::Compare:
        return k(f2, pushed(popped(st, 2), Value::integer(compare_value(st[0], st[1]))));
      case Op::Eq:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num == 0)));
      case Op::Neq:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num != 0)));
      case Op::Gt:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num > 0)));
      case Op::Ge:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num >= 0)));
      case Op::Lt:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num < 0)));
      case Op::Le:
        return k(f2, pushed(popped(st), Value::boolean(st[0].num <= 0)));
      case Op::Not:
        return k(f2, pushed(popped(st), Value::boolean(!st[0].b)));
      case Op::Amount:
        return k(f2, pushed(st, Value::mutez(env_.amount)));
      case Op::Seq:
      case Op::MacroFail:
      case Op::MacroAssertSome:
        break;
    }
    throw std::logic_error("wp: unhandled instruction");
  }
};

}  // namespace detail

// Weakest precondition of `post` through `i` at the given fuel. The returned
// predicate borrows `i`; keep the program alive while using it.
inline Predicate wp(const TypedSeq& i, Fuel fuel, Predicate post, Env env) {
  const TypedSeq* prog = &i;
  std::string desc = "wp[fuel=" + std::to_string(fuel) + "](" + post.desc + ")";
  auto fn = [prog, fuel, post = std::move(post), env](const Stack& st) {
    detail::WpEngine engine(env);
    return engine.seq(*prog, 0, fuel, st,
                      [&post](Fuel, const Stack& out) { return post.fn(out); });
  };
  return Predicate{std::move(fn), std::move(desc)};
}

// Executable form of the eval_precond correctness lemma at one point:
//   wp(i, fuel, post)(st)  <->  eval(i, fuel, st) succeeds and post holds.
inline bool check_wp_correct(const TypedSeq& i, Fuel fuel, const Predicate& post, const Stack& st,
                             const Env& env) {
  bool lhs = wp(i, fuel, post, env)(st);
  ExecResult r = eval(i, fuel, st, env);
  bool rhs = r.is_success() && post.fn(r.stack);
  return lhs == rhs;
}

}  // namespace michel

#endif  // MICHEL_WP_HPP
