#ifndef MICHEL_GEN_HPP
#define MICHEL_GEN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "michel/ast.hpp"
#include "michel/typecheck.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel {

// Deterministic source of randomness: identical seeds give identical
// programs, stacks and values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool coin(double p = 0.5) { return next() % 1000 < static_cast<std::uint64_t>(p * 1000); }

 private:
  std::mt19937_64 eng_;
};

namespace genspec {
inline constexpr std::size_t kMaxStackWidth = 8;
inline constexpr int kMaxLoopIters = 8;
}  // namespace genspec

// Random type; operation is never generated (stacks built from these remain
// printable and pushable).
inline Ty gen_ty(Rng& r, int depth) {
  int pick = depth > 0 ? r.range(0, 10) : r.range(0, 5);
  switch (pick) {
    case 0: return Ty::unit();
    case 1: return Ty::boolean();
    case 2: return Ty::nat();
    case 3: return Ty::integer();
    case 4: return Ty::mutez();
    case 5: return Ty::string();
    case 6: return Ty::pair(gen_ty(r, depth - 1), gen_ty(r, depth - 1));
    case 7: return Ty::sum(gen_ty(r, depth - 1), gen_ty(r, depth - 1));
    case 8: return Ty::option(gen_ty(r, depth - 1));
    case 9: return Ty::list(gen_ty(r, depth - 1));
    default: {
      Ty key;
      switch (r.range(0, 4)) {
        case 0: key = Ty::boolean(); break;
        case 1: key = Ty::nat(); break;
        case 2: key = Ty::integer(); break;
        case 3: key = Ty::mutez(); break;
        default: key = Ty::string(); break;
      }
      return Ty::map(std::move(key), gen_ty(r, depth - 1));
    }
  }
}

inline StackTy gen_stack_ty(Rng& r, std::size_t max_width, int depth) {
  StackTy s;
  std::size_t width = r.below(max_width + 1);
  s.reserve(width);
  for (std::size_t i = 0; i < width; ++i) s.push_back(gen_ty(r, depth));
  return s;
}

// Random well-typed value; integer magnitudes cover 0, +-1 and large
// values, mutez covers the overflow boundary.
inline Value gen_value(Rng& r, const Ty& t) {
  switch (t.tag) {
    case TyTag::Unit: return Value::unit();
    case TyTag::Bool: return Value::boolean(r.coin());
    case TyTag::Nat:
      switch (r.range(0, 4)) {
        case 0: return Value::nat(0);
        case 1: return Value::nat(1);
        case 2: return Value::nat(r.range(2, 100));
        case 3: return Value::nat(BigInt("4611686018427387904"));  // 2^62
        default: return Value::nat(BigInt("123456789012345678901234567890"));
      }
    case TyTag::Int:
      switch (r.range(0, 5)) {
        case 0: return Value::integer(0);
        case 1: return Value::integer(1);
        case 2: return Value::integer(-1);
        case 3: return Value::integer(r.range(-100, 100));
        case 4: return Value::integer(BigInt("-123456789012345678901234567890"));
        default: return Value::integer(BigInt("123456789012345678901234567890"));
      }
    case TyTag::Mutez:
      switch (r.range(0, 5)) {
        case 0: return Value::mutez(0);
        case 1: return Value::mutez(1);
        case 2: return Value::mutez(r.range(2, 10000000));
        case 3: return Value::mutez(kMutezMax);
        case 4: return Value::mutez(kMutezMax - 1);
        default: return Value::mutez(kMutezMax / 2 + r.range(0, 5));
      }
    case TyTag::String: {
      static const char* pool[] = {"", "a", "z", "Agda", "Coq", "Isabelle", "OCaml", "tez", "zz"};
      return Value::str(pool[r.below(sizeof(pool) / sizeof(pool[0]))]);
    }
    case TyTag::Operation:
      return Value::operation();
    case TyTag::Pair:
      return Value::pair(gen_value(r, t.args[0]), gen_value(r, t.args[1]));
    case TyTag::Or:
      return r.coin() ? Value::left(gen_value(r, t.args[0]))
                      : Value::right(gen_value(r, t.args[1]));
    case TyTag::Option:
      return r.coin() ? Value::some(gen_value(r, t.args[0])) : Value::none();
    case TyTag::List: {
      std::vector<Value> elems;
      std::size_t n = r.below(4);
      elems.reserve(n);
      for (std::size_t i = 0; i < n; ++i) elems.push_back(gen_value(r, t.args[0]));
      return Value::list(std::move(elems));
    }
    case TyTag::Map: {
      Value m = Value::empty_map();
      std::size_t n = r.below(4);
      for (std::size_t i = 0; i < n; ++i) {
        Value k = gen_value(r, t.args[0]);
        Value v = gen_value(r, t.args[1]);
        m = map_update(std::move(m), k, &v);
      }
      return m;
    }
  }
  throw std::logic_error("gen_value: bad type tag");
}

inline Stack gen_stack_with(Rng& r, const StackTy& ty) {
  Stack st;
  st.reserve(ty.size());
  for (const Ty& t : ty) st.push_back(gen_value(r, t));
  return st;
}

inline Stack gen_stack(std::uint64_t seed, const StackTy& ty) {
  Rng r(seed);
  return gen_stack_with(r, ty);
}

struct GenProgram {
  USeq code;
  std::optional<StackTy> out;  // nullopt: every control path fails
};

namespace detail {

class ProgramGen {
 public:
  explicit ProgramGen(Rng& r) : r_(r) {}

  GenProgram seq(StackTy cur, int depth, int len) {
    USeq out;
    for (int step = 0; step < len; ++step) {
      if (cur.size() >= 2 && r_.coin(0.18)) {
        append_junk(out, cur);
        continue;
      }
      std::optional<UInstr> pick = instr(cur, depth);
      if (!pick) break;
      std::optional<StackTy> next = apply(cur, *pick);
      out.push_back(std::move(*pick));
      if (!next) return {std::move(out), std::nullopt};
      cur = std::move(*next);
    }
    return {std::move(out), std::move(cur)};
  }

 private:
  Rng& r_;

  // Ground truth for one instruction's stack effect is the typechecker
  // itself, so generator and checker cannot drift apart.
  static std::optional<StackTy> apply(const StackTy& cur, const UInstr& i) {
    TypedSeq ts = typecheck_seq(USeq{i}, cur);
    if (ts.fails) return std::nullopt;
    return ts.out;
  }

  Value small_value(const Ty& t) { return gen_value(r_, t); }

  UInstr push_of(const Ty& t) { return UInstr::push(t, value_to_literal(gen_value(r_, t))); }

  Ty small_ty() { return gen_ty(r_, 1); }

  // Identity-on-the-stack redundancy for the optimizer to chew on.
  void append_junk(USeq& out, const StackTy& cur) {
    std::size_t variants = cur.size() >= 2 ? 6 : (cur.size() == 1 ? 3 : 2);
    switch (r_.below(variants)) {
      case 0: {
        Ty t = small_ty();
        out.push_back(push_of(t));
        out.push_back(UInstr::counted(Op::Drop, 1));
        break;
      }
      case 1:
        out.push_back(UInstr::counted(Op::Drop, 0));
        break;
      case 2:
        out.push_back(UInstr::counted(r_.coin() ? Op::Dig : Op::Dug, 0));
        break;
      case 3:
        out.push_back(UInstr::simple(Op::Swap));
        out.push_back(UInstr::simple(Op::Swap));
        break;
      case 4: {
        std::uint32_t n = static_cast<std::uint32_t>(r_.below(cur.size() - 1) + 1);
        out.push_back(UInstr::counted(Op::Dig, n));
        out.push_back(UInstr::counted(Op::Dug, n));
        break;
      }
      default:
        out.push_back(UInstr::counted(Op::Dig, 1));
        out.push_back(UInstr::counted(Op::Dig, 1));
        break;
    }
  }

  USeq junk_seq(const StackTy& cur) {
    USeq out;
    int n = r_.range(1, 2);
    for (int i = 0; i < n; ++i) append_junk(out, cur);
    return out;
  }

  USeq bottom_branch(const StackTy& cur) {
    USeq out;
    if (cur.empty() || r_.coin()) out.push_back(UInstr::simple(Op::Unit));
    out.push_back(UInstr::simple(Op::FailWith));
    return out;
  }

  // [PUSH int k; DUP; GT; LOOP { PUSH int 1; SWAP; SUB; DUP; GT }; DROP 1]
  // runs the body exactly k times and leaves the stack unchanged.
  USeq countdown_loop() {
    int k = r_.range(0, genspec::kMaxLoopIters);
    USeq body = {UInstr::push(Ty::integer(), Literal::intlit(1)), UInstr::simple(Op::Swap),
                 UInstr::simple(Op::Sub), UInstr::simple(Op::Dup), UInstr::simple(Op::Gt)};
    return {UInstr::push(Ty::integer(), Literal::intlit(k)), UInstr::simple(Op::Dup),
            UInstr::simple(Op::Gt), UInstr::loop(std::move(body)),
            UInstr::counted(Op::Drop, 1)};
  }

  std::optional<UInstr> instr(const StackTy& cur, int depth) {
    using Builder = std::function<UInstr()>;
    std::vector<Builder> cands;
    const std::size_t w = cur.size();
    const bool can_push = w < genspec::kMaxStackWidth;

    if (can_push) {
      cands.push_back([this] { return push_of(gen_ty(r_, 2)); });
      cands.push_back([] { return UInstr::simple(Op::Unit); });
      cands.push_back([this] { return UInstr::typed(Op::None, small_ty()); });
      cands.push_back([this] { return UInstr::typed(Op::Nil, small_ty()); });
      cands.push_back([] { return UInstr::typed(Op::Nil, Ty::operation()); });
      cands.push_back([this] {
        Ty k;
        switch (r_.range(0, 4)) {
          case 0: k = Ty::boolean(); break;
          case 1: k = Ty::nat(); break;
          case 2: k = Ty::integer(); break;
          case 3: k = Ty::mutez(); break;
          default: k = Ty::string(); break;
        }
        return UInstr::empty_map(std::move(k), small_ty());
      });
      cands.push_back([] { return UInstr::simple(Op::Amount); });
      if (w >= 1) cands.push_back([] { return UInstr::simple(Op::Dup); });
    }
    if (w >= 1) {
      cands.push_back([this, w] {
        return UInstr::counted(Op::Drop, static_cast<std::uint32_t>(r_.below(std::min(w, std::size_t{3})) + 1));
      });
      cands.push_back([] { return UInstr::simple(Op::Some); });
      cands.push_back([this] { return UInstr::typed(Op::Left, small_ty()); });
      cands.push_back([this] { return UInstr::typed(Op::Right, small_ty()); });
    }
    if (w >= 2) {
      cands.push_back([] { return UInstr::simple(Op::Swap); });
      cands.push_back([] { return UInstr::simple(Op::Pair); });
      cands.push_back([this, w] {
        return UInstr::counted(Op::Dig, static_cast<std::uint32_t>(r_.below(w - 1) + 1));
      });
      cands.push_back([this, w] {
        return UInstr::counted(Op::Dug, static_cast<std::uint32_t>(r_.below(w - 1) + 1));
      });
    }
    if (w >= 1 && cur[0].tag == TyTag::Pair) {
      cands.push_back([this] { return UInstr::simple(r_.coin() ? Op::Car : Op::Cdr); });
    }
    if (w >= 2 && cur[1].tag == TyTag::List && cur[0] == cur[1].args[0]) {
      cands.push_back([] { return UInstr::simple(Op::Cons); });
    }
    if (w >= 2 && cur[1].tag == TyTag::Map && cur[0] == cur[1].args[0]) {
      cands.push_back([] { return UInstr::simple(Op::Get); });
      cands.push_back([] { return UInstr::simple(Op::Mem); });
    }
    if (w >= 3 && cur[2].tag == TyTag::Map && cur[0] == cur[2].args[0] &&
        cur[1] == Ty::option(cur[2].args[1])) {
      cands.push_back([] { return UInstr::simple(Op::Update); });
    }
    if (w >= 2) {
      auto numeric = [](const Ty& t) { return t.tag == TyTag::Nat || t.tag == TyTag::Int; };
      if ((numeric(cur[0]) && numeric(cur[1])) ||
          (cur[0].tag == TyTag::Mutez && cur[1].tag == TyTag::Mutez)) {
        cands.push_back([this] { return UInstr::simple(r_.coin() ? Op::Add : Op::Sub); });
      }
      if (cur[0] == cur[1] && is_comparable(cur[0])) {
        cands.push_back([] { return UInstr::simple(Op::Compare); });
      }
    }
    if (w >= 1 && cur[0].tag == TyTag::Int) {
      cands.push_back([this] {
        static const Op preds[] = {Op::Eq, Op::Neq, Op::Gt, Op::Ge, Op::Lt, Op::Le};
        return UInstr::simple(preds[r_.below(6)]);
      });
    }
    if (w >= 1 && cur[0].tag == TyTag::Bool) {
      cands.push_back([] { return UInstr::simple(Op::Not); });
    }

    if (can_push) {
      // templates that manufacture the preconditions of the rarer opcodes
      cands.push_back([this] {  // arithmetic on a freshly pushed operand pair
        Ty t;
        switch (r_.range(0, 2)) {
          case 0: t = Ty::nat(); break;
          case 1: t = Ty::integer(); break;
          default: t = Ty::mutez(); break;
        }
        USeq s{push_of(t), push_of(t), UInstr::simple(r_.coin() ? Op::Add : Op::Sub)};
        return UInstr::seq(std::move(s));
      });
      cands.push_back([this] {  // comparison chain ending in a predicate
        Ty t;
        switch (r_.range(0, 4)) {
          case 0: t = Ty::boolean(); break;
          case 1: t = Ty::nat(); break;
          case 2: t = Ty::integer(); break;
          case 3: t = Ty::mutez(); break;
          default: t = Ty::string(); break;
        }
        USeq s{push_of(t), push_of(t), UInstr::simple(Op::Compare)};
        static const Op preds[] = {Op::Eq, Op::Neq, Op::Gt, Op::Ge, Op::Lt, Op::Le};
        s.push_back(UInstr::simple(preds[r_.below(6)]));
        if (r_.coin()) s.push_back(UInstr::simple(Op::Not));
        return UInstr::seq(std::move(s));
      });
      cands.push_back([this] {  // pair construction and projection
        Ty a = small_ty();
        Ty b = small_ty();
        USeq s{push_of(b), push_of(a), UInstr::simple(Op::Pair),
               UInstr::simple(r_.coin() ? Op::Car : Op::Cdr)};
        return UInstr::seq(std::move(s));
      });
      cands.push_back([this] {  // grow a fresh list
        Ty t = small_ty();
        USeq s{UInstr::typed(Op::Nil, t), push_of(t), UInstr::simple(Op::Cons)};
        if (r_.coin()) {
          s.push_back(push_of(t));
          s.push_back(UInstr::simple(Op::Cons));
        }
        return UInstr::seq(std::move(s));
      });
    }

    if (depth > 0) {
      cands.push_back([this, &cur, depth] {
        return UInstr::seq(seq(cur, depth - 1, r_.range(0, 3)).code);
      });
      if (can_push) {
        cands.push_back([this, &cur, depth] {  // branch on a fresh bool
          StackTy with_bool = cur;
          with_bool.insert(with_bool.begin(), Ty::boolean());
          USeq s{push_of(Ty::boolean()),
                 r_.coin() ? gen_if(with_bool, depth) : gen_loop(with_bool, depth)};
          return UInstr::seq(std::move(s));
        });
      }
      if (w >= 1) {
        cands.push_back([this, &cur, depth, w] {
          std::uint32_t n = static_cast<std::uint32_t>(r_.below(std::min(w, std::size_t{3})) + 1);
          StackTy below(cur.begin() + n, cur.end());
          return UInstr::dip(n, seq(std::move(below), depth - 1, r_.range(0, 3)).code);
        });
      }
      if (w >= 1 && cur[0].tag == TyTag::Bool) {
        cands.push_back([this, &cur, depth] { return gen_if(cur, depth); });
        cands.push_back([this, &cur, depth] { return gen_loop(cur, depth); });
      }
      if (w >= 1 && cur[0].tag == TyTag::Option) {
        cands.push_back([this, &cur, depth] { return gen_ifnone(cur, depth); });
      }
      if (w >= 1 && cur[0].tag == TyTag::Or) {
        cands.push_back([this, &cur, depth] { return gen_ifleft(cur, depth); });
      }
      if (can_push) {
        cands.push_back([this] { return UInstr::seq(countdown_loop()); });
        // build a map in place and hit it with UPDATE
        cands.push_back([this] {
          Ty key;
          switch (r_.range(0, 2)) {
            case 0: key = Ty::nat(); break;
            case 1: key = Ty::integer(); break;
            default: key = Ty::string(); break;
          }
          Ty val = small_ty();
          Ty opt = Ty::option(val);
          USeq s;
          s.push_back(UInstr::empty_map(key, val));
          s.push_back(UInstr::push(opt, value_to_literal(gen_value(r_, opt))));
          s.push_back(UInstr::push(key, value_to_literal(gen_value(r_, key))));
          s.push_back(UInstr::simple(Op::Update));
          if (r_.coin()) {
            s.push_back(UInstr::push(key, value_to_literal(gen_value(r_, key))));
            s.push_back(UInstr::simple(r_.coin() ? Op::Get : Op::Mem));
          }
          return UInstr::seq(std::move(s));
        });
      }
    }

    if (w >= 1 && r_.coin(0.05)) return UInstr::simple(Op::FailWith);
    if (cands.empty()) return std::nullopt;
    return cands[r_.below(cands.size())]();
  }

  UInstr gen_if(const StackTy& cur, int depth) {
    StackTy rest(cur.begin() + 1, cur.end());
    GenProgram a = seq(rest, depth - 1, r_.range(0, 3));
    USeq bt = a.code;
    USeq bf;
    if (!a.out) {
      bf = seq(rest, depth - 1, r_.range(0, 3)).code;
    } else {
      switch (r_.below(3)) {
        case 0: bf = bt; break;  // identical branches
        case 1: {                // same type, extra redundancy
          bf = junk_seq(rest);
          bf.insert(bf.end(), bt.begin(), bt.end());
          break;
        }
        default: bf = bottom_branch(rest); break;
      }
    }
    if (r_.coin()) std::swap(bt, bf);
    return UInstr::branch(Op::If, std::move(bt), std::move(bf));
  }

  UInstr gen_ifnone(const StackTy& cur, int depth) {
    StackTy rest(cur.begin() + 1, cur.end());
    StackTy some_in = rest;
    some_in.insert(some_in.begin(), cur[0].args[0]);
    if (r_.coin()) {
      // use the payload, fail on the none path
      USeq bs = seq(std::move(some_in), depth - 1, r_.range(0, 3)).code;
      return UInstr::branch(Op::IfNone, bottom_branch(rest), std::move(bs));
    }
    GenProgram none_arm = seq(rest, depth - 1, r_.range(0, 3));
    USeq bs = {UInstr::counted(Op::Drop, 1)};
    bs.insert(bs.end(), none_arm.code.begin(), none_arm.code.end());
    return UInstr::branch(Op::IfNone, none_arm.code, std::move(bs));
  }

  UInstr gen_ifleft(const StackTy& cur, int depth) {
    StackTy rest(cur.begin() + 1, cur.end());
    StackTy lin = rest;
    lin.insert(lin.begin(), cur[0].args[0]);
    StackTy rin = rest;
    rin.insert(rin.begin(), cur[0].args[1]);
    if (r_.coin()) {
      USeq bl = seq(std::move(lin), depth - 1, r_.range(0, 3)).code;
      return UInstr::branch(Op::IfLeft, std::move(bl), bottom_branch(rin));
    }
    USeq br = seq(std::move(rin), depth - 1, r_.range(0, 3)).code;
    return UInstr::branch(Op::IfLeft, bottom_branch(lin), std::move(br));
  }

  UInstr gen_loop(const StackTy& cur, int depth) {
    StackTy rest(cur.begin() + 1, cur.end());
    if (r_.coin(0.2)) {
      // body that always fails when entered
      return UInstr::loop(bottom_branch(rest));
    }
    // stack-neutral body that exits after one iteration
    USeq body = junk_seq(rest);
    body.push_back(UInstr::push(Ty::boolean(), Literal(Literal::Tag::False)));
    return UInstr::loop(std::move(body));
  }
};

}  // namespace detail

// Type-directed program generation: the result always typechecks against
// `input` (asserted by the suites), covers the full opcode set including
// nested If/Dip/Loop, and is deterministic in the seed. Depth zero is the
// empty program.
inline GenProgram gen_typed_program(std::uint64_t seed, int max_depth, const StackTy& input) {
  if (max_depth <= 0) return {USeq{}, input};
  Rng r(seed);
  detail::ProgramGen g(r);
  return g.seq(input, max_depth, r.range(1, 8));
}

}  // namespace michel

#endif  // MICHEL_GEN_HPP
