#ifndef MICHEL_TYPECHECK_HPP
#define MICHEL_TYPECHECK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "michel/ast.hpp"
#include "michel/errors.hpp"
#include "michel/parser.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel {

// Resolved overload case for ADD/SUB; the other overloaded opcodes
// (COMPARE, GET, UPDATE, MEM) have a single runtime behaviour.
enum class Overload : std::uint8_t {
  NotOverloaded,
  AddNatNat,
  AddInt,     // any nat/int mix with an int operand or result
  AddMutez,
  SubInt,     // all nat/int combinations produce int
  SubMutez,
};

struct TypedSeq;

// Typed instruction node. `in`/`out` are the resolved stack types; a node
// in dead code (after FAILWITH on the same path) carries `dead = true` and
// empty bodies — the evaluator can never reach it.
struct TInstr {
  Op op = Op::Unit;
  std::uint32_t n = 0;
  Ty ty;
  Ty ty2;
  Value push_value;
  Overload ov = Overload::NotOverloaded;
  std::vector<TypedSeq> bodies;
  StackTy in;
  StackTy out;
  bool produces_bottom = false;  // no control path returns normally
  bool dead = false;
  Pos pos;
};

struct TypedSeq {
  std::vector<TInstr> instrs;
  StackTy in;
  StackTy out;      // meaningful only when !fails
  bool fails = false;  // every control path ends in FAILWITH
};

struct TypedContract {
  Ty parameter_ty;
  Ty storage_ty;
  TypedSeq code;
};

namespace detail {

class Checker {
 public:
  TypedSeq seq(const USeq& u, StackTy input) {
    TypedSeq out;
    out.in = input;
    std::optional<StackTy> cur = std::move(input);
    for (const UInstr& ui : u) {
      out.instrs.push_back(instr(ui, cur));
    }
    if (cur) {
      out.out = std::move(*cur);
    } else {
      out.fails = true;
    }
    return out;
  }

 private:
  [[noreturn]] static void err(const std::string& msg, Pos pos) { throw TypeError(msg, pos); }

  static void need_depth(const StackTy& st, std::size_t n, const UInstr& u) {
    if (st.size() < n)
      err(std::string(op_name(u.op)) + ": stack underflow, need " + std::to_string(n) +
              " element(s) but stack type is " + to_string(st),
          u.pos);
  }

  static void need(bool cond, const std::string& msg, const UInstr& u) {
    if (!cond) err(std::string(op_name(u.op)) + ": " + msg, u.pos);
  }

  // nullopt = the failure-polymorphic stack type, which unifies with anything.
  static std::optional<StackTy> unify_branches(const TypedSeq& a, const TypedSeq& b,
                                               const UInstr& u) {
    if (a.fails && b.fails) return std::nullopt;
    if (a.fails) return b.out;
    if (b.fails) return a.out;
    if (a.out != b.out)
      err(std::string(op_name(u.op)) + ": branches disagree, " + to_string(a.out) + " vs " +
              to_string(b.out),
          u.pos);
    return a.out;
  }

  TInstr instr(const UInstr& u, std::optional<StackTy>& cur) {
    TInstr t;
    t.op = u.op;
    t.n = u.n;
    t.ty = u.ty;
    t.ty2 = u.ty2;
    t.pos = u.pos;
    if (!cur) {
      // Unreachable instruction: the bottom stack type unifies with any
      // input this node could demand.
      t.dead = true;
      return t;
    }
    StackTy st = std::move(*cur);
    t.in = st;
    switch (u.op) {
      case Op::Seq: {
        TypedSeq body = seq(u.body_a, std::move(st));
        if (body.fails) {
          cur = std::nullopt;
          t.produces_bottom = true;
        } else {
          cur = body.out;
        }
        t.bodies.push_back(std::move(body));
        break;
      }
      case Op::Push: {
        need(is_pushable(u.ty), "type " + to_string(u.ty) + " has no literals", u);
        t.push_value = literal_to_value(u.lit, u.ty, u.pos);
        st.insert(st.begin(), u.ty);
        cur = std::move(st);
        break;
      }
      case Op::Drop:
        need_depth(st, u.n, u);
        st.erase(st.begin(), st.begin() + u.n);
        cur = std::move(st);
        break;
      case Op::Dup:
        need_depth(st, 1, u);
        st.insert(st.begin(), st.front());
        cur = std::move(st);
        break;
      case Op::Swap:
        need_depth(st, 2, u);
        std::swap(st[0], st[1]);
        cur = std::move(st);
        break;
      case Op::Dig: {
        need_depth(st, static_cast<std::size_t>(u.n) + 1, u);
        Ty lifted = std::move(st[u.n]);
        st.erase(st.begin() + u.n);
        st.insert(st.begin(), std::move(lifted));
        cur = std::move(st);
        break;
      }
      case Op::Dug: {
        need_depth(st, static_cast<std::size_t>(u.n) + 1, u);
        Ty buried = std::move(st[0]);
        st.erase(st.begin());
        st.insert(st.begin() + u.n, std::move(buried));
        cur = std::move(st);
        break;
      }
      case Op::Dip: {
        need_depth(st, u.n, u);
        StackTy below(st.begin() + u.n, st.end());
        TypedSeq body = seq(u.body_a, std::move(below));
        if (body.fails) {
          cur = std::nullopt;
          t.produces_bottom = true;
        } else {
          StackTy res(st.begin(), st.begin() + u.n);
          res.insert(res.end(), body.out.begin(), body.out.end());
          cur = std::move(res);
        }
        t.bodies.push_back(std::move(body));
        break;
      }
      case Op::If: {
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Bool, "expects bool on top, got " + to_string(st[0]), u);
        StackTy rest(st.begin() + 1, st.end());
        TypedSeq bt = seq(u.body_a, rest);
        TypedSeq bf = seq(u.body_b, rest);
        auto joined = unify_branches(bt, bf, u);
        t.bodies.push_back(std::move(bt));
        t.bodies.push_back(std::move(bf));
        t.produces_bottom = !joined.has_value();
        cur = std::move(joined);
        break;
      }
      case Op::IfNone: {
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Option, "expects option on top, got " + to_string(st[0]), u);
        Ty elem = st[0].args[0];
        StackTy rest(st.begin() + 1, st.end());
        TypedSeq bn = seq(u.body_a, rest);
        StackTy some_in = rest;
        some_in.insert(some_in.begin(), std::move(elem));
        TypedSeq bs = seq(u.body_b, std::move(some_in));
        auto joined = unify_branches(bn, bs, u);
        t.bodies.push_back(std::move(bn));
        t.bodies.push_back(std::move(bs));
        t.produces_bottom = !joined.has_value();
        cur = std::move(joined);
        break;
      }
      case Op::IfLeft: {
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Or, "expects or on top, got " + to_string(st[0]), u);
        Ty lt = st[0].args[0];
        Ty rt = st[0].args[1];
        StackTy rest(st.begin() + 1, st.end());
        StackTy lin = rest;
        lin.insert(lin.begin(), std::move(lt));
        StackTy rin = rest;
        rin.insert(rin.begin(), std::move(rt));
        TypedSeq bl = seq(u.body_a, std::move(lin));
        TypedSeq br = seq(u.body_b, std::move(rin));
        auto joined = unify_branches(bl, br, u);
        t.bodies.push_back(std::move(bl));
        t.bodies.push_back(std::move(br));
        t.produces_bottom = !joined.has_value();
        cur = std::move(joined);
        break;
      }
      case Op::Loop: {
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Bool, "expects bool on top, got " + to_string(st[0]), u);
        StackTy rest(st.begin() + 1, st.end());
        TypedSeq body = seq(u.body_a, rest);
        if (!body.fails && body.out != st)
          err("LOOP body must produce " + to_string(st) + ", got " + to_string(body.out), u.pos);
        t.bodies.push_back(std::move(body));
        cur = std::move(rest);
        break;
      }
      case Op::FailWith:
        need_depth(st, 1, u);
        t.produces_bottom = true;
        cur = std::nullopt;
        break;
      case Op::Unit:
        st.insert(st.begin(), Ty::unit());
        cur = std::move(st);
        break;
      case Op::Pair: {
        need_depth(st, 2, u);
        Ty p = Ty::pair(std::move(st[0]), std::move(st[1]));
        st.erase(st.begin());
        st[0] = std::move(p);
        cur = std::move(st);
        break;
      }
      case Op::Car:
      case Op::Cdr: {
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Pair, "expects a pair, got " + to_string(st[0]), u);
        Ty component = std::move(st[0].args[u.op == Op::Car ? 0 : 1]);
        st[0] = std::move(component);
        cur = std::move(st);
        break;
      }
      case Op::Some:
        need_depth(st, 1, u);
        st[0] = Ty::option(std::move(st[0]));
        cur = std::move(st);
        break;
      case Op::None:
        st.insert(st.begin(), Ty::option(u.ty));
        cur = std::move(st);
        break;
      case Op::Left:
        need_depth(st, 1, u);
        st[0] = Ty::sum(std::move(st[0]), u.ty);
        cur = std::move(st);
        break;
      case Op::Right:
        need_depth(st, 1, u);
        st[0] = Ty::sum(u.ty, std::move(st[0]));
        cur = std::move(st);
        break;
      case Op::Nil:
        st.insert(st.begin(), Ty::list(u.ty));
        cur = std::move(st);
        break;
      case Op::Cons:
        need_depth(st, 2, u);
        need(st[1].tag == TyTag::List, "expects a list in second position", u);
        need(st[0] == st[1].args[0],
             "element type " + to_string(st[0]) + " does not match " + to_string(st[1]), u);
        st.erase(st.begin());
        cur = std::move(st);
        break;
      case Op::EmptyMap:
        need(is_comparable(u.ty), "map key type must be comparable", u);
        st.insert(st.begin(), Ty::map(u.ty, u.ty2));
        cur = std::move(st);
        break;
      case Op::Get: {
        need_depth(st, 2, u);
        need(st[1].tag == TyTag::Map, "expects a map in second position", u);
        need(st[0] == st[1].args[0], "key type " + to_string(st[0]) + " does not match map", u);
        Ty res = Ty::option(st[1].args[1]);
        st.erase(st.begin());
        st[0] = std::move(res);
        cur = std::move(st);
        break;
      }
      case Op::Update: {
        need_depth(st, 3, u);
        need(st[2].tag == TyTag::Map, "expects a map in third position", u);
        need(st[0] == st[2].args[0], "key type " + to_string(st[0]) + " does not match map", u);
        need(st[1] == Ty::option(st[2].args[1]),
             "expects option " + to_string(st[2].args[1]) + " in second position", u);
        st.erase(st.begin(), st.begin() + 2);
        cur = std::move(st);
        break;
      }
      case Op::Mem:
        need_depth(st, 2, u);
        need(st[1].tag == TyTag::Map, "expects a map in second position", u);
        need(st[0] == st[1].args[0], "key type " + to_string(st[0]) + " does not match map", u);
        st.erase(st.begin());
        st[0] = Ty::boolean();
        cur = std::move(st);
        break;
      case Op::Add:
      case Op::Sub: {
        need_depth(st, 2, u);
        TyTag a = st[0].tag, b = st[1].tag;
        bool add = u.op == Op::Add;
        auto numeric = [](TyTag x) { return x == TyTag::Nat || x == TyTag::Int; };
        if (a == TyTag::Mutez && b == TyTag::Mutez) {
          t.ov = add ? Overload::AddMutez : Overload::SubMutez;
          st.erase(st.begin());
          cur = std::move(st);
        } else if (numeric(a) && numeric(b)) {
          Ty res;
          if (add) {
            bool both_nat = a == TyTag::Nat && b == TyTag::Nat;
            t.ov = both_nat ? Overload::AddNatNat : Overload::AddInt;
            res = both_nat ? Ty::nat() : Ty::integer();
          } else {
            t.ov = Overload::SubInt;
            res = Ty::integer();
          }
          st.erase(st.begin());
          st[0] = std::move(res);
          cur = std::move(st);
        } else {
          err(std::string(op_name(u.op)) + ": no overload for " + to_string(st[0]) + " and " +
                  to_string(st[1]),
              u.pos);
        }
        break;
      }
      case Op::Compare:
        need_depth(st, 2, u);
        need(st[0] == st[1],
             "operands must share a type, got " + to_string(st[0]) + " and " + to_string(st[1]),
             u);
        need(is_comparable(st[0]), "type " + to_string(st[0]) + " is not comparable", u);
        st.erase(st.begin());
        st[0] = Ty::integer();
        cur = std::move(st);
        break;
      case Op::Eq:
      case Op::Neq:
      case Op::Gt:
      case Op::Ge:
      case Op::Lt:
      case Op::Le:
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Int, "expects int on top, got " + to_string(st[0]), u);
        st[0] = Ty::boolean();
        cur = std::move(st);
        break;
      case Op::Not:
        need_depth(st, 1, u);
        need(st[0].tag == TyTag::Bool, "expects bool on top, got " + to_string(st[0]), u);
        cur = std::move(st);
        break;
      case Op::Amount:
        st.insert(st.begin(), Ty::mutez());
        cur = std::move(st);
        break;
      case Op::MacroFail:
      case Op::MacroAssertSome:
        err("macro form reached the typechecker; run expand_macros first", u.pos);
    }
    if (cur) t.out = *cur;
    return t;
  }
};

}  // namespace detail

inline TypedSeq typecheck_seq(const USeq& u, StackTy input) {
  detail::Checker c;
  return c.seq(u, std::move(input));
}

inline StackTy contract_input_ty(const ContractSrc& c) {
  return {Ty::pair(c.parameter_ty, c.storage_ty)};
}

inline StackTy contract_output_ty(const ContractSrc& c) {
  return {Ty::pair(Ty::list(Ty::operation()), c.storage_ty)};
}

// Enforces the calling convention: code transforms
// [pair parameter storage] into [pair (list operation) storage].
inline TypedContract typecheck_contract(const ContractSrc& c) {
  if (!is_pushable(c.storage_ty))
    throw TypeError("storage type cannot contain operation");
  if (!is_pushable(c.parameter_ty))
    throw TypeError("parameter type cannot contain operation");
  TypedContract out;
  out.parameter_ty = c.parameter_ty;
  out.storage_ty = c.storage_ty;
  out.code = typecheck_seq(c.code, contract_input_ty(c));
  StackTy want = contract_output_ty(c);
  if (!out.code.fails && out.code.out != want)
    throw TypeError("contract code must end with stack " + to_string(want) + ", got " +
                    to_string(out.code.out));
  return out;
}

}  // namespace michel

#endif  // MICHEL_TYPECHECK_HPP
