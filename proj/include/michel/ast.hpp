#ifndef MICHEL_AST_HPP
#define MICHEL_AST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel {

struct Pos {
  int line = 0;
  int col = 0;
};

// Concrete-syntax literal, as written. Conversion against a Ty happens in
// literal_to_value. EltSeq entries are flattened {k0, v0, k1, v1, ...};
// empty braces always parse as an empty SeqLit.
struct Literal {
  enum class Tag : std::uint8_t {
    Int,
    Str,
    Unit,
    True,
    False,
    Pair,
    Some,
    None,
    Left,
    Right,
    SeqLit,
    EltSeq,
  };
  Tag tag = Tag::Unit;
  BigInt num;
  std::string s;
  std::vector<Literal> kids;

  Literal() = default;
  explicit Literal(Tag t) : tag(t) {}

  static Literal intlit(BigInt n) {
    Literal l(Tag::Int);
    l.num = std::move(n);
    return l;
  }
  static Literal strlit(std::string v) {
    Literal l(Tag::Str);
    l.s = std::move(v);
    return l;
  }
  static Literal app(Tag t, std::vector<Literal> kids) {
    Literal l(t);
    l.kids = std::move(kids);
    return l;
  }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.tag == b.tag && a.num == b.num && a.s == b.s && a.kids == b.kids;
  }
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
};

enum class Op : std::uint8_t {
  Seq,    // bare { ... } block
  Push,
  Drop,
  Dup,
  Swap,
  Dig,
  Dug,
  Dip,
  If,
  IfNone,
  IfLeft,
  Loop,
  FailWith,
  Unit,
  Pair,
  Car,
  Cdr,
  Some,
  None,
  Left,
  Right,
  Nil,
  Cons,
  EmptyMap,
  Get,
  Update,
  Mem,
  Add,
  Sub,
  Compare,
  Eq,
  Neq,
  Gt,
  Ge,
  Lt,
  Le,
  Not,
  Amount,
  // Macro forms, eliminated by expand_macros.
  MacroFail,
  MacroAssertSome,
};

// Untyped instruction. `n` carries Drop/Dig/Dug/Dip counts; `ty`/`ty2` the
// type arguments of Push/None/Left/Right/Nil/EmptyMap; `lit` the Push
// literal; `body_a`/`body_b` nested sequences (Seq/Dip/Loop use body_a,
// If/IfNone/IfLeft use both). Source position is ignored by equality.
struct UInstr {
  Op op = Op::Unit;
  std::uint32_t n = 0;
  Ty ty;
  Ty ty2;
  Literal lit;
  std::vector<UInstr> body_a;
  std::vector<UInstr> body_b;
  Pos pos;

  UInstr() = default;
  explicit UInstr(Op o) : op(o) {}

  static UInstr simple(Op o) { return UInstr(o); }
  static UInstr counted(Op o, std::uint32_t n) {
    UInstr i(o);
    i.n = n;
    return i;
  }
  static UInstr push(Ty t, Literal l) {
    UInstr i(Op::Push);
    i.ty = std::move(t);
    i.lit = std::move(l);
    return i;
  }
  static UInstr typed(Op o, Ty t) {
    UInstr i(o);
    i.ty = std::move(t);
    return i;
  }
  static UInstr empty_map(Ty k, Ty v) {
    UInstr i(Op::EmptyMap);
    i.ty = std::move(k);
    i.ty2 = std::move(v);
    return i;
  }
  static UInstr seq(std::vector<UInstr> body) {
    UInstr i(Op::Seq);
    i.body_a = std::move(body);
    return i;
  }
  static UInstr dip(std::uint32_t n, std::vector<UInstr> body) {
    UInstr i(Op::Dip);
    i.n = n;
    i.body_a = std::move(body);
    return i;
  }
  static UInstr branch(Op o, std::vector<UInstr> bt, std::vector<UInstr> bf) {
    UInstr i(o);
    i.body_a = std::move(bt);
    i.body_b = std::move(bf);
    return i;
  }
  static UInstr loop(std::vector<UInstr> body) {
    UInstr i(Op::Loop);
    i.body_a = std::move(body);
    return i;
  }

  friend bool operator==(const UInstr& a, const UInstr& b) {
    return a.op == b.op && a.n == b.n && a.ty == b.ty && a.ty2 == b.ty2 && a.lit == b.lit &&
           a.body_a == b.body_a && a.body_b == b.body_b;
  }
  friend bool operator!=(const UInstr& a, const UInstr& b) { return !(a == b); }
};

using USeq = std::vector<UInstr>;

struct ContractSrc {
  Ty storage_ty;
  Ty parameter_ty;
  USeq code;

  friend bool operator==(const ContractSrc& a, const ContractSrc& b) {
    return a.storage_ty == b.storage_ty && a.parameter_ty == b.parameter_ty && a.code == b.code;
  }
  friend bool operator!=(const ContractSrc& a, const ContractSrc& b) { return !(a == b); }
};

// Instruction-node count; Seq wrappers are transparent (they cost no fuel).
inline std::size_t count_nodes(const USeq& s) {
  std::size_t n = 0;
  for (const UInstr& i : s) {
    if (i.op == Op::Seq) {
      n += count_nodes(i.body_a);
    } else {
      n += 1 + count_nodes(i.body_a) + count_nodes(i.body_b);
    }
  }
  return n;
}

// Literal form of a value; Operation values have none.
inline Literal value_to_literal(const Value& v) {
  switch (v.tag) {
    case ValueTag::Unit: return Literal(Literal::Tag::Unit);
    case ValueTag::Bool: return Literal(v.b ? Literal::Tag::True : Literal::Tag::False);
    case ValueTag::Nat:
    case ValueTag::Int: return Literal::intlit(v.num);
    case ValueTag::Mutez: return Literal::intlit(v.tez);
    case ValueTag::Str: return Literal::strlit(v.s);
    case ValueTag::Operation: throw std::logic_error("operation values have no literal form");
    case ValueTag::Pair:
      return Literal::app(Literal::Tag::Pair,
                          {value_to_literal(v.kids[0]), value_to_literal(v.kids[1])});
    case ValueTag::Left: return Literal::app(Literal::Tag::Left, {value_to_literal(v.kids[0])});
    case ValueTag::Right: return Literal::app(Literal::Tag::Right, {value_to_literal(v.kids[0])});
    case ValueTag::Some: return Literal::app(Literal::Tag::Some, {value_to_literal(v.kids[0])});
    case ValueTag::None: return Literal(Literal::Tag::None);
    case ValueTag::List: {
      std::vector<Literal> kids;
      kids.reserve(v.kids.size());
      for (const Value& e : v.kids) kids.push_back(value_to_literal(e));
      return Literal::app(Literal::Tag::SeqLit, std::move(kids));
    }
    case ValueTag::Map: {
      if (v.kids.empty()) return Literal::app(Literal::Tag::SeqLit, {});
      std::vector<Literal> kids;
      kids.reserve(v.kids.size());
      for (const Value& e : v.kids) kids.push_back(value_to_literal(e));
      return Literal::app(Literal::Tag::EltSeq, std::move(kids));
    }
  }
  throw std::logic_error("value_to_literal: bad tag");
}

inline const char* op_name(Op op) {
  switch (op) {
    case Op::Seq: return "{}";
    case Op::Push: return "PUSH";
    case Op::Drop: return "DROP";
    case Op::Dup: return "DUP";
    case Op::Swap: return "SWAP";
    case Op::Dig: return "DIG";
    case Op::Dug: return "DUG";
    case Op::Dip: return "DIP";
    case Op::If: return "IF";
    case Op::IfNone: return "IF_NONE";
    case Op::IfLeft: return "IF_LEFT";
    case Op::Loop: return "LOOP";
    case Op::FailWith: return "FAILWITH";
    case Op::Unit: return "UNIT";
    case Op::Pair: return "PAIR";
    case Op::Car: return "CAR";
    case Op::Cdr: return "CDR";
    case Op::Some: return "SOME";
    case Op::None: return "NONE";
    case Op::Left: return "LEFT";
    case Op::Right: return "RIGHT";
    case Op::Nil: return "NIL";
    case Op::Cons: return "CONS";
    case Op::EmptyMap: return "EMPTY_MAP";
    case Op::Get: return "GET";
    case Op::Update: return "UPDATE";
    case Op::Mem: return "MEM";
    case Op::Add: return "ADD";
    case Op::Sub: return "SUB";
    case Op::Compare: return "COMPARE";
    case Op::Eq: return "EQ";
    case Op::Neq: return "NEQ";
    case Op::Gt: return "GT";
    case Op::Ge: return "GE";
    case Op::Lt: return "LT";
    case Op::Le: return "LE";
    case Op::Not: return "NOT";
    case Op::Amount: return "AMOUNT";
    case Op::MacroFail: return "FAIL";
    case Op::MacroAssertSome: return "ASSERT_SOME";
  }
  return "?";
}

}  // namespace michel

#endif  // MICHEL_AST_HPP
