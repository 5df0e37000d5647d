#ifndef MICHEL_TYPES_HPP
#define MICHEL_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace michel {

// Michelson type grammar. Container types hold their argument types in
// `args` (pair/or/map: two, option/list: one).
enum class TyTag : std::uint8_t {
  Unit,
  Bool,
  Nat,
  Int,
  Mutez,
  String,
  Operation,
  Pair,
  Or,
  Option,
  List,
  Map,
};

struct Ty {
  TyTag tag = TyTag::Unit;
  std::vector<Ty> args;

  Ty() = default;
  explicit Ty(TyTag t) : tag(t) {}
  Ty(TyTag t, std::vector<Ty> a) : tag(t), args(std::move(a)) {}

  static Ty unit() { return Ty(TyTag::Unit); }
  static Ty boolean() { return Ty(TyTag::Bool); }
  static Ty nat() { return Ty(TyTag::Nat); }
  static Ty integer() { return Ty(TyTag::Int); }
  static Ty mutez() { return Ty(TyTag::Mutez); }
  static Ty string() { return Ty(TyTag::String); }
  static Ty operation() { return Ty(TyTag::Operation); }
  static Ty pair(Ty a, Ty b) { return Ty(TyTag::Pair, {std::move(a), std::move(b)}); }
  static Ty sum(Ty l, Ty r) { return Ty(TyTag::Or, {std::move(l), std::move(r)}); }
  static Ty option(Ty t) { return Ty(TyTag::Option, {std::move(t)}); }
  static Ty list(Ty t) { return Ty(TyTag::List, {std::move(t)}); }
  static Ty map(Ty k, Ty v) { return Ty(TyTag::Map, {std::move(k), std::move(v)}); }

  friend bool operator==(const Ty& a, const Ty& b) {
    return a.tag == b.tag && a.args == b.args;
  }
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }
};

// Map keys and COMPARE operands must be comparable.
inline bool is_comparable(const Ty& t) {
  switch (t.tag) {
    case TyTag::Nat:
    case TyTag::Int:
    case TyTag::Mutez:
    case TyTag::String:
    case TyTag::Bool:
      return true;
    default:
      return false;
  }
}

// Values of types containing `operation` cannot be written as literals.
inline bool is_pushable(const Ty& t) {
  if (t.tag == TyTag::Operation) return false;
  for (const Ty& a : t.args)
    if (!is_pushable(a)) return false;
  return true;
}

// Stack type, head = stack top.
using StackTy = std::vector<Ty>;

inline std::string to_string(const Ty& t);

inline std::string ty_child_string(const Ty& t) {
  std::string s = to_string(t);
  if (!t.args.empty()) return "(" + s + ")";
  return s;
}

inline std::string to_string(const Ty& t) {
  switch (t.tag) {
    case TyTag::Unit: return "unit";
    case TyTag::Bool: return "bool";
    case TyTag::Nat: return "nat";
    case TyTag::Int: return "int";
    case TyTag::Mutez: return "mutez";
    case TyTag::String: return "string";
    case TyTag::Operation: return "operation";
    case TyTag::Pair: return "pair " + ty_child_string(t.args[0]) + " " + ty_child_string(t.args[1]);
    case TyTag::Or: return "or " + ty_child_string(t.args[0]) + " " + ty_child_string(t.args[1]);
    case TyTag::Option: return "option " + ty_child_string(t.args[0]);
    case TyTag::List: return "list " + ty_child_string(t.args[0]);
    case TyTag::Map: return "map " + ty_child_string(t.args[0]) + " " + ty_child_string(t.args[1]);
  }
  return "?";
}

inline std::string to_string(const StackTy& s) {
  std::string out;
  for (const Ty& t : s) {
    if (!out.empty()) out += " : ";
    out += ty_child_string(t);
  }
  out += out.empty() ? "[]" : " : []";
  return out;
}

}  // namespace michel

#endif  // MICHEL_TYPES_HPP
