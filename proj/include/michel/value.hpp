#ifndef MICHEL_VALUE_HPP
#define MICHEL_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "michel/types.hpp"

namespace michel {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::int64_t kMutezMax = 9223372036854775807LL;  // 2^63 - 1

// Runtime value. Children live in `kids`:
//   Pair        -> {first, second}
//   Left/Right  -> {inner}
//   Some        -> {inner}
//   List        -> elements in order
//   Map         -> flattened {k0, v0, k1, v1, ...}, keys ascending
enum class ValueTag : std::uint8_t {
  Unit,
  Bool,
  Nat,
  Int,
  Mutez,
  Str,
  Operation,
  Pair,
  Left,
  Right,
  Some,
  None,
  List,
  Map,
};

struct Value {
  ValueTag tag = ValueTag::Unit;
  bool b = false;
  std::int64_t tez = 0;
  BigInt num;
  std::string s;
  std::vector<Value> kids;

  Value() = default;

  static Value unit() { return Value{}; }
  static Value boolean(bool v) {
    Value x;
    x.tag = ValueTag::Bool;
    x.b = v;
    return x;
  }
  static Value nat(BigInt n) {
    if (n < 0) throw std::invalid_argument("nat payload must be non-negative");
    Value x;
    x.tag = ValueTag::Nat;
    x.num = std::move(n);
    return x;
  }
  static Value integer(BigInt z) {
    Value x;
    x.tag = ValueTag::Int;
    x.num = std::move(z);
    return x;
  }
  static Value mutez(std::int64_t m) {
    if (m < 0) throw std::invalid_argument("mutez amount out of range");
    Value x;
    x.tag = ValueTag::Mutez;
    x.tez = m;
    return x;
  }
  static Value str(std::string v) {
    Value x;
    x.tag = ValueTag::Str;
    x.s = std::move(v);
    return x;
  }
  static Value operation() {
    Value x;
    x.tag = ValueTag::Operation;
    return x;
  }
  static Value pair(Value a, Value b) {
    Value x;
    x.tag = ValueTag::Pair;
    x.kids = {std::move(a), std::move(b)};
    return x;
  }
  static Value left(Value v) {
    Value x;
    x.tag = ValueTag::Left;
    x.kids = {std::move(v)};
    return x;
  }
  static Value right(Value v) {
    Value x;
    x.tag = ValueTag::Right;
    x.kids = {std::move(v)};
    return x;
  }
  static Value some(Value v) {
    Value x;
    x.tag = ValueTag::Some;
    x.kids = {std::move(v)};
    return x;
  }
  static Value none() {
    Value x;
    x.tag = ValueTag::None;
    return x;
  }
  static Value list(std::vector<Value> elems) {
    Value x;
    x.tag = ValueTag::List;
    x.kids = std::move(elems);
    return x;
  }
  static Value empty_map() {
    Value x;
    x.tag = ValueTag::Map;
    return x;
  }

  const Value& first() const { return kids[0]; }
  const Value& second() const { return kids[1]; }
  const Value& inner() const { return kids[0]; }
  std::size_t map_size() const { return kids.size() / 2; }
  const Value& map_key(std::size_t i) const { return kids[2 * i]; }
  const Value& map_val(std::size_t i) const { return kids[2 * i + 1]; }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
      case ValueTag::Unit:
      case ValueTag::Operation:
      case ValueTag::None:
        return true;
      case ValueTag::Bool:
        return a.b == b.b;
      case ValueTag::Nat:
      case ValueTag::Int:
        return a.num == b.num;
      case ValueTag::Mutez:
        return a.tez == b.tez;
      case ValueTag::Str:
        return a.s == b.s;
      default:
        return a.kids == b.kids;
    }
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
};

// Runtime stack, index 0 = top.
using Stack = std::vector<Value>;

// Execution environment: AMOUNT is the only environment opcode in scope.
struct Env {
  std::int64_t amount = 0;
};

// Total order on comparable values. Mismatched or non-comparable operands
// indicate a bug upstream (unreachable from well-typed programs).
inline int compare_value(const Value& a, const Value& b) {
  if (a.tag != b.tag) throw std::logic_error("compare_value: mismatched value tags");
  switch (a.tag) {
    case ValueTag::Bool:
      return (a.b == b.b) ? 0 : (a.b ? 1 : -1);  // false < true
    case ValueTag::Nat:
    case ValueTag::Int:
      return (a.num == b.num) ? 0 : (a.num < b.num ? -1 : 1);
    case ValueTag::Mutez:
      return (a.tez == b.tez) ? 0 : (a.tez < b.tez ? -1 : 1);
    case ValueTag::Str: {
      int c = a.s.compare(b.s);
      return c == 0 ? 0 : (c < 0 ? -1 : 1);
    }
    default:
      throw std::logic_error("compare_value: values are not comparable");
  }
}

// Structural typing check, recursing through containers.
inline bool value_has_type(const Value& v, const Ty& t) {
  switch (t.tag) {
    case TyTag::Unit: return v.tag == ValueTag::Unit;
    case TyTag::Bool: return v.tag == ValueTag::Bool;
    case TyTag::Nat: return v.tag == ValueTag::Nat && v.num >= 0;
    case TyTag::Int: return v.tag == ValueTag::Int;
    case TyTag::Mutez: return v.tag == ValueTag::Mutez && v.tez >= 0;
    case TyTag::String: return v.tag == ValueTag::Str;
    case TyTag::Operation: return v.tag == ValueTag::Operation;
    case TyTag::Pair:
      return v.tag == ValueTag::Pair && value_has_type(v.kids[0], t.args[0]) &&
             value_has_type(v.kids[1], t.args[1]);
    case TyTag::Or:
      if (v.tag == ValueTag::Left) return value_has_type(v.kids[0], t.args[0]);
      if (v.tag == ValueTag::Right) return value_has_type(v.kids[0], t.args[1]);
      return false;
    case TyTag::Option:
      if (v.tag == ValueTag::None) return true;
      return v.tag == ValueTag::Some && value_has_type(v.kids[0], t.args[0]);
    case TyTag::List:
      if (v.tag != ValueTag::List) return false;
      for (const Value& e : v.kids)
        if (!value_has_type(e, t.args[0])) return false;
      return true;
    case TyTag::Map: {
      if (v.tag != ValueTag::Map || !is_comparable(t.args[0])) return false;
      for (std::size_t i = 0; i < v.map_size(); ++i) {
        if (!value_has_type(v.map_key(i), t.args[0])) return false;
        if (!value_has_type(v.map_val(i), t.args[1])) return false;
        if (i > 0 && compare_value(v.map_key(i - 1), v.map_key(i)) >= 0) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool stack_has_type(const Stack& st, const StackTy& ty) {
  if (st.size() != ty.size()) return false;
  for (std::size_t i = 0; i < st.size(); ++i)
    if (!value_has_type(st[i], ty[i])) return false;
  return true;
}

// Map primitives keep entries in ascending key order.
inline const Value* map_find(const Value& m, const Value& key) {
  std::size_t lo = 0, hi = m.map_size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = compare_value(m.map_key(mid), key);
    if (c == 0) return &m.kids[2 * mid + 1];
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return nullptr;
}

inline bool map_mem(const Value& m, const Value& key) { return map_find(m, key) != nullptr; }

// Insert/replace when `val` is present, delete when absent.
inline Value map_update(Value m, const Value& key, const Value* val) {
  std::size_t lo = 0, hi = m.map_size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (compare_value(m.map_key(mid), key) < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  auto at = m.kids.begin() + static_cast<std::ptrdiff_t>(2 * lo);
  bool present = lo < m.map_size() && compare_value(m.map_key(lo), key) == 0;
  if (present) {
    if (val)
      m.kids[2 * lo + 1] = *val;
    else
      m.kids.erase(at, at + 2);
  } else if (val) {
    m.kids.insert(at, {key, *val});
  }
  return m;
}

inline Value make_map(std::vector<std::pair<Value, Value>> entries) {
  Value m = Value::empty_map();
  for (auto& [k, v] : entries) m = map_update(std::move(m), k, &v);
  return m;
}

// Result of evaluating an instruction sequence.
struct ExecResult {
  enum class Kind : std::uint8_t { Success, Failed, OutOfFuel };
  Kind kind = Kind::Success;
  Stack stack;    // Success
  Value payload;  // Failed: the FAILWITH argument

  static ExecResult success(Stack st) {
    ExecResult r;
    r.kind = Kind::Success;
    r.stack = std::move(st);
    return r;
  }
  static ExecResult failed(Value v) {
    ExecResult r;
    r.kind = Kind::Failed;
    r.payload = std::move(v);
    return r;
  }
  static ExecResult out_of_fuel() {
    ExecResult r;
    r.kind = Kind::OutOfFuel;
    return r;
  }

  bool is_success() const { return kind == Kind::Success; }
  bool is_failed() const { return kind == Kind::Failed; }
  bool is_out_of_fuel() const { return kind == Kind::OutOfFuel; }

  friend bool operator==(const ExecResult& a, const ExecResult& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::Success: return a.stack == b.stack;
      case Kind::Failed: return a.payload == b.payload;
      case Kind::OutOfFuel: return true;
    }
    return false;
  }
};

}  // namespace michel

#endif  // MICHEL_VALUE_HPP
