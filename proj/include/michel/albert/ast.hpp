#ifndef MICHEL_ALBERT_AST_HPP
#define MICHEL_ALBERT_AST_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "michel/ast.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel::albert {

// Albert types: Michelson base types, records over named fields and
// non-recursive variants. Records and variants are kept canonically sorted
// by label; record patterns and literals match by label, so field order in
// the source is immaterial. bool is the builtin variant
// {False: unit, True: unit}.
struct ATy {
  enum class Kind : std::uint8_t { Base, Record, Variant, Bool };
  Kind kind = Kind::Base;
  Ty base;
  std::vector<std::pair<std::string, ATy>> fields;

  ATy() = default;

  static ATy base_ty(Ty t) {
    ATy a;
    a.kind = Kind::Base;
    a.base = std::move(t);
    return a;
  }
  static ATy boolean() {
    ATy a;
    a.kind = Kind::Bool;
    return a;
  }
  static ATy record(std::vector<std::pair<std::string, ATy>> fields) {
    ATy a;
    a.kind = Kind::Record;
    a.fields = canonical(std::move(fields));
    return a;
  }
  static ATy variant(std::vector<std::pair<std::string, ATy>> ctors) {
    ATy a;
    a.kind = Kind::Variant;
    a.fields = canonical(std::move(ctors));
    return a;
  }

  static std::vector<std::pair<std::string, ATy>> canonical(
      std::vector<std::pair<std::string, ATy>> fields) {
    std::sort(fields.begin(), fields.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i - 1].first == fields[i].first)
        throw std::invalid_argument("duplicate label '" + fields[i].first + "'");
    }
    return fields;
  }

  const ATy* field(const std::string& label) const {
    for (const auto& [l, t] : fields)
      if (l == label) return &t;
    return nullptr;
  }

  std::size_t field_index(const std::string& label) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (fields[i].first == label) return i;
    return fields.size();
  }

  friend bool operator==(const ATy& a, const ATy& b) {
    return a.kind == b.kind && a.base == b.base && a.fields == b.fields;
  }
  friend bool operator!=(const ATy& a, const ATy& b) { return !(a == b); }
};

inline std::string to_string(const ATy& t) {
  switch (t.kind) {
    case ATy::Kind::Base: return michel::to_string(t.base);
    case ATy::Kind::Bool: return "bool";
    case ATy::Kind::Record: {
      std::string out = "{ ";
      for (std::size_t i = 0; i < t.fields.size(); ++i) {
        if (i) out += "; ";
        out += t.fields[i].first + " : " + to_string(t.fields[i].second);
      }
      return out + " }";
    }
    case ATy::Kind::Variant: {
      std::string out = "[ ";
      for (std::size_t i = 0; i < t.fields.size(); ++i) {
        if (i) out += " | ";
        out += t.fields[i].first + " : " + to_string(t.fields[i].second);
      }
      return out + " ]";
    }
  }
  return "?";
}

// Albert runtime values. Base leaves are Michelson values; records hold
// sorted fields; variants a constructor name and payload. Booleans are
// variant values (True/False with a unit payload).
struct AValue {
  enum class Kind : std::uint8_t { Base, Record, Variant };
  Kind kind = Kind::Base;
  Value base;
  std::vector<std::pair<std::string, AValue>> fields;
  std::string ctor;
  std::vector<AValue> payload;  // singleton for variants

  AValue() = default;

  static AValue base_v(Value v) {
    AValue a;
    a.base = std::move(v);
    return a;
  }
  static AValue record(std::vector<std::pair<std::string, AValue>> fields) {
    std::sort(fields.begin(), fields.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    AValue a;
    a.kind = Kind::Record;
    a.fields = std::move(fields);
    return a;
  }
  static AValue variant(std::string ctor, AValue v) {
    AValue a;
    a.kind = Kind::Variant;
    a.ctor = std::move(ctor);
    a.payload.push_back(std::move(v));
    return a;
  }
  static AValue boolean(bool b) {
    return variant(b ? "True" : "False", base_v(Value::unit()));
  }

  const AValue* field(const std::string& label) const {
    for (const auto& [l, v] : fields)
      if (l == label) return &v;
    return nullptr;
  }

  friend bool operator==(const AValue& a, const AValue& b) {
    return a.kind == b.kind && a.base == b.base && a.fields == b.fields && a.ctor == b.ctor &&
           a.payload == b.payload;
  }
  friend bool operator!=(const AValue& a, const AValue& b) { return !(a == b); }
};

inline std::string to_string(const AValue& v) {
  switch (v.kind) {
    case AValue::Kind::Base: {
      // forward-declared printer would be circular; literals are enough here
      switch (v.base.tag) {
        case ValueTag::Nat:
        case ValueTag::Int: return v.base.num.str();
        case ValueTag::Mutez: return std::to_string(v.base.tez);
        case ValueTag::Str: return "\"" + v.base.s + "\"";
        case ValueTag::Bool: return v.base.b ? "true" : "false";
        case ValueTag::Unit: return "Unit";
        default: return "<michelson>";
      }
    }
    case AValue::Kind::Record: {
      std::string out = "{ ";
      for (std::size_t i = 0; i < v.fields.size(); ++i) {
        if (i) out += "; ";
        out += v.fields[i].first + " = " + to_string(v.fields[i].second);
      }
      return out + " }";
    }
    case AValue::Kind::Variant:
      return v.ctor + " " + to_string(v.payload[0]);
  }
  return "?";
}

// Right-hand sides of assignments plus the few builtin calls.
struct AExpr {
  enum class Kind : std::uint8_t {
    Var,        // name
    IntConst,   // num (>= 0: nat, < 0: int)
    StrConst,   // str
    BoolConst,  // flag
    EmptyList,  // ([] : list elem)
    RecordLit,  // rec_fields
    Proj,       // args[0].label
    MapGet,     // args[0][args[1]]
    Dup,        // dup args[0]
    Add,        // args[0] + args[1]
    Ge,         // args[0] >= args[1]
    SomeApp,    // Some args[0]
    CtorApp,    // (name args[0] : annot)
    Call,       // name args[0]
    Amount,     // amount
    UpdateCall, // update args[0] args[1] args[2]
    AssertSome, // assert_some { opt = args[0] }
  };
  Kind kind = Kind::Var;
  std::string name;
  std::string label;
  std::string annot;
  BigInt num;
  std::string str;
  bool flag = false;
  Ty list_elem;
  std::vector<std::pair<std::string, AExpr>> rec_fields;
  std::vector<std::string> args;
  Pos pos;
};

struct AStmt {
  enum class Kind : std::uint8_t { Assign, BareCall, Match, FailWith, Drop };
  enum class Lhs : std::uint8_t { Var, Tuple, Record };

  struct Arm {
    std::string ctor;
    std::string payload;
    std::vector<AStmt> body;
  };

  Kind kind = Kind::Assign;
  Lhs lhs = Lhs::Var;
  std::vector<std::string> lhs_vars;                        // Var: 1, Tuple: 2
  std::vector<std::pair<std::string, std::string>> lhs_rec; // label -> variable
  AExpr rhs;                                                // Assign / FailWith payload
  std::string callee;                                       // BareCall
  std::string arg;                                          // BareCall
  std::string match_var;                                    // Match
  std::vector<Arm> arms;                                    // Match
  std::string drop_var;                                     // Drop
  Pos pos;
};

struct AFun {
  std::string name;
  ATy consumed;  // record
  ATy produced;  // record
  std::vector<AStmt> body;
  Pos pos;
};

struct AlbertContract {
  std::vector<std::pair<std::string, ATy>> aliases;
  std::vector<AFun> funs;

  const AFun* fun(const std::string& name) const {
    for (const AFun& f : funs)
      if (f.name == name) return &f;
    return nullptr;
  }
};

}  // namespace michel::albert

#endif  // MICHEL_ALBERT_AST_HPP
