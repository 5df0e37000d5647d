#ifndef MICHEL_PRINTER_HPP
#define MICHEL_PRINTER_HPP

#include <string>

#include "michel/ast.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel {

inline std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

inline std::string print_literal(const Literal& l);

// Atom form: applications are parenthesized so the result can be used as an
// instruction argument.
inline std::string print_literal_atom(const Literal& l) {
  switch (l.tag) {
    case Literal::Tag::Pair:
    case Literal::Tag::Some:
    case Literal::Tag::Left:
    case Literal::Tag::Right:
      return "(" + print_literal(l) + ")";
    default:
      return print_literal(l);
  }
}

inline std::string print_literal(const Literal& l) {
  switch (l.tag) {
    case Literal::Tag::Int: return l.num.str();
    case Literal::Tag::Str: return escape_string(l.s);
    case Literal::Tag::Unit: return "Unit";
    case Literal::Tag::True: return "True";
    case Literal::Tag::False: return "False";
    case Literal::Tag::None: return "None";
    case Literal::Tag::Pair:
      return "Pair " + print_literal_atom(l.kids[0]) + " " + print_literal_atom(l.kids[1]);
    case Literal::Tag::Some: return "Some " + print_literal_atom(l.kids[0]);
    case Literal::Tag::Left: return "Left " + print_literal_atom(l.kids[0]);
    case Literal::Tag::Right: return "Right " + print_literal_atom(l.kids[0]);
    case Literal::Tag::SeqLit: {
      if (l.kids.empty()) return "{ }";
      std::string out = "{ ";
      for (std::size_t i = 0; i < l.kids.size(); ++i) {
        if (i) out += "; ";
        out += print_literal(l.kids[i]);
      }
      return out + " }";
    }
    case Literal::Tag::EltSeq: {
      if (l.kids.empty()) return "{ }";
      std::string out = "{ ";
      for (std::size_t i = 0; i + 1 < l.kids.size(); i += 2) {
        if (i) out += "; ";
        out += "Elt " + print_literal_atom(l.kids[i]) + " " + print_literal_atom(l.kids[i + 1]);
      }
      return out + " }";
    }
  }
  return "?";
}

inline std::string print_value(const Value& v);

inline std::string print_value_atom(const Value& v) {
  switch (v.tag) {
    case ValueTag::Pair:
    case ValueTag::Some:
    case ValueTag::Left:
    case ValueTag::Right:
      return "(" + print_value(v) + ")";
    default:
      return print_value(v);
  }
}

// Michelson literal syntax, parse_value-compatible (Operation values are
// diagnostic-only and have no literal form).
inline std::string print_value(const Value& v) {
  switch (v.tag) {
    case ValueTag::Unit: return "Unit";
    case ValueTag::Bool: return v.b ? "True" : "False";
    case ValueTag::Nat:
    case ValueTag::Int: return v.num.str();
    case ValueTag::Mutez: return std::to_string(v.tez);
    case ValueTag::Str: return escape_string(v.s);
    case ValueTag::Operation: return "Operation";
    case ValueTag::Pair:
      return "Pair " + print_value_atom(v.kids[0]) + " " + print_value_atom(v.kids[1]);
    case ValueTag::Left: return "Left " + print_value_atom(v.kids[0]);
    case ValueTag::Right: return "Right " + print_value_atom(v.kids[0]);
    case ValueTag::Some: return "Some " + print_value_atom(v.kids[0]);
    case ValueTag::None: return "None";
    case ValueTag::List: {
      if (v.kids.empty()) return "{ }";
      std::string out = "{ ";
      for (std::size_t i = 0; i < v.kids.size(); ++i) {
        if (i) out += "; ";
        out += print_value(v.kids[i]);
      }
      return out + " }";
    }
    case ValueTag::Map: {
      if (v.kids.empty()) return "{ }";
      std::string out = "{ ";
      for (std::size_t i = 0; i < v.map_size(); ++i) {
        if (i) out += "; ";
        out += "Elt " + print_value_atom(v.map_key(i)) + " " + print_value_atom(v.map_val(i));
      }
      return out + " }";
    }
  }
  return "?";
}

namespace detail {

inline void print_instr(std::string& out, const UInstr& i, int indent);

inline void print_block(std::string& out, const USeq& s, int indent) {
  if (s.empty()) {
    out += "{ }";
    return;
  }
  std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  out += "{\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out += pad;
    print_instr(out, s[k], indent + 2);
    if (k + 1 < s.size()) out += ";";
    out += "\n";
  }
  out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
}

inline void print_instr(std::string& out, const UInstr& i, int indent) {
  switch (i.op) {
    case Op::Seq:
      print_block(out, i.body_a, indent);
      return;
    case Op::Push:
      out += "PUSH " + ty_child_string(i.ty) + " " + print_literal_atom(i.lit);
      return;
    case Op::Drop:
    case Op::Dig:
    case Op::Dug:
      out += std::string(op_name(i.op)) + " " + std::to_string(i.n);
      return;
    case Op::Dip:
      out += "DIP " + std::to_string(i.n) + " ";
      print_block(out, i.body_a, indent);
      return;
    case Op::If:
    case Op::IfNone:
    case Op::IfLeft:
      out += std::string(op_name(i.op)) + " ";
      print_block(out, i.body_a, indent);
      out += " ";
      print_block(out, i.body_b, indent);
      return;
    case Op::Loop:
      out += "LOOP ";
      print_block(out, i.body_a, indent);
      return;
    case Op::None:
    case Op::Left:
    case Op::Right:
    case Op::Nil:
      out += std::string(op_name(i.op)) + " " + ty_child_string(i.ty);
      return;
    case Op::EmptyMap:
      out += "EMPTY_MAP " + ty_child_string(i.ty) + " " + ty_child_string(i.ty2);
      return;
    default:
      out += op_name(i.op);
      return;
  }
}

}  // namespace detail

inline std::string print_instr_seq(const USeq& s) {
  std::string out;
  detail::print_block(out, s, 0);
  return out;
}

inline std::string print_contract(const ContractSrc& c) {
  std::string out;
  out += "storage " + ty_child_string(c.storage_ty) + ";\n";
  out += "parameter " + ty_child_string(c.parameter_ty) + ";\n";
  out += "code ";
  detail::print_block(out, c.code, 0);
  out += "\n";
  return out;
}

}  // namespace michel

#endif  // MICHEL_PRINTER_HPP
