#ifndef MICHEL_PARSER_HPP
#define MICHEL_PARSER_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "michel/ast.hpp"
#include "michel/errors.hpp"
#include "michel/lexer.hpp"
#include "michel/types.hpp"
#include "michel/value.hpp"

namespace michel {

namespace detail {

class MichelsonParser {
 public:
  explicit MichelsonParser(std::string_view src) : toks_(lex(src, LexMode::Michelson)) {}

  ContractSrc contract() {
    ContractSrc c;
    bool have_storage = false, have_parameter = false, have_code = false;
    while (!at(TokKind::End)) {
      Token t = expect(TokKind::Ident, "contract field");
      if (t.text == "storage") {
        if (have_storage) throw ParseError("duplicate storage field", t.pos);
        c.storage_ty = ty();
        have_storage = true;
      } else if (t.text == "parameter") {
        if (have_parameter) throw ParseError("duplicate parameter field", t.pos);
        c.parameter_ty = ty();
        have_parameter = true;
      } else if (t.text == "code") {
        if (have_code) throw ParseError("duplicate code field", t.pos);
        c.code = block();
        have_code = true;
      } else {
        throw ParseError("expected storage, parameter or code, got '" + t.text + "'", t.pos);
      }
      if (at(TokKind::Semi)) next();
    }
    if (!have_storage) throw ParseError("missing storage field", peek().pos);
    if (!have_parameter) throw ParseError("missing parameter field", peek().pos);
    if (!have_code) throw ParseError("missing code field", peek().pos);
    return c;
  }

  USeq instr_seq() {
    USeq s = block();
    expect(TokKind::End, "end of input");
    return s;
  }

  Value value(const Ty& t) {
    Literal l = literal(true);
    expect(TokKind::End, "end of input");
    return literal_to_value(l, t, Pos{1, 1});
  }

  // Type application: name with optional atom arguments ("map string int").
  Ty ty() {
    Token t = peek();
    if (t.kind == TokKind::LParen) return ty_atom();
    expect(TokKind::Ident, "type name");
    return ty_app(t);
  }

  static Value literal_to_value(const Literal& l, const Ty& t, Pos pos);

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  bool at(TokKind k) const { return toks_[i_].kind == k; }
  Token next() { return toks_[i_++]; }
  Token expect(TokKind k, const char* what) {
    if (!at(k)) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    return next();
  }

  Ty ty_atom() {
    Token t = next();
    if (t.kind == TokKind::LParen) {
      Ty inner = ty();
      expect(TokKind::RParen, "')'");
      return inner;
    }
    if (t.kind != TokKind::Ident) throw ParseError("expected type", t.pos);
    Ty out = ty_prim(t);
    if (ty_arity(out.tag) != 0)
      throw ParseError("type '" + t.text + "' needs arguments; parenthesize it", t.pos);
    return out;
  }

  static int ty_arity(TyTag tag) {
    switch (tag) {
      case TyTag::Pair:
      case TyTag::Or:
      case TyTag::Map:
        return 2;
      case TyTag::Option:
      case TyTag::List:
        return 1;
      default:
        return 0;
    }
  }

  Ty ty_prim(const Token& t) {
    const std::string& n = t.text;
    if (n == "unit") return Ty::unit();
    if (n == "bool") return Ty::boolean();
    if (n == "nat") return Ty::nat();
    if (n == "int") return Ty::integer();
    if (n == "mutez") return Ty::mutez();
    if (n == "string") return Ty::string();
    if (n == "operation") return Ty::operation();
    if (n == "pair") return Ty(TyTag::Pair);
    if (n == "or") return Ty(TyTag::Or);
    if (n == "option") return Ty(TyTag::Option);
    if (n == "list") return Ty(TyTag::List);
    if (n == "map") return Ty(TyTag::Map);
    throw ParseError("unknown type '" + n + "'", t.pos);
  }

  Ty ty_app(const Token& head) {
    Ty out = ty_prim(head);
    int arity = ty_arity(out.tag);
    for (int k = 0; k < arity; ++k) out.args.push_back(ty_atom());
    if (out.tag == TyTag::Map && !is_comparable(out.args[0]))
      throw ParseError("map key type must be comparable", head.pos);
    return out;
  }

  USeq block() {
    expect(TokKind::LBrace, "'{'");
    USeq s;
    while (!at(TokKind::RBrace)) {
      s.push_back(instr());
      if (at(TokKind::Semi)) {
        next();
      } else {
        break;  // last instruction may omit the separator
      }
    }
    expect(TokKind::RBrace, "'}'");
    return s;
  }

  std::uint32_t count_arg() {
    Token t = expect(TokKind::Int, "count");
    if (t.num < 0 || t.num > 1000000) throw ParseError("count out of range", t.pos);
    return static_cast<std::uint32_t>(t.num);
  }

  UInstr instr() {
    Token t = peek();
    if (t.kind == TokKind::LBrace) {
      UInstr s = UInstr::seq(block());
      s.pos = t.pos;
      return s;
    }
    expect(TokKind::Ident, "instruction");
    UInstr out;
    out.pos = t.pos;
    const std::string& n = t.text;
    if (n == "PUSH") {
      Ty pushed = ty_atom();
      Literal lit = literal(false);
      out = UInstr::push(std::move(pushed), std::move(lit));
      if (!is_pushable(out.ty))
        throw ParseError("type '" + to_string(out.ty) + "' has no literals", t.pos);
    } else if (n == "DROP") {
      out = UInstr::counted(Op::Drop, at(TokKind::Int) ? count_arg() : 1);
    } else if (n == "DUP") {
      out = UInstr::simple(Op::Dup);
    } else if (n == "SWAP") {
      out = UInstr::simple(Op::Swap);
    } else if (n == "DIG") {
      out = UInstr::counted(Op::Dig, count_arg());
    } else if (n == "DUG") {
      out = UInstr::counted(Op::Dug, count_arg());
    } else if (n == "DIP") {
      std::uint32_t k = at(TokKind::Int) ? count_arg() : 1;
      out = UInstr::dip(k, block());
    } else if (n == "IF") {
      USeq bt = block();
      out = UInstr::branch(Op::If, std::move(bt), block());
    } else if (n == "IF_NONE") {
      USeq bn = block();
      out = UInstr::branch(Op::IfNone, std::move(bn), block());
    } else if (n == "IF_LEFT") {
      USeq bl = block();
      out = UInstr::branch(Op::IfLeft, std::move(bl), block());
    } else if (n == "LOOP") {
      out = UInstr::loop(block());
    } else if (n == "FAILWITH") {
      out = UInstr::simple(Op::FailWith);
    } else if (n == "UNIT") {
      out = UInstr::simple(Op::Unit);
    } else if (n == "PAIR") {
      out = UInstr::simple(Op::Pair);
    } else if (n == "CAR") {
      out = UInstr::simple(Op::Car);
    } else if (n == "CDR") {
      out = UInstr::simple(Op::Cdr);
    } else if (n == "SOME") {
      out = UInstr::simple(Op::Some);
    } else if (n == "NONE") {
      out = UInstr::typed(Op::None, ty_atom());
    } else if (n == "LEFT") {
      out = UInstr::typed(Op::Left, ty_atom());
    } else if (n == "RIGHT") {
      out = UInstr::typed(Op::Right, ty_atom());
    } else if (n == "NIL") {
      out = UInstr::typed(Op::Nil, ty_atom());
    } else if (n == "CONS") {
      out = UInstr::simple(Op::Cons);
    } else if (n == "EMPTY_MAP") {
      Ty k = ty_atom();
      Ty v = ty_atom();
      if (!is_comparable(k)) throw ParseError("map key type must be comparable", t.pos);
      out = UInstr::empty_map(std::move(k), std::move(v));
    } else if (n == "GET") {
      out = UInstr::simple(Op::Get);
    } else if (n == "UPDATE") {
      out = UInstr::simple(Op::Update);
    } else if (n == "MEM") {
      out = UInstr::simple(Op::Mem);
    } else if (n == "ADD") {
      out = UInstr::simple(Op::Add);
    } else if (n == "SUB") {
      out = UInstr::simple(Op::Sub);
    } else if (n == "COMPARE") {
      out = UInstr::simple(Op::Compare);
    } else if (n == "EQ") {
      out = UInstr::simple(Op::Eq);
    } else if (n == "NEQ") {
      out = UInstr::simple(Op::Neq);
    } else if (n == "GT") {
      out = UInstr::simple(Op::Gt);
    } else if (n == "GE") {
      out = UInstr::simple(Op::Ge);
    } else if (n == "LT") {
      out = UInstr::simple(Op::Lt);
    } else if (n == "LE") {
      out = UInstr::simple(Op::Le);
    } else if (n == "NOT") {
      out = UInstr::simple(Op::Not);
    } else if (n == "AMOUNT") {
      out = UInstr::simple(Op::Amount);
    } else if (n == "FAIL") {
      out = UInstr::simple(Op::MacroFail);
    } else if (n == "ASSERT_SOME") {
      out = UInstr::simple(Op::MacroAssertSome);
    } else {
      throw ParseError("unknown instruction '" + n + "'", t.pos);
    }
    out.pos = t.pos;
    return out;
  }

  // Literal atoms; applications (Pair a b, Some a, ...) need parentheses
  // except where `allow_app` holds (top level, inside parens and braces).
  Literal literal(bool allow_app) {
    Token t = peek();
    switch (t.kind) {
      case TokKind::Int:
        next();
        return Literal::intlit(t.num);
      case TokKind::String:
        next();
        return Literal::strlit(t.text);
      case TokKind::LParen: {
        next();
        Literal inner = literal(true);
        expect(TokKind::RParen, "')'");
        return inner;
      }
      case TokKind::LBrace:
        return braced_literal();
      case TokKind::Ident:
        break;
      default:
        throw ParseError("expected literal", t.pos);
    }
    next();
    const std::string& n = t.text;
    if (n == "Unit") return Literal(Literal::Tag::Unit);
    if (n == "True") return Literal(Literal::Tag::True);
    if (n == "False") return Literal(Literal::Tag::False);
    if (n == "None") return Literal(Literal::Tag::None);
    if (n == "Pair" || n == "Some" || n == "Left" || n == "Right") {
      if (!allow_app)
        throw ParseError("'" + n + "' application must be parenthesized here", t.pos);
      if (n == "Pair") {
        Literal a = literal(false);
        Literal b = literal(false);
        return Literal::app(Literal::Tag::Pair, {std::move(a), std::move(b)});
      }
      Literal a = literal(false);
      Literal::Tag tag = n == "Some"   ? Literal::Tag::Some
                         : n == "Left" ? Literal::Tag::Left
                                       : Literal::Tag::Right;
      return Literal::app(tag, {std::move(a)});
    }
    throw ParseError("expected literal, got '" + n + "'", t.pos);
  }

  Literal braced_literal() {
    Token open = expect(TokKind::LBrace, "'{'");
    if (at(TokKind::RBrace)) {
      next();
      return Literal::app(Literal::Tag::SeqLit, {});
    }
    bool is_elt = at(TokKind::Ident) && peek().text == "Elt";
    std::vector<Literal> kids;
    while (true) {
      if (is_elt) {
        Token e = expect(TokKind::Ident, "'Elt'");
        if (e.text != "Elt") throw ParseError("expected 'Elt'", e.pos);
        Literal k = literal(false);
        Literal v = literal(false);
        kids.push_back(std::move(k));
        kids.push_back(std::move(v));
      } else {
        kids.push_back(literal(true));
      }
      if (at(TokKind::Semi)) {
        next();
        if (at(TokKind::RBrace)) break;  // trailing separator
        continue;
      }
      break;
    }
    expect(TokKind::RBrace, "'}'");
    return Literal::app(is_elt ? Literal::Tag::EltSeq : Literal::Tag::SeqLit, std::move(kids));
  }
};

inline Value MichelsonParser::literal_to_value(const Literal& l, const Ty& t, Pos pos) {
  auto mismatch = [&]() -> TypeError {
    return TypeError("literal does not fit type " + to_string(t), pos);
  };
  switch (t.tag) {
    case TyTag::Unit:
      if (l.tag == Literal::Tag::Unit) return Value::unit();
      throw mismatch();
    case TyTag::Bool:
      if (l.tag == Literal::Tag::True) return Value::boolean(true);
      if (l.tag == Literal::Tag::False) return Value::boolean(false);
      throw mismatch();
    case TyTag::Nat:
      if (l.tag == Literal::Tag::Int && l.num >= 0) return Value::nat(l.num);
      throw mismatch();
    case TyTag::Int:
      if (l.tag == Literal::Tag::Int) return Value::integer(l.num);
      throw mismatch();
    case TyTag::Mutez:
      if (l.tag == Literal::Tag::Int && l.num >= 0 && l.num <= kMutezMax)
        return Value::mutez(static_cast<std::int64_t>(l.num));
      throw mismatch();
    case TyTag::String:
      if (l.tag == Literal::Tag::Str) return Value::str(l.s);
      throw mismatch();
    case TyTag::Operation:
      throw mismatch();
    case TyTag::Pair:
      if (l.tag == Literal::Tag::Pair)
        return Value::pair(literal_to_value(l.kids[0], t.args[0], pos),
                           literal_to_value(l.kids[1], t.args[1], pos));
      throw mismatch();
    case TyTag::Or:
      if (l.tag == Literal::Tag::Left)
        return Value::left(literal_to_value(l.kids[0], t.args[0], pos));
      if (l.tag == Literal::Tag::Right)
        return Value::right(literal_to_value(l.kids[0], t.args[1], pos));
      throw mismatch();
    case TyTag::Option:
      if (l.tag == Literal::Tag::None) return Value::none();
      if (l.tag == Literal::Tag::Some)
        return Value::some(literal_to_value(l.kids[0], t.args[0], pos));
      throw mismatch();
    case TyTag::List: {
      if (l.tag != Literal::Tag::SeqLit) throw mismatch();
      std::vector<Value> elems;
      elems.reserve(l.kids.size());
      for (const Literal& e : l.kids) elems.push_back(literal_to_value(e, t.args[0], pos));
      return Value::list(std::move(elems));
    }
    case TyTag::Map: {
      if (l.tag == Literal::Tag::SeqLit && l.kids.empty()) return Value::empty_map();
      if (l.tag != Literal::Tag::EltSeq) throw mismatch();
      Value m = Value::empty_map();
      for (std::size_t i = 0; i + 1 < l.kids.size(); i += 2) {
        Value k = literal_to_value(l.kids[i], t.args[0], pos);
        Value v = literal_to_value(l.kids[i + 1], t.args[1], pos);
        if (map_mem(m, k)) throw TypeError("duplicate map key in literal", pos);
        m = map_update(std::move(m), k, &v);
      }
      return m;
    }
  }
  throw mismatch();
}

}  // namespace detail

// Macro elimination: FAIL => UNIT; FAILWITH (spliced), ASSERT_SOME =>
// IF_NONE { UNIT; FAILWITH } {}. Idempotent.
inline USeq expand_macros(const USeq& in) {
  USeq out;
  out.reserve(in.size());
  for (const UInstr& i : in) {
    switch (i.op) {
      case Op::MacroFail: {
        UInstr u = UInstr::simple(Op::Unit);
        u.pos = i.pos;
        UInstr f = UInstr::simple(Op::FailWith);
        f.pos = i.pos;
        out.push_back(std::move(u));
        out.push_back(std::move(f));
        break;
      }
      case Op::MacroAssertSome: {
        UInstr fail = UInstr::branch(
            Op::IfNone, {UInstr::simple(Op::Unit), UInstr::simple(Op::FailWith)}, {});
        fail.pos = i.pos;
        out.push_back(std::move(fail));
        break;
      }
      default: {
        UInstr copy = i;
        copy.body_a = expand_macros(copy.body_a);
        copy.body_b = expand_macros(copy.body_b);
        out.push_back(std::move(copy));
        break;
      }
    }
  }
  return out;
}

inline ContractSrc parse_contract(std::string_view text) {
  detail::MichelsonParser p(text);
  ContractSrc c = p.contract();
  c.code = expand_macros(c.code);
  return c;
}

// Parses a bare instruction block "{ ... }"; macros expanded.
inline USeq parse_instr_seq(std::string_view text) {
  detail::MichelsonParser p(text);
  return expand_macros(p.instr_seq());
}

inline Value parse_value(std::string_view text, const Ty& t) {
  detail::MichelsonParser p(text);
  return p.value(t);
}

inline Ty parse_ty(std::string_view text) {
  detail::MichelsonParser p(text);
  return p.ty();
}

inline Value literal_to_value(const Literal& l, const Ty& t, Pos pos = Pos{}) {
  return detail::MichelsonParser::literal_to_value(l, t, pos);
}

}  // namespace michel

#endif  // MICHEL_PARSER_HPP
