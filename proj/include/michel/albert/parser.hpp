#ifndef MICHEL_ALBERT_PARSER_HPP
#define MICHEL_ALBERT_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "michel/albert/ast.hpp"
#include "michel/errors.hpp"
#include "michel/lexer.hpp"

namespace michel::albert {

namespace detail {

inline bool is_ctor_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class AlbertParser {
 public:
  explicit AlbertParser(std::string_view src) : toks_(lex(src, LexMode::Albert)) {}

  AlbertContract contract() {
    AlbertContract c;
    while (!at(TokKind::End)) {
      Token t = expect(TokKind::Ident, "'type' or 'def'");
      if (t.text == "type") {
        Token name = expect(TokKind::Ident, "type name");
        if (reserved_ty(name.text))
          throw ParseError("'" + name.text + "' is a builtin type name", name.pos);
        expect(TokKind::Equal, "'='");
        ATy ty = atype(c);
        for (const auto& [n, unused] : c.aliases)
          if (n == name.text) throw ParseError("duplicate type '" + name.text + "'", name.pos);
        c.aliases.emplace_back(name.text, std::move(ty));
      } else if (t.text == "def") {
        AFun f;
        f.pos = t.pos;
        Token name = expect(TokKind::Ident, "function name");
        f.name = name.text;
        if (c.fun(f.name)) throw ParseError("duplicate function '" + f.name + "'", name.pos);
        expect(TokKind::Colon, "':'");
        ATy consumed = atype(c);
        expect(TokKind::Arrow, "'->'");
        ATy produced = atype(c);
        expect(TokKind::Equal, "'='");
        if (consumed.kind != ATy::Kind::Record)
          throw ParseError("function argument type must be a record", name.pos);
        if (produced.kind != ATy::Kind::Record)
          throw ParseError("function result type must be a record", name.pos);
        f.consumed = std::move(consumed);
        f.produced = std::move(produced);
        f.body = stmts(c);
        c.funs.push_back(std::move(f));
      } else {
        throw ParseError("expected 'type' or 'def', got '" + t.text + "'", t.pos);
      }
    }
    return c;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = i_ + ahead;
    return toks_[k < toks_.size() ? k : toks_.size() - 1];
  }
  bool at(TokKind k) const { return peek().kind == k; }
  bool at_ident(const char* name) const {
    return at(TokKind::Ident) && peek().text == name;
  }
  Token next() { return toks_[i_++]; }
  Token expect(TokKind k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    return next();
  }

  static bool reserved_ty(const std::string& s) {
    return s == "unit" || s == "bool" || s == "nat" || s == "int" || s == "mutez" ||
           s == "string" || s == "operation" || s == "pair" || s == "or" || s == "option" ||
           s == "list" || s == "map";
  }

  static bool reserved_word(const std::string& s) {
    return reserved_ty(s) || s == "type" || s == "def" || s == "match" || s == "with" ||
           s == "end" || s == "failwith" || s == "drop" || s == "dup" || s == "amount" ||
           s == "update" || s == "assert_some" || s == "true" || s == "false";
  }

  std::string variable() {
    Token t = expect(TokKind::Ident, "variable name");
    if (reserved_word(t.text))
      throw ParseError("'" + t.text + "' is a reserved word", t.pos);
    if (is_ctor_name(t.text))
      throw ParseError("variable names start with a lower-case letter", t.pos);
    return t.text;
  }

  // ---- types -------------------------------------------------------------

  Ty base_ty_atom() {
    Token t = next();
    if (t.kind == TokKind::LParen) {
      Ty inner = base_ty();
      expect(TokKind::RParen, "')'");
      return inner;
    }
    if (t.kind != TokKind::Ident) throw ParseError("expected a Michelson type", t.pos);
    Ty out = base_prim(t);
    if (base_arity(out.tag) != 0)
      throw ParseError("type '" + t.text + "' needs arguments; parenthesize it", t.pos);
    return out;
  }

  static int base_arity(TyTag tag) {
    switch (tag) {
      case TyTag::Pair:
      case TyTag::Or:
      case TyTag::Map: return 2;
      case TyTag::Option:
      case TyTag::List: return 1;
      default: return 0;
    }
  }

  Ty base_prim(const Token& t) {
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
    throw ParseError("unknown Michelson type '" + n + "'", t.pos);
  }

  Ty base_ty() {
    Token head = expect(TokKind::Ident, "Michelson type");
    Ty out = base_prim(head);
    int arity = base_arity(out.tag);
    for (int k = 0; k < arity; ++k) out.args.push_back(base_ty_atom());
    if (out.tag == TyTag::Map && !is_comparable(out.args[0]))
      throw ParseError("map key type must be comparable", head.pos);
    return out;
  }

  ATy atype(const AlbertContract& c) {
    Token t = peek();
    if (t.kind == TokKind::LBrace) {
      next();
      std::vector<std::pair<std::string, ATy>> fields;
      while (!at(TokKind::RBrace)) {
        Token label = expect(TokKind::Ident, "field label");
        expect(TokKind::Colon, "':'");
        fields.emplace_back(label.text, atype(c));
        if (at(TokKind::Semi)) {
          next();
        } else {
          break;
        }
      }
      expect(TokKind::RBrace, "'}'");
      try {
        return ATy::record(std::move(fields));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.pos);
      }
    }
    if (t.kind == TokKind::LBracket) {
      next();
      std::vector<std::pair<std::string, ATy>> ctors;
      while (true) {
        Token ctor = expect(TokKind::Ident, "constructor name");
        if (!is_ctor_name(ctor.text))
          throw ParseError("constructor names start with an upper-case letter", ctor.pos);
        expect(TokKind::Colon, "':'");
        ctors.emplace_back(ctor.text, atype(c));
        if (at(TokKind::Pipe)) {
          next();
          continue;
        }
        break;
      }
      expect(TokKind::RBracket, "']'");
      try {
        return ATy::variant(std::move(ctors));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.pos);
      }
    }
    if (t.kind == TokKind::LParen) {
      next();
      ATy inner = atype(c);
      expect(TokKind::RParen, "')'");
      return inner;
    }
    if (t.kind == TokKind::Ident) {
      if (t.text == "bool") {
        next();
        return ATy::boolean();
      }
      if (reserved_ty(t.text)) return ATy::base_ty(base_ty());
      next();
      for (const auto& [name, ty] : c.aliases)
        if (name == t.text) return ty;
      throw ParseError("unknown type '" + t.text + "'", t.pos);
    }
    throw ParseError("expected a type", t.pos);
  }

  // ---- statements ----------------------------------------------------------

  bool at_stmt_end() const {
    if (at(TokKind::End) || at(TokKind::Pipe)) return true;
    if (!at(TokKind::Ident)) return false;
    const std::string& s = peek().text;
    return s == "def" || s == "type" || s == "end";
  }

  std::vector<AStmt> stmts(const AlbertContract& c) {
    std::vector<AStmt> out;
    while (!at_stmt_end()) {
      out.push_back(stmt(c));
      if (at(TokKind::Semi)) {
        next();
        continue;
      }
      break;
    }
    return out;
  }

  AStmt stmt(const AlbertContract& c) {
    AStmt s;
    s.pos = peek().pos;
    if (at(TokKind::LBrace)) {
      // record pattern: { l = x; ... } = rhs
      next();
      s.kind = AStmt::Kind::Assign;
      s.lhs = AStmt::Lhs::Record;
      while (!at(TokKind::RBrace)) {
        Token label = expect(TokKind::Ident, "field label");
        expect(TokKind::Equal, "'='");
        s.lhs_rec.emplace_back(label.text, variable());
        if (at(TokKind::Semi)) {
          next();
        } else {
          break;
        }
      }
      expect(TokKind::RBrace, "'}'");
      expect(TokKind::Equal, "'='");
      s.rhs = expr(c);
      return s;
    }
    if (at(TokKind::LParen)) {
      // tuple pattern: (x, y) = dup z
      next();
      s.kind = AStmt::Kind::Assign;
      s.lhs = AStmt::Lhs::Tuple;
      s.lhs_vars.push_back(variable());
      expect(TokKind::Comma, "','");
      s.lhs_vars.push_back(variable());
      expect(TokKind::RParen, "')'");
      expect(TokKind::Equal, "'='");
      s.rhs = expr(c);
      return s;
    }
    Token head = expect(TokKind::Ident, "statement");
    if (head.text == "failwith") {
      s.kind = AStmt::Kind::FailWith;
      s.rhs = expr_atom(head.pos);
      return s;
    }
    if (head.text == "drop") {
      s.kind = AStmt::Kind::Drop;
      s.drop_var = variable();
      return s;
    }
    if (head.text == "match") {
      s.kind = AStmt::Kind::Match;
      s.match_var = variable();
      Token with = expect(TokKind::Ident, "'with'");
      if (with.text != "with") throw ParseError("expected 'with'", with.pos);
      while (true) {
        AStmt::Arm arm;
        Token ctor = expect(TokKind::Ident, "constructor");
        if (!is_ctor_name(ctor.text))
          throw ParseError("constructor names start with an upper-case letter", ctor.pos);
        arm.ctor = ctor.text;
        arm.payload = variable();
        expect(TokKind::Arrow, "'->'");
        arm.body = stmts(c);
        s.arms.push_back(std::move(arm));
        if (at(TokKind::Pipe)) {
          next();
          continue;
        }
        break;
      }
      Token end = expect(TokKind::Ident, "'end'");
      if (end.text != "end") throw ParseError("expected 'end' after match arms", end.pos);
      return s;
    }
    if (reserved_word(head.text) || is_ctor_name(head.text))
      throw ParseError("unexpected '" + head.text + "'", head.pos);
    if (at(TokKind::Equal)) {
      next();
      s.kind = AStmt::Kind::Assign;
      s.lhs = AStmt::Lhs::Var;
      s.lhs_vars.push_back(head.text);
      s.rhs = expr(c);
      return s;
    }
    if (at(TokKind::Ident) && !reserved_word(peek().text) && !is_ctor_name(peek().text)) {
      s.kind = AStmt::Kind::BareCall;
      s.callee = head.text;
      s.arg = variable();
      return s;
    }
    throw ParseError("expected '=' or a call argument after '" + head.text + "'", head.pos);
  }

  // ---- expressions ---------------------------------------------------------

  AExpr expr_atom(Pos pos) {
    AExpr e;
    e.pos = pos;
    if (at(TokKind::Int)) {
      Token t = next();
      e.kind = AExpr::Kind::IntConst;
      e.num = t.num;
      return e;
    }
    if (at(TokKind::String)) {
      Token t = next();
      e.kind = AExpr::Kind::StrConst;
      e.str = t.text;
      return e;
    }
    if (at_ident("true") || at_ident("false")) {
      Token t = next();
      e.kind = AExpr::Kind::BoolConst;
      e.flag = t.text == "true";
      return e;
    }
    if (at(TokKind::Ident) && !reserved_word(peek().text) && !is_ctor_name(peek().text)) {
      e.kind = AExpr::Kind::Var;
      e.name = variable();
      return e;
    }
    throw ParseError("expected a constant or variable", peek().pos);
  }

  AExpr expr(const AlbertContract& c) {
    AExpr e;
    e.pos = peek().pos;
    if (at(TokKind::Int) || at(TokKind::String) || at_ident("true") || at_ident("false")) {
      return expr_atom(e.pos);
    }
    if (at(TokKind::LBrace)) {
      next();
      e.kind = AExpr::Kind::RecordLit;
      while (!at(TokKind::RBrace)) {
        Token label = expect(TokKind::Ident, "field label");
        expect(TokKind::Equal, "'='");
        AExpr operand = expr_atom(label.pos);
        e.rec_fields.emplace_back(label.text, std::move(operand));
        if (at(TokKind::Semi)) {
          next();
        } else {
          break;
        }
      }
      expect(TokKind::RBrace, "'}'");
      return e;
    }
    if (at(TokKind::LParen)) {
      next();
      if (at(TokKind::LBracket)) {
        next();
        expect(TokKind::RBracket, "']'");
        expect(TokKind::Colon, "':'");
        Ty t = base_ty();
        if (t.tag != TyTag::List)
          throw ParseError("empty-list annotation must be a list type", e.pos);
        expect(TokKind::RParen, "')'");
        e.kind = AExpr::Kind::EmptyList;
        e.list_elem = t.args[0];
        return e;
      }
      Token ctor = expect(TokKind::Ident, "constructor");
      if (!is_ctor_name(ctor.text))
        throw ParseError("expected a constructor application", ctor.pos);
      e.kind = AExpr::Kind::CtorApp;
      e.name = ctor.text;
      e.args.push_back(variable());
      expect(TokKind::Colon, "':'");
      Token alias = expect(TokKind::Ident, "type name");
      e.annot = alias.text;
      expect(TokKind::RParen, "')'");
      return e;
    }
    Token head = expect(TokKind::Ident, "expression");
    if (head.text == "dup") {
      e.kind = AExpr::Kind::Dup;
      e.args.push_back(variable());
      return e;
    }
    if (head.text == "amount") {
      e.kind = AExpr::Kind::Amount;
      return e;
    }
    if (head.text == "update") {
      e.kind = AExpr::Kind::UpdateCall;
      e.args.push_back(variable());
      e.args.push_back(variable());
      e.args.push_back(variable());
      return e;
    }
    if (head.text == "assert_some") {
      expect(TokKind::LBrace, "'{'");
      Token label = expect(TokKind::Ident, "'opt'");
      if (label.text != "opt") throw ParseError("assert_some takes a field named 'opt'", label.pos);
      expect(TokKind::Equal, "'='");
      e.kind = AExpr::Kind::AssertSome;
      e.args.push_back(variable());
      expect(TokKind::RBrace, "'}'");
      return e;
    }
    if (is_ctor_name(head.text)) {
      if (head.text == "Some") {
        e.kind = AExpr::Kind::SomeApp;
        e.args.push_back(variable());
        return e;
      }
      e.kind = AExpr::Kind::CtorApp;
      e.name = head.text;
      e.args.push_back(variable());
      return e;  // un-annotated; the checker demands bool constructors here
    }
    if (reserved_word(head.text))
      throw ParseError("unexpected '" + head.text + "'", head.pos);
    // lowercase identifier: variable, projection, access, operator or call
    if (at(TokKind::LBracket)) {
      next();
      e.kind = AExpr::Kind::MapGet;
      e.args.push_back(head.text);
      e.args.push_back(variable());
      expect(TokKind::RBracket, "']'");
      return e;
    }
    if (at(TokKind::Dot)) {
      next();
      Token label = expect(TokKind::Ident, "field label");
      e.kind = AExpr::Kind::Proj;
      e.args.push_back(head.text);
      e.label = label.text;
      return e;
    }
    if (at(TokKind::Plus)) {
      next();
      e.kind = AExpr::Kind::Add;
      e.args.push_back(head.text);
      e.args.push_back(variable());
      return e;
    }
    if (at(TokKind::GreaterEq)) {
      next();
      e.kind = AExpr::Kind::Ge;
      e.args.push_back(head.text);
      e.args.push_back(variable());
      return e;
    }
    if (at(TokKind::Ident) && !reserved_word(peek().text) && !is_ctor_name(peek().text)) {
      if (c.fun(head.text) == nullptr)
        throw ParseError("unknown function '" + head.text + "' (functions must be defined first)",
                         head.pos);
      e.kind = AExpr::Kind::Call;
      e.name = head.text;
      e.args.push_back(variable());
      return e;
    }
    e.kind = AExpr::Kind::Var;
    e.name = head.text;
    return e;
  }
};

}  // namespace detail

inline AlbertContract parse_albert(std::string_view text) {
  detail::AlbertParser p(text);
  return p.contract();
}

}  // namespace michel::albert

#endif  // MICHEL_ALBERT_PARSER_HPP
