#ifndef MICHEL_ALBERT_TYPECHECK_HPP
#define MICHEL_ALBERT_TYPECHECK_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "michel/albert/ast.hpp"
#include "michel/errors.hpp"

namespace michel::albert {

// Live-variable environment; std::map keeps names in lexicographic order,
// which is also the compiler's stack layout order.
using VarTypes = std::map<std::string, ATy>;

namespace detail {

class AlbertChecker {
 public:
  explicit AlbertChecker(const AlbertContract& c) : c_(c) {}

  void check() {
    for (const AFun& f : c_.funs) {
      check_fun(f);
      defined_[f.name] = &f;
    }
  }

  // Shared with the compiler: types an expression while consuming its
  // operands from the environment.
  ATy expr_type(const AExpr& e, VarTypes& env) {
    switch (e.kind) {
      case AExpr::Kind::Var:
        return consume(env, e.name, e.pos);
      case AExpr::Kind::IntConst:
        return ATy::base_ty(e.num >= 0 ? Ty::nat() : Ty::integer());
      case AExpr::Kind::StrConst:
        return ATy::base_ty(Ty::string());
      case AExpr::Kind::BoolConst:
        return ATy::boolean();
      case AExpr::Kind::EmptyList:
        return ATy::base_ty(Ty::list(e.list_elem));
      case AExpr::Kind::RecordLit: {
        std::vector<std::pair<std::string, ATy>> fields;
        fields.reserve(e.rec_fields.size());
        for (const auto& [label, operand] : e.rec_fields) {
          AExpr copy = operand;
          fields.emplace_back(label, expr_type(copy, env));
        }
        try {
          return ATy::record(std::move(fields));
        } catch (const std::invalid_argument& err) {
          throw TypeError(err.what(), e.pos);
        }
      }
      case AExpr::Kind::Proj: {
        ATy t = consume(env, e.args[0], e.pos);
        if (t.kind != ATy::Kind::Record)
          throw TypeError("'" + e.args[0] + "' is not a record", e.pos);
        const ATy* f = t.field(e.label);
        if (!f) throw TypeError("record has no field '" + e.label + "'", e.pos);
        return *f;
      }
      case AExpr::Kind::MapGet: {
        ATy tm = consume(env, e.args[0], e.pos);
        ATy tk = consume(env, e.args[1], e.pos);
        if (tm.kind != ATy::Kind::Base || tm.base.tag != TyTag::Map)
          throw TypeError("'" + e.args[0] + "' is not a map", e.pos);
        if (tk != ATy::base_ty(tm.base.args[0]))
          throw TypeError("map key type mismatch for '" + e.args[1] + "'", e.pos);
        return ATy::base_ty(Ty::option(tm.base.args[1]));
      }
      case AExpr::Kind::Dup:
        throw TypeError("dup results must be bound with a tuple pattern: (x, y) = dup z", e.pos);
      case AExpr::Kind::Add: {
        ATy l = consume(env, e.args[0], e.pos);
        ATy r = consume(env, e.args[1], e.pos);
        if (l != r || l.kind != ATy::Kind::Base ||
            (l.base.tag != TyTag::Nat && l.base.tag != TyTag::Mutez))
          throw TypeError("unsupported operator: + takes two nat or two mutez", e.pos);
        return l;
      }
      case AExpr::Kind::Ge: {
        ATy l = consume(env, e.args[0], e.pos);
        ATy r = consume(env, e.args[1], e.pos);
        if (l != r || l.kind != ATy::Kind::Base ||
            (l.base.tag != TyTag::Nat && l.base.tag != TyTag::Mutez))
          throw TypeError("unsupported operator: >= takes two nat or two mutez", e.pos);
        return ATy::boolean();
      }
      case AExpr::Kind::SomeApp: {
        ATy t = consume(env, e.args[0], e.pos);
        if (t.kind != ATy::Kind::Base)
          throw TypeError("Some takes a Michelson-typed value", e.pos);
        return ATy::base_ty(Ty::option(t.base));
      }
      case AExpr::Kind::CtorApp: {
        if (e.annot.empty()) {
          if (e.name == "True" || e.name == "False") {
            ATy t = consume(env, e.args[0], e.pos);
            if (t != ATy::base_ty(Ty::unit()))
              throw TypeError("bool constructors take a unit payload", e.pos);
            return ATy::boolean();
          }
          throw TypeError(
              "constructor application needs a type annotation: (" + e.name + " x : T)", e.pos);
        }
        ATy variant = resolve_annot(e.annot, e.pos);
        if (variant.kind == ATy::Kind::Bool) {
          if (e.name != "True" && e.name != "False")
            throw TypeError("bool has no constructor '" + e.name + "'", e.pos);
          ATy t = consume(env, e.args[0], e.pos);
          if (t != ATy::base_ty(Ty::unit()))
            throw TypeError("bool constructors take a unit payload", e.pos);
          return ATy::boolean();
        }
        if (variant.kind != ATy::Kind::Variant)
          throw TypeError("'" + e.annot + "' is not a variant type", e.pos);
        const ATy* payload = variant.field(e.name);
        if (!payload)
          throw TypeError("variant has no constructor '" + e.name + "'", e.pos);
        ATy t = consume(env, e.args[0], e.pos);
        if (t != *payload)
          throw TypeError("payload type mismatch for constructor '" + e.name + "'", e.pos);
        return variant;
      }
      case AExpr::Kind::Call: {
        auto it = defined_.find(e.name);
        if (it == defined_.end())
          throw TypeError("unknown function '" + e.name + "'", e.pos);
        ATy t = consume(env, e.args[0], e.pos);
        if (t != it->second->consumed)
          throw TypeError("argument of '" + e.name + "' has type " + to_string(t) + ", expected " +
                              to_string(it->second->consumed),
                          e.pos);
        return it->second->produced;
      }
      case AExpr::Kind::Amount:
        return ATy::base_ty(Ty::mutez());
      case AExpr::Kind::UpdateCall: {
        ATy tm = consume(env, e.args[0], e.pos);
        ATy tk = consume(env, e.args[1], e.pos);
        ATy tv = consume(env, e.args[2], e.pos);
        if (tm.kind != ATy::Kind::Base || tm.base.tag != TyTag::Map)
          throw TypeError("'" + e.args[0] + "' is not a map", e.pos);
        if (tk != ATy::base_ty(tm.base.args[0]))
          throw TypeError("map key type mismatch for '" + e.args[1] + "'", e.pos);
        if (tv != ATy::base_ty(Ty::option(tm.base.args[1])))
          throw TypeError("update takes an option of the map value type", e.pos);
        return tm;
      }
      case AExpr::Kind::AssertSome: {
        ATy t = consume(env, e.args[0], e.pos);
        if (t.kind != ATy::Kind::Base || t.base.tag != TyTag::Option)
          throw TypeError("assert_some takes { opt = x } with x of option type", e.pos);
        return ATy::record({{"res", ATy::base_ty(t.base.args[0])}});
      }
    }
    throw TypeError("malformed expression", e.pos);
  }

  // nullopt: every control path ends in failwith.
  std::optional<VarTypes> stmts_type(const std::vector<AStmt>& body, VarTypes env) {
    std::optional<VarTypes> cur = std::move(env);
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (!cur) throw TypeError("unreachable statement after failwith", body[i].pos);
      cur = stmt_type(body[i], std::move(*cur));
    }
    return cur;
  }

  const AFun* defined(const std::string& name) const {
    auto it = defined_.find(name);
    return it == defined_.end() ? nullptr : it->second;
  }

 private:
  const AlbertContract& c_;
  std::map<std::string, const AFun*> defined_;

  ATy resolve_annot(const std::string& name, Pos pos) const {
    if (name == "bool") return ATy::boolean();
    for (const auto& [n, t] : c_.aliases)
      if (n == name) return t;
    throw TypeError("unknown type '" + name + "'", pos);
  }

  static ATy consume(VarTypes& env, const std::string& name, Pos pos) {
    auto it = env.find(name);
    if (it == env.end())
      throw TypeError("variable '" + name + "' is unbound or already consumed", pos);
    ATy t = std::move(it->second);
    env.erase(it);
    return t;
  }

  static void bind(VarTypes& env, const std::string& name, ATy t, Pos pos) {
    if (env.count(name))
      throw TypeError("variable '" + name + "' is still live; consume it first", pos);
    env.emplace(name, std::move(t));
  }

  std::optional<VarTypes> stmt_type(const AStmt& s, VarTypes env) {
    switch (s.kind) {
      case AStmt::Kind::Assign: {
        if (s.rhs.kind == AExpr::Kind::Dup) {
          if (s.lhs != AStmt::Lhs::Tuple)
            throw TypeError("dup results must be bound with a tuple pattern", s.pos);
          ATy t = consume(env, s.rhs.args[0], s.pos);
          if (s.lhs_vars[0] == s.lhs_vars[1])
            throw TypeError("tuple pattern binds the same name twice", s.pos);
          bind(env, s.lhs_vars[0], t, s.pos);
          bind(env, s.lhs_vars[1], std::move(t), s.pos);
          return env;
        }
        ATy rt = expr_type(s.rhs, env);
        switch (s.lhs) {
          case AStmt::Lhs::Var:
            bind(env, s.lhs_vars[0], std::move(rt), s.pos);
            return env;
          case AStmt::Lhs::Tuple:
            throw TypeError("only dup produces a pair of results", s.pos);
          case AStmt::Lhs::Record: {
            if (rt.kind != ATy::Kind::Record)
              throw TypeError("right-hand side is not a record", s.pos);
            if (s.lhs_rec.size() != rt.fields.size())
              throw TypeError("record pattern must name every field", s.pos);
            for (const auto& [label, var] : s.lhs_rec) {
              const ATy* f = rt.field(label);
              if (!f) throw TypeError("record has no field '" + label + "'", s.pos);
              bind(env, var, *f, s.pos);
            }
            return env;
          }
        }
        throw TypeError("malformed assignment", s.pos);
      }
      case AStmt::Kind::BareCall: {
        const AFun* f = defined(s.callee);
        if (!f) throw TypeError("unknown function '" + s.callee + "'", s.pos);
        ATy t = consume(env, s.arg, s.pos);
        if (t != f->consumed)
          throw TypeError("argument of '" + s.callee + "' has type " + to_string(t) +
                              ", expected " + to_string(f->consumed),
                          s.pos);
        for (const auto& [label, ty] : f->produced.fields) bind(env, label, ty, s.pos);
        return env;
      }
      case AStmt::Kind::Match: {
        ATy t = consume(env, s.match_var, s.pos);
        std::vector<std::pair<std::string, ATy>> ctors;
        if (t.kind == ATy::Kind::Bool) {
          ctors = {{"False", ATy::base_ty(Ty::unit())}, {"True", ATy::base_ty(Ty::unit())}};
        } else if (t.kind == ATy::Kind::Variant) {
          ctors = t.fields;
        } else {
          throw TypeError("'" + s.match_var + "' is not a variant", s.pos);
        }
        if (s.arms.size() != ctors.size())
          throw TypeError("match must cover every constructor exactly once", s.pos);
        std::optional<VarTypes> joined;
        bool saw_live = false;
        for (const auto& [ctor, payload_ty] : ctors) {
          const AStmt::Arm* arm = nullptr;
          for (const auto& a : s.arms)
            if (a.ctor == ctor) {
              if (arm) throw TypeError("duplicate arm for '" + ctor + "'", s.pos);
              arm = &a;
            }
          if (!arm) throw TypeError("missing arm for constructor '" + ctor + "'", s.pos);
          VarTypes arm_env = env;
          bind(arm_env, arm->payload, payload_ty, s.pos);
          std::optional<VarTypes> out = stmts_type(arm->body, std::move(arm_env));
          if (!out) continue;
          if (!saw_live) {
            joined = std::move(out);
            saw_live = true;
          } else if (*joined != *out) {
            throw TypeError("match arms produce different environments", s.pos);
          }
        }
        if (!saw_live) return std::nullopt;
        return joined;
      }
      case AStmt::Kind::FailWith: {
        AExpr payload = s.rhs;
        (void)expr_type(payload, env);
        return std::nullopt;
      }
      case AStmt::Kind::Drop:
        consume(env, s.drop_var, s.pos);
        return env;
    }
    throw TypeError("malformed statement", s.pos);
  }

  void check_fun(const AFun& f) {
    VarTypes env;
    for (const auto& [label, ty] : f.consumed.fields) env.emplace(label, ty);
    std::optional<VarTypes> out = stmts_type(f.body, std::move(env));
    if (!out) return;  // the function always fails; any produced type fits
    VarTypes want;
    for (const auto& [label, ty] : f.produced.fields) want.emplace(label, ty);
    if (*out != want) {
      std::string got;
      for (const auto& [name, ty] : *out) got += (got.empty() ? "" : ", ") + name;
      throw TypeError("function '" + f.name + "' ends with live variables {" + got +
                          "} that do not form the produced record " + to_string(f.produced),
                      f.pos);
    }
  }
};

}  // namespace detail

// Validated contract: every function body transforms exactly its consumed
// record into its produced record under the linear discipline.
struct TypedAlbert {
  AlbertContract contract;
};

inline TypedAlbert typecheck_albert(AlbertContract c) {
  detail::AlbertChecker checker(c);
  checker.check();
  return TypedAlbert{std::move(c)};
}

}  // namespace michel::albert

#endif  // MICHEL_ALBERT_TYPECHECK_HPP
