// Evaluation, substitution, and free-variable analysis for expressions and
// formulas. Stores map variable names to values; quantified integers range
// over a bounded domain, quantified booleans over both truth values.
#pragma once

#include <map>
#include <set>
#include <string>

#include "biver/syntax.hpp"

namespace biver {

using Store = std::map<std::string, Value>;
using VarSet = std::set<Var>;

struct Domain {
  long long lo = -2, hi = 2;
};

// Runtime evaluation error, distinct from an assertion failure. Division by
// zero is the one source.
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Euclidean division: the remainder lies in [0, |divisor|).
inline long long euclid_div(long long a, long long b) {
  if (b == 0) throw EvalError("division by zero");
  long long r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return (a - r) / b;
}

inline long long euclid_mod(long long a, long long b) {
  if (b == 0) throw EvalError("division by zero");
  long long r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

inline Value store_get(const Store& s, const Var& v) {
  auto it = s.find(v.name);
  if (it == s.end()) throw EvalError("variable '" + v.name + "' not in store");
  return it->second;
}

inline Value eval_expr(const ExprPtr& e, const Store& s) {
  switch (e->kind) {
    case Expr::Kind::IntConst: return Value::of_int(e->ival);
    case Expr::Kind::BoolConst: return Value::of_bool(e->bval);
    case Expr::Kind::VarRef: return store_get(s, e->var);
    case Expr::Kind::Unary: {
      Value a = eval_expr(e->a, s);
      return e->un == UnOp::Neg ? Value::of_int(-a.as_int())
                                : Value::of_bool(!a.as_bool());
    }
    case Expr::Kind::Binary: {
      // both operands evaluate; expressions are total apart from division
      Value a = eval_expr(e->a, s);
      Value b = eval_expr(e->b, s);
      switch (e->bin) {
        case BinOp::Add: return Value::of_int(a.as_int() + b.as_int());
        case BinOp::Sub: return Value::of_int(a.as_int() - b.as_int());
        case BinOp::Mul: return Value::of_int(a.as_int() * b.as_int());
        case BinOp::Div: return Value::of_int(euclid_div(a.as_int(), b.as_int()));
        case BinOp::Mod: return Value::of_int(euclid_mod(a.as_int(), b.as_int()));
        case BinOp::Eq: return Value::of_bool(a == b);
        case BinOp::Ne: return Value::of_bool(!(a == b));
        case BinOp::Lt: return Value::of_bool(a.as_int() < b.as_int());
        case BinOp::Le: return Value::of_bool(a.as_int() <= b.as_int());
        case BinOp::Gt: return Value::of_bool(a.as_int() > b.as_int());
        case BinOp::Ge: return Value::of_bool(a.as_int() >= b.as_int());
        case BinOp::And: return Value::of_bool(a.as_bool() && b.as_bool());
        case BinOp::Or: return Value::of_bool(a.as_bool() || b.as_bool());
      }
    }
  }
  throw EvalError("malformed expression");
}

namespace detail {

template <class Fn>
bool for_each_value(Sort sort, const Domain& dom, Fn fn) {
  // returns true when the callback stopped the enumeration
  if (sort == Sort::Bool) {
    return fn(Value::of_bool(false)) || fn(Value::of_bool(true));
  }
  for (long long v = dom.lo; v <= dom.hi; v++)
    if (fn(Value::of_int(v))) return true;
  return false;
}

}  // namespace detail

inline bool eval_uformula(const UFormulaPtr& f, const Store& s, const Domain& dom) {
  switch (f->kind) {
    case UFormula::Kind::Atom: return eval_expr(f->atom, s).as_bool();
    case UFormula::Kind::Not: return !eval_uformula(f->a, s, dom);
    case UFormula::Kind::And:
      return eval_uformula(f->a, s, dom) && eval_uformula(f->b, s, dom);
    case UFormula::Kind::Or:
      return eval_uformula(f->a, s, dom) || eval_uformula(f->b, s, dom);
    case UFormula::Kind::Imp:
      return !eval_uformula(f->a, s, dom) || eval_uformula(f->b, s, dom);
    case UFormula::Kind::Iff:
      return eval_uformula(f->a, s, dom) == eval_uformula(f->b, s, dom);
    case UFormula::Kind::Forall: {
      Store t = s;
      bool found_cex = detail::for_each_value(f->bound.sort, dom, [&](Value v) {
        t[f->bound.name] = v;
        return !eval_uformula(f->a, t, dom);
      });
      return !found_cex;
    }
    case UFormula::Kind::Exists: {
      Store t = s;
      return detail::for_each_value(f->bound.sort, dom, [&](Value v) {
        t[f->bound.name] = v;
        return eval_uformula(f->a, t, dom);
      });
    }
  }
  throw EvalError("malformed formula");
}

inline long long eval_relexpr(const RelExprPtr& r, const Store& s, const Store& s2) {
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed: return eval_expr(r->embedded, s).as_int();
    case RelExpr::Kind::RightEmbed: return eval_expr(r->embedded, s2).as_int();
    case RelExpr::Kind::IntConst: return r->ival;
    case RelExpr::Kind::Binary: {
      long long a = eval_relexpr(r->a, s, s2);
      long long b = eval_relexpr(r->b, s, s2);
      switch (r->bin) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        case BinOp::Mul: return a * b;
        case BinOp::Div: return euclid_div(a, b);
        case BinOp::Mod: return euclid_mod(a, b);
        default: break;
      }
    }
  }
  throw EvalError("malformed relational expression");
}

inline bool eval_rformula(const RelFormulaPtr& f, const Store& s, const Store& s2,
                          const Domain& dom) {
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed: return eval_uformula(f->embedded, s, dom);
    case RelFormula::Kind::RightEmbed: return eval_uformula(f->embedded, s2, dom);
    case RelFormula::Kind::Cmp: {
      long long a = eval_relexpr(f->ra, s, s2);
      long long b = eval_relexpr(f->rb, s, s2);
      switch (f->cmp) {
        case BinOp::Eq: return a == b;
        case BinOp::Ne: return a != b;
        case BinOp::Lt: return a < b;
        default: return a <= b;
      }
    }
    case RelFormula::Kind::Not: return !eval_rformula(f->a, s, s2, dom);
    case RelFormula::Kind::And:
      return eval_rformula(f->a, s, s2, dom) && eval_rformula(f->b, s, s2, dom);
    case RelFormula::Kind::Or:
      return eval_rformula(f->a, s, s2, dom) || eval_rformula(f->b, s, s2, dom);
    case RelFormula::Kind::Imp:
      return !eval_rformula(f->a, s, s2, dom) || eval_rformula(f->b, s, s2, dom);
    case RelFormula::Kind::Iff:
      return eval_rformula(f->a, s, s2, dom) == eval_rformula(f->b, s, s2, dom);
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists: {
      bool exists = f->kind == RelFormula::Kind::Exists;
      Store sl = s, sr = s2;
      Store& target = f->side == Side::Left ? sl : sr;
      bool stopped = detail::for_each_value(f->bound.sort, dom, [&](Value v) {
        target[f->bound.name] = v;
        bool hold = eval_rformula(f->a, sl, sr, dom);
        return exists ? hold : !hold;
      });
      return exists ? stopped : !stopped;
    }
    case RelFormula::Kind::Mark: return eval_rformula(f->a, s, s2, dom);
  }
  throw EvalError("malformed relational formula");
}

// ---------------------------------------------------------------------------
// Free variables

inline void fv_expr_into(const ExprPtr& e, VarSet& out) {
  switch (e->kind) {
    case Expr::Kind::VarRef: out.insert(e->var); break;
    case Expr::Kind::Unary: fv_expr_into(e->a, out); break;
    case Expr::Kind::Binary:
      fv_expr_into(e->a, out);
      fv_expr_into(e->b, out);
      break;
    default: break;
  }
}

inline VarSet fv_expr(const ExprPtr& e) {
  VarSet out;
  fv_expr_into(e, out);
  return out;
}

inline VarSet fv_uformula(const UFormulaPtr& f) {
  switch (f->kind) {
    case UFormula::Kind::Atom: return fv_expr(f->atom);
    case UFormula::Kind::Not: return fv_uformula(f->a);
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists: {
      VarSet out = fv_uformula(f->a);
      out.erase(f->bound);
      return out;
    }
    default: {
      VarSet out = fv_uformula(f->a);
      for (const Var& v : fv_uformula(f->b)) out.insert(v);
      return out;
    }
  }
}

namespace detail {

inline void fv_rel_into(const RelFormulaPtr& f, Side side, VarSet& out);

inline void fv_relexpr_into(const RelExprPtr& r, Side side, VarSet& out) {
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed:
      if (side == Side::Left) fv_expr_into(r->embedded, out);
      break;
    case RelExpr::Kind::RightEmbed:
      if (side == Side::Right) fv_expr_into(r->embedded, out);
      break;
    case RelExpr::Kind::Binary:
      fv_relexpr_into(r->a, side, out);
      fv_relexpr_into(r->b, side, out);
      break;
    default: break;
  }
}

inline void fv_rel_into(const RelFormulaPtr& f, Side side, VarSet& out) {
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
      if (side == Side::Left)
        for (const Var& v : fv_uformula(f->embedded)) out.insert(v);
      break;
    case RelFormula::Kind::RightEmbed:
      if (side == Side::Right)
        for (const Var& v : fv_uformula(f->embedded)) out.insert(v);
      break;
    case RelFormula::Kind::Cmp:
      fv_relexpr_into(f->ra, side, out);
      fv_relexpr_into(f->rb, side, out);
      break;
    case RelFormula::Kind::Not:
    case RelFormula::Kind::Mark:
      fv_rel_into(f->a, side, out);
      break;
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists: {
      VarSet inner;
      fv_rel_into(f->a, side, inner);
      if (f->side == side) inner.erase(f->bound);
      for (const Var& v : inner) out.insert(v);
      break;
    }
    default:
      fv_rel_into(f->a, side, out);
      fv_rel_into(f->b, side, out);
      break;
  }
}

}  // namespace detail

inline VarSet fv_left(const RelFormulaPtr& f) {
  VarSet out;
  detail::fv_rel_into(f, Side::Left, out);
  return out;
}

inline VarSet fv_right(const RelFormulaPtr& f) {
  VarSet out;
  detail::fv_rel_into(f, Side::Right, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

inline ExprPtr subst_expr(const ExprPtr& e, const Var& x, const ExprPtr& v) {
  switch (e->kind) {
    case Expr::Kind::VarRef: return e->var == x ? v : e;
    case Expr::Kind::Unary: {
      ExprPtr a = subst_expr(e->a, x, v);
      return a == e->a ? e : expr_un(e->un, a);
    }
    case Expr::Kind::Binary: {
      ExprPtr a = subst_expr(e->a, x, v);
      ExprPtr b = subst_expr(e->b, x, v);
      return (a == e->a && b == e->b) ? e : expr_bin(e->bin, a, b);
    }
    default: return e;
  }
}

namespace detail {

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; i++) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

inline void all_names_expr(const ExprPtr& e, std::set<std::string>& out) {
  switch (e->kind) {
    case Expr::Kind::VarRef: out.insert(e->var.name); break;
    case Expr::Kind::Unary: all_names_expr(e->a, out); break;
    case Expr::Kind::Binary:
      all_names_expr(e->a, out);
      all_names_expr(e->b, out);
      break;
    default: break;
  }
}

inline void all_names_uf(const UFormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case UFormula::Kind::Atom: all_names_expr(f->atom, out); break;
    case UFormula::Kind::Not: all_names_uf(f->a, out); break;
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists:
      out.insert(f->bound.name);
      all_names_uf(f->a, out);
      break;
    default:
      all_names_uf(f->a, out);
      all_names_uf(f->b, out);
      break;
  }
}

}  // namespace detail

// Capture-avoiding substitution of expression v for variable x.
inline UFormulaPtr subst_uformula(const UFormulaPtr& f, const Var& x, const ExprPtr& v) {
  switch (f->kind) {
    case UFormula::Kind::Atom: return uf_atom(subst_expr(f->atom, x, v));
    case UFormula::Kind::Not: return uf_not(subst_uformula(f->a, x, v));
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists: {
      if (f->bound == x) return f;
      VarSet free_v = fv_expr(v);
      if (free_v.count(f->bound)) {
        std::set<std::string> avoid;
        detail::all_names_uf(f->a, avoid);
        detail::all_names_expr(v, avoid);
        avoid.insert(x.name);
        Var renamed{detail::fresh_name(f->bound.name, avoid), f->bound.sort};
        UFormulaPtr body = subst_uformula(f->a, f->bound, expr_var(renamed));
        return uf_quant(f->kind, renamed, subst_uformula(body, x, v));
      }
      return uf_quant(f->kind, f->bound, subst_uformula(f->a, x, v));
    }
    default:
      return uf_bin(f->kind, subst_uformula(f->a, x, v), subst_uformula(f->b, x, v));
  }
}

namespace detail {

inline void all_names_rel(const RelFormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
    case RelFormula::Kind::RightEmbed:
      all_names_uf(f->embedded, out);
      break;
    case RelFormula::Kind::Cmp: {
      auto walk = [&](auto&& self, const RelExprPtr& r) -> void {
        if (r->kind == RelExpr::Kind::Binary) {
          self(self, r->a);
          self(self, r->b);
        } else if (r->kind != RelExpr::Kind::IntConst) {
          all_names_expr(r->embedded, out);
        }
      };
      walk(walk, f->ra);
      walk(walk, f->rb);
      break;
    }
    case RelFormula::Kind::Not:
    case RelFormula::Kind::Mark:
      all_names_rel(f->a, out);
      break;
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists:
      out.insert(f->bound.name);
      all_names_rel(f->a, out);
      break;
    default:
      all_names_rel(f->a, out);
      all_names_rel(f->b, out);
      break;
  }
}

inline RelExprPtr subst_relexpr_side(const RelExprPtr& r, Side side, const Var& x,
                                     const ExprPtr& v) {
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed:
      if (side == Side::Left) return re_left(subst_expr(r->embedded, x, v));
      return r;
    case RelExpr::Kind::RightEmbed:
      if (side == Side::Right) return re_right(subst_expr(r->embedded, x, v));
      return r;
    case RelExpr::Kind::Binary:
      return re_bin(r->bin, subst_relexpr_side(r->a, side, x, v),
                    subst_relexpr_side(r->b, side, x, v));
    default: return r;
  }
}

inline RelFormulaPtr subst_rel_side(const RelFormulaPtr& f, Side side, const Var& x,
                                    const ExprPtr& v) {
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
      if (side == Side::Left) return rf_left(subst_uformula(f->embedded, x, v));
      return f;
    case RelFormula::Kind::RightEmbed:
      if (side == Side::Right) return rf_right(subst_uformula(f->embedded, x, v));
      return f;
    case RelFormula::Kind::Cmp:
      return rf_cmp(f->cmp, subst_relexpr_side(f->ra, side, x, v),
                    subst_relexpr_side(f->rb, side, x, v));
    case RelFormula::Kind::Not:
      return rf_not(subst_rel_side(f->a, side, x, v));
    case RelFormula::Kind::Mark:
      return rf_mark(f->tag, f->path, subst_rel_side(f->a, side, x, v));
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists: {
      if (f->side == side) {
        if (f->bound == x) return f;
        VarSet free_v = fv_expr(v);
        if (free_v.count(f->bound)) {
          std::set<std::string> avoid;
          all_names_rel(f->a, avoid);
          all_names_expr(v, avoid);
          avoid.insert(x.name);
          Var renamed{fresh_name(f->bound.name, avoid), f->bound.sort};
          RelFormulaPtr body =
              subst_rel_side(f->a, side, f->bound, expr_var(renamed));
          return rf_quant(f->kind, f->side, renamed,
                          subst_rel_side(body, side, x, v));
        }
      }
      return rf_quant(f->kind, f->side, f->bound,
                      subst_rel_side(f->a, side, x, v));
    }
    default:
      return rf_bin(f->kind, subst_rel_side(f->a, side, x, v),
                    subst_rel_side(f->b, side, x, v));
  }
}

}  // namespace detail

inline RelFormulaPtr subst_left(const RelFormulaPtr& f, const Var& x, const ExprPtr& v) {
  if (x.sort != v->sort) throw SortError("substitution sort mismatch");
  return detail::subst_rel_side(f, Side::Left, x, v);
}

inline RelFormulaPtr subst_right(const RelFormulaPtr& f, const Var& x, const ExprPtr& v) {
  if (x.sort != v->sort) throw SortError("substitution sort mismatch");
  return detail::subst_rel_side(f, Side::Right, x, v);
}

}  // namespace biver
