// Compile a paired program to a single unary command over renamed-apart
// variables: left-side state lives in l_* variables, right-side state in
// r_*. Relational assertions become plain assertions, filters become
// havoc-then-assume, and aligned loops become a single loop whose branch
// order mirrors the paired-execution rules.
#pragma once

#include <stdexcept>
#include <string>

#include "biver/structure.hpp"
#include "biver/syntax.hpp"

namespace biver {

struct TranslateError : std::runtime_error {
  explicit TranslateError(const std::string& msg) : std::runtime_error(msg) {}
};

inline Var product_var(const Var& v, Side side) {
  const char* tag = side == Side::Left ? "l_" : "r_";
  if (!v.name.empty() && v.name[0] == '$')
    return {"$" + std::string(tag) + v.name.substr(1), v.sort};
  return {tag + v.name, v.sort};
}

namespace detail {

inline ExprPtr rename_expr(const ExprPtr& e, Side side) {
  switch (e->kind) {
    case Expr::Kind::VarRef: return expr_var(product_var(e->var, side));
    case Expr::Kind::Unary: return expr_un(e->un, rename_expr(e->a, side));
    case Expr::Kind::Binary:
      return expr_bin(e->bin, rename_expr(e->a, side),
                      rename_expr(e->b, side));
    default: return e;
  }
}

inline UFormulaPtr rename_uformula(const UFormulaPtr& f, Side side) {
  switch (f->kind) {
    case UFormula::Kind::Atom: return uf_atom(rename_expr(f->atom, side));
    case UFormula::Kind::Not: return uf_not(rename_uformula(f->a, side));
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists:
      return uf_quant(f->kind, product_var(f->bound, side),
                      rename_uformula(f->a, side));
    default:
      return uf_bin(f->kind, rename_uformula(f->a, side),
                    rename_uformula(f->b, side));
  }
}

inline CommandPtr rename_cmd(const CommandPtr& c, Side side) {
  switch (c->kind) {
    case Command::Kind::Skip: return c;
    case Command::Kind::Assign:
      return cmd_assign(product_var(c->var, side), rename_expr(c->expr, side));
    case Command::Kind::Hav: return cmd_hav(product_var(c->var, side));
    case Command::Kind::Assert:
      return cmd_assert(rename_uformula(c->formula, side));
    case Command::Kind::Assume:
      return cmd_assume(rename_uformula(c->formula, side));
    case Command::Kind::Seq:
      return cmd_seq(rename_cmd(c->c1, side), rename_cmd(c->c2, side));
    case Command::Kind::If:
      return cmd_if(rename_expr(c->expr, side), rename_cmd(c->c1, side),
                    rename_cmd(c->c2, side));
    case Command::Kind::While: {
      std::optional<ExprPtr> vnt;
      std::optional<UFormulaPtr> inv;
      if (c->variant) vnt = rename_expr(*c->variant, side);
      if (c->invariant) inv = rename_uformula(*c->invariant, side);
      return cmd_while(rename_expr(c->expr, side), rename_cmd(c->c1, side),
                       vnt, inv);
    }
  }
  return c;
}

inline ExprPtr relexpr_to_expr(const RelExprPtr& r) {
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed: return rename_expr(r->embedded, Side::Left);
    case RelExpr::Kind::RightEmbed:
      return rename_expr(r->embedded, Side::Right);
    case RelExpr::Kind::IntConst: return expr_int(r->ival);
    case RelExpr::Kind::Binary:
      return expr_bin(r->bin, relexpr_to_expr(r->a), relexpr_to_expr(r->b));
  }
  throw TranslateError("malformed relational expression");
}

}  // namespace detail

inline UFormulaPtr embed_product(const RelFormulaPtr& f) {
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
      return detail::rename_uformula(f->embedded, Side::Left);
    case RelFormula::Kind::RightEmbed:
      return detail::rename_uformula(f->embedded, Side::Right);
    case RelFormula::Kind::Cmp:
      return uf_atom(expr_bin(f->cmp, detail::relexpr_to_expr(f->ra),
                              detail::relexpr_to_expr(f->rb)));
    case RelFormula::Kind::Not: return uf_not(embed_product(f->a));
    case RelFormula::Kind::And:
      return uf_and(embed_product(f->a), embed_product(f->b));
    case RelFormula::Kind::Or:
      return uf_or(embed_product(f->a), embed_product(f->b));
    case RelFormula::Kind::Imp:
      return uf_imp(embed_product(f->a), embed_product(f->b));
    case RelFormula::Kind::Iff:
      return uf_iff(embed_product(f->a), embed_product(f->b));
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists:
      return uf_quant(f->kind == RelFormula::Kind::Forall
                          ? UFormula::Kind::Forall
                          : UFormula::Kind::Exists,
                      product_var(f->bound, f->side), embed_product(f->a));
    case RelFormula::Kind::Mark: return embed_product(f->a);
  }
  throw TranslateError("malformed relational formula");
}

namespace detail {

// Quantifier-free formulas double as boolean expressions in loop tests.
inline ExprPtr uformula_to_expr(const UFormulaPtr& f, const std::string& where) {
  switch (f->kind) {
    case UFormula::Kind::Atom: return f->atom;
    case UFormula::Kind::Not: return expr_un(UnOp::Not, uformula_to_expr(f->a, where));
    case UFormula::Kind::And:
      return expr_bin(BinOp::And, uformula_to_expr(f->a, where),
                      uformula_to_expr(f->b, where));
    case UFormula::Kind::Or:
      return expr_bin(BinOp::Or, uformula_to_expr(f->a, where),
                      uformula_to_expr(f->b, where));
    case UFormula::Kind::Imp:
      return expr_bin(BinOp::Or, expr_un(UnOp::Not, uformula_to_expr(f->a, where)),
                      uformula_to_expr(f->b, where));
    case UFormula::Kind::Iff:
      return expr_bin(BinOp::Eq, uformula_to_expr(f->a, where),
                      uformula_to_expr(f->b, where));
    default:
      throw TranslateError("quantified condition at " + where +
                           " cannot be translated to an expression");
  }
}

inline CommandPtr to_unary_at(const BicomPtr& b, std::string path) {
  auto sub = [&](int i) {
    return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
  };
  switch (b->kind) {
    case Bicom::Kind::Embed:
      return cmd_seq(rename_cmd(b->left, Side::Left),
                     rename_cmd(b->right, Side::Right));
    case Bicom::Kind::RAssert: return cmd_assert(embed_product(b->formula));
    case Bicom::Kind::HavF:
      return cmd_seq(cmd_hav(product_var(b->var, Side::Right)),
                     cmd_assume(embed_product(b->formula)));
    case Bicom::Kind::Seq:
      return cmd_seq(to_unary_at(b->b1, sub(0)), to_unary_at(b->b2, sub(1)));
    case Bicom::Kind::BiIf: {
      ExprPtr le = rename_expr(b->ltest, Side::Left);
      ExprPtr re = rename_expr(b->rtest, Side::Right);
      return cmd_if(le,
                    cmd_if(re, to_unary_at(b->b1, sub(0)),
                           to_unary_at(b->b2, sub(1))),
                    cmd_if(re, to_unary_at(b->b3, sub(2)),
                           to_unary_at(b->b4, sub(3))));
    }
    case Bicom::Kind::BiWhile: {
      std::string where = path.empty() ? "top level" : path;
      ExprPtr le = rename_expr(b->ltest, Side::Left);
      ExprPtr re = rename_expr(b->rtest, Side::Right);
      ExprPtr lcond = uformula_to_expr(embed_product(b->lalign), where);
      ExprPtr rcond = uformula_to_expr(embed_product(b->ralign), where);
      CommandPtr t_left = to_unary_at(bileft(b->b1), sub(0));
      CommandPtr t_right = to_unary_at(biright(b->b1), sub(0));
      CommandPtr t_joint = to_unary_at(b->b1, sub(0));
      CommandPtr inner = cmd_if(
          expr_bin(BinOp::And, le, lcond), t_left,
          cmd_if(expr_bin(BinOp::And, re, rcond), t_right,
                 cmd_if(expr_bin(BinOp::And, le, re), t_joint,
                        cmd_assert(uf_false()))));
      return cmd_while(expr_bin(BinOp::Or, le, re), inner, std::nullopt,
                       std::nullopt);
    }
  }
  return cmd_skip();
}

}  // namespace detail

inline CommandPtr to_unary(const BicomPtr& b) {
  return detail::to_unary_at(b, "");
}

// The store pairing used to compare paired execution with its translation.
inline Store product_store(const Store& s, const Store& s2) {
  Store out;
  for (const auto& [k, v] : s) out[product_var(Var{k, v.sort}, Side::Left).name] = v;
  for (const auto& [k, v] : s2) out[product_var(Var{k, v.sort}, Side::Right).name] = v;
  return out;
}

}  // namespace biver
