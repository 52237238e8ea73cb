// Pretty-printer for the concrete text format. Printing then parsing yields
// a structurally identical AST; see parser.hpp for the grammar.
#pragma once

#include <sstream>
#include <string>

#include "biver/syntax.hpp"

namespace biver {

namespace detail {

// Expression binding levels, tightest first: primary 0, unary 1, mul 2,
// add 3, cmp 4, and 5, or 6. A child prints bare when its level fits the
// slot.
inline int expr_level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntConst: return 0;
    case Expr::Kind::BoolConst: return 0;
    case Expr::Kind::VarRef: return 0;
    case Expr::Kind::Unary: return 1;
    case Expr::Kind::Binary:
      switch (e.bin) {
        case BinOp::Mul: case BinOp::Div: case BinOp::Mod: return 2;
        case BinOp::Add: case BinOp::Sub: return 3;
        case BinOp::And: return 5;
        case BinOp::Or: return 6;
        default: return 4;
      }
  }
  return 0;
}

inline const char* binop_token(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "div";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "<>";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "/\\";
    case BinOp::Or: return "\\/";
  }
  return "?";
}

inline void print_expr_at(std::ostream& os, const ExprPtr& e, int slot) {
  int lv = expr_level(*e);
  bool paren = lv > slot;
  if (paren) os << "(";
  switch (e->kind) {
    case Expr::Kind::IntConst: os << e->ival; break;
    case Expr::Kind::BoolConst: os << (e->bval ? "tt" : "ff"); break;
    case Expr::Kind::VarRef: os << e->var.name; break;
    case Expr::Kind::Unary:
      os << (e->un == UnOp::Neg ? "-" : "!");
      print_expr_at(os, e->a, 1);
      break;
    case Expr::Kind::Binary: {
      // all binary operators associate to the left
      print_expr_at(os, e->a, lv);
      os << " " << binop_token(e->bin) << " ";
      print_expr_at(os, e->b, lv - 1);
      break;
    }
  }
  if (paren) os << ")";
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr_at(os, e, 6);
  return os.str();
}

namespace detail {

// Whether a bound variable's sort is recoverable from its name alone, so
// the printer can omit the sort annotation. Generated names carry their
// sort by prefix convention.
inline bool derived_sort_matches(const Var& v) {
  std::string base = v.name;
  if (base.rfind("$l_", 0) == 0 || base.rfind("$r_", 0) == 0) base = "$" + base.substr(3);
  if (base.rfind("$ro", 0) == 0) return v.sort == Sort::Bool;
  if (!base.empty() && base[0] == '$') return v.sort == Sort::Int;
  return false;
}

inline void print_binder(std::ostream& os, const Var& v) {
  os << v.name;
  if (!derived_sort_matches(v)) os << ":" << sort_name(v.sort);
}

// Formula binding levels: atom 0, not 1, and 2, or 3, imp 4, iff 5,
// quantifier 6. Implication and iff associate to the right.
inline void print_uformula_at(std::ostream& os, const UFormulaPtr& f, int slot) {
  int lv;
  switch (f->kind) {
    case UFormula::Kind::Atom: lv = 0; break;
    case UFormula::Kind::Not: lv = 1; break;
    case UFormula::Kind::And: lv = 2; break;
    case UFormula::Kind::Or: lv = 3; break;
    case UFormula::Kind::Imp: lv = 4; break;
    case UFormula::Kind::Iff: lv = 5; break;
    default: lv = 6; break;
  }
  bool paren = lv > slot;
  if (paren) os << "(";
  switch (f->kind) {
    case UFormula::Kind::Atom:
      // an atom prints at comparison level; a bool-sorted connective
      // expression needs parentheses to stay an atom
      print_expr_at(os, f->atom, 4);
      break;
    case UFormula::Kind::Not:
      os << "!";
      print_uformula_at(os, f->a, 1);
      break;
    case UFormula::Kind::And:
      print_uformula_at(os, f->a, 2);
      os << " /\\ ";
      print_uformula_at(os, f->b, 1);
      break;
    case UFormula::Kind::Or:
      print_uformula_at(os, f->a, 3);
      os << " \\/ ";
      print_uformula_at(os, f->b, 2);
      break;
    case UFormula::Kind::Imp:
      print_uformula_at(os, f->a, 3);
      os << " -> ";
      print_uformula_at(os, f->b, 4);
      break;
    case UFormula::Kind::Iff:
      print_uformula_at(os, f->a, 4);
      os << " <-> ";
      print_uformula_at(os, f->b, 5);
      break;
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists:
      os << (f->kind == UFormula::Kind::Forall ? "forall " : "exists ");
      print_binder(os, f->bound);
      os << " . ";
      print_uformula_at(os, f->a, 6);
      break;
  }
  if (paren) os << ")";
}

// Relational expression levels: atom 0, mul 2, add 3.
inline void print_relexpr_at(std::ostream& os, const RelExprPtr& r, int slot) {
  int lv = 0;
  if (r->kind == RelExpr::Kind::Binary)
    lv = (r->bin == BinOp::Mul || r->bin == BinOp::Div || r->bin == BinOp::Mod) ? 2 : 3;
  bool paren = lv > slot;
  if (paren) os << "(";
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed:
      os << "*<| ";
      print_expr_at(os, r->embedded, 6);
      os << " *<]";
      break;
    case RelExpr::Kind::RightEmbed:
      os << "[> ";
      print_expr_at(os, r->embedded, 6);
      os << " |>";
      break;
    case RelExpr::Kind::IntConst: os << r->ival; break;
    case RelExpr::Kind::Binary:
      print_relexpr_at(os, r->a, lv);
      os << " " << binop_token(r->bin) << " ";
      print_relexpr_at(os, r->b, lv - 1);
      break;
  }
  if (paren) os << ")";
}

// Agreement re-sugaring: print e =:= e' for the two desugared shapes. A
// leading ! on the left operand needs parentheses, otherwise it would read
// back as negation of the whole agreement.
inline void print_agree_operand(std::ostream& os, const ExprPtr& e) {
  bool paren = e->kind == Expr::Kind::Unary && e->un == UnOp::Not;
  if (paren) os << "(";
  print_expr_at(os, e, 3);
  if (paren) os << ")";
}

inline bool try_print_agree(std::ostream& os, const RelFormula& f) {
  if (f.kind == RelFormula::Kind::Cmp && f.cmp == BinOp::Eq &&
      f.ra->kind == RelExpr::Kind::LeftEmbed &&
      f.rb->kind == RelExpr::Kind::RightEmbed) {
    print_agree_operand(os, f.ra->embedded);
    os << " =:= ";
    print_agree_operand(os, f.rb->embedded);
    return true;
  }
  if (f.kind == RelFormula::Kind::Iff &&
      f.a->kind == RelFormula::Kind::LeftEmbed &&
      f.a->embedded->kind == UFormula::Kind::Atom &&
      f.b->kind == RelFormula::Kind::RightEmbed &&
      f.b->embedded->kind == UFormula::Kind::Atom) {
    print_agree_operand(os, f.a->embedded->atom);
    os << " =:= ";
    print_agree_operand(os, f.b->embedded->atom);
    return true;
  }
  return false;
}

inline void print_relformula_at(std::ostream& os, const RelFormulaPtr& f0, int slot) {
  const RelFormula* f = f0.get();
  while (f->kind == RelFormula::Kind::Mark) f = f->a.get();
  if (try_print_agree(os, *f)) return;  // agreement prints as an atom
  int lv;
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
    case RelFormula::Kind::RightEmbed:
    case RelFormula::Kind::Cmp: lv = 0; break;
    case RelFormula::Kind::Not: lv = 1; break;
    case RelFormula::Kind::And: lv = 2; break;
    case RelFormula::Kind::Or: lv = 3; break;
    case RelFormula::Kind::Imp: lv = 4; break;
    case RelFormula::Kind::Iff: lv = 5; break;
    default: lv = 6; break;
  }
  bool paren = lv > slot;
  if (paren) os << "(";
  switch (f->kind) {
    case RelFormula::Kind::LeftEmbed:
      // tt and ff denote the relational constants
      if (f->embedded->kind == UFormula::Kind::Atom &&
          f->embedded->atom->kind == Expr::Kind::BoolConst) {
        os << (f->embedded->atom->bval ? "tt" : "ff");
      } else {
        os << "*<| ";
        print_uformula_at(os, f->embedded, 6);
        os << " *<]";
      }
      break;
    case RelFormula::Kind::RightEmbed:
      os << "[> ";
      print_uformula_at(os, f->embedded, 6);
      os << " |>";
      break;
    case RelFormula::Kind::Cmp:
      print_relexpr_at(os, f->ra, 3);
      os << " " << binop_token(f->cmp) << " ";
      print_relexpr_at(os, f->rb, 3);
      break;
    case RelFormula::Kind::Not:
      os << "!";
      print_relformula_at(os, f->a, 1);
      break;
    case RelFormula::Kind::And:
      print_relformula_at(os, f->a, 2);
      os << " /\\ ";
      print_relformula_at(os, f->b, 1);
      break;
    case RelFormula::Kind::Or:
      print_relformula_at(os, f->a, 3);
      os << " \\/ ";
      print_relformula_at(os, f->b, 2);
      break;
    case RelFormula::Kind::Imp:
      print_relformula_at(os, f->a, 3);
      os << " -> ";
      print_relformula_at(os, f->b, 4);
      break;
    case RelFormula::Kind::Iff:
      print_relformula_at(os, f->a, 4);
      os << " <-> ";
      print_relformula_at(os, f->b, 5);
      break;
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists:
      os << (f->kind == RelFormula::Kind::Forall ? "forall " : "exists ");
      if (f->side == Side::Right) {
        os << "|";
        print_binder(os, f->bound);
      } else {
        print_binder(os, f->bound);
        os << "|";
      }
      os << " . ";
      print_relformula_at(os, f->a, 6);
      break;
    case RelFormula::Kind::Mark: break;  // unreachable, unwrapped above
  }
  if (paren) os << ")";
}

}  // namespace detail

inline std::string print_uformula(const UFormulaPtr& f) {
  std::ostringstream os;
  detail::print_uformula_at(os, f, 6);
  return os.str();
}

inline std::string print_relexpr(const RelExprPtr& r) {
  std::ostringstream os;
  detail::print_relexpr_at(os, r, 3);
  return os.str();
}

inline std::string print_relformula(const RelFormulaPtr& f) {
  std::ostringstream os;
  detail::print_relformula_at(os, f, 6);
  return os.str();
}

namespace detail {

// Commands print inline; sequencing binds loosest.
inline void print_cmd_inline(std::ostream& os, const CommandPtr& c) {
  switch (c->kind) {
    case Command::Kind::Skip: os << "skip"; break;
    case Command::Kind::Assign:
      os << c->var.name << " := ";
      print_expr_at(os, c->expr, 6);
      break;
    case Command::Kind::Hav: os << "hav " << c->var.name; break;
    case Command::Kind::Assert:
      os << "assert { ";
      print_uformula_at(os, c->formula, 6);
      os << " }";
      break;
    case Command::Kind::Assume:
      os << "assume { ";
      print_uformula_at(os, c->formula, 6);
      os << " }";
      break;
    case Command::Kind::Seq:
      print_cmd_inline(os, c->c1);
      os << "; ";
      print_cmd_inline(os, c->c2);
      break;
    case Command::Kind::If:
      os << "if ";
      print_expr_at(os, c->expr, 6);
      os << " then ";
      print_cmd_inline(os, c->c1);
      if (!is_skip(c->c2)) {
        os << " else ";
        print_cmd_inline(os, c->c2);
      }
      os << " end";
      break;
    case Command::Kind::While:
      os << "while ";
      print_expr_at(os, c->expr, 6);
      if (c->variant) {
        os << " vnt ";
        print_expr_at(os, *c->variant, 6);
      }
      if (c->invariant) {
        os << " inv ";
        print_uformula_at(os, *c->invariant, 6);
      }
      os << " do ";
      print_cmd_inline(os, c->c1);
      os << " done";
      break;
  }
}

inline void indent_to(std::ostream& os, int n) {
  for (int i = 0; i < n; i++) os << "  ";
}

inline void print_bicom_at(std::ostream& os, const BicomPtr& b, int ind) {
  switch (b->kind) {
    case Bicom::Kind::Embed:
      indent_to(os, ind);
      if (equal_cmd(b->left, b->right)) {
        os << "|_ ";
        print_cmd_inline(os, b->left);
        os << " _|";
      } else {
        os << "< ";
        print_cmd_inline(os, b->left);
        os << " | ";
        print_cmd_inline(os, b->right);
        os << " >";
      }
      break;
    case Bicom::Kind::RAssert:
      indent_to(os, ind);
      os << "assert { ";
      print_relformula_at(os, b->formula, 6);
      os << " }";
      break;
    case Bicom::Kind::HavF:
      indent_to(os, ind);
      os << "havF " << b->var.name << " { ";
      print_relformula_at(os, b->formula, 6);
      os << " }";
      break;
    case Bicom::Kind::Seq:
      print_bicom_at(os, b->b1, ind);
      os << ";\n";
      print_bicom_at(os, b->b2, ind);
      break;
    case Bicom::Kind::BiIf:
      indent_to(os, ind);
      os << "if ";
      print_expr_at(os, b->ltest, 6);
      os << " | ";
      print_expr_at(os, b->rtest, 6);
      os << " thth\n";
      print_bicom_at(os, b->b1, ind + 1);
      os << "\n";
      indent_to(os, ind);
      os << "thel\n";
      print_bicom_at(os, b->b2, ind + 1);
      os << "\n";
      indent_to(os, ind);
      os << "elth\n";
      print_bicom_at(os, b->b3, ind + 1);
      os << "\n";
      indent_to(os, ind);
      os << "elel\n";
      print_bicom_at(os, b->b4, ind + 1);
      os << "\n";
      indent_to(os, ind);
      os << "fi";
      break;
    case Bicom::Kind::BiWhile:
      indent_to(os, ind);
      os << "while ";
      print_expr_at(os, b->ltest, 6);
      os << " | ";
      print_expr_at(os, b->rtest, 6);
      if (!(is_rf_false(b->lalign) && is_rf_false(b->ralign))) {
        os << " algn ";
        print_relformula_at(os, b->lalign, 6);
        os << " | ";
        print_relformula_at(os, b->ralign, 6);
      }
      if (b->variant) {
        os << " vnt ";
        print_relexpr_at(os, *b->variant, 3);
      }
      if (b->invariant) {
        os << " inv ";
        print_relformula_at(os, *b->invariant, 6);
      }
      os << " do\n";
      print_bicom_at(os, b->b1, ind + 1);
      os << "\n";
      indent_to(os, ind);
      os << "done";
      break;
  }
}

}  // namespace detail

inline std::string print_cmd(const CommandPtr& c) {
  std::ostringstream os;
  detail::print_cmd_inline(os, c);
  return os.str();
}

inline std::string print_bicom(const BicomPtr& b) {
  std::ostringstream os;
  detail::print_bicom_at(os, b, 0);
  return os.str();
}

inline std::string print_problem(const Problem& p) {
  std::ostringstream os;
  os << "vars ";
  for (size_t i = 0; i < p.vars.size(); i++) {
    if (i) os << ", ";
    os << p.vars[i].name << ":" << sort_name(p.vars[i].sort);
  }
  os << ";\n";
  if (p.left) os << "left { " << print_cmd(p.left) << " }\n";
  if (p.right) os << "right { " << print_cmd(p.right) << " }\n";
  os << "bicom {\n" << print_bicom(p.bicom) << "\n}\n";
  os << "spec " << (p.spec.kind == SpecKind::ForallExists ? "ae" : "aa");
  os << " pre { " << print_relformula(p.spec.pre) << " }";
  os << " post { " << print_relformula(p.spec.post) << " }\n";
  return os.str();
}

}  // namespace biver
