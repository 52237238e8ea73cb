// Core AST types for the relational verification toolkit: sorts, values,
// expressions, unary formulas, relational expressions and formulas, commands,
// product commands (bicoms), specs, and whole problems. All nodes are
// immutable and shared; construction goes through the smart constructors
// below, which enforce sort correctness.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biver {

enum class Sort { Int, Bool };

inline const char* sort_name(Sort s) { return s == Sort::Int ? "int" : "bool"; }

struct SortError : std::runtime_error {
  explicit SortError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime value. Booleans are stored as 0/1 so values order and compare
// uniformly.
struct Value {
  Sort sort;
  long long num;

  static Value of_int(long long v) { return {Sort::Int, v}; }
  static Value of_bool(bool v) { return {Sort::Bool, v ? 1 : 0}; }
  long long as_int() const {
    if (sort != Sort::Int) throw SortError("int value expected");
    return num;
  }
  bool as_bool() const {
    if (sort != Sort::Bool) throw SortError("bool value expected");
    return num != 0;
  }
  auto operator<=>(const Value&) const = default;
};

struct Var {
  std::string name;
  Sort sort = Sort::Int;
  auto operator<=>(const Var&) const = default;
};

// ---------------------------------------------------------------------------
// Expressions

enum class UnOp { Neg, Not };
enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

inline bool is_arith(BinOp op) {
  return op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul ||
         op == BinOp::Div || op == BinOp::Mod;
}
inline bool is_cmp(BinOp op) {
  return op == BinOp::Eq || op == BinOp::Ne || op == BinOp::Lt ||
         op == BinOp::Le || op == BinOp::Gt || op == BinOp::Ge;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { IntConst, BoolConst, VarRef, Unary, Binary };
  Kind kind;
  Sort sort;         // sort of the whole expression
  long long ival = 0;
  bool bval = false;
  Var var;
  UnOp un = UnOp::Neg;
  BinOp bin = BinOp::Add;
  ExprPtr a, b;
};

inline ExprPtr expr_int(long long v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::IntConst;
  e->sort = Sort::Int;
  e->ival = v;
  return e;
}

inline ExprPtr expr_bool(bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::BoolConst;
  e->sort = Sort::Bool;
  e->bval = v;
  return e;
}

inline ExprPtr expr_var(Var v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::VarRef;
  e->sort = v.sort;
  e->var = std::move(v);
  return e;
}

inline ExprPtr expr_un(UnOp op, ExprPtr a) {
  Sort want = op == UnOp::Neg ? Sort::Int : Sort::Bool;
  if (a->sort != want)
    throw SortError(std::string("operand of ") +
                    (op == UnOp::Neg ? "negation" : "logical not") +
                    " must be " + sort_name(want));
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Unary;
  e->sort = want;
  e->un = op;
  e->a = std::move(a);
  return e;
}

inline ExprPtr expr_bin(BinOp op, ExprPtr a, ExprPtr b) {
  Sort result;
  if (is_arith(op)) {
    if (a->sort != Sort::Int || b->sort != Sort::Int)
      throw SortError("arithmetic operands must be int");
    result = Sort::Int;
  } else if (op == BinOp::Eq || op == BinOp::Ne) {
    if (a->sort != b->sort)
      throw SortError("comparison operands must have the same sort");
    result = Sort::Bool;
  } else if (is_cmp(op)) {
    if (a->sort != Sort::Int || b->sort != Sort::Int)
      throw SortError("order comparison operands must be int");
    result = Sort::Bool;
  } else {  // And, Or
    if (a->sort != Sort::Bool || b->sort != Sort::Bool)
      throw SortError("logical operands must be bool");
    result = Sort::Bool;
  }
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->sort = result;
  e->bin = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

// ---------------------------------------------------------------------------
// Unary formulas: boolean expressions closed under connectives and
// quantifiers over a single store.

struct UFormula;
using UFormulaPtr = std::shared_ptr<const UFormula>;

struct UFormula {
  enum class Kind { Atom, Not, And, Or, Imp, Iff, Forall, Exists };
  Kind kind;
  ExprPtr atom;       // Atom
  Var bound;          // Forall, Exists
  UFormulaPtr a, b;   // children
};

inline UFormulaPtr uf_atom(ExprPtr e) {
  if (e->sort != Sort::Bool) throw SortError("formula atom must be bool");
  auto f = std::make_shared<UFormula>();
  f->kind = UFormula::Kind::Atom;
  f->atom = std::move(e);
  return f;
}

inline UFormulaPtr uf_not(UFormulaPtr a) {
  auto f = std::make_shared<UFormula>();
  f->kind = UFormula::Kind::Not;
  f->a = std::move(a);
  return f;
}

inline UFormulaPtr uf_bin(UFormula::Kind k, UFormulaPtr a, UFormulaPtr b) {
  auto f = std::make_shared<UFormula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

inline UFormulaPtr uf_and(UFormulaPtr a, UFormulaPtr b) { return uf_bin(UFormula::Kind::And, std::move(a), std::move(b)); }
inline UFormulaPtr uf_or(UFormulaPtr a, UFormulaPtr b) { return uf_bin(UFormula::Kind::Or, std::move(a), std::move(b)); }
inline UFormulaPtr uf_imp(UFormulaPtr a, UFormulaPtr b) { return uf_bin(UFormula::Kind::Imp, std::move(a), std::move(b)); }
inline UFormulaPtr uf_iff(UFormulaPtr a, UFormulaPtr b) { return uf_bin(UFormula::Kind::Iff, std::move(a), std::move(b)); }

inline UFormulaPtr uf_quant(UFormula::Kind k, Var x, UFormulaPtr body) {
  auto f = std::make_shared<UFormula>();
  f->kind = k;
  f->bound = std::move(x);
  f->a = std::move(body);
  return f;
}

inline UFormulaPtr uf_true() { return uf_atom(expr_bool(true)); }
inline UFormulaPtr uf_false() { return uf_atom(expr_bool(false)); }

// ---------------------------------------------------------------------------
// Relational (two-state) expressions: integer valued, built from left and
// right embeddings of unary int expressions.

struct RelExpr;
using RelExprPtr = std::shared_ptr<const RelExpr>;

struct RelExpr {
  enum class Kind { LeftEmbed, RightEmbed, IntConst, Binary };
  Kind kind;
  ExprPtr embedded;   // LeftEmbed, RightEmbed
  long long ival = 0; // IntConst
  BinOp bin = BinOp::Add;
  RelExprPtr a, b;
};

inline RelExprPtr re_embed(bool left, ExprPtr e) {
  if (e->sort != Sort::Int) throw SortError("relational expression embed must be int");
  auto r = std::make_shared<RelExpr>();
  r->kind = left ? RelExpr::Kind::LeftEmbed : RelExpr::Kind::RightEmbed;
  r->embedded = std::move(e);
  return r;
}

inline RelExprPtr re_left(ExprPtr e) { return re_embed(true, std::move(e)); }
inline RelExprPtr re_right(ExprPtr e) { return re_embed(false, std::move(e)); }

inline RelExprPtr re_int(long long v) {
  auto r = std::make_shared<RelExpr>();
  r->kind = RelExpr::Kind::IntConst;
  r->ival = v;
  return r;
}

inline RelExprPtr re_bin(BinOp op, RelExprPtr a, RelExprPtr b) {
  if (!is_arith(op)) throw SortError("relational expressions support arithmetic operators only");
  auto r = std::make_shared<RelExpr>();
  r->kind = RelExpr::Kind::Binary;
  r->bin = op;
  r->a = std::move(a);
  r->b = std::move(b);
  return r;
}

// ---------------------------------------------------------------------------
// Relational formulas over a pair of stores.

struct RelFormula;
using RelFormulaPtr = std::shared_ptr<const RelFormula>;

enum class Side { Left, Right };

struct RelFormula {
  // Mark is a transparent wrapper recording where a verification condition
  // conjunct came from; it has no logical content of its own.
  enum class Kind { LeftEmbed, RightEmbed, Cmp, Not, And, Or, Imp, Iff, Forall, Exists, Mark };
  Kind kind;
  UFormulaPtr embedded;  // LeftEmbed, RightEmbed
  BinOp cmp = BinOp::Eq; // Cmp: Eq, Ne, Lt, Le
  RelExprPtr ra, rb;     // Cmp operands
  Side side = Side::Left; // Forall, Exists
  Var bound;              // Forall, Exists
  RelFormulaPtr a, b;     // children
  std::string tag, path;  // Mark
};

inline RelFormulaPtr rf_embed(Side s, UFormulaPtr p) {
  auto f = std::make_shared<RelFormula>();
  f->kind = s == Side::Left ? RelFormula::Kind::LeftEmbed : RelFormula::Kind::RightEmbed;
  f->embedded = std::move(p);
  return f;
}

inline RelFormulaPtr rf_left(UFormulaPtr p) { return rf_embed(Side::Left, std::move(p)); }
inline RelFormulaPtr rf_right(UFormulaPtr p) { return rf_embed(Side::Right, std::move(p)); }

inline RelFormulaPtr rf_cmp(BinOp op, RelExprPtr a, RelExprPtr b) {
  if (op != BinOp::Eq && op != BinOp::Ne && op != BinOp::Lt && op != BinOp::Le)
    throw SortError("relational comparison must be =, <>, < or <=");
  auto f = std::make_shared<RelFormula>();
  f->kind = RelFormula::Kind::Cmp;
  f->cmp = op;
  f->ra = std::move(a);
  f->rb = std::move(b);
  return f;
}

inline RelFormulaPtr rf_not(RelFormulaPtr a) {
  auto f = std::make_shared<RelFormula>();
  f->kind = RelFormula::Kind::Not;
  f->a = std::move(a);
  return f;
}

inline RelFormulaPtr rf_bin(RelFormula::Kind k, RelFormulaPtr a, RelFormulaPtr b) {
  auto f = std::make_shared<RelFormula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

inline RelFormulaPtr rf_and(RelFormulaPtr a, RelFormulaPtr b) { return rf_bin(RelFormula::Kind::And, std::move(a), std::move(b)); }
inline RelFormulaPtr rf_or(RelFormulaPtr a, RelFormulaPtr b) { return rf_bin(RelFormula::Kind::Or, std::move(a), std::move(b)); }
inline RelFormulaPtr rf_imp(RelFormulaPtr a, RelFormulaPtr b) { return rf_bin(RelFormula::Kind::Imp, std::move(a), std::move(b)); }
inline RelFormulaPtr rf_iff(RelFormulaPtr a, RelFormulaPtr b) { return rf_bin(RelFormula::Kind::Iff, std::move(a), std::move(b)); }

inline RelFormulaPtr rf_quant(RelFormula::Kind k, Side s, Var x, RelFormulaPtr body) {
  if (k != RelFormula::Kind::Forall && k != RelFormula::Kind::Exists)
    throw SortError("quantifier kind expected");
  auto f = std::make_shared<RelFormula>();
  f->kind = k;
  f->side = s;
  f->bound = std::move(x);
  f->a = std::move(body);
  return f;
}

inline RelFormulaPtr rf_mark(std::string tag, std::string path, RelFormulaPtr body) {
  auto f = std::make_shared<RelFormula>();
  f->kind = RelFormula::Kind::Mark;
  f->tag = std::move(tag);
  f->path = std::move(path);
  f->a = std::move(body);
  return f;
}

// Relational truth constants are represented as a left embed of the boolean
// literal.
inline RelFormulaPtr rf_true() { return rf_left(uf_true()); }
inline RelFormulaPtr rf_false() { return rf_left(uf_false()); }

// Agreement e =:= e': equal left and right values for int, iff for bool.
inline RelFormulaPtr rf_agree(ExprPtr e, ExprPtr e2) {
  if (e->sort != e2->sort) throw SortError("agreement operands must have the same sort");
  if (e->sort == Sort::Int)
    return rf_cmp(BinOp::Eq, re_left(e), re_right(e2));
  return rf_iff(rf_left(uf_atom(e)), rf_right(uf_atom(e2)));
}

// ---------------------------------------------------------------------------
// Commands

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Command {
  enum class Kind { Skip, Assign, Hav, Assert, Assume, Seq, If, While };
  Kind kind;
  Var var;            // Assign, Hav
  ExprPtr expr;       // Assign rhs; If and While test
  UFormulaPtr formula; // Assert, Assume
  CommandPtr c1, c2;  // Seq; If branches; While body in c1
  std::optional<ExprPtr> variant;     // While
  std::optional<UFormulaPtr> invariant; // While
};

inline CommandPtr cmd_skip() {
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Skip;
  return c;
}

inline CommandPtr cmd_assign(Var x, ExprPtr e) {
  if (x.sort != e->sort)
    throw SortError("assignment to " + x.name + ": expression sort mismatch");
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Assign;
  c->var = std::move(x);
  c->expr = std::move(e);
  return c;
}

inline CommandPtr cmd_hav(Var x) {
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Hav;
  c->var = std::move(x);
  return c;
}

inline CommandPtr cmd_assert(UFormulaPtr p) {
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Assert;
  c->formula = std::move(p);
  return c;
}

inline CommandPtr cmd_assume(UFormulaPtr p) {
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Assume;
  c->formula = std::move(p);
  return c;
}

inline CommandPtr cmd_seq(CommandPtr a, CommandPtr b) {
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::Seq;
  c->c1 = std::move(a);
  c->c2 = std::move(b);
  return c;
}

inline CommandPtr cmd_if(ExprPtr test, CommandPtr then_c, CommandPtr else_c) {
  if (test->sort != Sort::Bool) throw SortError("if test must be bool");
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::If;
  c->expr = std::move(test);
  c->c1 = std::move(then_c);
  c->c2 = std::move(else_c);
  return c;
}

inline CommandPtr cmd_while(ExprPtr test, CommandPtr body,
                            std::optional<ExprPtr> variant = std::nullopt,
                            std::optional<UFormulaPtr> invariant = std::nullopt) {
  if (test->sort != Sort::Bool) throw SortError("while test must be bool");
  if (variant && (*variant)->sort != Sort::Int)
    throw SortError("loop variant must be int");
  auto c = std::make_shared<Command>();
  c->kind = Command::Kind::While;
  c->expr = std::move(test);
  c->c1 = std::move(body);
  c->variant = std::move(variant);
  c->invariant = std::move(invariant);
  return c;
}

// ---------------------------------------------------------------------------
// Bicoms: product commands pairing two executions.

struct Bicom;
using BicomPtr = std::shared_ptr<const Bicom>;

struct Bicom {
  enum class Kind { Embed, RAssert, HavF, Seq, BiIf, BiWhile };
  Kind kind;
  CommandPtr left, right;  // Embed
  RelFormulaPtr formula;   // RAssert; HavF filter
  Var var;                 // HavF
  BicomPtr b1, b2, b3, b4; // Seq in b1,b2; BiIf branches thth/thel/elth/elel
  ExprPtr ltest, rtest;    // BiIf, BiWhile
  RelFormulaPtr lalign, ralign; // BiWhile
  std::optional<RelExprPtr> variant;      // BiWhile
  std::optional<RelFormulaPtr> invariant; // BiWhile
};

inline BicomPtr bi_embed(CommandPtr l, CommandPtr r) {
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::Embed;
  b->left = std::move(l);
  b->right = std::move(r);
  return b;
}

inline BicomPtr bi_assert(RelFormulaPtr f) {
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::RAssert;
  b->formula = std::move(f);
  return b;
}

inline BicomPtr bi_havf(Var x, RelFormulaPtr filter) {
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::HavF;
  b->var = std::move(x);
  b->formula = std::move(filter);
  return b;
}

inline BicomPtr bi_seq(BicomPtr a, BicomPtr c) {
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::Seq;
  b->b1 = std::move(a);
  b->b2 = std::move(c);
  return b;
}

inline BicomPtr bi_if(ExprPtr lt, ExprPtr rt, BicomPtr thth, BicomPtr thel,
                      BicomPtr elth, BicomPtr elel) {
  if (lt->sort != Sort::Bool || rt->sort != Sort::Bool)
    throw SortError("paired if tests must be bool");
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::BiIf;
  b->ltest = std::move(lt);
  b->rtest = std::move(rt);
  b->b1 = std::move(thth);
  b->b2 = std::move(thel);
  b->b3 = std::move(elth);
  b->b4 = std::move(elel);
  return b;
}

inline BicomPtr bi_while(ExprPtr lt, ExprPtr rt, RelFormulaPtr lalign,
                         RelFormulaPtr ralign, BicomPtr body,
                         std::optional<RelExprPtr> variant = std::nullopt,
                         std::optional<RelFormulaPtr> invariant = std::nullopt) {
  if (lt->sort != Sort::Bool || rt->sort != Sort::Bool)
    throw SortError("paired while tests must be bool");
  auto b = std::make_shared<Bicom>();
  b->kind = Bicom::Kind::BiWhile;
  b->ltest = std::move(lt);
  b->rtest = std::move(rt);
  b->lalign = std::move(lalign);
  b->ralign = std::move(ralign);
  b->b1 = std::move(body);
  b->variant = std::move(variant);
  b->invariant = std::move(invariant);
  return b;
}

// ---------------------------------------------------------------------------
// Specs and problems

enum class SpecKind { ForallForall, ForallExists };

struct Spec {
  SpecKind kind = SpecKind::ForallForall;
  RelFormulaPtr pre, post;
};

struct Problem {
  std::vector<Var> vars;
  CommandPtr left;   // optional, may be null
  CommandPtr right;  // optional, may be null
  BicomPtr bicom;
  Spec spec;
};

// ---------------------------------------------------------------------------
// Structural equality. Mark wrappers are transparent.

inline bool equal_expr(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::IntConst: return x->ival == y->ival;
    case Expr::Kind::BoolConst: return x->bval == y->bval;
    case Expr::Kind::VarRef: return x->var == y->var;
    case Expr::Kind::Unary: return x->un == y->un && equal_expr(x->a, y->a);
    case Expr::Kind::Binary:
      return x->bin == y->bin && equal_expr(x->a, y->a) && equal_expr(x->b, y->b);
  }
  return false;
}

inline bool equal_uformula(const UFormulaPtr& x, const UFormulaPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case UFormula::Kind::Atom: return equal_expr(x->atom, y->atom);
    case UFormula::Kind::Not: return equal_uformula(x->a, y->a);
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists:
      return x->bound == y->bound && equal_uformula(x->a, y->a);
    default:
      return equal_uformula(x->a, y->a) && equal_uformula(x->b, y->b);
  }
}

inline bool equal_relexpr(const RelExprPtr& x, const RelExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case RelExpr::Kind::LeftEmbed:
    case RelExpr::Kind::RightEmbed:
      return equal_expr(x->embedded, y->embedded);
    case RelExpr::Kind::IntConst: return x->ival == y->ival;
    case RelExpr::Kind::Binary:
      return x->bin == y->bin && equal_relexpr(x->a, y->a) && equal_relexpr(x->b, y->b);
  }
  return false;
}

inline bool equal_relformula(const RelFormulaPtr& x, const RelFormulaPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind == RelFormula::Kind::Mark) return equal_relformula(x->a, y);
  if (y->kind == RelFormula::Kind::Mark) return equal_relformula(x, y->a);
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case RelFormula::Kind::LeftEmbed:
    case RelFormula::Kind::RightEmbed:
      return equal_uformula(x->embedded, y->embedded);
    case RelFormula::Kind::Cmp:
      return x->cmp == y->cmp && equal_relexpr(x->ra, y->ra) && equal_relexpr(x->rb, y->rb);
    case RelFormula::Kind::Not: return equal_relformula(x->a, y->a);
    case RelFormula::Kind::Forall:
    case RelFormula::Kind::Exists:
      return x->side == y->side && x->bound == y->bound && equal_relformula(x->a, y->a);
    default:
      return equal_relformula(x->a, y->a) && equal_relformula(x->b, y->b);
  }
}

inline bool equal_opt_expr(const std::optional<ExprPtr>& x, const std::optional<ExprPtr>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || equal_expr(*x, *y);
}

inline bool equal_opt_uformula(const std::optional<UFormulaPtr>& x, const std::optional<UFormulaPtr>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || equal_uformula(*x, *y);
}

inline bool equal_cmd(const CommandPtr& x, const CommandPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Command::Kind::Skip: return true;
    case Command::Kind::Assign:
      return x->var == y->var && equal_expr(x->expr, y->expr);
    case Command::Kind::Hav: return x->var == y->var;
    case Command::Kind::Assert:
    case Command::Kind::Assume:
      return equal_uformula(x->formula, y->formula);
    case Command::Kind::Seq:
      return equal_cmd(x->c1, y->c1) && equal_cmd(x->c2, y->c2);
    case Command::Kind::If:
      return equal_expr(x->expr, y->expr) && equal_cmd(x->c1, y->c1) && equal_cmd(x->c2, y->c2);
    case Command::Kind::While:
      return equal_expr(x->expr, y->expr) && equal_cmd(x->c1, y->c1) &&
             equal_opt_expr(x->variant, y->variant) &&
             equal_opt_uformula(x->invariant, y->invariant);
  }
  return false;
}

inline bool equal_bicom(const BicomPtr& x, const BicomPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Bicom::Kind::Embed:
      return equal_cmd(x->left, y->left) && equal_cmd(x->right, y->right);
    case Bicom::Kind::RAssert: return equal_relformula(x->formula, y->formula);
    case Bicom::Kind::HavF:
      return x->var == y->var && equal_relformula(x->formula, y->formula);
    case Bicom::Kind::Seq:
      return equal_bicom(x->b1, y->b1) && equal_bicom(x->b2, y->b2);
    case Bicom::Kind::BiIf:
      return equal_expr(x->ltest, y->ltest) && equal_expr(x->rtest, y->rtest) &&
             equal_bicom(x->b1, y->b1) && equal_bicom(x->b2, y->b2) &&
             equal_bicom(x->b3, y->b3) && equal_bicom(x->b4, y->b4);
    case Bicom::Kind::BiWhile: {
      bool v_ok = x->variant.has_value() == y->variant.has_value() &&
                  (!x->variant || equal_relexpr(*x->variant, *y->variant));
      bool i_ok = x->invariant.has_value() == y->invariant.has_value() &&
                  (!x->invariant || equal_relformula(*x->invariant, *y->invariant));
      return equal_expr(x->ltest, y->ltest) && equal_expr(x->rtest, y->rtest) &&
             equal_relformula(x->lalign, y->lalign) &&
             equal_relformula(x->ralign, y->ralign) &&
             equal_bicom(x->b1, y->b1) && v_ok && i_ok;
    }
  }
  return false;
}

// Literal tests used by simplification and by the printer's default
// suppression.
inline bool is_true_lit(const ExprPtr& e) {
  return e->kind == Expr::Kind::BoolConst && e->bval;
}
inline bool is_false_lit(const ExprPtr& e) {
  return e->kind == Expr::Kind::BoolConst && !e->bval;
}
inline bool is_skip(const CommandPtr& c) { return c->kind == Command::Kind::Skip; }

inline bool is_rf_false(const RelFormulaPtr& f) {
  return f->kind == RelFormula::Kind::LeftEmbed &&
         f->embedded->kind == UFormula::Kind::Atom &&
         is_false_lit(f->embedded->atom);
}
inline bool is_rf_true(const RelFormulaPtr& f) {
  return f->kind == RelFormula::Kind::LeftEmbed &&
         f->embedded->kind == UFormula::Kind::Atom &&
         is_true_lit(f->embedded->atom);
}

}  // namespace biver
