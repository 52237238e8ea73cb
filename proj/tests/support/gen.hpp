// Seeded random generators for expressions, commands, formulas, and
// product programs. Output is kept total to evaluate (divisors are
// nonzero literals) and paired conditionals are assembled so the
// branch-projection side conditions hold by construction.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "biver/structure.hpp"
#include "biver/syntax.hpp"

namespace genprog {

using namespace biver;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int pick(int n) { return int(eng() % uint64_t(n)); }
  bool chance(int pct) { return pick(100) < pct; }
  long long small_int() { return pick(5) - 2; }
};

inline std::vector<Var> int_vars(int n) {
  static const char* names[] = {"x", "y", "z"};
  std::vector<Var> out;
  for (int i = 0; i < n && i < 3; i++) out.push_back({names[i], Sort::Int});
  return out;
}

inline ExprPtr int_expr(Rng& r, const std::vector<Var>& vars, int depth) {
  if (depth <= 0 || r.chance(45)) {
    if (!vars.empty() && r.chance(60)) return expr_var(vars[r.pick(int(vars.size()))]);
    return expr_int(r.small_int());
  }
  switch (r.pick(6)) {
    case 0: return expr_bin(BinOp::Add, int_expr(r, vars, depth - 1),
                            int_expr(r, vars, depth - 1));
    case 1: return expr_bin(BinOp::Sub, int_expr(r, vars, depth - 1),
                            int_expr(r, vars, depth - 1));
    case 2: return expr_bin(BinOp::Mul, int_expr(r, vars, depth - 1),
                            int_expr(r, vars, depth - 1));
    case 3: {
      long long d = r.chance(50) ? 2 : -3;
      return expr_bin(r.chance(50) ? BinOp::Div : BinOp::Mod,
                      int_expr(r, vars, depth - 1), expr_int(d));
    }
    case 4:
      if (!vars.empty())
        return expr_un(UnOp::Neg, expr_var(vars[r.pick(int(vars.size()))]));
      return expr_int(r.small_int());
    default:
      return int_expr(r, vars, depth - 1);
  }
}

inline ExprPtr test_expr(Rng& r, const std::vector<Var>& vars, int depth) {
  if (depth <= 0 || r.chance(55)) {
    if (r.chance(15)) return expr_bool(r.chance(50));
    static const BinOp cmps[] = {BinOp::Lt, BinOp::Le, BinOp::Gt,
                                 BinOp::Ge, BinOp::Eq, BinOp::Ne};
    return expr_bin(cmps[r.pick(6)], int_expr(r, vars, 1),
                    int_expr(r, vars, 1));
  }
  switch (r.pick(3)) {
    case 0: return expr_bin(BinOp::And, test_expr(r, vars, depth - 1),
                            test_expr(r, vars, depth - 1));
    case 1: return expr_bin(BinOp::Or, test_expr(r, vars, depth - 1),
                            test_expr(r, vars, depth - 1));
    default: return expr_un(UnOp::Not, test_expr(r, vars, depth - 1));
  }
}

inline UFormulaPtr uformula(Rng& r, std::vector<Var> vars, int depth,
                            bool quant) {
  if (depth <= 0 || r.chance(50)) return uf_atom(test_expr(r, vars, 1));
  int roll = r.pick(quant ? 6 : 5);
  switch (roll) {
    case 0: return uf_and(uformula(r, vars, depth - 1, quant),
                          uformula(r, vars, depth - 1, quant));
    case 1: return uf_or(uformula(r, vars, depth - 1, quant),
                         uformula(r, vars, depth - 1, quant));
    case 2: return uf_imp(uformula(r, vars, depth - 1, quant),
                          uformula(r, vars, depth - 1, quant));
    case 3: return uf_iff(uformula(r, vars, depth - 1, quant),
                          uformula(r, vars, depth - 1, quant));
    case 4: return uf_not(uformula(r, vars, depth - 1, quant));
    default: {
      Var bound{"q" + std::to_string(r.pick(2)), Sort::Int};
      vars.push_back(bound);
      return uf_quant(r.chance(50) ? UFormula::Kind::Forall
                                   : UFormula::Kind::Exists,
                      bound, uformula(r, vars, depth - 1, quant));
    }
  }
}

inline RelExprPtr relexpr(Rng& r, const std::vector<Var>& vars, int depth) {
  if (depth <= 0 || r.chance(50)) {
    switch (r.pick(3)) {
      case 0: return re_left(int_expr(r, vars, 1));
      case 1: return re_right(int_expr(r, vars, 1));
      default: return re_int(r.small_int());
    }
  }
  switch (r.pick(4)) {
    case 0: return re_bin(BinOp::Add, relexpr(r, vars, depth - 1),
                          relexpr(r, vars, depth - 1));
    case 1: return re_bin(BinOp::Sub, relexpr(r, vars, depth - 1),
                          relexpr(r, vars, depth - 1));
    case 2: return re_bin(BinOp::Mul, relexpr(r, vars, depth - 1),
                          relexpr(r, vars, depth - 1));
    default:
      return re_bin(r.chance(50) ? BinOp::Div : BinOp::Mod,
                    relexpr(r, vars, depth - 1), re_int(r.chance(50) ? 2 : -3));
  }
}

inline RelFormulaPtr relformula(Rng& r, std::vector<Var> vars, int depth,
                                bool quant) {
  if (depth <= 0 || r.chance(45)) {
    switch (r.pick(4)) {
      case 0: return rf_agree(int_expr(r, vars, 1), int_expr(r, vars, 1));
      case 1: {
        static const BinOp cmps[] = {BinOp::Lt, BinOp::Le, BinOp::Eq,
                                     BinOp::Ne};
        return rf_cmp(cmps[r.pick(4)], relexpr(r, vars, 1),
                      relexpr(r, vars, 1));
      }
      case 2: return rf_left(uformula(r, vars, 1, quant));
      default: return rf_right(uformula(r, vars, 1, quant));
    }
  }
  int roll = r.pick(quant ? 6 : 5);
  switch (roll) {
    case 0: return rf_and(relformula(r, vars, depth - 1, quant),
                          relformula(r, vars, depth - 1, quant));
    case 1: return rf_or(relformula(r, vars, depth - 1, quant),
                         relformula(r, vars, depth - 1, quant));
    case 2: return rf_imp(relformula(r, vars, depth - 1, quant),
                          relformula(r, vars, depth - 1, quant));
    case 3: return rf_iff(relformula(r, vars, depth - 1, quant),
                          relformula(r, vars, depth - 1, quant));
    case 4: return rf_not(relformula(r, vars, depth - 1, quant));
    default: {
      Var bound{"q" + std::to_string(r.pick(2)), Sort::Int};
      std::vector<Var> ext = vars;
      ext.push_back(bound);
      Side side = r.chance(50) ? Side::Left : Side::Right;
      // the bound name is visible on the binder's side only
      RelFormulaPtr use = side == Side::Left
                              ? rf_left(uf_atom(test_expr(r, ext, 1)))
                              : rf_right(uf_atom(test_expr(r, ext, 1)));
      RelFormulaPtr rest = relformula(r, vars, depth - 1, quant);
      RelFormulaPtr body =
          r.chance(50) ? rf_and(use, rest) : rf_imp(use, rest);
      return rf_quant(r.chance(50) ? RelFormula::Kind::Forall
                                   : RelFormula::Kind::Exists,
                      side, bound, body);
    }
  }
}

struct GenOptions {
  int depth = 3;
  bool loops = true;
  bool quant = true;
  bool asserts = true;
};

inline CommandPtr command(Rng& r, const std::vector<Var>& vars, int depth,
                          const GenOptions& opt) {
  if (depth <= 0 || r.chance(40)) {
    int roll = r.pick(opt.asserts ? 10 : 6);
    if (roll < 1 || vars.empty()) return cmd_skip();
    if (roll < 4)
      return cmd_assign(vars[r.pick(int(vars.size()))], int_expr(r, vars, 2));
    if (roll < 6) return cmd_hav(vars[r.pick(int(vars.size()))]);
    if (roll < 8) return cmd_assert(uformula(r, vars, 1, opt.quant));
    return cmd_assume(uformula(r, vars, 1, opt.quant));
  }
  int roll = r.pick(opt.loops ? 10 : 8);
  if (roll < 5)
    return cmd_seq(command(r, vars, depth - 1, opt),
                   command(r, vars, depth - 1, opt));
  if (roll < 8)
    return cmd_if(test_expr(r, vars, 1), command(r, vars, depth - 1, opt),
                  command(r, vars, depth - 1, opt));
  // loops always carry a variant so the instrumentation pass can fire
  return cmd_while(test_expr(r, vars, 1), command(r, vars, depth - 1, opt),
                   int_expr(r, vars, 1), std::nullopt);
}

inline BicomPtr bicom(Rng& r, const std::vector<Var>& vars, int depth,
                      const GenOptions& opt) {
  if (depth <= 0 || r.chance(35)) {
    int roll = r.pick(10);
    if (roll < 5 || vars.empty())
      return bi_embed(command(r, vars, depth, opt),
                      command(r, vars, depth, opt));
    if (roll < 7 && opt.asserts)
      return bi_assert(relformula(r, vars, 1, opt.quant));
    return bi_havf(vars[r.pick(int(vars.size()))],
                   relformula(r, vars, 1, opt.quant));
  }
  int roll = r.pick(opt.loops ? 10 : 9);
  if (roll < 5)
    return bi_seq(bicom(r, vars, depth - 1, opt),
                  bicom(r, vars, depth - 1, opt));
  if (roll < 9) {
    // derive the mixed branches from the outer two so every projection
    // side condition holds structurally
    BicomPtr b1 = bicom(r, vars, depth - 1, opt);
    BicomPtr b4 = bicom(r, vars, depth - 1, opt);
    BicomPtr b2 = bi_embed(left_proj(b1), right_proj(b4));
    BicomPtr b3 = bi_embed(left_proj(b4), right_proj(b1));
    return bi_if(test_expr(r, vars, 1), test_expr(r, vars, 1), b1, b2, b3, b4);
  }
  // variants mention the right side only, so every projection keeps them
  // and the result stays instrumentable
  RelExprPtr vnt = r.chance(70) ? re_right(int_expr(r, vars, 1))
                                : re_int(r.small_int());
  return bi_while(test_expr(r, vars, 1), test_expr(r, vars, 1),
                  relformula(r, vars, 1, false), relformula(r, vars, 1, false),
                  bicom(r, vars, depth - 1, opt), vnt, std::nullopt);
}

}  // namespace genprog
