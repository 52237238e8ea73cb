// Structural analyses over commands and paired programs: projections,
// size, skip-elimination equivalences, well-formedness of paired ifs,
// modified-variable lists, and syntactic frame checks.
#pragma once

#include <string>
#include <vector>

#include "biver/assertions.hpp"
#include "biver/syntax.hpp"

namespace biver {

using FrameList = std::vector<Var>;

// ---------------------------------------------------------------------------
// Projections

inline CommandPtr left_proj(const BicomPtr& b);
inline CommandPtr right_proj(const BicomPtr& b);

namespace detail {

// Rebuild a relational expression that only mentions one side as a unary
// expression; null when the other side occurs.
inline ExprPtr relexpr_to_side(const RelExprPtr& r, Side side) {
  switch (r->kind) {
    case RelExpr::Kind::LeftEmbed:
      return side == Side::Left ? r->embedded : nullptr;
    case RelExpr::Kind::RightEmbed:
      return side == Side::Right ? r->embedded : nullptr;
    case RelExpr::Kind::IntConst: return expr_int(r->ival);
    case RelExpr::Kind::Binary: {
      ExprPtr a = relexpr_to_side(r->a, side);
      ExprPtr b = relexpr_to_side(r->b, side);
      if (!a || !b) return nullptr;
      return expr_bin(r->bin, a, b);
    }
  }
  return nullptr;
}

}  // namespace detail

inline CommandPtr left_proj(const BicomPtr& b) {
  switch (b->kind) {
    case Bicom::Kind::Embed: return b->left;
    case Bicom::Kind::RAssert: return cmd_skip();
    case Bicom::Kind::HavF: return cmd_skip();
    case Bicom::Kind::Seq:
      return cmd_seq(left_proj(b->b1), left_proj(b->b2));
    case Bicom::Kind::BiIf:
      return cmd_if(b->ltest, left_proj(b->b1), left_proj(b->b3));
    case Bicom::Kind::BiWhile:
      return cmd_while(b->ltest, left_proj(b->b1), std::nullopt, std::nullopt);
  }
  return cmd_skip();
}

inline CommandPtr right_proj(const BicomPtr& b) {
  switch (b->kind) {
    case Bicom::Kind::Embed: return b->right;
    case Bicom::Kind::RAssert: return cmd_skip();
    case Bicom::Kind::HavF: return cmd_hav(b->var);
    case Bicom::Kind::Seq:
      return cmd_seq(right_proj(b->b1), right_proj(b->b2));
    case Bicom::Kind::BiIf:
      return cmd_if(b->rtest, right_proj(b->b1), right_proj(b->b2));
    case Bicom::Kind::BiWhile: {
      std::optional<ExprPtr> vnt;
      if (b->variant) {
        ExprPtr e = detail::relexpr_to_side(*b->variant, Side::Right);
        if (e) vnt = e;
      }
      return cmd_while(b->rtest, right_proj(b->b1), vnt, std::nullopt);
    }
  }
  return cmd_skip();
}

inline BicomPtr bileft(const BicomPtr& b) {
  return bi_embed(left_proj(b), cmd_skip());
}

inline BicomPtr biright(const BicomPtr& b) {
  switch (b->kind) {
    case Bicom::Kind::Embed: return bi_embed(cmd_skip(), b->right);
    case Bicom::Kind::RAssert: return b;
    case Bicom::Kind::HavF: return b;
    case Bicom::Kind::Seq: return bi_seq(biright(b->b1), biright(b->b2));
    case Bicom::Kind::BiIf:
      return bi_if(expr_bool(true), b->rtest, biright(b->b1), biright(b->b2),
                   biright(b->b3), biright(b->b4));
    case Bicom::Kind::BiWhile:
      return bi_while(expr_bool(false), b->rtest, rf_false(), b->ralign,
                      biright(b->b1), b->variant, b->invariant);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Size

inline long long size(const CommandPtr& c) {
  switch (c->kind) {
    case Command::Kind::Skip: return 0;
    case Command::Kind::Seq: return 1 + size(c->c1) + size(c->c2);
    case Command::Kind::If: return 1 + size(c->c1) + size(c->c2);
    case Command::Kind::While: return 1 + size(c->c1);
    default: return 1;
  }
}

inline long long size(const BicomPtr& b) {
  switch (b->kind) {
    case Bicom::Kind::Embed: return 1 + size(b->left) + size(b->right);
    case Bicom::Kind::RAssert: return 1;
    case Bicom::Kind::HavF: return 1;
    case Bicom::Kind::Seq: return 1 + size(b->b1) + size(b->b2);
    case Bicom::Kind::BiIf:
      return 1 + size(b->b1) + size(b->b2) + size(b->b3) + size(b->b4);
    case Bicom::Kind::BiWhile: return 1 + size(b->b1);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Command equivalence: the congruence closure of skip elimination,
// if-on-true selection, and while-on-false elimination, decided by
// normalization. Loop annotations are proof hints, so they are dropped
// from the normal form.

namespace detail {

inline void flatten_seq(const CommandPtr& c, std::vector<CommandPtr>& out) {
  if (c->kind == Command::Kind::Seq) {
    flatten_seq(c->c1, out);
    flatten_seq(c->c2, out);
  } else if (c->kind != Command::Kind::Skip) {
    out.push_back(c);
  }
}

inline CommandPtr rebuild_seq(const std::vector<CommandPtr>& atoms) {
  if (atoms.empty()) return cmd_skip();
  CommandPtr c = atoms.back();
  for (size_t i = atoms.size() - 1; i-- > 0;) c = cmd_seq(atoms[i], c);
  return c;
}

}  // namespace detail

inline CommandPtr kat_normalize(const CommandPtr& c) {
  switch (c->kind) {
    case Command::Kind::Seq: {
      std::vector<CommandPtr> atoms;
      detail::flatten_seq(cmd_seq(kat_normalize(c->c1), kat_normalize(c->c2)),
                          atoms);
      return detail::rebuild_seq(atoms);
    }
    case Command::Kind::If: {
      CommandPtr t = kat_normalize(c->c1);
      CommandPtr e = kat_normalize(c->c2);
      if (is_true_lit(c->expr)) return t;
      return cmd_if(c->expr, t, e);
    }
    case Command::Kind::While: {
      if (is_false_lit(c->expr)) return cmd_skip();
      return cmd_while(c->expr, kat_normalize(c->c1), std::nullopt,
                       std::nullopt);
    }
    default: return c;
  }
}

inline bool kateq(const CommandPtr& c, const CommandPtr& d) {
  return equal_cmd(kat_normalize(c), kat_normalize(d));
}

// ---------------------------------------------------------------------------
// Bicom equivalence. Normal form: a sequence of atoms where every embed
// holds a single one-sided command. No rewriting happens under a paired
// while; those compare structurally.

namespace detail {

inline void bi_flatten(const BicomPtr& b, std::vector<BicomPtr>& out) {
  if (b->kind == Bicom::Kind::Seq) {
    bi_flatten(b->b1, out);
    bi_flatten(b->b2, out);
  } else {
    out.push_back(b);
  }
}

inline void push_side_atoms(const CommandPtr& c, bool left,
                            std::vector<BicomPtr>& out) {
  std::vector<CommandPtr> atoms;
  flatten_seq(c, atoms);
  for (const CommandPtr& a : atoms)
    out.push_back(left ? bi_embed(a, cmd_skip()) : bi_embed(cmd_skip(), a));
}

}  // namespace detail

inline BicomPtr bi_normalize(const BicomPtr& b) {
  std::vector<BicomPtr> flat;
  detail::bi_flatten(b, flat);
  std::vector<BicomPtr> atoms;
  for (const BicomPtr& a : flat) {
    switch (a->kind) {
      case Bicom::Kind::Embed: {
        CommandPtr l = kat_normalize(a->left);
        CommandPtr r = kat_normalize(a->right);
        detail::push_side_atoms(l, true, atoms);
        detail::push_side_atoms(r, false, atoms);
        break;
      }
      case Bicom::Kind::BiIf:
        atoms.push_back(bi_if(a->ltest, a->rtest, bi_normalize(a->b1),
                              bi_normalize(a->b2), bi_normalize(a->b3),
                              bi_normalize(a->b4)));
        break;
      default:
        atoms.push_back(a);
        break;
    }
  }
  if (atoms.empty()) return bi_embed(cmd_skip(), cmd_skip());
  BicomPtr r = atoms.back();
  for (size_t i = atoms.size() - 1; i-- > 0;) r = bi_seq(atoms[i], r);
  return r;
}

inline bool bieq(const BicomPtr& b, const BicomPtr& c) {
  return equal_bicom(bi_normalize(b), bi_normalize(c));
}

// ---------------------------------------------------------------------------
// Well-formedness: each paired if must behave the same on the side whose
// test does not distinguish its branches.

namespace detail {

inline void wellformed_walk(const BicomPtr& b, const std::string& path,
                            std::vector<std::string>& problems) {
  auto sub = [&](int i) {
    return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
  };
  switch (b->kind) {
    case Bicom::Kind::Seq:
      wellformed_walk(b->b1, sub(0), problems);
      wellformed_walk(b->b2, sub(1), problems);
      break;
    case Bicom::Kind::BiIf: {
      const char* where = path.empty() ? "top level" : path.c_str();
      if (!kateq(left_proj(b->b1), left_proj(b->b2)))
        problems.push_back(std::string("paired if at ") + where +
                           ": left projections of the tt-tt and tt-ff branches differ");
      if (!kateq(left_proj(b->b3), left_proj(b->b4)))
        problems.push_back(std::string("paired if at ") + where +
                           ": left projections of the ff-tt and ff-ff branches differ");
      if (!kateq(right_proj(b->b1), right_proj(b->b3)))
        problems.push_back(std::string("paired if at ") + where +
                           ": right projections of the tt-tt and ff-tt branches differ");
      if (!kateq(right_proj(b->b2), right_proj(b->b4)))
        problems.push_back(std::string("paired if at ") + where +
                           ": right projections of the tt-ff and ff-ff branches differ");
      wellformed_walk(b->b1, sub(0), problems);
      wellformed_walk(b->b2, sub(1), problems);
      wellformed_walk(b->b3, sub(2), problems);
      wellformed_walk(b->b4, sub(3), problems);
      break;
    }
    case Bicom::Kind::BiWhile:
      wellformed_walk(b->b1, sub(0), problems);
      break;
    default: break;
  }
}

}  // namespace detail

inline bool wellformed(const BicomPtr& b, std::vector<std::string>* problems = nullptr) {
  std::vector<std::string> local;
  detail::wellformed_walk(b, "", local);
  if (problems) *problems = local;
  return local.empty();
}

// ---------------------------------------------------------------------------
// Modified variables

namespace detail {

inline void add_var(FrameList& out, const Var& v) {
  for (const Var& w : out)
    if (w == v) return;
  out.push_back(v);
}

}  // namespace detail

inline void modvars_into(const CommandPtr& c, FrameList& out) {
  switch (c->kind) {
    case Command::Kind::Assign:
    case Command::Kind::Hav: detail::add_var(out, c->var); break;
    case Command::Kind::Seq:
    case Command::Kind::If:
      modvars_into(c->c1, out);
      modvars_into(c->c2, out);
      break;
    case Command::Kind::While: modvars_into(c->c1, out); break;
    default: break;
  }
}

inline FrameList modvars(const CommandPtr& c) {
  FrameList out;
  modvars_into(c, out);
  return out;
}

// Variables the paired program can modify on the right side.
inline void modvars_r_into(const BicomPtr& b, FrameList& out) {
  switch (b->kind) {
    case Bicom::Kind::Embed: modvars_into(b->right, out); break;
    case Bicom::Kind::RAssert: break;
    case Bicom::Kind::HavF: detail::add_var(out, b->var); break;
    case Bicom::Kind::Seq:
      modvars_r_into(b->b1, out);
      modvars_r_into(b->b2, out);
      break;
    case Bicom::Kind::BiIf:
      modvars_r_into(b->b1, out);
      modvars_r_into(b->b2, out);
      modvars_r_into(b->b3, out);
      modvars_r_into(b->b4, out);
      break;
    case Bicom::Kind::BiWhile: modvars_r_into(b->b1, out); break;
  }
}

inline FrameList modvars_r(const BicomPtr& b) {
  FrameList out;
  modvars_r_into(b, out);
  return out;
}

// ---------------------------------------------------------------------------
// Frame checks

namespace detail {

inline bool in_frame(const Var& v, const FrameList& vs) {
  for (const Var& w : vs)
    if (w == v) return true;
  return false;
}

inline bool subset_of(const VarSet& xs, const FrameList& vs) {
  for (const Var& v : xs)
    if (!in_frame(v, vs)) return false;
  return true;
}

}  // namespace detail

inline bool cframe(const CommandPtr& c, const FrameList& vs) {
  switch (c->kind) {
    case Command::Kind::Skip: return true;
    case Command::Kind::Assign:
      return detail::in_frame(c->var, vs) &&
             detail::subset_of(fv_expr(c->expr), vs);
    case Command::Kind::Hav: return detail::in_frame(c->var, vs);
    case Command::Kind::Assert:
    case Command::Kind::Assume:
      return detail::subset_of(fv_uformula(c->formula), vs);
    case Command::Kind::Seq: return cframe(c->c1, vs) && cframe(c->c2, vs);
    case Command::Kind::If:
      return detail::subset_of(fv_expr(c->expr), vs) && cframe(c->c1, vs) &&
             cframe(c->c2, vs);
    case Command::Kind::While:
      return detail::subset_of(fv_expr(c->expr), vs) && cframe(c->c1, vs);
  }
  return false;
}

inline bool bframe(const BicomPtr& b, const FrameList& vs) {
  auto rf_framed = [&](const RelFormulaPtr& f) {
    return detail::subset_of(fv_left(f), vs) &&
           detail::subset_of(fv_right(f), vs);
  };
  switch (b->kind) {
    case Bicom::Kind::Embed:
      return cframe(b->left, vs) && cframe(b->right, vs);
    case Bicom::Kind::RAssert: return rf_framed(b->formula);
    case Bicom::Kind::HavF:
      return detail::in_frame(b->var, vs) && rf_framed(b->formula);
    case Bicom::Kind::Seq: return bframe(b->b1, vs) && bframe(b->b2, vs);
    case Bicom::Kind::BiIf:
      return detail::subset_of(fv_expr(b->ltest), vs) &&
             detail::subset_of(fv_expr(b->rtest), vs) && bframe(b->b1, vs) &&
             bframe(b->b2, vs) && bframe(b->b3, vs) && bframe(b->b4, vs);
    case Bicom::Kind::BiWhile:
      return detail::subset_of(fv_expr(b->ltest), vs) &&
             detail::subset_of(fv_expr(b->rtest), vs) &&
             rf_framed(b->lalign) && rf_framed(b->ralign) && bframe(b->b1, vs);
  }
  return false;
}

}  // namespace biver
