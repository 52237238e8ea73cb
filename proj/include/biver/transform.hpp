// Instrumentation pass that makes filtered paired programs checkable:
// loops get variant snapshots and decrease assertions, filters get
// existence assertions. Fresh names derive from the structural path of
// the enclosing loop, so the pass is a pure function and commutes with
// position-preserving rewrites.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "biver/structure.hpp"
#include "biver/syntax.hpp"

namespace biver {

struct TransformError : std::runtime_error {
  explicit TransformError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

using Path = std::vector<int>;

inline std::string gensym_name(const char* tag, const Path& p) {
  std::string s = "$";
  s += tag;
  for (int i : p) {
    s += "_";
    s += std::to_string(i);
  }
  return s;
}

inline std::string path_str(const Path& p) {
  if (p.empty()) return "top level";
  std::string s;
  for (size_t i = 0; i < p.size(); i++) {
    if (i) s += ".";
    s += std::to_string(p[i]);
  }
  return s;
}

inline Var fresh_at(const char* tag, Sort sort, const Path& p,
                    const FrameList& avoid) {
  Var v{gensym_name(tag, p), sort};
  for (const Var& w : avoid)
    if (w.name == v.name)
      throw TransformError("snapshot name '" + v.name +
                           "' collides with a variable in the avoid list");
  return v;
}

inline CommandPtr uchk_at(const CommandPtr& c, Path& path,
                          const FrameList& avoid) {
  switch (c->kind) {
    case Command::Kind::Seq: {
      path.push_back(0);
      CommandPtr a = uchk_at(c->c1, path, avoid);
      path.back() = 1;
      CommandPtr b = uchk_at(c->c2, path, avoid);
      path.pop_back();
      return cmd_seq(a, b);
    }
    case Command::Kind::If: {
      path.push_back(0);
      CommandPtr a = uchk_at(c->c1, path, avoid);
      path.back() = 1;
      CommandPtr b = uchk_at(c->c2, path, avoid);
      path.pop_back();
      return cmd_if(c->expr, a, b);
    }
    case Command::Kind::While: {
      if (!c->variant)
        throw TransformError("loop at " + path_str(path) +
                             " needs a variant annotation");
      ExprPtr e1 = *c->variant;
      Var snap = fresh_at("v", Sort::Int, path, avoid);
      path.push_back(0);
      CommandPtr body = uchk_at(c->c1, path, avoid);
      path.pop_back();
      UFormulaPtr decrease =
          uf_and(uf_atom(expr_bin(BinOp::Le, expr_int(0), e1)),
                 uf_atom(expr_bin(BinOp::Lt, e1, expr_var(snap))));
      CommandPtr inner = cmd_seq(cmd_assign(snap, e1),
                                 cmd_seq(body, cmd_assert(decrease)));
      return cmd_while(c->expr, inner, c->variant, c->invariant);
    }
    default: return c;
  }
}

inline BicomPtr chk_at(const BicomPtr& b, Path& path, const FrameList& avoid) {
  switch (b->kind) {
    case Bicom::Kind::Embed: {
      path.push_back(1);
      CommandPtr r = uchk_at(b->right, path, avoid);
      path.pop_back();
      return bi_embed(b->left, r);
    }
    case Bicom::Kind::RAssert: return b;
    case Bicom::Kind::HavF: {
      RelFormulaPtr can_pick =
          rf_quant(RelFormula::Kind::Exists, Side::Right, b->var, b->formula);
      return bi_seq(
          bi_assert(rf_mark("havf-exists", path_str(path), can_pick)), b);
    }
    case Bicom::Kind::Seq: {
      path.push_back(0);
      BicomPtr a = chk_at(b->b1, path, avoid);
      path.back() = 1;
      BicomPtr c = chk_at(b->b2, path, avoid);
      path.pop_back();
      return bi_seq(a, c);
    }
    case Bicom::Kind::BiIf: {
      const BicomPtr* in[4] = {&b->b1, &b->b2, &b->b3, &b->b4};
      BicomPtr out[4];
      for (int i = 0; i < 4; i++) {
        path.push_back(i);
        out[i] = chk_at(*in[i], path, avoid);
        path.pop_back();
      }
      return bi_if(b->ltest, b->rtest, out[0], out[1], out[2], out[3]);
    }
    case Bicom::Kind::BiWhile: {
      if (!b->variant)
        throw TransformError("paired loop at " + path_str(path) +
                             " needs a variant annotation");
      RelExprPtr vnt = *b->variant;
      Var vsnap = fresh_at("E", Sort::Int, path, avoid);
      Var rosnap = fresh_at("ro", Sort::Bool, path, avoid);
      path.push_back(0);
      BicomPtr body = chk_at(b->b1, path, avoid);
      path.pop_back();

      BicomPtr snap_vnt = bi_havf(
          vsnap, rf_cmp(BinOp::Eq, re_right(expr_var(vsnap)), vnt));
      // record whether a right-only iteration is possible here
      BicomPtr snap_ro = bi_havf(
          rosnap, rf_iff(rf_right(uf_atom(expr_var(rosnap))),
                         rf_and(rf_right(uf_atom(b->rtest)), b->ralign)));
      RelFormulaPtr decrease = rf_imp(
          rf_right(uf_atom(expr_var(rosnap))),
          rf_and(rf_cmp(BinOp::Le, re_int(0), vnt),
                 rf_cmp(BinOp::Lt, vnt, re_right(expr_var(vsnap)))));
      BicomPtr inner =
          bi_seq(snap_vnt,
                 bi_seq(snap_ro, bi_seq(body, bi_assert(decrease))));
      return bi_while(b->ltest, b->rtest, b->lalign, b->ralign, inner,
                      b->variant, b->invariant);
    }
  }
  return b;
}

}  // namespace detail

inline CommandPtr uchk(const CommandPtr& c, const FrameList& avoid) {
  detail::Path path;
  return detail::uchk_at(c, path, avoid);
}

inline BicomPtr chk(const BicomPtr& b, const FrameList& avoid) {
  detail::Path path;
  return detail::chk_at(b, path, avoid);
}

inline FrameList default_avoid(const Problem& p) { return p.vars; }

}  // namespace biver
