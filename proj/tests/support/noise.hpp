// Syntactic noise for equivalence testing: rewrites that the control
// identities absorb, so the noised program must stay equivalent to and
// co-terminate with the original.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gen.hpp"

namespace genprog {

using namespace biver;

inline std::map<std::string, Sort> to_map(const std::vector<Var>& vars) {
  std::map<std::string, Sort> m;
  for (const Var& v : vars) m[v.name] = v.sort;
  return m;
}

// Unary-level noise: skip padding and sequence reassociation at every
// command position.
inline CommandPtr cmd_noise(Rng& r, const CommandPtr& c) {
  CommandPtr out = c;
  switch (c->kind) {
    case Command::Kind::Seq: {
      CommandPtr a = cmd_noise(r, c->c1);
      CommandPtr b = cmd_noise(r, c->c2);
      // rotate right-leaning pairs into left-leaning ones
      if (b->kind == Command::Kind::Seq && r.chance(50))
        out = cmd_seq(cmd_seq(a, b->c1), b->c2);
      else
        out = cmd_seq(a, b);
      break;
    }
    case Command::Kind::If:
      out = cmd_if(c->expr, cmd_noise(r, c->c1), cmd_noise(r, c->c2));
      break;
    case Command::Kind::While:
      out = cmd_while(c->expr, cmd_noise(r, c->c1), c->variant, c->invariant);
      break;
    default: break;
  }
  if (r.chance(30)) out = cmd_seq(cmd_skip(), out);
  if (r.chance(30)) out = cmd_seq(out, cmd_skip());
  return out;
}

// Paired-level noise: skip-embed padding, embed splitting, and recursion
// into sequence and conditional positions. Paired loops are kept intact.
inline BicomPtr bi_noise(Rng& r, const BicomPtr& b) {
  BicomPtr out = b;
  switch (b->kind) {
    case Bicom::Kind::Embed:
      if (r.chance(40))
        out = bi_seq(bi_embed(b->left, cmd_skip()),
                     bi_embed(cmd_skip(), b->right));
      break;
    case Bicom::Kind::Seq:
      out = bi_seq(bi_noise(r, b->b1), bi_noise(r, b->b2));
      break;
    case Bicom::Kind::BiIf:
      out = bi_if(b->ltest, b->rtest, bi_noise(r, b->b1), bi_noise(r, b->b2),
                  bi_noise(r, b->b3), bi_noise(r, b->b4));
      break;
    default: break;
  }
  if (r.chance(25)) out = bi_seq(bi_embed(cmd_skip(), cmd_skip()), out);
  if (r.chance(25)) out = bi_seq(out, bi_embed(cmd_skip(), cmd_skip()));
  return out;
}

}  // namespace genprog
