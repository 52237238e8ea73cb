// Bounded big-step execution. Commands and paired programs run over a
// finite integer domain; every reachable outcome is enumerated. Fuel
// bounds loop unfoldings along any path and is threaded pathwise, so a
// state reached with different remaining fuels is explored per fuel.
// Exhaustion is exact: it fires iff some derivation ran out of fuel.
#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "biver/assertions.hpp"
#include "biver/structure.hpp"
#include "biver/syntax.hpp"

namespace biver {

struct CmdResult {
  std::set<Store> outcomes;
  bool fail = false;       // some path ended in an assertion failure
  bool exhausted = false;  // some path ran out of fuel
  long long blocked = 0;   // paths that died at an unsatisfiable assume
};

using StorePair = std::pair<Store, Store>;

struct BiResult {
  std::set<StorePair> outcomes;
  bool fail = false;
  bool exhausted = false;
  long long blocked = 0;  // unsatisfiable filters and assumes
};

namespace detail {

using FuelStates = std::set<std::pair<Store, long long>>;
using FuelPairs = std::set<std::pair<StorePair, long long>>;

struct EvalFlags {
  bool fail = false;
  bool exhausted = false;
  long long blocked = 0;
};

inline FuelStates step_cmd(const CommandPtr& c, const FuelStates& in,
                           const Domain& dom, EvalFlags& flags) {
  switch (c->kind) {
    case Command::Kind::Skip: return in;
    case Command::Kind::Assign: {
      FuelStates out;
      for (const auto& [s, f] : in) {
        Store t = s;
        t[c->var.name] = eval_expr(c->expr, s);
        out.insert({t, f});
      }
      return out;
    }
    case Command::Kind::Hav: {
      FuelStates out;
      for (const auto& [s, f] : in) {
        Store t = s;
        for_each_value(c->var.sort, dom, [&](Value v) {
          t[c->var.name] = v;
          out.insert({t, f});
          return false;
        });
      }
      return out;
    }
    case Command::Kind::Assert: {
      FuelStates out;
      for (const auto& [s, f] : in) {
        if (eval_uformula(c->formula, s, dom))
          out.insert({s, f});
        else
          flags.fail = true;
      }
      return out;
    }
    case Command::Kind::Assume: {
      FuelStates out;
      for (const auto& [s, f] : in) {
        if (eval_uformula(c->formula, s, dom))
          out.insert({s, f});
        else
          flags.blocked++;
      }
      return out;
    }
    case Command::Kind::Seq:
      return step_cmd(c->c2, step_cmd(c->c1, in, dom, flags), dom, flags);
    case Command::Kind::If: {
      FuelStates taken, other;
      for (const auto& [s, f] : in)
        (eval_expr(c->expr, s).as_bool() ? taken : other).insert({s, f});
      FuelStates out = step_cmd(c->c1, taken, dom, flags);
      for (const auto& sf : step_cmd(c->c2, other, dom, flags)) out.insert(sf);
      return out;
    }
    case Command::Kind::While: {
      FuelStates out;
      FuelStates seen = in;
      FuelStates frontier = in;
      while (!frontier.empty()) {
        FuelStates next;
        for (const auto& [s, f] : frontier) {
          if (!eval_expr(c->expr, s).as_bool()) {
            out.insert({s, f});
            continue;
          }
          if (f == 0) {
            flags.exhausted = true;
            continue;
          }
          FuelStates body = step_cmd(c->c1, {{s, f - 1}}, dom, flags);
          for (const auto& sf : body)
            if (seen.insert(sf).second) next.insert(sf);
        }
        frontier = std::move(next);
      }
      return out;
    }
  }
  return {};
}

inline FuelPairs step_bicom(const BicomPtr& b, const FuelPairs& in,
                            const Domain& dom, EvalFlags& flags) {
  switch (b->kind) {
    case Bicom::Kind::Embed: {
      FuelPairs out;
      for (const auto& [ss, f] : in) {
        FuelStates lres = step_cmd(b->left, {{ss.first, f}}, dom, flags);
        for (const auto& [t, g] : lres) {
          FuelStates rres = step_cmd(b->right, {{ss.second, g}}, dom, flags);
          for (const auto& [t2, h] : rres) out.insert({{t, t2}, h});
        }
      }
      return out;
    }
    case Bicom::Kind::RAssert: {
      FuelPairs out;
      for (const auto& [ss, f] : in) {
        if (eval_rformula(b->formula, ss.first, ss.second, dom))
          out.insert({ss, f});
        else
          flags.fail = true;
      }
      return out;
    }
    case Bicom::Kind::HavF: {
      FuelPairs out;
      for (const auto& [ss, f] : in) {
        bool any = false;
        Store t = ss.second;
        for_each_value(b->var.sort, dom, [&](Value v) {
          t[b->var.name] = v;
          if (eval_rformula(b->formula, ss.first, t, dom)) {
            out.insert({{ss.first, t}, f});
            any = true;
          }
          return false;
        });
        if (!any) flags.blocked++;
      }
      return out;
    }
    case Bicom::Kind::Seq:
      return step_bicom(b->b2, step_bicom(b->b1, in, dom, flags), dom, flags);
    case Bicom::Kind::BiIf: {
      FuelPairs split[4];
      for (const auto& [ss, f] : in) {
        bool bl = eval_expr(b->ltest, ss.first).as_bool();
        bool br = eval_expr(b->rtest, ss.second).as_bool();
        int idx = bl ? (br ? 0 : 1) : (br ? 2 : 3);
        split[idx].insert({ss, f});
      }
      const BicomPtr* branch[4] = {&b->b1, &b->b2, &b->b3, &b->b4};
      FuelPairs out;
      for (int i = 0; i < 4; i++)
        for (const auto& sf : step_bicom(*branch[i], split[i], dom, flags))
          out.insert(sf);
      return out;
    }
    case Bicom::Kind::BiWhile: {
      BicomPtr lstep = bileft(b->b1);
      BicomPtr rstep = biright(b->b1);
      FuelPairs out;
      FuelPairs seen = in;
      FuelPairs frontier = in;
      while (!frontier.empty()) {
        FuelPairs next;
        for (const auto& [ss, f] : frontier) {
          bool bl = eval_expr(b->ltest, ss.first).as_bool();
          bool br = eval_expr(b->rtest, ss.second).as_bool();
          const BicomPtr* chosen = nullptr;
          if (bl && eval_rformula(b->lalign, ss.first, ss.second, dom))
            chosen = &lstep;
          else if (br && eval_rformula(b->ralign, ss.first, ss.second, dom))
            chosen = &rstep;
          else if (bl && br)
            chosen = &b->b1;
          else if (bl || br) {
            flags.fail = true;
            continue;
          } else {
            out.insert({ss, f});
            continue;
          }
          if (f == 0) {
            flags.exhausted = true;
            continue;
          }
          FuelPairs body = step_bicom(*chosen, {{ss, f - 1}}, dom, flags);
          for (const auto& sf : body)
            if (seen.insert(sf).second) next.insert(sf);
        }
        frontier = std::move(next);
      }
      return out;
    }
  }
  return {};
}

}  // namespace detail

inline CmdResult eval_cmd(const CommandPtr& c, const Store& s, const Domain& dom,
                          long long fuel) {
  detail::EvalFlags flags;
  detail::FuelStates out = detail::step_cmd(c, {{s, fuel}}, dom, flags);
  CmdResult r;
  for (const auto& [t, f] : out) r.outcomes.insert(t);
  r.fail = flags.fail;
  r.exhausted = flags.exhausted;
  r.blocked = flags.blocked;
  return r;
}

inline BiResult eval_bicom(const BicomPtr& b, const Store& s, const Store& s2,
                           const Domain& dom, long long fuel) {
  detail::EvalFlags flags;
  detail::FuelPairs out =
      detail::step_bicom(b, {{StorePair{s, s2}, fuel}}, dom, flags);
  BiResult r;
  for (const auto& [tt2, f] : out) r.outcomes.insert(tt2);
  r.fail = flags.fail;
  r.exhausted = flags.exhausted;
  r.blocked = flags.blocked;
  return r;
}

// Every store over the declared universe with each integer drawn from the
// domain. Callers enumerate initial states with this.
inline std::vector<Store> all_stores(const std::map<std::string, Sort>& vars,
                                     const Domain& dom) {
  std::vector<Store> out{Store{}};
  for (const auto& [name, sort] : vars) {
    std::vector<Store> next;
    for (const Store& s : out) {
      Store t = s;
      detail::for_each_value(sort, dom, [&](Value v) {
        t[name] = v;
        next.push_back(t);
        return false;
      });
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace biver
