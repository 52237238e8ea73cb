// Brute-force bounded checking over finite domains: enumerates initial
// store pairs for the product and forall-exists judgments, and ties the two
// together through the transformed product as an executable ground truth.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biver/assertions.hpp"
#include "biver/semantics.hpp"
#include "biver/structure.hpp"
#include "biver/syntax.hpp"
#include "biver/transform.hpp"

namespace biver {

enum class VerdictKind { HoldsBounded, Fails, Inconclusive };
enum class InconclusiveReason { FuelExhausted, WitnessBound };

struct Counterexample {
  Store left_init, right_init;
  std::optional<StorePair> outcome;  // violating product outcome
  std::optional<Store> unmatched;    // left outcome with no right witness
  std::string note;
};

struct Verdict {
  VerdictKind kind = VerdictKind::HoldsBounded;
  InconclusiveReason reason = InconclusiveReason::FuelExhausted;
  std::optional<Counterexample> counterexample;
  long long pairs = 0;          // related initial pairs examined
  long long blocked = 0;        // filter and assume dead ends, summed
  long long fuel_pairs = 0;     // pairs cut short by loop fuel
  long long witness_pairs = 0;  // pairs with witness search cut short
};

// Product judgment: no related pair may fail, and every normal outcome must
// satisfy the postcondition. A failing or violating run settles the verdict
// even when other paths ran out of fuel; fuel exhaustion alone only blocks
// the positive claim.
inline Verdict check_aa(const BicomPtr& b, const RelFormulaPtr& pre,
                        const RelFormulaPtr& post,
                        const std::map<std::string, Sort>& vars,
                        const Domain& dom, long long fuel) {
  Verdict v;
  std::vector<Store> stores = all_stores(vars, dom);
  bool saw_exhausted = false;
  for (const Store& s : stores)
    for (const Store& s2 : stores) {
      if (!eval_rformula(pre, s, s2, dom)) continue;
      ++v.pairs;
      BiResult r = eval_bicom(b, s, s2, dom, fuel);
      v.blocked += r.blocked;
      if (r.fail) {
        v.kind = VerdictKind::Fails;
        v.counterexample = {s, s2, std::nullopt, std::nullopt,
                            "a product run fails"};
        return v;
      }
      for (const StorePair& t : r.outcomes)
        if (!eval_rformula(post, t.first, t.second, dom)) {
          v.kind = VerdictKind::Fails;
          v.counterexample = {s, s2, t, std::nullopt,
                              "an outcome violates the postcondition"};
          return v;
        }
      if (r.exhausted) {
        ++v.fuel_pairs;
        saw_exhausted = true;
      }
    }
  if (saw_exhausted) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = InconclusiveReason::FuelExhausted;
  }
  return v;
}

// One initial pair of the forall-exists judgment. A left-side failure is
// always a definite counterexample. A left outcome with no witness refutes
// the pair only when the right enumeration is complete; an incomplete left
// enumeration downgrades the whole pair to fuel-inconclusive.
enum class PairStatus { Ok, Fails, FuelExhausted, WitnessBound };

struct PairResult {
  PairStatus status = PairStatus::Ok;
  bool left_failed = false;
  std::optional<Store> unmatched;
  long long blocked = 0;
};

inline PairResult check_ae_pair(const CommandPtr& c, const CommandPtr& c2,
                                const Store& s, const Store& s2,
                                const RelFormulaPtr& post, const Domain& dom,
                                long long fuel,
                                const CmdResult* right_cached = nullptr) {
  PairResult pr;
  CmdResult lr = eval_cmd(c, s, dom, fuel);
  pr.blocked += lr.blocked;
  if (lr.fail) {
    pr.status = PairStatus::Fails;
    pr.left_failed = true;
    return pr;
  }
  CmdResult local;
  const CmdResult* rr = right_cached;
  if (!rr) {
    local = eval_cmd(c2, s2, dom, fuel);
    rr = &local;
    pr.blocked += local.blocked;
  }
  bool miss_complete = false, miss_bound = false;
  Store bad;
  for (const Store& t : lr.outcomes) {
    bool found = false;
    for (const Store& t2 : rr->outcomes)
      if (eval_rformula(post, t, t2, dom)) {
        found = true;
        break;
      }
    if (!found) {
      if (rr->exhausted) {
        miss_bound = true;
      } else if (!miss_complete) {
        miss_complete = true;
        bad = t;
      }
    }
  }
  if (lr.exhausted)
    pr.status = PairStatus::FuelExhausted;
  else if (miss_complete) {
    pr.status = PairStatus::Fails;
    pr.unmatched = bad;
  } else if (miss_bound)
    pr.status = PairStatus::WitnessBound;
  return pr;
}

// Forall-exists judgment over all related initial pairs. Right-side outcome
// sets are cached per initial store since they do not depend on the left.
inline Verdict check_ae(const CommandPtr& c, const CommandPtr& c2,
                        const RelFormulaPtr& pre, const RelFormulaPtr& post,
                        const std::map<std::string, Sort>& vars,
                        const Domain& dom, long long fuel) {
  Verdict v;
  std::vector<Store> stores = all_stores(vars, dom);
  std::map<Store, CmdResult> right_cache;
  bool saw_fuel = false, saw_witness = false;
  for (const Store& s : stores)
    for (const Store& s2 : stores) {
      if (!eval_rformula(pre, s, s2, dom)) continue;
      ++v.pairs;
      auto it = right_cache.find(s2);
      if (it == right_cache.end()) {
        it = right_cache.emplace(s2, eval_cmd(c2, s2, dom, fuel)).first;
        v.blocked += it->second.blocked;
      }
      PairResult pr = check_ae_pair(c, c2, s, s2, post, dom, fuel, &it->second);
      v.blocked += pr.blocked;
      switch (pr.status) {
        case PairStatus::Ok:
          break;
        case PairStatus::Fails:
          v.kind = VerdictKind::Fails;
          v.counterexample = {s, s2, std::nullopt, pr.unmatched,
                              pr.left_failed
                                  ? "the left run fails"
                                  : "a left outcome has no right witness"};
          return v;
        case PairStatus::FuelExhausted:
          ++v.fuel_pairs;
          saw_fuel = true;
          break;
        case PairStatus::WitnessBound:
          ++v.witness_pairs;
          saw_witness = true;
          break;
      }
    }
  if (saw_fuel || saw_witness) {
    v.kind = VerdictKind::Inconclusive;
    v.reason = saw_fuel ? InconclusiveReason::FuelExhausted
                        : InconclusiveReason::WitnessBound;
  }
  return v;
}

// Executable form of the adequacy connection: when the transformed product
// judgment holds within bounds, the projections' forall-exists judgment must
// not refute. A refutation with no blocked filter paths is flagged as a
// violation.
struct TheoremOutcome {
  Verdict aa;
  std::optional<Verdict> ae;
  bool violation = false;
  bool preconditions_ok = true;
  std::vector<std::string> diagnostics;
};

inline TheoremOutcome check_main_theorem(const BicomPtr& b,
                                         const RelFormulaPtr& pre,
                                         const RelFormulaPtr& post,
                                         const std::map<std::string, Sort>& vars,
                                         const Domain& dom, long long fuel) {
  TheoremOutcome out;
  if (!wellformed(b, &out.diagnostics)) out.preconditions_ok = false;
  FrameList frame;
  for (const auto& [name, sort] : vars) frame.push_back({name, sort});
  if (!bframe(b, frame)) {
    out.preconditions_ok = false;
    out.diagnostics.push_back("bicom touches variables outside the declared set");
  }
  out.aa = check_aa(chk(b, frame), pre, post, vars, dom, fuel);
  if (out.aa.kind != VerdictKind::HoldsBounded) return out;
  out.ae = check_ae(left_proj(b), right_proj(b), pre, post, vars, dom, fuel);
  out.violation = out.preconditions_ok && out.ae->kind == VerdictKind::Fails &&
                  out.aa.blocked == 0;
  return out;
}

// Pointwise truth of the product weakest precondition by enumeration.
// Entries whose runs hit the fuel bound without a definite refutation are
// left undetermined.
inline std::map<StorePair, std::optional<bool>> wlp_table(
    const BicomPtr& b, const RelFormulaPtr& post,
    const std::map<std::string, Sort>& vars, const Domain& dom,
    long long fuel) {
  std::map<StorePair, std::optional<bool>> table;
  std::vector<Store> stores = all_stores(vars, dom);
  for (const Store& s : stores)
    for (const Store& s2 : stores) {
      BiResult r = eval_bicom(b, s, s2, dom, fuel);
      std::optional<bool> entry = true;
      if (r.fail) {
        entry = false;
      } else {
        bool violated = false;
        for (const StorePair& t : r.outcomes)
          if (!eval_rformula(post, t.first, t.second, dom)) {
            violated = true;
            break;
          }
        if (violated)
          entry = false;
        else if (r.exhausted)
          entry = std::nullopt;
      }
      table[{s, s2}] = entry;
    }
  return table;
}

}  // namespace biver
