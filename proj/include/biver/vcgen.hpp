// Verification conditions for bicom judgments: weakest-precondition
// computation with loop invariants, SMT-LIB emission, and an external
// solver driver with model replay.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "biver/assertions.hpp"
#include "biver/printer.hpp"
#include "biver/structure.hpp"
#include "biver/syntax.hpp"
#include "biver/transform.hpp"
#include "biver/translate.hpp"

namespace biver {

struct VcgenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationCondition {
  RelFormulaPtr formula;
  std::string origin;
};

struct VcResult {
  RelFormulaPtr pre;
  std::vector<VerificationCondition> obligations;
};

namespace detail {

inline bool literal_bool(const RelFormulaPtr& f, bool want) {
  if (f->kind == RelFormula::Kind::Mark) return literal_bool(f->a, want);
  if (f->kind != RelFormula::Kind::LeftEmbed &&
      f->kind != RelFormula::Kind::RightEmbed)
    return false;
  const UFormulaPtr& p = f->embedded;
  return p->kind == UFormula::Kind::Atom &&
         p->atom->kind == Expr::Kind::BoolConst && p->atom->bval == want;
}

inline bool literal_tt(const RelFormulaPtr& f) { return literal_bool(f, true); }
inline bool literal_ff(const RelFormulaPtr& f) { return literal_bool(f, false); }

// Connectives that collapse boolean literals, so trivial guards do not
// bloat the conditions.
inline RelFormulaPtr vc_and(RelFormulaPtr a, RelFormulaPtr b) {
  if (literal_ff(a)) return a;
  if (literal_ff(b)) return b;
  if (literal_tt(a)) return b;
  if (literal_tt(b)) return a;
  return rf_and(std::move(a), std::move(b));
}

inline RelFormulaPtr vc_or(RelFormulaPtr a, RelFormulaPtr b) {
  if (literal_tt(a)) return a;
  if (literal_tt(b)) return b;
  if (literal_ff(a)) return b;
  if (literal_ff(b)) return a;
  return rf_or(std::move(a), std::move(b));
}

inline RelFormulaPtr vc_imp(RelFormulaPtr a, RelFormulaPtr b) {
  if (literal_tt(a)) return b;
  if (literal_ff(a)) return rf_true();
  if (literal_tt(b)) return b;
  return rf_imp(std::move(a), std::move(b));
}

inline RelFormulaPtr vc_not(RelFormulaPtr a) {
  if (literal_tt(a)) return rf_false();
  if (literal_ff(a)) return rf_true();
  return rf_not(std::move(a));
}

inline std::string vc_origin(const std::string& ctx, const std::string& tag,
                             const Path& path) {
  return ctx + tag + " at " + path_str(path);
}

// Weakest precondition of a one-sided command against a relational
// continuation. Loops contribute invariant preservation and exit
// obligations.
inline RelFormulaPtr wlp_cmd(Side side, const CommandPtr& c, Path path,
                             RelFormulaPtr cont,
                             std::vector<VerificationCondition>& out,
                             const std::string& ctx) {
  switch (c->kind) {
    case Command::Kind::Skip:
      return cont;
    case Command::Kind::Assign:
      return side == Side::Left ? subst_left(cont, c->var, c->expr)
                                : subst_right(cont, c->var, c->expr);
    case Command::Kind::Hav:
      return rf_quant(RelFormula::Kind::Forall, side, c->var, std::move(cont));
    case Command::Kind::Assert: {
      RelFormulaPtr checked = rf_mark("assert", path_str(path),
                                      rf_embed(side, c->formula));
      return vc_and(std::move(checked), std::move(cont));
    }
    case Command::Kind::Assume:
      return vc_imp(rf_embed(side, c->formula), std::move(cont));
    case Command::Kind::Seq: {
      Path p2 = path;
      p2.push_back(1);
      RelFormulaPtr after =
          wlp_cmd(side, c->c2, std::move(p2), std::move(cont), out, ctx);
      path.push_back(0);
      return wlp_cmd(side, c->c1, std::move(path), std::move(after), out, ctx);
    }
    case Command::Kind::If: {
      RelFormulaPtr test = rf_embed(side, uf_atom(c->expr));
      Path pt = path, pe = path;
      pt.push_back(0);
      pe.push_back(1);
      RelFormulaPtr then_pre = wlp_cmd(side, c->c1, std::move(pt), cont, out, ctx);
      RelFormulaPtr else_pre =
          wlp_cmd(side, c->c2, std::move(pe), std::move(cont), out, ctx);
      return vc_and(vc_imp(test, std::move(then_pre)),
                    vc_imp(vc_not(test), std::move(else_pre)));
    }
    case Command::Kind::While: {
      if (!c->invariant)
        throw VcgenError("loop at " + path_str(path) +
                         " needs an invariant annotation");
      RelFormulaPtr inv = rf_embed(side, *c->invariant);
      RelFormulaPtr test = rf_embed(side, uf_atom(c->expr));
      Path pb = path;
      pb.push_back(0);
      RelFormulaPtr body_pre = wlp_cmd(side, c->c1, std::move(pb), inv, out, ctx);
      out.push_back({vc_imp(vc_and(inv, test), std::move(body_pre)),
                     vc_origin(ctx, "F-preserve", path)});
      out.push_back({vc_imp(vc_and(inv, vc_not(test)), std::move(cont)),
                     vc_origin(ctx, "F-exit", path)});
      return rf_mark("F-init", path_str(path), inv);
    }
  }
  throw VcgenError("unreachable command kind");
}

inline RelFormulaPtr vc_at(const BicomPtr& b, Path path, RelFormulaPtr post,
                           std::vector<VerificationCondition>& out,
                           const std::string& ctx) {
  switch (b->kind) {
    case Bicom::Kind::Embed: {
      Path pl = path, pr = path;
      pl.push_back(0);
      pr.push_back(1);
      RelFormulaPtr mid =
          wlp_cmd(Side::Right, b->right, std::move(pr), std::move(post), out, ctx);
      return wlp_cmd(Side::Left, b->left, std::move(pl), std::move(mid), out, ctx);
    }
    case Bicom::Kind::RAssert: {
      RelFormulaPtr checked =
          b->formula->kind == RelFormula::Kind::Mark
              ? b->formula
              : rf_mark("assert", path_str(path), b->formula);
      return vc_and(std::move(checked), std::move(post));
    }
    case Bicom::Kind::HavF:
      return rf_quant(RelFormula::Kind::Forall, Side::Right, b->var,
                      vc_imp(b->formula, std::move(post)));
    case Bicom::Kind::Seq: {
      Path p2 = path;
      p2.push_back(1);
      RelFormulaPtr after = vc_at(b->b2, std::move(p2), std::move(post), out, ctx);
      path.push_back(0);
      return vc_at(b->b1, std::move(path), std::move(after), out, ctx);
    }
    case Bicom::Kind::BiIf: {
      RelFormulaPtr lt = rf_left(uf_atom(b->ltest));
      RelFormulaPtr rt = rf_right(uf_atom(b->rtest));
      Path p;
      RelFormulaPtr pre[4];
      const BicomPtr* branches[4] = {&b->b1, &b->b2, &b->b3, &b->b4};
      for (int i = 0; i < 4; ++i) {
        p = path;
        p.push_back(i);
        pre[i] = vc_at(*branches[i], std::move(p), post, out, ctx);
      }
      return vc_and(
          vc_and(vc_imp(vc_and(lt, rt), std::move(pre[0])),
                 vc_imp(vc_and(lt, vc_not(rt)), std::move(pre[1]))),
          vc_and(vc_imp(vc_and(vc_not(lt), rt), std::move(pre[2])),
                 vc_imp(vc_and(vc_not(lt), vc_not(rt)), std::move(pre[3]))));
    }
    case Bicom::Kind::BiWhile: {
      if (!b->invariant)
        throw VcgenError("paired loop at " + path_str(path) +
                         " needs an invariant annotation");
      RelFormulaPtr inv = *b->invariant;
      RelFormulaPtr lt = rf_left(uf_atom(b->ltest));
      RelFormulaPtr rt = rf_right(uf_atom(b->rtest));
      RelFormulaPtr left_move = vc_and(lt, b->lalign);
      RelFormulaPtr right_move = vc_and(rt, b->ralign);
      Path pb = path;
      pb.push_back(0);

      out.push_back(
          {vc_imp(vc_and(vc_and(inv, vc_not(lt)), vc_not(rt)), std::move(post)),
           vc_origin(ctx, "G1", path)});

      std::string sub = ctx + "G2 at " + path_str(path) + " / ";
      RelFormulaPtr left_pre = vc_at(bileft(b->b1), pb, inv, out, sub);
      out.push_back({vc_imp(vc_and(inv, left_move), std::move(left_pre)),
                     vc_origin(ctx, "G2", path)});

      sub = ctx + "G3 at " + path_str(path) + " / ";
      RelFormulaPtr right_pre = vc_at(biright(b->b1), pb, inv, out, sub);
      out.push_back(
          {vc_imp(vc_and(vc_and(vc_and(inv, rt), b->ralign), vc_not(left_move)),
                  std::move(right_pre)),
           vc_origin(ctx, "G3", path)});

      sub = ctx + "G4 at " + path_str(path) + " / ";
      RelFormulaPtr joint_pre = vc_at(b->b1, pb, inv, out, sub);
      out.push_back(
          {vc_imp(vc_and(vc_and(vc_and(inv, lt), rt),
                         vc_and(vc_not(b->lalign), vc_not(b->ralign))),
                  std::move(joint_pre)),
           vc_origin(ctx, "G4", path)});

      out.push_back(
          {vc_imp(inv, vc_or(rf_agree(b->ltest, b->rtest),
                             vc_or(std::move(left_move), std::move(right_move)))),
           vc_origin(ctx, "G5", path)});
      return inv;
    }
  }
  throw VcgenError("unreachable bicom kind");
}

}  // namespace detail

// Weakest precondition of a bicom against a relational postcondition,
// together with the side obligations contributed by loops.
inline VcResult vc_bicom(const BicomPtr& b, const RelFormulaPtr& post) {
  VcResult r;
  r.pre = detail::vc_at(b, {}, post, r.obligations, "");
  return r;
}

// Splits a condition into independently checkable conjuncts, distributing
// over conjunction, implication hypotheses, and universal prefixes. Each
// piece takes its origin from the innermost mark on its spine, falling
// back to the whole condition's origin.
namespace detail {

inline void split_walk(const RelFormulaPtr& f, const std::string& base,
                       const std::string* override_origin,
                       std::vector<VerificationCondition>& out) {
  switch (f->kind) {
    case RelFormula::Kind::Mark: {
      std::string tagged = f->tag + " at " + f->path;
      if (base != "entry") tagged = base + " / " + tagged;
      split_walk(f->a, base, &tagged, out);
      return;
    }
    case RelFormula::Kind::And:
      split_walk(f->a, base, override_origin, out);
      split_walk(f->b, base, override_origin, out);
      return;
    case RelFormula::Kind::Imp: {
      std::vector<VerificationCondition> inner;
      split_walk(f->b, base, override_origin, inner);
      for (auto& vc : inner)
        out.push_back({rf_imp(f->a, vc.formula), vc.origin});
      return;
    }
    case RelFormula::Kind::Forall: {
      std::vector<VerificationCondition> inner;
      split_walk(f->a, base, override_origin, inner);
      for (auto& vc : inner)
        out.push_back({rf_quant(RelFormula::Kind::Forall, f->side, f->bound,
                                vc.formula),
                       vc.origin});
      return;
    }
    default:
      out.push_back({f, override_origin ? *override_origin : base});
  }
}

}  // namespace detail

inline std::vector<VerificationCondition> split_obligation(
    const VerificationCondition& vc) {
  std::vector<VerificationCondition> out;
  detail::split_walk(vc.formula, vc.origin, nullptr, out);
  return out;
}

// All conjunct-level conditions for a problem's specification: the loop
// obligations of the transformed bicom plus the entry implication from the
// precondition. Existential-witness checking is compiled in for
// forall-exists specifications.
inline std::vector<VerificationCondition> spec_obligations(const Problem& p) {
  BicomPtr b = p.bicom;
  if (p.spec.kind == SpecKind::ForallExists) b = chk(b, default_avoid(p));
  VcResult vr = vc_bicom(b, p.spec.post);
  std::vector<VerificationCondition> flat;
  for (auto& piece :
       split_obligation({rf_imp(p.spec.pre, vr.pre), "entry"}))
    flat.push_back(std::move(piece));
  for (const auto& ob : vr.obligations)
    for (auto& piece : split_obligation(ob)) flat.push_back(std::move(piece));
  std::map<std::string, int> seen;
  for (auto& vc : flat) {
    int n = ++seen[vc.origin];
    if (n > 1) vc.origin += " #" + std::to_string(n);
  }
  return flat;
}

// ---------------------------------------------------------------------------
// SMT-LIB emission.

namespace detail {

inline const char* smt_sort(Sort s) { return s == Sort::Int ? "Int" : "Bool"; }

inline void smt_expr(const ExprPtr& e, std::ostream& os) {
  switch (e->kind) {
    case Expr::Kind::IntConst:
      if (e->ival < 0)
        os << "(- " << -e->ival << ")";
      else
        os << e->ival;
      return;
    case Expr::Kind::BoolConst:
      os << (e->bval ? "true" : "false");
      return;
    case Expr::Kind::VarRef:
      os << e->var.name;
      return;
    case Expr::Kind::Unary:
      os << (e->un == UnOp::Neg ? "(- " : "(not ");
      smt_expr(e->a, os);
      os << ")";
      return;
    case Expr::Kind::Binary: {
      const char* op = nullptr;
      switch (e->bin) {
        case BinOp::Add: op = "+"; break;
        case BinOp::Sub: op = "-"; break;
        case BinOp::Mul: op = "*"; break;
        case BinOp::Div: op = "div"; break;
        case BinOp::Mod: op = "mod"; break;
        case BinOp::Eq: op = "="; break;
        case BinOp::Ne: op = "distinct"; break;
        case BinOp::Lt: op = "<"; break;
        case BinOp::Le: op = "<="; break;
        case BinOp::Gt: op = ">"; break;
        case BinOp::Ge: op = ">="; break;
        case BinOp::And: op = "and"; break;
        case BinOp::Or: op = "or"; break;
      }
      os << "(" << op << " ";
      smt_expr(e->a, os);
      os << " ";
      smt_expr(e->b, os);
      os << ")";
      return;
    }
  }
}

inline void smt_uformula(const UFormulaPtr& f, std::ostream& os) {
  switch (f->kind) {
    case UFormula::Kind::Atom:
      smt_expr(f->atom, os);
      return;
    case UFormula::Kind::Not:
      os << "(not ";
      smt_uformula(f->a, os);
      os << ")";
      return;
    case UFormula::Kind::And:
    case UFormula::Kind::Or:
    case UFormula::Kind::Imp:
    case UFormula::Kind::Iff: {
      const char* op = f->kind == UFormula::Kind::And   ? "and"
                       : f->kind == UFormula::Kind::Or  ? "or"
                       : f->kind == UFormula::Kind::Imp ? "=>"
                                                        : "=";
      os << "(" << op << " ";
      smt_uformula(f->a, os);
      os << " ";
      smt_uformula(f->b, os);
      os << ")";
      return;
    }
    case UFormula::Kind::Forall:
    case UFormula::Kind::Exists:
      os << (f->kind == UFormula::Kind::Forall ? "(forall ((" : "(exists ((")
         << f->bound.name << " " << smt_sort(f->bound.sort) << ")) ";
      smt_uformula(f->a, os);
      os << ")";
      return;
  }
}

}  // namespace detail

// A self-contained script refuting the condition's negation: paired-store
// variables become l_/r_ copies, validity shows up as unsat.
inline std::string emit_smtlib(const VerificationCondition& vc) {
  UFormulaPtr product = embed_product(vc.formula);
  std::ostringstream os;
  os << "; " << vc.origin << "\n";
  os << "(set-option :produce-models true)\n";
  os << "(set-logic ALL)\n";
  for (const Var& v : fv_uformula(product))
    os << "(declare-fun " << v.name << " () " << detail::smt_sort(v.sort)
       << ")\n";
  os << "(assert (not ";
  detail::smt_uformula(product, os);
  os << "))\n(check-sat)\n(get-model)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// External solver driver. The command reads a script on standard input and
// answers on standard output, first token sat | unsat | unknown.

struct SolverAnswer {
  std::string status;  // "sat", "unsat", "unknown", "error"
  std::string rest;    // output after the status token (model text on sat)
};

inline std::string solver_command(const std::string& explicit_cmd = "") {
  if (!explicit_cmd.empty()) return explicit_cmd;
  if (const char* env = std::getenv("BIVER_SOLVER"))
    if (*env) return env;
  return "z3 -in";
}

namespace detail {

inline SolverAnswer run_solver_script(const std::string& cmd,
                                      const std::string& script,
                                      int timeout_sec) {
  char tmpl[] = "/tmp/biver_smt_XXXXXX";
  int fd = mkstemp(tmpl);
  if (fd < 0) return {"error", "cannot create temporary file"};
  {
    FILE* f = fdopen(fd, "w");
    if (!f) {
      close(fd);
      unlink(tmpl);
      return {"error", "cannot open temporary file"};
    }
    fputs(script.c_str(), f);
    fclose(f);
  }
  std::string full;
  if (timeout_sec > 0)
    full = "timeout " + std::to_string(timeout_sec) + " " + cmd;
  else
    full = cmd;
  full += " < ";
  full += tmpl;
  full += " 2>/dev/null";
  std::string output;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) {
    unlink(tmpl);
    return {"error", "cannot launch solver: " + cmd};
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int rc = pclose(pipe);
  unlink(tmpl);
  std::istringstream in(output);
  std::string first;
  in >> first;
  std::string rest;
  std::getline(in, rest);
  std::string tail((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  rest += tail;
  if (first == "sat" || first == "unsat" || first == "unknown")
    return {first, rest};
  if (rc != 0 && first.empty()) return {"unknown", "solver timed out or failed"};
  return {"error", output.empty() ? ("no output from solver: " + cmd) : output};
}

}  // namespace detail

inline bool solver_available(const std::string& cmd) {
  SolverAnswer a = detail::run_solver_script(cmd, "(check-sat)\n", 10);
  return a.status == "sat";
}

// ---------------------------------------------------------------------------
// Model parsing and replay.

namespace detail {

struct Sexp {
  bool is_atom = true;
  std::string atom;
  std::vector<Sexp> items;
};

inline void sexp_tokens(const std::string& text, std::vector<std::string>& out) {
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      out.push_back(std::string(1, c));
      ++i;
    } else if (c == '|') {
      size_t j = text.find('|', i + 1);
      if (j == std::string::npos) j = text.size() - 1;
      out.push_back(text.substr(i + 1, j - i - 1));
      i = j + 1;
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"') ++j;
      out.push_back(text.substr(i, j - i + 1));
      i = j + 1;
    } else {
      size_t j = i;
      while (j < text.size() && !isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '(' && text[j] != ')')
        ++j;
      out.push_back(text.substr(i, j - i));
      i = j;
    }
  }
}

inline Sexp sexp_parse_at(const std::vector<std::string>& toks, size_t& i) {
  Sexp s;
  if (i >= toks.size()) return s;
  if (toks[i] == "(") {
    s.is_atom = false;
    ++i;
    while (i < toks.size() && toks[i] != ")")
      s.items.push_back(sexp_parse_at(toks, i));
    if (i < toks.size()) ++i;
    return s;
  }
  s.atom = toks[i++];
  return s;
}

inline bool sexp_value(const Sexp& s, long long& iv, bool& bv, bool& is_bool) {
  if (s.is_atom) {
    if (s.atom == "true" || s.atom == "false") {
      is_bool = true;
      bv = s.atom == "true";
      return true;
    }
    if (s.atom.empty()) return false;
    size_t pos = 0;
    if (s.atom[0] == '-') pos = 1;
    if (pos >= s.atom.size()) return false;
    for (size_t k = pos; k < s.atom.size(); ++k)
      if (!isdigit(static_cast<unsigned char>(s.atom[k]))) return false;
    is_bool = false;
    iv = std::stoll(s.atom);
    return true;
  }
  if (s.items.size() == 2 && s.items[0].is_atom && s.items[0].atom == "-") {
    if (!sexp_value(s.items[1], iv, bv, is_bool) || is_bool) return false;
    iv = -iv;
    return true;
  }
  return false;
}

inline void collect_model(const Sexp& s,
                          std::map<std::string, Value>& out) {
  if (s.is_atom) return;
  if (s.items.size() >= 5 && s.items[0].is_atom &&
      s.items[0].atom == "define-fun" && s.items[1].is_atom &&
      !s.items[2].is_atom && s.items[2].items.empty()) {
    long long iv = 0;
    bool bv = false, is_bool = false;
    if (sexp_value(s.items[4], iv, bv, is_bool)) {
      out[s.items[1].atom] = is_bool ? Value::of_bool(bv) : Value::of_int(iv);
    }
    return;
  }
  for (const Sexp& child : s.items) collect_model(child, out);
}

}  // namespace detail

// Parses a solver model into paired stores, mapping l_/r_ prefixed names
// back to source variables. Unrecognized entries are ignored.
inline void parse_model(const std::string& model_text, Store& left,
                        Store& right) {
  std::vector<std::string> toks;
  detail::sexp_tokens(model_text, toks);
  size_t i = 0;
  std::map<std::string, Value> flat;
  while (i < toks.size())
    detail::collect_model(detail::sexp_parse_at(toks, i), flat);
  for (const auto& [name, val] : flat) {
    std::string base = name;
    bool dollar = !base.empty() && base[0] == '$';
    if (dollar) base = base.substr(1);
    if (base.rfind("l_", 0) == 0)
      left[(dollar ? "$" : "") + base.substr(2)] = val;
    else if (base.rfind("r_", 0) == 0)
      right[(dollar ? "$" : "") + base.substr(2)] = val;
  }
}

// ---------------------------------------------------------------------------
// Whole-specification checking through the solver.

struct SmtOptions {
  std::string solver;       // empty: BIVER_SOLVER env, then "z3 -in"
  int timeout_sec = 10;     // per obligation; expired queries read as unknown
  Domain replay_dom;        // base domain for replaying counterexamples
};

struct ObligationReport {
  VerificationCondition vc;
  std::string script;
  std::string status;  // "unsat", "sat", "unknown", "error", "not-run"
  std::string model_text;
  bool replay_attempted = false;
  bool replay_confirms = false;
  Store model_left, model_right;
};

struct SpecReport {
  std::string solver_cmd;
  bool solver_ok = false;
  std::string verdict;  // "verified", "refuted", "unknown", "error"
  std::string error;
  std::vector<ObligationReport> obligations;
};

inline SpecReport check_spec(const Problem& p, const SmtOptions& opts = {}) {
  SpecReport rep;
  rep.solver_cmd = solver_command(opts.solver);
  std::vector<VerificationCondition> vcs = spec_obligations(p);
  for (auto& vc : vcs) {
    ObligationReport ob;
    ob.script = emit_smtlib(vc);
    ob.vc = std::move(vc);
    ob.status = "not-run";
    rep.obligations.push_back(std::move(ob));
  }
  rep.solver_ok = solver_available(rep.solver_cmd);
  if (!rep.solver_ok) {
    rep.verdict = "error";
    rep.error = "cannot run solver: " + rep.solver_cmd;
    return rep;
  }
  bool any_sat = false, any_unknown = false;
  for (ObligationReport& ob : rep.obligations) {
    SolverAnswer ans =
        detail::run_solver_script(rep.solver_cmd, ob.script, opts.timeout_sec);
    ob.status = ans.status;
    if (ans.status == "sat") {
      any_sat = true;
      ob.model_text = ans.rest;
      Store left, right;
      parse_model(ans.rest, left, right);
      for (const Var& v : p.vars) {
        Value dflt = v.sort == Sort::Int ? Value::of_int(0)
                                         : Value::of_bool(false);
        if (!left.count(v.name)) left[v.name] = dflt;
        if (!right.count(v.name)) right[v.name] = dflt;
      }
      Domain dom = opts.replay_dom;
      for (const Store* s : {&left, &right})
        for (const auto& [name, val] : *s)
          if (val.sort == Sort::Int) {
            dom.lo = std::min(dom.lo, val.num);
            dom.hi = std::max(dom.hi, val.num);
          }
      ob.model_left = left;
      ob.model_right = right;
      ob.replay_attempted = true;
      try {
        ob.replay_confirms = !eval_rformula(ob.vc.formula, left, right, dom);
      } catch (const EvalError&) {
        ob.replay_confirms = false;
      }
    } else if (ans.status != "unsat") {
      any_unknown = true;
      if (ans.status == "error") ob.model_text = ans.rest;
    }
  }
  rep.verdict = any_sat ? "refuted" : any_unknown ? "unknown" : "verified";
  return rep;
}

}  // namespace biver
