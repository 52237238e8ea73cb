// Command-line front end. `check` validates a problem file, `transform`
// prints the instrumented product, `translate` prints its unary rendering,
// and `verify` runs either the bounded enumeration backend or the SMT one.
// Exit codes: 0 verified (or all checks pass), 1 refuted (or a check
// fails), 2 inconclusive, 3 usage or input errors.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "biver/oracle.hpp"
#include "biver/parser.hpp"
#include "biver/printer.hpp"
#include "biver/vcgen.hpp"

using nlohmann::json;
using namespace biver;

namespace {

struct CliOptions {
  std::string file;
  std::string backend = "oracle";
  std::string domain = "-2..2";
  int fuel = 32;
  std::string solver;
  bool as_json = false;
};

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

Domain parse_domain(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::runtime_error("domain must look like lo..hi, got " + text);
  try {
    Domain d{std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    if (d.lo > d.hi) throw std::runtime_error("empty domain " + text);
    return d;
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("domain must look like lo..hi, got " + text);
  } catch (const std::out_of_range&) {
    throw std::runtime_error("domain bounds out of range in " + text);
  }
}

json store_json(const Store& s) {
  json out = json::object();
  for (const auto& [name, val] : s)
    if (val.sort == Sort::Bool)
      out[name] = (val.num != 0);
    else
      out[name] = val.num;
  return out;
}

std::string store_line(const Store& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, val] : s) {
    if (!first) os << " ";
    first = false;
    os << name << "=";
    if (val.sort == Sort::Bool)
      os << (val.num != 0 ? "tt" : "ff");
    else
      os << val.num;
  }
  return os.str();
}

const char* kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::HoldsBounded: return "holds within bounds";
    case VerdictKind::Fails: return "fails";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

json verdict_json(const Verdict& v) {
  json out;
  out["kind"] = v.kind == VerdictKind::HoldsBounded ? "holds"
                : v.kind == VerdictKind::Fails      ? "fails"
                                                    : "inconclusive";
  if (v.kind == VerdictKind::Inconclusive)
    out["reason"] = v.reason == InconclusiveReason::FuelExhausted
                        ? "fuel-exhausted"
                        : "witness-bound";
  out["pairs"] = v.pairs;
  out["blocked"] = v.blocked;
  out["fuel_pairs"] = v.fuel_pairs;
  out["witness_pairs"] = v.witness_pairs;
  if (v.counterexample) {
    json ce;
    ce["left_start"] = store_json(v.counterexample->left_init);
    ce["right_start"] = store_json(v.counterexample->right_init);
    if (v.counterexample->outcome) {
      ce["left_end"] = store_json(v.counterexample->outcome->first);
      ce["right_end"] = store_json(v.counterexample->outcome->second);
    }
    if (v.counterexample->unmatched)
      ce["unmatched"] = store_json(*v.counterexample->unmatched);
    ce["note"] = v.counterexample->note;
    out["counterexample"] = ce;
  }
  return out;
}

void print_verdict(const std::string& label, const Verdict& v) {
  std::cout << "  " << label << ": " << kind_name(v.kind);
  std::cout << " (" << v.pairs << " pairs";
  if (v.blocked) std::cout << ", " << v.blocked << " blocked paths";
  if (v.fuel_pairs) std::cout << ", " << v.fuel_pairs << " out of fuel";
  if (v.witness_pairs)
    std::cout << ", " << v.witness_pairs << " at the witness bound";
  std::cout << ")\n";
  if (v.counterexample) {
    const Counterexample& ce = *v.counterexample;
    std::cout << "  counterexample: " << ce.note << "\n";
    std::cout << "    left start:  " << store_line(ce.left_init) << "\n";
    std::cout << "    right start: " << store_line(ce.right_init) << "\n";
    if (ce.outcome) {
      std::cout << "    left end:    " << store_line(ce.outcome->first) << "\n";
      std::cout << "    right end:   " << store_line(ce.outcome->second) << "\n";
    }
    if (ce.unmatched)
      std::cout << "    unmatched left outcome: " << store_line(*ce.unmatched)
                << "\n";
  }
}

int run_check(const CliOptions& opt) {
  json report;
  report["command"] = "check";
  report["file"] = opt.file;
  json stages = json::object();
  bool pass = true;
  std::string error;
  std::optional<Problem> problem;
  try {
    problem = load_problem(opt.file);
    stages["parse"] = true;
  } catch (const std::exception& e) {
    stages["parse"] = false;
    error = e.what();
    pass = false;
  }
  if (problem) {
    const Problem& p = *problem;
    bool wf = wellformed(p.bicom);
    stages["wellformed"] = wf;
    bool framed = bframe(p.bicom, default_avoid(p));
    stages["frame"] = framed;
    pass = pass && wf && framed;
    if (p.left) {
      bool ok = kateq(left_proj(p.bicom), p.left);
      stages["left_projection"] = ok;
      pass = pass && ok;
    }
    if (p.right) {
      bool ok = kateq(right_proj(p.bicom), p.right);
      stages["right_projection"] = ok;
      pass = pass && ok;
    }
  }
  report["stages"] = stages;
  report["pass"] = pass;
  if (!error.empty()) report["error"] = error;
  if (opt.as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "check " << opt.file << "\n";
    const char* names[] = {"parse", "wellformed", "frame", "left_projection",
                           "right_projection"};
    for (const char* name : names)
      if (stages.contains(name))
        std::cout << "  " << name << ": " << (stages[name].get<bool>() ? "ok" : "FAIL")
                  << "\n";
    if (!error.empty()) std::cout << "  error: " << error << "\n";
    std::cout << (pass ? "all checks passed" : "checks FAILED") << "\n";
  }
  return pass ? 0 : 1;
}

int run_print(const CliOptions& opt, bool translate) {
  Problem p = load_problem(opt.file);
  BicomPtr t = chk(p.bicom, default_avoid(p));
  std::string text = translate ? print_cmd(to_unary(t)) : print_bicom(t);
  if (opt.as_json) {
    json report;
    report["command"] = translate ? "translate" : "transform";
    report["file"] = opt.file;
    report["output"] = text;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

int run_verify_oracle(const CliOptions& opt, const Problem& p) {
  Domain dom = parse_domain(opt.domain);
  auto vars = var_map(p.vars);
  json report;
  report["command"] = "verify";
  report["file"] = opt.file;
  report["backend"] = "oracle";
  report["domain"] = {dom.lo, dom.hi};
  report["fuel"] = opt.fuel;

  int code;
  std::string verdict_word;
  if (p.spec.kind == SpecKind::ForallExists) {
    TheoremOutcome out =
        check_main_theorem(p.bicom, p.spec.pre, p.spec.post, vars, dom, opt.fuel);
    Verdict ae = out.ae ? *out.ae
                        : check_ae(left_proj(p.bicom), right_proj(p.bicom),
                                   p.spec.pre, p.spec.post, vars, dom, opt.fuel);
    report["spec"] = "forall-exists";
    report["product"] = verdict_json(out.aa);
    report["witness"] = verdict_json(ae);
    report["violation"] = out.violation;
    code = ae.kind == VerdictKind::HoldsBounded ? 0
           : ae.kind == VerdictKind::Fails      ? 1
                                                : 2;
    if (out.violation) code = 1;
    verdict_word = code == 0 ? "verified" : code == 1 ? "refuted" : "inconclusive";
    report["verdict"] = verdict_word;
    if (!opt.as_json) {
      std::cout << "verify " << opt.file << " (oracle, domain " << dom.lo << ".."
                << dom.hi << ", fuel " << opt.fuel << ")\n";
      std::cout << "  spec: forall-exists\n";
      print_verdict("instrumented product", out.aa);
      print_verdict("witness search", ae);
      if (out.violation)
        std::cout << "  WARNING: the instrumented product holds with no blocked "
                     "paths, yet the witness search fails; the soundness "
                     "argument is broken for this input\n";
      for (const std::string& d : out.diagnostics)
        std::cout << "  note: " << d << "\n";
      std::cout << "verdict: " << verdict_word << "\n";
    }
  } else {
    Verdict v = check_aa(p.bicom, p.spec.pre, p.spec.post, vars, dom, opt.fuel);
    report["spec"] = "forall-forall";
    report["product"] = verdict_json(v);
    code = v.kind == VerdictKind::HoldsBounded ? 0
           : v.kind == VerdictKind::Fails      ? 1
                                               : 2;
    verdict_word = code == 0 ? "verified" : code == 1 ? "refuted" : "inconclusive";
    report["verdict"] = verdict_word;
    if (!opt.as_json) {
      std::cout << "verify " << opt.file << " (oracle, domain " << dom.lo << ".."
                << dom.hi << ", fuel " << opt.fuel << ")\n";
      std::cout << "  spec: forall-forall\n";
      print_verdict("product", v);
      std::cout << "verdict: " << verdict_word << "\n";
    }
  }
  if (opt.as_json) std::cout << report.dump(2) << "\n";
  return code;
}

int run_verify_smt(const CliOptions& opt, const Problem& p) {
  SmtOptions smt;
  if (!opt.solver.empty()) smt.solver = opt.solver;
  smt.replay_dom = parse_domain(opt.domain);
  SpecReport rep = check_spec(p, smt);
  json report;
  report["command"] = "verify";
  report["file"] = opt.file;
  report["backend"] = "smt";
  report["solver"] = rep.solver_cmd;
  report["verdict"] = rep.verdict;
  json obs = json::array();
  for (const ObligationReport& ob : rep.obligations) {
    json o;
    o["origin"] = ob.vc.origin;
    o["formula"] = print_relformula(ob.vc.formula);
    o["status"] = ob.status;
    if (ob.replay_attempted) {
      o["replay_confirms"] = ob.replay_confirms;
      o["model"] = {{"left", store_json(ob.model_left)},
                    {"right", store_json(ob.model_right)}};
    }
    obs.push_back(o);
  }
  report["obligations"] = obs;
  if (!rep.error.empty()) report["error"] = rep.error;
  if (opt.as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "verify " << opt.file << " (smt, solver: " << rep.solver_cmd
              << ")\n";
    for (const ObligationReport& ob : rep.obligations) {
      std::cout << "  [" << ob.status << "] " << ob.vc.origin << "\n";
      if (ob.status == "sat") {
        std::cout << "    violated: " << print_relformula(ob.vc.formula) << "\n";
        if (ob.replay_attempted) {
          std::cout << "    model left:  " << store_line(ob.model_left) << "\n";
          std::cout << "    model right: " << store_line(ob.model_right) << "\n";
          std::cout << "    replay "
                    << (ob.replay_confirms ? "confirms the failure"
                                           : "does not confirm (spurious?)")
                    << "\n";
        }
      }
    }
    if (!rep.error.empty()) std::cout << "  error: " << rep.error << "\n";
    std::cout << "verdict: " << rep.verdict << "\n";
  }
  if (rep.verdict == "verified") return 0;
  if (rep.verdict == "refuted") return 1;
  if (rep.verdict == "unknown") return 2;
  return 3;
}

int run_verify(const CliOptions& opt) {
  Problem p = load_problem(opt.file);
  if (opt.backend == "oracle") return run_verify_oracle(opt, p);
  if (opt.backend == "smt") return run_verify_smt(opt, p);
  throw std::runtime_error("backend must be oracle or smt, got " + opt.backend);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relational verification toolkit"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* check = app.add_subcommand("check", "validate a problem file");
  check->add_option("file", opt.file, "problem file")->required();
  check->add_flag("--json", opt.as_json, "machine-readable report");

  CLI::App* transform =
      app.add_subcommand("transform", "print the instrumented product");
  transform->add_option("file", opt.file, "problem file")->required();
  transform->add_flag("--json", opt.as_json, "machine-readable report");

  CLI::App* translate =
      app.add_subcommand("translate", "print the unary rendering");
  translate->add_option("file", opt.file, "problem file")->required();
  translate->add_flag("--json", opt.as_json, "machine-readable report");

  CLI::App* verify = app.add_subcommand("verify", "run a verification backend");
  verify->add_option("file", opt.file, "problem file")->required();
  verify->add_option("--backend", opt.backend, "oracle or smt")
      ->check(CLI::IsMember({"oracle", "smt"}));
  verify->add_option("--domain", opt.domain, "value range, lo..hi");
  verify->add_option("--fuel", opt.fuel, "loop iteration budget")
      ->check(CLI::PositiveNumber);
  verify->add_option("--solver", opt.solver, "solver command reading SMT-LIB on stdin");
  verify->add_flag("--json", opt.as_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (check->parsed()) return run_check(opt);
    if (transform->parsed()) return run_print(opt, false);
    if (translate->parsed()) return run_print(opt, true);
    return run_verify(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << opt.file << ": " << e.what() << "\n";
    return 3;
  } catch (const TransformError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const VcgenError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
