// Tests for condition generation: weakest-precondition equations, loop
// obligations, conjunct splitting with origin tracking, SMT-LIB emission,
// model parsing, and solver selection.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "biver/parser.hpp"
#include "biver/printer.hpp"
#include "biver/transform.hpp"
#include "biver/vcgen.hpp"

using namespace biver;

namespace {

std::map<std::string, Sort> xy() {
  return {{"x", Sort::Int}, {"y", Sort::Int}};
}

std::string pre_of(const std::string& bicom, const std::string& post) {
  VcResult r = vc_bicom(parse_bicom(bicom, xy()), parse_relformula(post, xy()));
  REQUIRE(r.obligations.empty());
  return print_relformula(r.pre);
}

}  // namespace

TEST_CASE("weakest preconditions of the atomic forms") {
  // assignments substitute on their own side only
  CHECK(pre_of("< x := x + 1 | skip >", "x =:= x") == "x + 1 =:= x");
  CHECK(pre_of("< skip | x := x + 1 >", "x =:= x") == "x =:= x + 1");

  // havoc quantifies universally on its side
  CHECK(pre_of("< hav x | skip >", "x =:= y") ==
        "forall x:int| . x =:= y");

  // one-sided assumptions guard the continuation
  BicomPtr asm_b =
      parse_bicom("< assume { x > 0 } | skip >", xy(), /*lenient=*/true);
  VcResult asm_r = vc_bicom(asm_b, parse_relformula("x =:= y", xy()));
  REQUIRE(asm_r.obligations.empty());
  CHECK(print_relformula(asm_r.pre) == "*<| x > 0 *<] -> x =:= y");

  // a filter quantifies over the draws that pass it
  CHECK(pre_of("havF y { x =:= y }", "x =:= y") ==
        "forall |y:int . x =:= y -> x =:= y");

  // a relational assertion is checked and then assumed
  CHECK(pre_of("assert { x =:= y }", "*<| x > 0 *<]") ==
        "x =:= y /\\ *<| x > 0 *<]");
  CHECK(pre_of("assert { *<| tt *<] }", "x =:= y") == "x =:= y");
}

TEST_CASE("one-sided assertions carry their location as a mark") {
  VcResult r = vc_bicom(parse_bicom("< assert { x > 0 } | skip >", xy()),
                        rf_true());
  REQUIRE(r.pre->kind == RelFormula::Kind::Mark);
  CHECK(r.pre->tag == "assert");
  CHECK(r.pre->path == "0");
  CHECK(print_relformula(r.pre->a) == "*<| x > 0 *<]");

  // relational assertions that already carry a mark keep it
  BicomPtr marked = bi_assert(
      rf_mark("havf-exists", "3", parse_relformula("x =:= y", xy())));
  VcResult r2 = vc_bicom(marked, rf_true());
  REQUIRE(r2.pre->kind == RelFormula::Kind::Mark);
  CHECK(r2.pre->tag == "havf-exists");
  CHECK(r2.pre->path == "3");
}

TEST_CASE("conditionals split into guarded branch preconditions") {
  CHECK(pre_of("< if x > 0 then x := 1 else x := 2 end | skip >",
               "x =:= y") ==
        "(*<| x > 0 *<] -> 1 =:= y) /\\ (!*<| x > 0 *<] -> 2 =:= y)");

  // a trivial postcondition collapses the whole four-way split
  std::string biif =
      "if x > 0 | y > 0 thth < skip | skip > thel < skip | skip > "
      "elth < skip | skip > elel < skip | skip > fi";
  CHECK(pre_of(biif, "tt") == "tt");
}

TEST_CASE("the instrumented filter gains a witness conjunct") {
  BicomPtr b = parse_bicom("havF y { x =:= y }", xy());
  BicomPtr bc = chk(b, {});
  VcResult r = vc_bicom(bc, parse_relformula("x =:= y", xy()));
  CHECK(print_relformula(r.pre) ==
        "(exists |y:int . x =:= y) /\\ "
        "(forall |y:int . x =:= y -> x =:= y)");
}

TEST_CASE("loops without invariants are rejected with their location") {
  BicomPtr b =
      parse_bicom("while x > 0 | x > 0 do |_ x := x - 1 _| done", xy());
  CHECK_THROWS_WITH(vc_bicom(b, parse_relformula("x =:= x", xy())),
                    "paired loop at top level needs an invariant annotation");

  BicomPtr b2 =
      parse_bicom("< skip | while x > 0 do x := x - 1 done >", xy());
  CHECK_THROWS_WITH(vc_bicom(b2, parse_relformula("x =:= x", xy())),
                    "loop at 1 needs an invariant annotation");
}

TEST_CASE("a one-sided loop yields preserve and exit obligations") {
  BicomPtr b = parse_bicom(
      "< skip | while x > 0 inv x >= 0 do x := x - 1 done >", xy());
  VcResult r = vc_bicom(b, parse_relformula("[> x = 0 |>", xy()));
  REQUIRE(r.obligations.size() == 2);
  CHECK(r.obligations[0].origin == "F-preserve at 1");
  CHECK(r.obligations[1].origin == "F-exit at 1");
  CHECK(print_relformula(r.obligations[0].formula) ==
        "[> x >= 0 |> /\\ [> x > 0 |> -> [> x - 1 >= 0 |>");
  CHECK(print_relformula(r.obligations[1].formula) ==
        "[> x >= 0 |> /\\ ![> x > 0 |> -> [> x = 0 |>");

  // the loop's precondition is its invariant, marked as the entry piece
  REQUIRE(r.pre->kind == RelFormula::Kind::Mark);
  CHECK(r.pre->tag == "F-init");
  CHECK(print_relformula(r.pre->a) == "[> x >= 0 |>");
}

TEST_CASE("a paired loop yields the five scheduling obligations") {
  BicomPtr b = parse_bicom(
      "while x > 0 | x > 0 algn *<| ff *<] | [> ff |> inv x =:= x do "
      "|_ x := x - 1 _| done",
      xy());
  VcResult r = vc_bicom(b, parse_relformula("x =:= x", xy()));

  REQUIRE(r.obligations.size() == 5);
  CHECK(r.obligations[0].origin == "G1 at top level");
  CHECK(r.obligations[1].origin == "G2 at top level");
  CHECK(r.obligations[2].origin == "G3 at top level");
  CHECK(r.obligations[3].origin == "G4 at top level");
  CHECK(r.obligations[4].origin == "G5 at top level");

  // exit re-establishes the postcondition
  CHECK(print_relformula(r.obligations[0].formula) ==
        "x =:= x /\\ !*<| x > 0 *<] /\\ ![> x > 0 |> -> x =:= x");
  // one-sided moves are disabled by the false alignment conditions
  CHECK(print_relformula(r.obligations[1].formula) == "tt");
  // both tests must agree whenever neither side may move alone
  CHECK(print_relformula(r.obligations[4].formula) ==
        "x =:= x -> (x > 0) =:= (x > 0)");

  CHECK(print_relformula(r.pre) == "x =:= x");
}

TEST_CASE("obligations inside loop bodies carry the loop's context") {
  BicomPtr b = parse_bicom(
      "while x > 0 | x > 0 algn *<| ff *<] | [> ff |> inv x =:= x do "
      "< assert { x > 0 } | skip >; |_ x := x - 1 _| done",
      xy());
  VcResult r = vc_bicom(b, parse_relformula("x =:= x", xy()));
  bool found = false;
  for (const auto& ob : r.obligations) {
    std::vector<VerificationCondition> pieces = split_obligation(ob);
    for (const auto& piece : pieces)
      if (piece.origin == "G4 at top level / assert at 0.0.0") found = true;
  }
  CHECK(found);
}

TEST_CASE("splitting distributes over conjunction and hypotheses") {
  auto vars = xy();
  RelFormulaPtr inner =
      rf_and(parse_relformula("x =:= y", vars),
             rf_mark("havf-exists", "2",
                     parse_relformula("*<| x > 0 *<]", vars)));
  RelFormulaPtr whole = rf_quant(
      RelFormula::Kind::Forall, Side::Left, {"x", Sort::Int},
      rf_imp(parse_relformula("[> y > 0 |>", vars), inner));
  std::vector<VerificationCondition> pieces =
      split_obligation({whole, "entry"});

  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].origin == "entry");
  CHECK(print_relformula(pieces[0].formula) ==
        "forall x:int| . [> y > 0 |> -> x =:= y");
  CHECK(pieces[1].origin == "havf-exists at 2");
  CHECK(print_relformula(pieces[1].formula) ==
        "forall x:int| . [> y > 0 |> -> *<| x > 0 *<]");
}

TEST_CASE("problem obligations are split and deduplicated by origin") {
  Problem p = parse_problem(
      "vars x : int, y : int;\n"
      "bicom { < hav x | skip >; havF y { x =:= y } }\n"
      "spec ae pre { tt } post { x =:= y }\n");
  std::vector<VerificationCondition> vcs = spec_obligations(p);

  bool saw_entry = false, saw_exists = false;
  for (const auto& vc : vcs) {
    if (vc.origin == "entry") saw_entry = true;
    if (vc.origin == "havf-exists at 1") saw_exists = true;
  }
  CHECK(saw_entry);
  CHECK(saw_exists);

  // duplicate conjuncts from the same origin get numbered apart
  Problem dup = parse_problem(
      "vars x : int, y : int;\n"
      "bicom { |_ skip _| }\n"
      "spec aa pre { tt } post { x =:= y /\\ x =:= y }\n");
  std::vector<VerificationCondition> dvcs = spec_obligations(dup);
  REQUIRE(dvcs.size() == 2);
  CHECK(dvcs[0].origin == "entry");
  CHECK(dvcs[1].origin == "entry #2");
}

TEST_CASE("forall-forall specifications skip the witness instrumentation") {
  Problem p = parse_problem(
      "vars x : int, y : int;\n"
      "bicom { havF y { x =:= y } }\n"
      "spec aa pre { tt } post { x =:= y }\n");
  for (const auto& vc : spec_obligations(p))
    CHECK(vc.origin.find("havf-exists") == std::string::npos);
}

TEST_CASE("emitted scripts negate the condition over renamed variables") {
  VerificationCondition vc{parse_relformula("x =:= y", xy()), "entry"};
  CHECK(emit_smtlib(vc) ==
        "; entry\n"
        "(set-option :produce-models true)\n"
        "(set-logic ALL)\n"
        "(declare-fun l_x () Int)\n"
        "(declare-fun r_y () Int)\n"
        "(assert (not (= l_x r_y)))\n"
        "(check-sat)\n"
        "(get-model)\n");

  std::string ne = emit_smtlib(
      {parse_relformula("*<| x *<] <> [> y |>", xy()), "entry"});
  CHECK(ne.find("(distinct l_x r_y)") != std::string::npos);

  std::string quant = emit_smtlib(
      {parse_relformula("forall |y:int . x =:= y", xy()), "entry"});
  CHECK(quant.find("(forall ((r_y Int))") != std::string::npos);
  // the bound variable is not declared globally
  CHECK(quant.find("(declare-fun r_y") == std::string::npos);
}

TEST_CASE("solver models map back to paired stores") {
  Store left, right;
  parse_model(
      "(\n"
      "  (define-fun l_x () Int (- 2))\n"
      "  (define-fun r_y () Int 3)\n"
      "  (define-fun $r_E_1 () Int 0)\n"
      "  (define-fun r_b () Bool true)\n"
      ")\n",
      left, right);
  REQUIRE(left.size() == 1);
  CHECK(left.at("x").num == -2);
  REQUIRE(right.size() == 3);
  CHECK(right.at("y").num == 3);
  CHECK(right.at("$E_1").num == 0);
  CHECK(right.at("b").as_bool());

  // the older wrapper form with a leading model keyword also parses
  Store l2, r2;
  parse_model("(model (define-fun l_x () Int 7))", l2, r2);
  CHECK(l2.at("x").num == 7);
  CHECK(r2.empty());
}

TEST_CASE("solver selection prefers explicit, then environment") {
  CHECK(solver_command("cvc5 --incremental") == "cvc5 --incremental");
  setenv("BIVER_SOLVER", "mysolver -q", 1);
  CHECK(solver_command() == "mysolver -q");
  CHECK(solver_command("z3 -in") == "z3 -in");
  unsetenv("BIVER_SOLVER");
  CHECK(solver_command() == "z3 -in");
}

TEST_CASE("an unavailable solver is reported, not crashed on") {
  CHECK_FALSE(solver_available("definitely-not-a-solver-xyz -q"));
  Problem p = parse_problem(
      "vars x : int;\n"
      "bicom { |_ skip _| }\n"
      "spec aa pre { tt } post { x =:= x }\n");
  SmtOptions opts;
  opts.solver = "definitely-not-a-solver-xyz -q";
  SpecReport rep = check_spec(p, opts);
  CHECK_FALSE(rep.solver_ok);
  CHECK(rep.verdict == "error");
  CHECK_FALSE(rep.error.empty());
}

TEST_CASE("a refuted specification comes back with a replaying model") {
  std::string cmd = solver_command();
  if (!solver_available(cmd)) {
    WARN("no solver on this machine, skipping the live check");
    return;
  }
  Problem p = parse_problem(
      "vars x : int, y : int;\n"
      "bicom { < hav x | skip >; havF y { *<| x *<] = 2 * [> y |> } }\n"
      "spec ae pre { tt } post { *<| x *<] = 2 * [> y |> }\n");
  SpecReport rep = check_spec(p);
  REQUIRE(rep.solver_ok);
  CHECK(rep.verdict == "refuted");

  bool exists_refuted = false;
  for (const auto& ob : rep.obligations)
    if (ob.status == "sat" &&
        ob.vc.origin.find("havf-exists") != std::string::npos) {
      CHECK(ob.replay_attempted);
      CHECK(ob.replay_confirms);
      // the piece really is false over the replay domain
      CHECK_FALSE(eval_rformula(ob.vc.formula, ob.model_left, ob.model_right,
                                Domain{-2, 2}));
      exists_refuted = true;
    }
  CHECK(exists_refuted);
}
