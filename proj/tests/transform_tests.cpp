// Tests for the instrumentation pass: existence assertions in front of
// filters, variant snapshots and decrease assertions around loops, fresh
// names derived from structural paths, and the projection commutations.
#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "biver/parser.hpp"
#include "biver/printer.hpp"
#include "biver/structure.hpp"
#include "biver/syntax.hpp"
#include "biver/transform.hpp"

using namespace biver;

namespace {

std::map<std::string, Sort> xy() {
  return {{"x", Sort::Int}, {"y", Sort::Int}};
}

Problem load_problem(const std::string& name) {
  std::ifstream in(std::string(BIVER_PROBLEM_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str());
}

const FrameList no_avoid;

int count_exists_asserts(const BicomPtr& b) {
  switch (b->kind) {
    case Bicom::Kind::RAssert:
      return b->formula->kind == RelFormula::Kind::Mark &&
                     b->formula->tag == "havf-exists"
                 ? 1
                 : 0;
    case Bicom::Kind::Seq:
      return count_exists_asserts(b->b1) + count_exists_asserts(b->b2);
    case Bicom::Kind::BiIf:
      return count_exists_asserts(b->b1) + count_exists_asserts(b->b2) +
             count_exists_asserts(b->b3) + count_exists_asserts(b->b4);
    case Bicom::Kind::BiWhile: return count_exists_asserts(b->b1);
    default: return 0;
  }
}

}  // namespace

TEST_CASE("filters gain an existence assertion") {
  BicomPtr b = parse_bicom("havF y { x =:= y }", xy());
  BicomPtr out = chk(b, no_avoid);

  REQUIRE(out->kind == Bicom::Kind::Seq);
  REQUIRE(out->b1->kind == Bicom::Kind::RAssert);
  CHECK(equal_bicom(out->b2, b));

  RelFormulaPtr guard = out->b1->formula;
  REQUIRE(guard->kind == RelFormula::Kind::Mark);
  CHECK(guard->tag == "havf-exists");
  CHECK(guard->path == "top level");
  REQUIRE(guard->a->kind == RelFormula::Kind::Exists);
  CHECK(guard->a->side == Side::Right);
  CHECK(guard->a->bound.name == "y");
  CHECK(equal_relformula(guard->a->a, b->formula));

  CHECK(print_relformula(guard) == "exists |y:int . x =:= y");
}

TEST_CASE("assertion-only and loop-free programs pass through unchanged") {
  BicomPtr a = parse_bicom("assert { x =:= y }", xy());
  CHECK(equal_bicom(chk(a, no_avoid), a));

  BicomPtr e = parse_bicom("< x := x + 1 | y := 2 * y >", xy());
  CHECK(equal_bicom(chk(e, no_avoid), e));

  BicomPtr s = parse_bicom("< x := 1 | skip >; assert { x =:= y }", xy());
  CHECK(equal_bicom(chk(s, no_avoid), s));
}

TEST_CASE("existence assertions record the filter's path") {
  BicomPtr b = parse_bicom("< x := 1 | skip >; havF y { x =:= y }", xy());
  BicomPtr out = chk(b, no_avoid);

  // seq(embed, seq(assert, havf)): the filter sat at path 1
  REQUIRE(out->kind == Bicom::Kind::Seq);
  REQUIRE(out->b2->kind == Bicom::Kind::Seq);
  REQUIRE(out->b2->b1->kind == Bicom::Kind::RAssert);
  CHECK(out->b2->b1->formula->kind == RelFormula::Kind::Mark);
  CHECK(out->b2->b1->formula->path == "1");
  CHECK(count_exists_asserts(out) == 1);
}

TEST_CASE("unannotated unary loops are rejected with their path") {
  CommandPtr w = parse_command("while x > 0 do x := x - 1 done", xy());
  CHECK_THROWS_AS(uchk(w, no_avoid), TransformError);
  CHECK_THROWS_WITH(uchk(w, no_avoid),
                    "loop at top level needs a variant annotation");

  CommandPtr s =
      parse_command("skip; while x > 0 do x := x - 1 done", xy());
  CHECK_THROWS_WITH(uchk(s, no_avoid),
                    "loop at 1 needs a variant annotation");

  CommandPtr i = parse_command(
      "if x > 0 then skip else while tt do skip done end", xy());
  CHECK_THROWS_WITH(uchk(i, no_avoid),
                    "loop at 1 needs a variant annotation");
}

TEST_CASE("annotated unary loops gain a snapshot and a decrease assertion") {
  CommandPtr w =
      parse_command("while x > 0 vnt x inv x >= 0 do x := x - 1 done", xy());
  CommandPtr out = uchk(w, no_avoid);

  REQUIRE(out->kind == Command::Kind::While);
  CHECK(equal_expr(out->expr, w->expr));
  REQUIRE(out->variant.has_value());
  CHECK(equal_expr(*out->variant, *w->variant));
  REQUIRE(out->invariant.has_value());
  CHECK(equal_uformula(*out->invariant, *w->invariant));

  // body becomes $v := x; old body; assert { 0 <= x /\ x < $v }
  REQUIRE(out->c1->kind == Command::Kind::Seq);
  const CommandPtr& snap = out->c1->c1;
  REQUIRE(snap->kind == Command::Kind::Assign);
  CHECK(snap->var.name == "$v");
  CHECK(snap->var.sort == Sort::Int);
  CHECK(equal_expr(snap->expr, *w->variant));

  REQUIRE(out->c1->c2->kind == Command::Kind::Seq);
  CHECK(equal_cmd(out->c1->c2->c1, w->c1));
  const CommandPtr& dec = out->c1->c2->c2;
  REQUIRE(dec->kind == Command::Kind::Assert);
  CHECK(print_uformula(dec->formula) == "0 <= x /\\ x < $v");
}

TEST_CASE("snapshot names follow the loop's structural path") {
  CommandPtr two = parse_command(
      "while x > 0 vnt x do x := x - 1 done; "
      "while y > 0 vnt y do y := y - 1 done",
      xy());
  CommandPtr out = uchk(two, no_avoid);
  REQUIRE(out->kind == Command::Kind::Seq);
  CHECK(out->c1->c1->c1->var.name == "$v_0");
  CHECK(out->c2->c1->c1->var.name == "$v_1");

  CommandPtr nested = parse_command(
      "while x > 0 vnt x do "
      "  while y > 0 vnt y do y := y - 1 done; "
      "  x := x - 1 "
      "done",
      xy());
  CommandPtr nout = uchk(nested, no_avoid);
  CHECK(nout->c1->c1->var.name == "$v");
  // inner loop sits at body position 0 then seq position 0
  const CommandPtr& inner = nout->c1->c2->c1->c1;
  REQUIRE(inner->kind == Command::Kind::While);
  CHECK(inner->c1->c1->var.name == "$v_0_0");
}

TEST_CASE("snapshot names must not collide with declared variables") {
  CommandPtr w = parse_command("while x > 0 vnt x do x := x - 1 done", xy());
  FrameList avoid{{"$v", Sort::Int}};
  CHECK_THROWS_WITH(
      uchk(w, avoid),
      "snapshot name '$v' collides with a variable in the avoid list");

  // ordinary names never collide with the $-prefixed snapshots
  FrameList plain{{"v", Sort::Int}, {"x", Sort::Int}};
  CHECK_NOTHROW(uchk(w, plain));
}

TEST_CASE("unannotated paired loops are rejected with their path") {
  BicomPtr w = parse_bicom(
      "while x > 0 | y > 0 do < x := x - 1 | y := y - 1 > done", xy());
  CHECK_THROWS_WITH(chk(w, no_avoid),
                    "paired loop at top level needs a variant annotation");

  BicomPtr s = parse_bicom(
      "assert { tt }; "
      "while x > 0 | y > 0 do < x := x - 1 | y := y - 1 > done",
      xy());
  CHECK_THROWS_WITH(chk(s, no_avoid),
                    "paired loop at 1 needs a variant annotation");
}

TEST_CASE("annotated paired loops gain snapshots and a decrease assertion") {
  BicomPtr w = parse_bicom(
      "while x > 0 | y > 0 algn ff | ff vnt [> y |> inv x =:= y "
      "do < x := x - 1 | y := y - 1 > done",
      xy());
  BicomPtr out = chk(w, no_avoid);

  REQUIRE(out->kind == Bicom::Kind::BiWhile);
  CHECK(equal_expr(out->ltest, w->ltest));
  CHECK(equal_expr(out->rtest, w->rtest));
  CHECK(equal_relformula(out->lalign, w->lalign));
  CHECK(equal_relformula(out->ralign, w->ralign));
  REQUIRE(out->variant.has_value());
  CHECK(equal_relexpr(*out->variant, *w->variant));
  REQUIRE(out->invariant.has_value());
  CHECK(equal_relformula(*out->invariant, *w->invariant));

  // body: pick $E = variant; pick $ro <-> a right step is possible;
  // old body; assert ($ro implies the variant stayed in bounds)
  REQUIRE(out->b1->kind == Bicom::Kind::Seq);
  const BicomPtr& snap_e = out->b1->b1;
  REQUIRE(snap_e->kind == Bicom::Kind::HavF);
  CHECK(snap_e->var.name == "$E");
  CHECK(snap_e->var.sort == Sort::Int);
  CHECK(print_relformula(snap_e->formula) == "[> $E |> = [> y |>");

  REQUIRE(out->b1->b2->kind == Bicom::Kind::Seq);
  const BicomPtr& snap_ro = out->b1->b2->b1;
  REQUIRE(snap_ro->kind == Bicom::Kind::HavF);
  CHECK(snap_ro->var.name == "$ro");
  CHECK(snap_ro->var.sort == Sort::Bool);
  REQUIRE(snap_ro->formula->kind == RelFormula::Kind::Iff);
  CHECK(print_relformula(snap_ro->formula->a) == "[> $ro |>");
  CHECK(print_relformula(snap_ro->formula->b) == "[> y > 0 |> /\\ ff");

  REQUIRE(out->b1->b2->b2->kind == Bicom::Kind::Seq);
  CHECK(equal_bicom(out->b1->b2->b2->b1, w->b1));
  const BicomPtr& dec = out->b1->b2->b2->b2;
  REQUIRE(dec->kind == Bicom::Kind::RAssert);
  CHECK(print_relformula(dec->formula) ==
        "[> $ro |> -> 0 <= [> y |> /\\ [> y |> < [> $E |>");
}

TEST_CASE("paired snapshot names follow the loop's structural path") {
  BicomPtr s = parse_bicom(
      "assert { tt }; "
      "while x > 0 | y > 0 algn ff | ff vnt [> y |> "
      "do < x := x - 1 | y := y - 1 > done",
      xy());
  BicomPtr out = chk(s, no_avoid);
  REQUIRE(out->b2->kind == Bicom::Kind::BiWhile);
  CHECK(out->b2->b1->b1->var.name == "$E_1");
  CHECK(out->b2->b1->b2->b1->var.name == "$ro_1");
}

TEST_CASE("right components of embeds are instrumented as unary code") {
  BicomPtr e = parse_bicom(
      "< skip | while x > 0 vnt x do x := x - 1 done >", xy());
  BicomPtr out = chk(e, no_avoid);

  REQUIRE(out->kind == Bicom::Kind::Embed);
  CHECK(out->left->kind == Command::Kind::Skip);
  REQUIRE(out->right->kind == Command::Kind::While);
  // the right component sits at path 1, so its snapshot does too
  CHECK(out->right->c1->c1->var.name == "$v_1");

  BicomPtr plain = parse_bicom("< skip | while x > 0 do skip done >", xy());
  CHECK_THROWS_WITH(chk(plain, no_avoid),
                    "loop at 1 needs a variant annotation");
}

TEST_CASE("left components of embeds are left alone") {
  BicomPtr e = parse_bicom(
      "< while x > 0 do x := x - 1 done | skip >", xy());
  BicomPtr out = chk(e, no_avoid);
  CHECK(equal_bicom(out, e));
}

TEST_CASE("instrumentation is a pure function of the program") {
  BicomPtr b = parse_bicom(
      "< hav x | skip >; havF y { x =:= y }; "
      "while x > 0 | y > 0 algn ff | ff vnt [> y |> "
      "do < x := x - 1 | y := y - 1 > done",
      xy());
  CHECK(equal_bicom(chk(b, no_avoid), chk(b, no_avoid)));
}

TEST_CASE("instrumentation commutes with the one-sided projections") {
  std::vector<std::string> samples = {
      "< hav x | skip >; havF y { x =:= y }",
      "< x := 1 | y := 2 >; assert { x =:= y }",
      "while x > 0 | y > 0 algn ff | ff vnt [> y |> "
      "do < x := x - 1 | y := y - 1 > done",
      "if x > 0 | y > 0 thth < skip | skip > thel < skip | skip > "
      "elth < skip | skip > elel < skip | skip > fi",
  };
  for (const std::string& text : samples) {
    CAPTURE(text);
    BicomPtr b = parse_bicom(text, xy());
    CHECK(equal_bicom(biright(chk(b, no_avoid)), chk(biright(b), no_avoid)));
    CHECK(bieq(bileft(chk(b, no_avoid)), chk(bileft(b), no_avoid)));
  }
}

TEST_CASE("the shipped problems instrument cleanly") {
  Problem intro = load_problem("intro.biver");
  BicomPtr ichk = chk(intro.bicom, default_avoid(intro));
  CHECK(count_exists_asserts(ichk) == 1);
  CHECK(print_bicom(ichk) ==
        "< hav x | skip >;\n"
        "assert { exists |y:int . x =:= y };\n"
        "havF y { x =:= y }");

  Problem c2 = load_problem("c2.biver");
  BicomPtr cchk = chk(c2.bicom, default_avoid(c2));
  CHECK(count_exists_asserts(cchk) == 6);
}
