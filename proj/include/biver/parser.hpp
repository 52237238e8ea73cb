// Lexer and recursive-descent parser for the concrete text format.
//
// Problem files look like:
//   vars x:int, b:bool;
//   left  { <command> }     (optional)
//   right { <command> }     (optional)
//   bicom { <bicom> }
//   spec ae pre { <relformula> } post { <relformula> }
//
// Bicom syntax: `< c | c' >` embeds a pair of commands, `|_ c _|` embeds two
// copies of the same command, `assert { R }`, `havF x { R }`, `;`,
// `if e | e' thth B thel B elth B elel B fi`,
// `while e | e' algn L | R vnt E inv I do B done` with the algn, vnt and inv
// clauses optional. Relational formulas use `*<| p *<]` and `[> p |>` for the
// left and right embeds, `e =:= e'` for agreement, and quantifiers
// `forall x| . f`, `forall |x . f`, `exists x| . f`, `exists |x . f` where
// the bar picks the side. `//` starts a line comment.
//
// Identifiers declared in problems must start with a letter; the `$` prefix
// is reserved for generated instrumentation variables, which only the
// lenient mode (used when re-reading tool output) accepts.
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "biver/syntax.hpp"

namespace biver {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

namespace detail {

struct Token {
  enum class Kind { Int, Word, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  long long val = 0;
  int line = 1, col = 1;
};

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "skip", "hav", "assert", "assume", "if", "then", "else", "end",
      "while", "do", "done", "vnt", "inv", "algn", "thth", "thel", "elth",
      "elel", "fi", "havF", "tt", "ff", "div", "mod", "forall", "exists",
      "vars", "left", "right", "bicom", "spec", "pre", "post", "ae", "aa",
      "int", "bool"};
  return words;
}

inline std::vector<Token> lex(const std::string& text) {
  // longest symbols first so prefixes do not shadow them
  static const char* symbols[] = {
      "*<|", "*<]", "<->", "=:=", "[>", "|>", "|_", "_|", "->", ":=",
      "<=", ">=", "<>", "/\\", "\\/", "+", "-", "*", "(", ")", "{", "}",
      ";", ",", ":", ".", "<", ">", "=", "!", "|"};
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; k++) {
      if (text[i + k] == '\n') { line++; col = 1; } else col++;
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line; t.col = col;
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') j++;
      t.kind = Token::Kind::Int;
      t.text = text.substr(i, j - i);
      t.val = std::stoll(t.text);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    bool matched = false;
    for (const char* sym : symbols) {
      size_t n = std::char_traits<char>::length(sym);
      if (text.compare(i, n, sym) == 0) {
        // `_|` only when `_` does not continue an identifier; handled by
        // checking that `_` starts the token here, which the ident branch
        // below would otherwise claim
        t.kind = Token::Kind::Sym;
        t.text = sym;
        advance(n);
        out.push_back(std::move(t));
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$') {
      size_t j = i;
      auto ident_char = [&](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
               (ch >= '0' && ch <= '9') || ch == '_' || ch == '$';
      };
      while (j < text.size() && ident_char(text[j])) j++;
      t.kind = Token::Kind::Word;
      t.text = text.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line; end.col = col;
  out.push_back(end);
  return out;
}

}  // namespace detail

class Parser {
 public:
  Parser(const std::string& text, std::map<std::string, Sort> vars = {},
         bool lenient = false)
      : toks_(detail::lex(text)), env_(std::move(vars)), lenient_(lenient) {}

  Problem problem() {
    Problem p;
    if (!at_word("vars")) fail("problem must start with a vars declaration");
    while (at_word("vars")) {
      next();
      for (;;) {
        Var v = parse_decl();
        p.vars.push_back(v);
        env_[v.name] = v.sort;
        if (at_sym(",")) { next(); continue; }
        break;
      }
      expect_sym(";", "after variable declarations");
    }
    if (at_word("left")) {
      next();
      expect_sym("{", "after left");
      p.left = parse_cmd();
      expect_sym("}", "after left command");
    }
    if (at_word("right")) {
      next();
      expect_sym("{", "after right");
      p.right = parse_cmd();
      expect_sym("}", "after right command");
    }
    expect_word("bicom", "problem needs a bicom section");
    expect_sym("{", "after bicom");
    p.bicom = parse_bicom();
    expect_sym("}", "after bicom body");
    expect_word("spec", "problem needs a spec section");
    if (at_word("ae")) { next(); p.spec.kind = SpecKind::ForallExists; }
    else if (at_word("aa")) { next(); p.spec.kind = SpecKind::ForallForall; }
    else fail("spec kind must be ae or aa");
    expect_word("pre", "spec needs pre");
    expect_sym("{", "after pre");
    p.spec.pre = parse_relformula();
    expect_sym("}", "after pre formula");
    expect_word("post", "spec needs post");
    expect_sym("{", "after post");
    p.spec.post = parse_relformula();
    expect_sym("}", "after post formula");
    expect_end();
    return p;
  }

  CommandPtr command() {
    auto c = parse_cmd();
    expect_end();
    return c;
  }

  BicomPtr bicom() {
    auto b = parse_bicom();
    expect_end();
    return b;
  }

  RelFormulaPtr relformula() {
    auto f = parse_relformula();
    expect_end();
    return f;
  }

  UFormulaPtr uformula() {
    auto f = parse_uformula();
    expect_end();
    return f;
  }

  ExprPtr expr() {
    auto e = parse_expr_or();
    expect_end();
    return e;
  }

 private:
  std::vector<detail::Token> toks_;
  size_t pos_ = 0;
  std::map<std::string, Sort> env_;
  std::vector<Var> binders_;
  bool lenient_;

  using Token = detail::Token;

  const Token& tok(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  void next() { if (pos_ + 1 < toks_.size()) pos_++; }
  bool at_sym(const char* s, size_t ahead = 0) const {
    const Token& t = tok(ahead);
    return t.kind == Token::Kind::Sym && t.text == s;
  }
  bool at_word(const char* s, size_t ahead = 0) const {
    const Token& t = tok(ahead);
    return t.kind == Token::Kind::Word && t.text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok().line, tok().col, msg);
  }
  void expect_sym(const char* s, const char* what) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "' " + what);
    next();
  }
  void expect_word(const char* s, const char* what) {
    if (!at_word(s)) fail(std::string("expected '") + s + "' (" + what + ")");
    next();
  }
  void expect_end() {
    if (tok().kind != Token::Kind::End) fail("unexpected trailing input");
  }

  // --- variables -----------------------------------------------------------

  static bool derived_dollar_sort(const std::string& name, Sort* out) {
    if (name.empty() || name[0] != '$') return false;
    std::string base = name;
    if (base.rfind("$l_", 0) == 0 || base.rfind("$r_", 0) == 0)
      base = "$" + base.substr(3);
    *out = base.rfind("$ro", 0) == 0 ? Sort::Bool : Sort::Int;
    return true;
  }

  Var lookup(const std::string& name) {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (it->name == name) return *it;
    auto it = env_.find(name);
    if (it != env_.end()) return {name, it->second};
    Sort s;
    if (lenient_ && derived_dollar_sort(name, &s)) return {name, s};
    fail("undeclared variable '" + name + "'");
  }

  Var parse_decl() {
    if (tok().kind != Token::Kind::Word) fail("expected variable name");
    std::string name = tok().text;
    if (detail::reserved_words().count(name))
      fail("'" + name + "' is a reserved word");
    char c0 = name[0];
    if (!((c0 >= 'a' && c0 <= 'z') || (c0 >= 'A' && c0 <= 'Z')))
      fail("declared variable names must start with a letter");
    if (name.find('$') != std::string::npos)
      fail("the '$' prefix is reserved for generated variables");
    if (env_.count(name)) fail("duplicate declaration of '" + name + "'");
    next();
    expect_sym(":", "after variable name");
    Sort s = parse_sort();
    return {name, s};
  }

  Sort parse_sort() {
    if (at_word("int")) { next(); return Sort::Int; }
    if (at_word("bool")) { next(); return Sort::Bool; }
    fail("expected a sort (int or bool)");
  }

  Var parse_binder_name() {
    if (tok().kind != Token::Kind::Word) fail("expected bound variable name");
    std::string name = tok().text;
    if (detail::reserved_words().count(name))
      fail("'" + name + "' is a reserved word");
    next();
    if (at_sym(":")) {
      next();
      return {name, parse_sort()};
    }
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (it->name == name) return *it;
    auto it = env_.find(name);
    if (it != env_.end()) return {name, it->second};
    Sort s;
    if (derived_dollar_sort(name, &s)) return {name, s};
    fail("cannot infer the sort of bound variable '" + name +
         "'; annotate it as " + name + ":int or " + name + ":bool");
  }

  // --- expressions ---------------------------------------------------------

  bool starts_expr(size_t ahead) const {
    const Token& t = tok(ahead);
    if (t.kind == Token::Kind::Int) return true;
    if (t.kind == Token::Kind::Word)
      return !detail::reserved_words().count(t.text) || t.text == "tt" || t.text == "ff";
    if (t.kind == Token::Kind::Sym)
      return t.text == "(" || t.text == "-" || t.text == "!";
    return false;
  }

  ExprPtr parse_expr_primary() {
    if (tok().kind == Token::Kind::Int) {
      long long v = tok().val;
      next();
      return expr_int(v);
    }
    if (at_word("tt")) { next(); return expr_bool(true); }
    if (at_word("ff")) { next(); return expr_bool(false); }
    if (tok().kind == Token::Kind::Word &&
        !detail::reserved_words().count(tok().text)) {
      Var v = lookup(tok().text);
      next();
      return expr_var(v);
    }
    if (at_sym("(")) {
      next();
      ExprPtr e = parse_expr_or();
      expect_sym(")", "to close the parenthesized expression");
      return e;
    }
    fail("expected an expression");
  }

  ExprPtr parse_expr_un() {
    if (at_sym("-")) {
      next();
      ExprPtr e = parse_expr_un();
      if (e->kind == Expr::Kind::IntConst) return expr_int(-e->ival);
      return expr_un(UnOp::Neg, e);
    }
    if (at_sym("!")) {
      next();
      return expr_un(UnOp::Not, parse_expr_un());
    }
    return parse_expr_primary();
  }

  ExprPtr cont_expr_mul(ExprPtr e) {
    for (;;) {
      BinOp op;
      if (at_sym("*")) op = BinOp::Mul;
      else if (at_word("div")) op = BinOp::Div;
      else if (at_word("mod")) op = BinOp::Mod;
      else return e;
      next();
      e = expr_bin(op, e, parse_expr_un());
    }
  }
  ExprPtr parse_expr_mul() { return cont_expr_mul(parse_expr_un()); }

  ExprPtr cont_expr_add(ExprPtr e) {
    for (;;) {
      BinOp op;
      if (at_sym("+")) op = BinOp::Add;
      else if (at_sym("-")) op = BinOp::Sub;
      else return e;
      next();
      e = expr_bin(op, e, parse_expr_mul());
    }
  }
  ExprPtr parse_expr_add() { return cont_expr_add(parse_expr_mul()); }

  // `>` doubles as the closing bracket of a command embed, so it only
  // counts as a comparison when an expression can follow it
  bool cmp_op_here(BinOp* op) const {
    if (at_sym("=")) { *op = BinOp::Eq; return true; }
    if (at_sym("<>")) { *op = BinOp::Ne; return true; }
    if (at_sym("<")) { *op = BinOp::Lt; return true; }
    if (at_sym("<=")) { *op = BinOp::Le; return true; }
    if (at_sym(">=")) { *op = BinOp::Ge; return true; }
    if (at_sym(">") && starts_expr(1)) { *op = BinOp::Gt; return true; }
    return false;
  }

  ExprPtr cont_expr_cmp(ExprPtr e) {
    for (BinOp op; cmp_op_here(&op);) {
      next();
      e = expr_bin(op, e, parse_expr_add());
    }
    return e;
  }
  ExprPtr parse_expr_cmp() { return cont_expr_cmp(parse_expr_add()); }

  ExprPtr parse_expr_and() {
    ExprPtr e = parse_expr_cmp();
    while (at_sym("/\\")) {
      next();
      e = expr_bin(BinOp::And, e, parse_expr_cmp());
    }
    return e;
  }

  ExprPtr parse_expr_or() {
    ExprPtr e = parse_expr_and();
    while (at_sym("\\/")) {
      next();
      e = expr_bin(BinOp::Or, e, parse_expr_and());
    }
    return e;
  }

  // --- unary formulas ------------------------------------------------------

  // In formula positions the connectives build UFormula nodes and a plain
  // expression only survives as an atom. Both results flow through this
  // pair; exactly one member is set.
  struct ExprOrForm {
    ExprPtr e;
    UFormulaPtr f;
  };

  UFormulaPtr to_form(ExprOrForm x) {
    if (x.f) return x.f;
    if (x.e->sort != Sort::Bool) fail("formula expected");
    return uf_atom(x.e);
  }

  ExprOrForm pf_atomish() {
    if (at_sym("(")) {
      next();
      ExprOrForm inner = pf_quant();
      expect_sym(")", "to close the parenthesized formula");
      if (inner.e) {
        // the parenthesized value may continue as an arithmetic or
        // comparison operand
        ExprPtr e = cont_expr_cmp(cont_expr_add(cont_expr_mul(inner.e)));
        return {e, nullptr};
      }
      return inner;
    }
    return {parse_expr_cmp(), nullptr};
  }

  ExprOrForm pf_not() {
    if (at_sym("!")) {
      // peek: a `!` directly over an expression operand stays expression
      // level only inside parens; here it negates the whole atom
      next();
      ExprOrForm x = pf_atomish();
      if (x.f) return {nullptr, uf_not(x.f)};
      if (x.e->sort == Sort::Bool) return {expr_un(UnOp::Not, x.e), nullptr};
      fail("operand of ! must be bool");
    }
    return pf_atomish();
  }

  ExprOrForm pf_and() {
    ExprOrForm x = pf_not();
    while (at_sym("/\\")) {
      next();
      ExprOrForm y = pf_not();
      x = {nullptr, uf_and(to_form(std::move(x)), to_form(std::move(y)))};
    }
    return x;
  }

  ExprOrForm pf_or() {
    ExprOrForm x = pf_and();
    while (at_sym("\\/")) {
      next();
      ExprOrForm y = pf_and();
      x = {nullptr, uf_or(to_form(std::move(x)), to_form(std::move(y)))};
    }
    return x;
  }

  ExprOrForm pf_imp() {
    ExprOrForm x = pf_or();
    if (at_sym("->")) {
      next();
      ExprOrForm y = pf_imp();
      return {nullptr, uf_imp(to_form(std::move(x)), to_form(std::move(y)))};
    }
    return x;
  }

  ExprOrForm pf_iff() {
    ExprOrForm x = pf_imp();
    if (at_sym("<->")) {
      next();
      ExprOrForm y = pf_iff();
      return {nullptr, uf_iff(to_form(std::move(x)), to_form(std::move(y)))};
    }
    return x;
  }

  ExprOrForm pf_quant() {
    if (at_word("forall") || at_word("exists")) {
      bool universal = at_word("forall");
      next();
      Var x = parse_binder_name();
      expect_sym(".", "after the bound variable");
      binders_.push_back(x);
      UFormulaPtr body = to_form(pf_quant());
      binders_.pop_back();
      return {nullptr,
              uf_quant(universal ? UFormula::Kind::Forall : UFormula::Kind::Exists,
                       x, body)};
    }
    return pf_iff();
  }

  UFormulaPtr parse_uformula() { return to_form(pf_quant()); }

  // --- relational expressions ---------------------------------------------

  RelExprPtr parse_relexpr_primary() {
    if (at_sym("*<|") || at_sym("[>")) {
      bool left = at_sym("*<|");
      next();
      ExprOrForm inner = pf_quant();
      expect_sym(left ? "*<]" : "|>", "to close the embed");
      if (!inner.e || inner.e->sort != Sort::Int)
        fail("an embed used in relational arithmetic must contain an int expression");
      return re_embed(left, inner.e);
    }
    if (tok().kind == Token::Kind::Int) {
      long long v = tok().val;
      next();
      return re_int(v);
    }
    if (at_sym("-")) {
      next();
      if (tok().kind != Token::Kind::Int)
        fail("expected an integer literal after '-' in a relational expression");
      long long v = tok().val;
      next();
      return re_int(-v);
    }
    if (at_sym("(")) {
      next();
      RelExprPtr r = parse_relexpr_add();
      expect_sym(")", "to close the parenthesized relational expression");
      return r;
    }
    fail("expected a relational expression (an embed, literal or parenthesis)");
  }

  RelExprPtr cont_relexpr_mul(RelExprPtr r) {
    for (;;) {
      BinOp op;
      if (at_sym("*")) op = BinOp::Mul;
      else if (at_word("div")) op = BinOp::Div;
      else if (at_word("mod")) op = BinOp::Mod;
      else return r;
      next();
      r = re_bin(op, r, parse_relexpr_primary());
    }
  }

  RelExprPtr parse_relexpr_mul() { return cont_relexpr_mul(parse_relexpr_primary()); }

  RelExprPtr cont_relexpr_add(RelExprPtr r) {
    for (;;) {
      BinOp op;
      if (at_sym("+")) op = BinOp::Add;
      else if (at_sym("-")) op = BinOp::Sub;
      else return r;
      next();
      r = re_bin(op, r, parse_relexpr_mul());
    }
  }

  RelExprPtr parse_relexpr_add() {
    return cont_relexpr_add(parse_relexpr_mul());
  }

  bool rel_cmp_here(BinOp* op) const {
    if (at_sym("=")) { *op = BinOp::Eq; return true; }
    if (at_sym("<>")) { *op = BinOp::Ne; return true; }
    if (at_sym("<")) { *op = BinOp::Lt; return true; }
    if (at_sym("<=")) { *op = BinOp::Le; return true; }
    if (at_sym(">")) { *op = BinOp::Gt; return true; }
    if (at_sym(">=")) { *op = BinOp::Ge; return true; }
    return false;
  }

  RelFormulaPtr finish_relcmp(RelExprPtr lhs) {
    lhs = cont_relexpr_add(cont_relexpr_mul(lhs));
    BinOp op;
    if (!rel_cmp_here(&op))
      fail("expected a relational comparison operator (=, <>, <, <=, >, >=)");
    next();
    RelExprPtr rhs = parse_relexpr_add();
    // > and >= normalize by swapping the operands
    if (op == BinOp::Gt) return rf_cmp(BinOp::Lt, rhs, lhs);
    if (op == BinOp::Ge) return rf_cmp(BinOp::Le, rhs, lhs);
    return rf_cmp(op, lhs, rhs);
  }

  // --- relational formulas -------------------------------------------------

  bool rel_continuation_here() const {
    BinOp op;
    return at_sym("+") || at_sym("-") || at_sym("*") || at_word("div") ||
           at_word("mod") || rel_cmp_here(&op);
  }

  RelFormulaPtr prf_atom() {
    if (at_sym("*<|") || at_sym("[>")) {
      bool left = at_sym("*<|");
      next();
      ExprOrForm inner = pf_quant();
      expect_sym(left ? "*<]" : "|>", "to close the embed");
      Side side = left ? Side::Left : Side::Right;
      if (inner.f) return rf_embed(side, inner.f);
      if (inner.e->sort == Sort::Bool) return rf_embed(side, uf_atom(inner.e));
      return finish_relcmp(re_embed(left, inner.e));
    }
    // agreement: a unary expression on each side of =:=
    if (starts_expr(0)) {
      size_t snap = pos_;
      bool agreed = false;
      ExprPtr lhs;
      try {
        lhs = parse_expr_add();
        agreed = at_sym("=:=");
      } catch (const ParseError&) {
        agreed = false;
      } catch (const SortError&) {
        agreed = false;
      }
      if (agreed) {
        next();
        ExprPtr rhs = parse_expr_add();
        return rf_agree(lhs, rhs);
      }
      pos_ = snap;
    }
    if (at_word("tt")) { next(); return rf_true(); }
    if (at_word("ff")) { next(); return rf_false(); }
    if (at_sym("(")) {
      size_t snap = pos_;
      size_t depth = binders_.size();
      try {
        next();
        RelFormulaPtr f = prf_quant();
        expect_sym(")", "to close the parenthesized relational formula");
        if (!rel_continuation_here()) return f;
      } catch (const ParseError&) {
      } catch (const SortError&) {
      }
      pos_ = snap;
      binders_.resize(depth);
      return finish_relcmp(parse_relexpr_primary());
    }
    if (tok().kind == Token::Kind::Int || at_sym("-"))
      return finish_relcmp(parse_relexpr_primary());
    fail("expected a relational formula");
  }

  RelFormulaPtr prf_not() {
    if (at_sym("!")) {
      next();
      return rf_not(prf_atom());
    }
    return prf_atom();
  }

  RelFormulaPtr prf_and() {
    RelFormulaPtr f = prf_not();
    while (at_sym("/\\")) {
      next();
      f = rf_and(f, prf_not());
    }
    return f;
  }

  RelFormulaPtr prf_or() {
    RelFormulaPtr f = prf_and();
    while (at_sym("\\/")) {
      next();
      f = rf_or(f, prf_and());
    }
    return f;
  }

  RelFormulaPtr prf_imp() {
    RelFormulaPtr f = prf_or();
    if (at_sym("->")) {
      next();
      return rf_imp(f, prf_imp());
    }
    return f;
  }

  RelFormulaPtr prf_iff() {
    RelFormulaPtr f = prf_imp();
    if (at_sym("<->")) {
      next();
      return rf_iff(f, prf_iff());
    }
    return f;
  }

  RelFormulaPtr prf_quant() {
    if (at_word("forall") || at_word("exists")) {
      bool universal = at_word("forall");
      next();
      Side side;
      Var x;
      if (at_sym("|")) {
        side = Side::Right;
        next();
        x = parse_binder_name();
      } else {
        side = Side::Left;
        x = parse_binder_name();
        expect_sym("|", "relational quantifiers pick a side with a bar");
      }
      expect_sym(".", "after the bound variable");
      binders_.push_back(x);
      RelFormulaPtr body = prf_quant();
      binders_.pop_back();
      return rf_quant(universal ? RelFormula::Kind::Forall : RelFormula::Kind::Exists,
                      side, x, body);
    }
    return prf_iff();
  }

  RelFormulaPtr parse_relformula() { return prf_quant(); }

  // --- commands ------------------------------------------------------------

  bool starts_cmd() const {
    if (at_word("skip") || at_word("hav") || at_word("assert") ||
        at_word("assume") || at_word("if") || at_word("while"))
      return true;
    return tok().kind == Token::Kind::Word &&
           !detail::reserved_words().count(tok().text);
  }

  CommandPtr parse_cmd_atom() {
    int ln = tok().line, cl = tok().col;
    try {
      if (at_word("skip")) { next(); return cmd_skip(); }
      if (at_word("hav")) {
        next();
        if (tok().kind != Token::Kind::Word ||
            detail::reserved_words().count(tok().text))
          fail("expected a variable after hav");
        Var v = lookup(tok().text);
        next();
        return cmd_hav(v);
      }
      if (at_word("assert") || at_word("assume")) {
        bool is_assume = at_word("assume");
        if (is_assume && !lenient_)
          fail("assume is not allowed in source problems");
        next();
        expect_sym("{", "after assert/assume");
        UFormulaPtr f = parse_uformula();
        expect_sym("}", "to close the formula");
        return is_assume ? cmd_assume(f) : cmd_assert(f);
      }
      if (at_word("if")) {
        next();
        ExprPtr test = parse_expr_or();
        expect_word("then", "if needs then");
        CommandPtr then_c = parse_cmd();
        CommandPtr else_c = cmd_skip();
        if (at_word("else")) {
          next();
          else_c = parse_cmd();
        }
        expect_word("end", "if needs a closing end");
        return cmd_if(test, then_c, else_c);
      }
      if (at_word("while")) {
        next();
        ExprPtr test = parse_expr_or();
        std::optional<ExprPtr> variant;
        std::optional<UFormulaPtr> invariant;
        if (at_word("vnt")) {
          next();
          variant = parse_expr_or();
        }
        if (at_word("inv")) {
          next();
          invariant = parse_uformula();
        }
        expect_word("do", "while needs do");
        CommandPtr body = parse_cmd();
        expect_word("done", "while needs a closing done");
        return cmd_while(test, body, variant, invariant);
      }
      if (tok().kind == Token::Kind::Word &&
          !detail::reserved_words().count(tok().text)) {
        Var v = lookup(tok().text);
        next();
        expect_sym(":=", "assignments use :=");
        ExprPtr e = parse_expr_or();
        return cmd_assign(v, e);
      }
      fail("expected a command");
    } catch (const SortError& err) {
      throw ParseError(ln, cl, err.what());
    }
  }

  CommandPtr parse_cmd() {
    CommandPtr c = parse_cmd_atom();
    while (at_sym(";")) {
      next();
      if (!starts_cmd()) break;  // tolerate a trailing semicolon
      c = cmd_seq(c, parse_cmd_atom());
    }
    return c;
  }

  // --- bicoms --------------------------------------------------------------

  bool starts_bicom() const {
    return at_sym("<") || at_sym("|_") || at_word("assert") ||
           at_word("havF") || at_word("if") || at_word("while");
  }

  BicomPtr parse_bicom_atom() {
    int ln = tok().line, cl = tok().col;
    try {
      if (at_sym("<")) {
        next();
        CommandPtr l = parse_cmd();
        expect_sym("|", "between the two sides of an embed");
        CommandPtr r = parse_cmd();
        expect_sym(">", "to close the embed");
        return bi_embed(l, r);
      }
      if (at_sym("|_")) {
        next();
        CommandPtr c = parse_cmd();
        expect_sym("_|", "to close the embed");
        return bi_embed(c, c);
      }
      if (at_word("assert")) {
        next();
        expect_sym("{", "after assert");
        RelFormulaPtr f = parse_relformula();
        expect_sym("}", "to close the formula");
        return bi_assert(f);
      }
      if (at_word("havF")) {
        next();
        if (tok().kind != Token::Kind::Word ||
            detail::reserved_words().count(tok().text))
          fail("expected a variable after havF");
        Var v = lookup(tok().text);
        next();
        expect_sym("{", "havF takes a filter in braces");
        RelFormulaPtr f = parse_relformula();
        expect_sym("}", "to close the filter");
        return bi_havf(v, f);
      }
      if (at_word("if")) {
        next();
        ExprPtr lt = parse_expr_or();
        expect_sym("|", "paired if separates its tests with a bar");
        ExprPtr rt = parse_expr_or();
        expect_word("thth", "paired if branches start at thth");
        BicomPtr thth = parse_bicom();
        expect_word("thel", "paired if needs thel");
        BicomPtr thel = parse_bicom();
        expect_word("elth", "paired if needs elth");
        BicomPtr elth = parse_bicom();
        expect_word("elel", "paired if needs elel");
        BicomPtr elel = parse_bicom();
        expect_word("fi", "paired if closes with fi");
        return bi_if(lt, rt, thth, thel, elth, elel);
      }
      if (at_word("while")) {
        next();
        ExprPtr lt = parse_expr_or();
        expect_sym("|", "paired while separates its tests with a bar");
        ExprPtr rt = parse_expr_or();
        RelFormulaPtr lalign = rf_false(), ralign = rf_false();
        std::optional<RelExprPtr> variant;
        std::optional<RelFormulaPtr> invariant;
        if (at_word("algn")) {
          next();
          lalign = parse_relformula();
          expect_sym("|", "algn separates its conditions with a bar");
          ralign = parse_relformula();
        }
        if (at_word("vnt")) {
          next();
          variant = parse_relexpr_add();
        }
        if (at_word("inv")) {
          next();
          invariant = parse_relformula();
        }
        expect_word("do", "paired while needs do");
        BicomPtr body = parse_bicom();
        expect_word("done", "paired while closes with done");
        return bi_while(lt, rt, lalign, ralign, body, variant, invariant);
      }
      fail("expected a bicom");
    } catch (const SortError& err) {
      throw ParseError(ln, cl, err.what());
    }
  }

  BicomPtr parse_bicom() {
    BicomPtr b = parse_bicom_atom();
    while (at_sym(";")) {
      next();
      if (!starts_bicom()) break;
      b = bi_seq(b, parse_bicom_atom());
    }
    return b;
  }
};

// Convenience entry points.

inline Problem parse_problem(const std::string& text) {
  return Parser(text).problem();
}

inline std::map<std::string, Sort> var_map(const std::vector<Var>& vars) {
  std::map<std::string, Sort> m;
  for (const Var& v : vars) m[v.name] = v.sort;
  return m;
}

inline CommandPtr parse_command(const std::string& text,
                                std::map<std::string, Sort> vars,
                                bool lenient = false) {
  return Parser(text, std::move(vars), lenient).command();
}

inline BicomPtr parse_bicom(const std::string& text,
                            std::map<std::string, Sort> vars,
                            bool lenient = false) {
  return Parser(text, std::move(vars), lenient).bicom();
}

inline RelFormulaPtr parse_relformula(const std::string& text,
                                      std::map<std::string, Sort> vars,
                                      bool lenient = false) {
  return Parser(text, std::move(vars), lenient).relformula();
}

inline UFormulaPtr parse_uformula(const std::string& text,
                                  std::map<std::string, Sort> vars,
                                  bool lenient = false) {
  return Parser(text, std::move(vars), lenient).uformula();
}

inline ExprPtr parse_expr(const std::string& text,
                          std::map<std::string, Sort> vars,
                          bool lenient = false) {
  return Parser(text, std::move(vars), lenient).expr();
}

}  // namespace biver
