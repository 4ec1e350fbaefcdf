#include <doctest.h>

#include "gsf/parser.hpp"
#include "gsf/precision.hpp"
#include "gsf/statics.hpp"
#include "support/generators.hpp"

using namespace gsf;
using testgen::Rng;

namespace {

TermPtr parse1(const std::string& src) {
  auto r = parse_gsf(src);
  REQUIRE_MESSAGE(std::holds_alternative<TermPtr>(r), src);
  return std::get<TermPtr>(r);
}

bool parse_fails(const std::string& src) {
  return std::holds_alternative<ParseError>(parse_gsf(src));
}

}  // namespace

TEST_CASE("terms parse into the expected shapes") {
  TermPtr id = parse1("/\\X.\\x:X.x");
  REQUIRE(id->kind == TermKind::TyLam);
  REQUIRE(id->t1->kind == TermKind::Lam);
  CHECK(id->t1->t1->kind == TermKind::Var);

  TermPtr t = parse1("let f:forall X.X->X = /\\X.\\x:X.x in (f [Int] 1) + 1");
  REQUIRE(t->kind == TermKind::Let);
  CHECK(t->t2->kind == TermKind::Op);

  // application is left-associative, type application mixes in
  TermPtr app = parse1("f x [Int] y");
  REQUIRE(app->kind == TermKind::App);
  CHECK(app->t1->kind == TermKind::TyApp);
  CHECK(app->t1->t1->kind == TermKind::App);

  // ascription binds looser than operators
  TermPtr asc = parse1("1 + 2 :: ?");
  REQUIRE(asc->kind == TermKind::Asc);
  CHECK(asc->t1->kind == TermKind::Op);

  // ascription chains associate left
  TermPtr chain = parse1("1 :: ? :: Int");
  REQUIRE(chain->kind == TermKind::Asc);
  CHECK(chain->t1->kind == TermKind::Asc);

  TermPtr pk = parse1("pack <Int, 1> as exists X.X");
  REQUIRE(pk->kind == TermKind::Pack);
  CHECK(pk->type_b->kind == TypeKind::Exists);

  TermPtr up = parse1("unpack <X, x> = p in x");
  CHECK(up->kind == TermKind::Unpack);

  // precedence: * binds tighter than +, comparisons loosest
  TermPtr arith = parse1("1 + 2 * 3 < 4");
  REQUIRE(arith->kind == TermKind::Op);
  CHECK(arith->op == OpKind::Lt);
  CHECK(arith->args[0]->op == OpKind::Add);
  CHECK(arith->args[0]->args[1]->op == OpKind::Mul);
}

TEST_CASE("unicode aliases") {
  CHECK(term_precision(parse1("λx:?. x"), parse1("\\x:?. x")));
  CHECK(term_precision(parse1("Λx. 1"), parse1("/\\x. 1")));
  TermPtr t = parse1("\\f:∀X.X->X. \\p:∃Y.Y. 1");
  CHECK(t->type_a->kind == TypeKind::Forall);
  CHECK(t->t1->type_a->kind == TypeKind::Exists);
}

TEST_CASE("type syntax") {
  auto ty = [](const std::string& s) {
    auto r = parse_type(s);
    REQUIRE_MESSAGE(std::holds_alternative<TypePtr>(r), s);
    return std::get<TypePtr>(r);
  };
  CHECK(show_type(ty("Int->Bool->?")) == "Int->Bool->?");
  CHECK(show_type(ty("(Int->Bool)->?")) == "(Int->Bool)->?");
  CHECK(show_type(ty("Int*Bool->?")) == "Int*Bool->?");
  CHECK(show_type(ty("forall X.X->X")) == "forall X.X->X");
  CHECK(ty("a0")->kind == TypeKind::Name);
  CHECK(ty("abc")->kind == TypeKind::Var);
}

TEST_CASE("parse errors carry positions") {
  CHECK(parse_fails("\\x:. x"));
  CHECK(parse_fails("let x = 1 in x"));  // gsf lets are annotated
  CHECK(parse_fails("(1"));
  CHECK(parse_fails("pack <Int, 1> as Int"));
  auto r = parse_gsf("\\x:. x");
  REQUIRE(std::holds_alternative<ParseError>(r));
  CHECK(std::get<ParseError>(r).span.line == 1);
}

TEST_CASE("comments and whitespace") {
  TermPtr t = parse1("-- a comment\n1 + -- inline\n2");
  CHECK(t->kind == TermKind::Op);
}

TEST_CASE("pretty printing round-trips through the parser") {
  std::vector<std::string> corpus = {
      "let f : forall X.X->X = /\\X.\\x:X.x in (f [Int] 1) + 1",
      "let g : ? = /\\X.\\x:X.x in g [Int] true",
      "(\\x:?. x + 1) false",
      "let p : forall X.(X->?)*(?->X) = /\\X.(\\x:X. x :: ?, \\x:?. x :: X) in p [?]",
      "unpack <X, x> = (pack <Int, (1, \\a:Int. 0 < a)> as exists X.X*(X->Bool)) in "
      "(snd x) (fst x)",
      "if true && false then fst (1, 2) else snd (3, 4)",
      "not (1 < 2) || 3 == 4",
  };
  for (const auto& src : corpus) {
    TermPtr t = parse1(src);
    TermPtr again = parse1(show_term(t));
    bool both = term_precision(t, again) && term_precision(again, t);
    CHECK_MESSAGE(both, src);
  }
}

TEST_CASE("round-trip on generated terms") {
  Rng rng(14001);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = testgen::gen_gradual_term(rng, 3);
    std::string printed = show_term(t);
    auto r = parse_gsf(printed);
    REQUIRE_MESSAGE(std::holds_alternative<TermPtr>(r), printed);
    TermPtr again = std::get<TermPtr>(r);
    CHECK_MESSAGE(show_term(again) == printed, printed);
  }
}

TEST_CASE("seal terms parse and round-trip informally") {
  auto r = parse_seal("nu x. nu y. unseal n = (x, seal(1, x)) in n + 1");
  REQUIRE(std::holds_alternative<SealTermPtr>(r));
  SealTermPtr t = std::get<SealTermPtr>(r);
  REQUIRE(t->kind == SealTermKind::NuSeal);
  CHECK(t->t1->kind == SealTermKind::NuSeal);
  CHECK(t->t1->t1->kind == SealTermKind::Unseal);

  // let is sugar for application in the untyped language
  auto l = parse_seal("let x = 1 in x + 1");
  REQUIRE(std::holds_alternative<SealTermPtr>(l));
  CHECK(std::get<SealTermPtr>(l)->kind == SealTermKind::App);

  CHECK(std::holds_alternative<ParseError>(parse_seal("\\x:Int. x")));
}
