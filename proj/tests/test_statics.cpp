#include <doctest.h>

#include "gsf/parser.hpp"
#include "gsf/precision.hpp"
#include "gsf/statics.hpp"
#include "support/generators.hpp"

using namespace gsf;
using testgen::Rng;

namespace {

TypeVar X{"X", 0};

TermPtr parse1(const std::string& src) {
  auto r = parse_gsf(src);
  REQUIRE(std::holds_alternative<TermPtr>(r));
  return std::get<TermPtr>(r);
}

TypePtr check_ok(const std::string& src) {
  auto r = typecheck_gsf({}, parse1(src));
  REQUIRE_MESSAGE(ok(r), src);
  return type_of(r);
}

TypeErrorKind check_err(const std::string& src) {
  auto r = typecheck_gsf({}, parse1(src));
  REQUIRE_FALSE(ok(r));
  return error_of(r).kind;
}

}  // namespace

TEST_CASE("well-formedness") {
  TypeEnv env;
  env.tyvars.push_back(X);
  CHECK(wf_type(env, t_arrow(t_var(X), t_unknown())));
  CHECK_FALSE(wf_type({}, t_var(X)));

  Store s;
  s.alloc(t_int());
  TypeEnv senv;
  senv.store = &s;
  CHECK(wf_type(senv, t_pair(t_name(0), t_bool())));
  CHECK_FALSE(wf_type(senv, t_name(3)));
  CHECK(wf_type({}, t_forall(X, t_var(X))));
}

TEST_CASE("consistency") {
  // ?->? is not consistent with forall X.?->?
  CHECK_FALSE(consistent({}, t_arrow(t_unknown(), t_unknown()),
                         t_forall(X, t_arrow(t_unknown(), t_unknown()))));
  CHECK(consistent({}, t_int(), t_unknown()));
  // X ~ X does not hold under an empty type variable environment
  CHECK_FALSE(consistent({}, t_var(X), t_var(X)));
  TypeEnv env;
  env.tyvars.push_back(X);
  CHECK(consistent(env, t_var(X), t_var(X)));

  // names unfold through the store: alpha ~ beta->beta
  Store s;
  TypeNameId beta = s.alloc(t_int());
  TypeNameId alpha = s.alloc(t_arrow(t_int(), t_int()));
  TypeEnv senv;
  senv.store = &s;
  CHECK(consistent(senv, t_name(alpha), t_arrow(t_name(beta), t_name(beta))));
  CHECK_FALSE(consistent(senv, t_name(beta), t_bool()));
}

TEST_CASE("consistency is reflexive and symmetric but not transitive") {
  Rng rng(8001);
  for (int i = 0; i < 300; ++i) {
    TypePtr a = testgen::gen_gradual_type(rng, 3);
    TypePtr b = testgen::gen_gradual_type(rng, 3);
    CHECK(consistent({}, a, a));
    CHECK(consistent({}, a, b) == consistent({}, b, a));
  }
  // the fixed witness: Int ~ ?, ? ~ Bool, Int !~ Bool
  CHECK(consistent({}, t_int(), t_unknown()));
  CHECK(consistent({}, t_unknown(), t_bool()));
  CHECK_FALSE(consistent({}, t_int(), t_bool()));
}

TEST_CASE("lifted partial type functions") {
  CHECK(type_equal(*partial_type_fn(PartialFn::Inst, t_unknown(), t_int()), t_unknown()));
  CHECK_FALSE(
      partial_type_fn(PartialFn::Inst, t_arrow(t_unknown(), t_unknown()), t_int()).has_value());
  CHECK(type_equal(*partial_type_fn(PartialFn::Dom, t_arrow(t_int(), t_bool())), t_int()));
  CHECK(type_equal(*partial_type_fn(PartialFn::Dom, t_unknown()), t_unknown()));
  TypePtr sem_body = t_pair(t_var(X), t_arrow(t_var(X), t_bool()));
  CHECK(type_equal(*partial_type_fn(PartialFn::SchmE, t_exists(X, sem_body)), sem_body));
  CHECK_FALSE(partial_type_fn(PartialFn::Proj1, t_int()).has_value());
}

TEST_CASE("gsf typechecking") {
  CHECK(type_equal(check_ok("/\\X.\\x:X.x"), t_forall(X, t_arrow(t_var(X), t_var(X)))));
  CHECK(type_equal(check_ok("(\\x:?. x + 1) false"), t_int()));
  CHECK(type_equal(check_ok("let g:? = /\\X.\\x:X.x in g [Int] true"), t_unknown()));
  CHECK(type_equal(
      check_ok("pack <?, (1 :: ?, (\\a:?.a, \\a:?.true))> as exists X.X*((X->X)*(X->Bool))"),
      t_exists(X, t_pair(t_var(X), t_pair(t_arrow(t_var(X), t_var(X)),
                                          t_arrow(t_var(X), t_bool()))))));
  CHECK(check_err("(\\x:Int. x) true") == TypeErrorKind::Inconsistent);
  CHECK(check_err("1 2") == TypeErrorKind::NotAFunction);
  CHECK(check_err("1 [Int]") == TypeErrorKind::NotAForall);
  CHECK(check_err("fst 1") == TypeErrorKind::NotAPair);
  CHECK(check_err("unpack <X, x> = 1 in x") == TypeErrorKind::NotAnExists);
  CHECK(check_err("y + 1") == TypeErrorKind::UnboundVariable);
  // the unpack result type may not mention the abstract type
  CHECK(check_err("unpack <X, x> = (pack <Int, 1> as exists X.X) in x") ==
        TypeErrorKind::IllFormedType);
}

TEST_CASE("sf typechecking") {
  auto r = typecheck_sf({}, parse1("let f : forall X.X->X = /\\X.\\x:X.x in (f [Int] 1) + 1"));
  REQUIRE(ok(r));
  CHECK(type_equal(type_of(r), t_int()));

  auto not_static = typecheck_sf({}, parse1("\\x:?. x"));
  REQUIRE_FALSE(ok(not_static));
  CHECK(error_of(not_static).kind == TypeErrorKind::NotStatic);

  auto bad = typecheck_sf({}, parse1("(\\x:Int. x) true"));
  REQUIRE_FALSE(ok(bad));
  CHECK(error_of(bad).kind == TypeErrorKind::Inconsistent);
}

TEST_CASE("eps typechecking") {
  // <Int,Int> 1 :: Int
  ETermPtr one = e_asc({t_int(), t_int()}, e_const(Constant::of_int(1)), t_int());
  auto r = typecheck_eps({}, one);
  REQUIRE(ok(r));
  CHECK(type_equal(type_of(r), t_int()));

  // <Int, a0^Int> 1 :: a0 under a0 := Int
  Store s;
  TypeNameId a = s.alloc(t_int());
  TypeEnv senv;
  senv.store = &s;
  ETermPtr sealed1 = e_asc({t_int(), t_sealed(a, t_int())},
                           e_const(Constant::of_int(1)), t_name(a));
  auto rs = typecheck_eps(senv, sealed1);
  REQUIRE(ok(rs));
  CHECK(type_equal(type_of(rs), t_name(a)));

  // evidence that does not support the judgment
  ETermPtr lam = e_lam("x", t_unknown(), e_var("x"));
  TypePtr qq = t_arrow(t_unknown(), t_unknown());
  ETermPtr bad = e_asc({qq, qq}, lam, t_int());
  CHECK_FALSE(ok(typecheck_eps({}, bad)));
}

TEST_CASE("static terms type the same in gsf and sf") {
  Rng rng(8002);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = testgen::gen_static_term(rng, 3);
    auto rs = typecheck_sf({}, t);
    auto rg = typecheck_gsf({}, t);
    REQUIRE(ok(rs));
    REQUIRE(ok(rg));
    CHECK(type_equal(type_of(rs), type_of(rg)));
  }
}

TEST_CASE("static gradual guarantee on random mutations") {
  Rng rng(8003);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = testgen::gen_gradual_term(rng, 3);
    auto r = typecheck_gsf({}, t);
    REQUIRE(ok(r));
    int budget = 2;
    TermPtr loose = testgen::loosen_term(rng, t, &budget);
    REQUIRE(term_precision(t, loose));
    auto r2 = typecheck_gsf({}, loose);
    REQUIRE_MESSAGE(ok(r2), show_term(loose));
    CHECK(precision(type_of(r), type_of(r2)));
  }
}
