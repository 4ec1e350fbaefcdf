#include <doctest.h>

#include "gsf/types.hpp"
#include "support/generators.hpp"

using namespace gsf;
using testgen::Rng;

namespace {

TypeVar X{"X", 0};
TypeVar Y{"Y", 0};

TypePtr idty() { return t_forall(X, t_arrow(t_var(X), t_var(X))); }

}  // namespace

TEST_CASE("precision") {
  // forall X.X->X below forall X.X->?
  CHECK(precision(idty(), t_forall(X, t_arrow(t_var(X), t_unknown()))));
  // forall X.?->? and ?->? are unrelated by precision
  TypePtr fq = t_forall(X, t_arrow(t_unknown(), t_unknown()));
  TypePtr qq = t_arrow(t_unknown(), t_unknown());
  CHECK_FALSE(precision(fq, qq));
  CHECK_FALSE(precision(qq, fq));
  CHECK(precision(t_int(), t_int()));
  CHECK(precision(t_arrow(t_int(), t_bool()), t_unknown()));
  // alpha-equivalent binders compare equal
  CHECK(precision(t_forall(X, t_var(X)), t_forall(Y, t_var(Y))));
  CHECK(type_equal(t_forall(X, t_var(X)), t_forall(Y, t_var(Y))));
}

TEST_CASE("strict precision keeps quantifiers, variables and names above ?") {
  CHECK_FALSE(strict_type_precision(idty(), t_unknown()));
  CHECK_FALSE(strict_type_precision(t_forall(X, t_arrow(t_var(X), t_unknown())),
                                    t_unknown()));
  CHECK_FALSE(strict_type_precision(t_name(0), t_unknown()));
  CHECK(strict_type_precision(t_int(), t_unknown()));
  CHECK(strict_type_precision(t_arrow(t_int(), t_bool()), t_unknown()));
  CHECK(strict_type_precision(t_pair(t_int(), t_int()), t_unknown()));
  CHECK_FALSE(strict_type_precision(t_arrow(idty(), t_int()), t_unknown()));
  CHECK(strict_type_precision(t_sealed(0, t_int()), t_sealed(0, t_unknown())));
  CHECK_FALSE(strict_type_precision(t_sealed(0, t_int()), t_sealed(1, t_int())));
}

TEST_CASE("meet computes greatest lower bounds") {
  TypePtr ib = t_arrow(t_int(), t_bool());
  CHECK(type_equal(*meet(t_unknown(), ib), ib));
  CHECK(type_equal(*meet(t_arrow(t_int(), t_unknown()), t_arrow(t_unknown(), t_bool())), ib));
  CHECK_FALSE(meet(t_int(), t_bool()).has_value());

  // forall X.X->? meet forall X.?->X = forall X.X->X, verified as a glb
  // against the bounded oracle universe.
  TypePtr l = t_forall(X, t_arrow(t_var(X), t_unknown()));
  TypePtr r = t_forall(X, t_arrow(t_unknown(), t_var(X)));
  auto m = meet(l, r);
  REQUIRE(m.has_value());
  CHECK(type_equal(*m, idty()));
  CHECK(bounded_oracle(OracleKind::MeetGlb, l, r, 3));
}

TEST_CASE("lift and unlift") {
  Store s;
  TypeNameId beta = s.alloc(t_int());        // a0 := Int
  TypeNameId alpha = s.alloc(t_name(beta));  // a1 := a0

  CHECK(type_equal(lift(s, t_name(beta)), t_sealed(beta, t_int())));
  CHECK(type_equal(lift(s, t_name(alpha)), t_sealed(alpha, t_sealed(beta, t_int()))));
  CHECK(type_equal(lift(s, t_arrow(t_int(), t_unknown())), t_arrow(t_int(), t_unknown())));

  CHECK(type_equal(unlift(t_sealed(alpha, t_sealed(beta, t_int()))), t_name(alpha)));
  CHECK(type_equal(unlift(t_arrow(t_int(), t_sealed(alpha, t_unknown()))),
                   t_arrow(t_int(), t_name(alpha))));
  CHECK(type_equal(unlift(t_unknown()), t_unknown()));
}

TEST_CASE("unlift of lift is the identity on well-formed types") {
  Rng rng(7001);
  Store s;
  s.alloc(t_int());
  s.alloc(t_arrow(t_name(0), t_bool()));
  for (int i = 0; i < 300; ++i) {
    TypePtr g = testgen::gen_gradual_type(rng, 3);
    if (rng.chance(30)) g = t_arrow(g, t_name(rng.range(0, 1)));
    CHECK(type_equal(unlift(lift(s, g)), g));
  }
}

TEST_CASE("substitution is capture avoiding") {
  CHECK(type_equal(subst_type(t_arrow(t_var(X), t_var(X)), X, t_int()),
                   t_arrow(t_int(), t_int())));
  // (forall X.X->Y)[Y := X] renames the binder
  TypePtr before = t_forall(X, t_arrow(t_var(X), t_var(Y)));
  TypePtr after = subst_type(before, Y, t_var(X));
  REQUIRE(after->kind == TypeKind::Forall);
  CHECK_FALSE(after->var == X);
  CHECK(type_equal(after->a, t_arrow(t_var(after->var), t_var(X))));
  // substitution into ? is just ?
  CHECK(type_equal(subst_type(t_unknown(), X, t_int()), t_unknown()));
}

TEST_CASE("bounded oracle") {
  CHECK(bounded_oracle(OracleKind::Precision, t_arrow(t_int(), t_unknown()), t_unknown(), 2));
  CHECK(bounded_oracle(OracleKind::Consistency, idty(),
                       t_forall(X, t_arrow(t_unknown(), t_var(X))), 3));
  CHECK_FALSE(bounded_oracle(OracleKind::Consistency, t_arrow(t_unknown(), t_unknown()),
                             t_forall(X, t_arrow(t_unknown(), t_unknown())), 3));
  CHECK_THROWS_AS((void)bounded_oracle(OracleKind::Precision, idty(), t_unknown(), 2),
                  std::invalid_argument);
}

TEST_CASE("precision is a partial order up to alpha-equivalence") {
  Rng rng(7002);
  std::vector<TypePtr> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(testgen::gen_gradual_type(rng, 3));
  for (const auto& g : pool) CHECK(precision(g, g));
  for (int i = 0; i < 4000; ++i) {
    const TypePtr& a = rng.pick(pool);
    const TypePtr& b = rng.pick(pool);
    const TypePtr& c = rng.pick(pool);
    if (precision(a, b) && precision(b, c)) CHECK(precision(a, c));
    if (precision(a, b) && precision(b, a)) CHECK(type_equal(a, b));
    if (strict_type_precision(a, b)) CHECK(precision(a, b));
  }
}

TEST_CASE("meet is commutative, associative and idempotent") {
  Rng rng(7003);
  std::vector<TypePtr> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(testgen::gen_gradual_type(rng, 3));
  for (const auto& g : pool) {
    auto m = meet(g, g);
    REQUIRE(m.has_value());
    CHECK(type_equal(*m, g));
  }
  for (int i = 0; i < 3000; ++i) {
    const TypePtr& a = rng.pick(pool);
    const TypePtr& b = rng.pick(pool);
    const TypePtr& c = rng.pick(pool);
    auto ab = meet(a, b);
    auto ba = meet(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      CHECK(type_equal(*ab, *ba));
      CHECK(precision(*ab, a));
      CHECK(precision(*ab, b));
    }
    auto bc = meet(b, c);
    std::optional<TypePtr> left = ab ? meet(*ab, c) : std::nullopt;
    std::optional<TypePtr> right = bc ? meet(a, *bc) : std::nullopt;
    CHECK(left.has_value() == right.has_value());
    if (left && right) CHECK(type_equal(*left, *right));
  }
}

TEST_CASE("inductive relations agree with the oracle at depth 2") {
  auto universe = enumerate_gradual_types(2, {});
  for (const auto& a : universe)
    for (const auto& b : universe) {
      CHECK(precision(a, b) == bounded_oracle(OracleKind::Precision, a, b, 2));
      CHECK(bounded_oracle(OracleKind::MeetGlb, a, b, 2));
    }
}

TEST_CASE("type printing") {
  CHECK(show_type(t_unknown()) == "?");
  CHECK(show_type(idty()) == "forall X.X->X");
  CHECK(show_type(t_arrow(t_arrow(t_int(), t_int()), t_unknown())) == "(Int->Int)->?");
  CHECK(show_type(t_pair(t_int(), t_bool())) == "Int*Bool");
  CHECK(show_type(t_sealed(0, t_int())) == "a0^Int");
  CHECK(show_type(t_sealed(0, t_sealed(1, t_int()))) == "a0^(a1^Int)");
  CHECK(show_type(t_exists(X, t_pair(t_var(X), t_unknown()))) == "exists X.X*?");
}
