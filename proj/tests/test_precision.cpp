#include <doctest.h>

#include "gsf/elaboration.hpp"
#include "gsf/evidence.hpp"
#include "gsf/parser.hpp"
#include "gsf/precision.hpp"
#include "support/generators.hpp"

using namespace gsf;
using testgen::Rng;

namespace {

TermPtr parse1(const std::string& src) {
  auto r = parse_gsf(src);
  REQUIRE(std::holds_alternative<TermPtr>(r));
  return std::get<TermPtr>(r);
}

bool strict_gsf(const std::string& a, const std::string& b) {
  return strict_term_precision_gsf({}, parse1(a), parse1(b)).has_value();
}

bool strict_eps_of(const std::string& a, const std::string& b) {
  Store empty;
  return strict_term_precision_eps({}, empty, elaborate(parse1(a)), empty,
                                   elaborate(parse1(b)))
      .has_value();
}

}  // namespace

TEST_CASE("structural term precision") {
  CHECK(term_precision(parse1("/\\X.\\x:X. x :: X"), parse1("/\\X.\\x:?. x :: X")));
  CHECK_FALSE(term_precision(parse1("\\x:Int.x"), parse1("\\x:Bool.x")));
  TermPtr t = parse1("let f:forall X.X->X = /\\X.\\x:X.x in (f [Int] 1) + 1");
  CHECK(term_precision(t, t));
  CHECK(term_precision(parse1("1 :: Int"), parse1("1 :: ?")));
  CHECK_FALSE(term_precision(parse1("1 :: ?"), parse1("1 :: Int")));
}

TEST_CASE("strict precision on source terms") {
  // extrinsic loss through the ascription target
  CHECK(strict_gsf("(/\\X.\\x:X. x :: X) :: forall X.X->X",
                   "(/\\X.\\x:X. x :: X) :: forall X.?->X"));
  // intrinsic loss rescued by a fully precise surrounding ascription
  CHECK(strict_gsf("(/\\X.\\x:X. x :: X) :: forall X.X->X",
                   "(/\\X.\\x:?. x :: X) :: forall X.X->X"));
  // bare values demand strictly related intrinsic types
  CHECK_FALSE(strict_gsf("(/\\X.\\x:X. x :: X) [Int] 1", "(/\\X.\\x:?. x :: X) [Int] 1"));
  // reflexivity on a closed program
  CHECK(strict_gsf("(\\x:Int. x + 1) 2", "(\\x:Int. x + 1) 2"));
  // base annotations may fade to ? under matching ascriptions
  CHECK(strict_gsf("(\\x:Int. x) :: Int->Int", "(\\x:?. x) :: Int->Int"));
  // instantiation types must be strictly related
  CHECK(strict_gsf("((/\\X.\\x:X.x) :: forall X.X->X) [Int] 1",
                   "((/\\X.\\x:X.x) :: forall X.?->X) [Int] 1"));
  CHECK_FALSE(strict_gsf("(/\\X.\\x:X.x) [forall Y.Y->Y]", "(/\\X.\\x:X.x) [?]"));
}

TEST_CASE("strict precision on elaborated terms") {
  // identical elaborations are related
  CHECK(strict_eps_of("(\\x:Int. x + 1) 2", "(\\x:Int. x + 1) 2"));
  // the two ascribed identities share one evidence: related
  CHECK(strict_eps_of("(/\\X.\\x:X. x :: X) :: forall X.X->X",
                      "(/\\X.\\x:X. x :: X) :: forall X.?->X"));
  // the intrinsic loss inside a fully precise ascription combines away
  CHECK(strict_eps_of("(/\\X.\\x:X. x :: X) :: forall X.X->X",
                      "(/\\X.\\x:?. x :: X) :: forall X.X->X"));
  // bare imprecise identity: the evidences are unrelated
  CHECK_FALSE(strict_eps_of("/\\X.\\x:X. x :: X", "/\\X.\\x:?. x :: X"));
  CHECK_FALSE(strict_eps_of("(/\\X.\\x:X. x :: X) [Int] 1", "(/\\X.\\x:?. x :: X) [Int] 1"));
}

TEST_CASE("source strict precision implies elaborated strict precision") {
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"(/\\X.\\x:X. x :: X) :: forall X.X->X", "(/\\X.\\x:X. x :: X) :: forall X.?->X"},
      {"(/\\X.\\x:X. x :: X) :: forall X.X->X", "(/\\X.\\x:?. x :: X) :: forall X.X->X"},
      {"(\\x:Int. x) :: Int->Int", "(\\x:?. x) :: Int->Int"},
      {"((\\x:Int. x + 1) 2) :: Int", "((\\x:Int. x + 1) 2) :: ?"},
      {"(1, true)", "(1, true)"},
      {"fst ((1, true) :: Int*Bool)", "fst ((1, true) :: Int*?)"},
      {"if true then ((1 :: ?) :: Int) else ((2 :: ?) :: Int)",
       "if true then ((1 :: ?) :: ?) else ((2 :: ?) :: ?)"},
  };
  Store empty;
  for (const auto& [a, b] : pairs) {
    TermPtr t1 = parse1(a);
    TermPtr t2 = parse1(b);
    std::string label = a + "  vs  " + b;
    REQUIRE_MESSAGE(strict_term_precision_gsf({}, t1, t2).has_value(), label);
    CHECK_MESSAGE(strict_term_precision_eps({}, empty, elaborate(t1), empty, elaborate(t2))
                      .has_value(),
                  label);
  }
}

TEST_CASE("strict relations imply the plain ones") {
  Rng rng(11001);
  int related = 0;
  for (int i = 0; i < 300; ++i) {
    TermPtr t = testgen::gen_gradual_term(rng, 3);
    int budget = 1;
    TermPtr loose = testgen::loosen_term(rng, t, &budget);
    if (auto r = strict_term_precision_gsf({}, t, loose)) {
      ++related;
      CHECK(term_precision(t, loose));
      CHECK(precision(r->first, r->second));
    }
  }
  CHECK(related > 30);
}

TEST_CASE("configuration precision") {
  Store s1, s2;
  ETermPtr v = elaborate(parse1("1"));
  CHECK(config_precision(s1, v, s2, v));

  s1.alloc(t_int());
  s2.alloc(t_unknown());
  // Int <= ? on the binding, so the more precise store goes left
  CHECK(store_precision(s1, s2));
  CHECK_FALSE(store_precision(s2, s1));
  CHECK(config_precision(s1, v, s2, v));
  CHECK_FALSE(config_precision(s2, v, s1, v));

  Store s3;
  CHECK_FALSE(store_precision(s1, s3));  // different domains
}
