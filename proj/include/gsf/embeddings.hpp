#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gsf/terms.hpp"

namespace gsf {

// Untyped lambda calculus with dynamic sealing; the seal-free fragment is the
// plain dynamically-typed language.

enum class SealTermKind {
  Const, Var, Lam, App, Pair, Proj, Op, If,
  NuSeal,     // nu x. t
  Sealed,     // seal(payload, key)
  Unseal,     // unseal x = (key, payload) in body
  SealConst,  // runtime-only seal literal
};

struct SealTerm;
using SealTermPtr = std::shared_ptr<const SealTerm>;

struct SealTerm {
  SealTermKind kind;
  Constant lit;
  std::string var;
  SealTermPtr t1, t2, t3;
  OpKind op = OpKind::Add;
  std::vector<SealTermPtr> args;
  int proj_index = 1;
  std::size_t seal = 0;  // SealConst
};

SealTermPtr s_const(Constant c);
SealTermPtr s_int(long long v);
SealTermPtr s_bool(bool v);
SealTermPtr s_var(std::string x);
SealTermPtr s_lam(std::string x, SealTermPtr body);
SealTermPtr s_app(SealTermPtr f, SealTermPtr a);
SealTermPtr s_pair(SealTermPtr a, SealTermPtr b);
SealTermPtr s_proj(int i, SealTermPtr t);
SealTermPtr s_op(OpKind op, std::vector<SealTermPtr> args);
SealTermPtr s_if(SealTermPtr c, SealTermPtr t, SealTermPtr e);
SealTermPtr s_nu(std::string x, SealTermPtr body);
SealTermPtr s_sealed(SealTermPtr payload, SealTermPtr key);
SealTermPtr s_unseal(std::string x, SealTermPtr key, SealTermPtr payload, SealTermPtr body);
SealTermPtr s_sealconst(std::size_t s);

bool seal_term_uses_sealing(const SealTermPtr& t);
std::string show_seal_term(const SealTermPtr& t);

enum class SealOutcomeKind { Value, UnsealError, TypeError, SealTypeError, Timeout };

struct SealOutcome {
  SealOutcomeKind kind;
  SealTermPtr value;        // when kind == Value
  std::size_t seals = 0;    // allocated seals
  std::string detail;
};

SealOutcome eval_seal(const SealTermPtr& t, std::size_t max_steps);

// The embedding of the dynamically-typed fragment; rejects sealing constructs.
TermPtr embed_dyn(const SealTermPtr& t);
// The full embedding; sealing becomes the polymorphic su seal/unseal pair.
TermPtr embed_seal(const SealTermPtr& t);

enum class DiffVerdictKind { Agree, Disagree, SkippedSealTypeError };

struct DiffVerdict {
  DiffVerdictKind kind;
  std::string detail;
};

// Run the direct interpreter and the embedding and compare the outcomes.
// Seal-type errors fall outside the checked fragment.
DiffVerdict differential_check(const SealTermPtr& t, std::size_t max_steps);

}  // namespace gsf
