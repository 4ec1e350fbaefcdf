#pragma once

#include "gsf/statics.hpp"
#include "gsf/terms.hpp"
#include "gsf/types.hpp"

namespace gsf {

enum class MatchShape { Function, Forall, Pair, Exists };

// Type matching: expand ? to the requested top-level constructor, identity on
// types that already have it. Throws on any other constructor.
TypePtr matching(const TypePtr& g, MatchShape shape);

struct Elaborated {
  ETermPtr term;
  TypePtr type;
};

// Type-directed translation into the evidence calculus. Precondition: the
// term typechecks (closed, or under the given environment).
Elaborated elaborate_in(const TypeEnv& env, const TermPtr& t);
ETermPtr elaborate(const TermPtr& t);

}  // namespace gsf
