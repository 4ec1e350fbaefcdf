#pragma once

#include <optional>

#include "gsf/terms.hpp"
#include "gsf/types.hpp"

namespace gsf {

// Evidence for the reflexive judgment G ~ G.
Evidence refl_evidence(const Store& store, const TypePtr& g);

// Initial evidence for G1 ~ G2: the precision meet, lifted. Empty when the
// types are not consistent.
std::optional<Evidence> initial_evidence(const Store& store, const TypePtr& g1,
                                         const TypePtr& g2);

// Consistent transitivity. Empty result means the combination is refuted and
// the caller must raise a runtime error (or try dip).
std::optional<Evidence> trans(const Evidence& e1, const Evidence& e2);

enum class EvInvert { Dom, Cod, Proj1, Proj2 };

// Deconstruct function/pair evidence. Dom swaps sides: the argument flows
// against the direction of the function judgment.
Evidence ev_invert(EvInvert kind, const Evidence& e);

Evidence ev_pair(const Evidence& e1, const Evidence& e2);

// Instantiate forall evidence with an evidence type.
Evidence ev_inst(const Evidence& e, const TypePtr& arg);

// Instantiate exists evidence: representation type on the left, fresh sealed
// name on the right.
Evidence ev_inst_exists(const Evidence& e, const TypePtr& rep, const TypePtr& name);

// The outer evidence of a type application: mediates between the
// name-substituted body type and the instantiated one.
Evidence out_evidence(const Evidence& e, TypeNameId alpha, const TypePtr& g_arg,
                      const Store& store, const Store& store_ext);

// Dynamic implicit polymorphism fallback. v must be a value whose evidence
// failed to combine with e2; returns the adapted term, or empty when the
// failure has nothing to do with implicit polymorphism.
std::optional<ETermPtr> dip(const Store& store, const ETermPtr& v, const Evidence& e2);

}  // namespace gsf
