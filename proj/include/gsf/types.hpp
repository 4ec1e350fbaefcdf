#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsf {

// Gradual types G and evidence types E share one node representation.
// A gradual type never contains Sealed nodes; an evidence type never
// contains bare Name nodes. See is_gradual_type / is_evidence_type.

enum class TypeKind { Base, Arrow, Forall, Pair, Exists, Var, Name, Sealed, Unknown };

enum class BaseKind { Int, Bool, Unit };

struct TypeVar {
  std::string name;
  int index = 0;  // disambiguator introduced by capture-avoiding substitution

  friend bool operator==(const TypeVar& a, const TypeVar& b) {
    return a.index == b.index && a.name == b.name;
  }
  friend bool operator!=(const TypeVar& a, const TypeVar& b) { return !(a == b); }
};

using TypeNameId = std::uint32_t;

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeKind kind;
  BaseKind base = BaseKind::Int;  // Base
  TypePtr a;                      // Arrow dom / Pair left / Forall-Exists body / Sealed under
  TypePtr b;                      // Arrow cod / Pair right
  TypeVar var;                    // Var, Forall/Exists binder
  TypeNameId name = 0;            // Name, Sealed
};

TypePtr t_int();
TypePtr t_bool();
TypePtr t_unit();
TypePtr t_base(BaseKind b);
TypePtr t_unknown();
TypePtr t_arrow(TypePtr dom, TypePtr cod);
TypePtr t_pair(TypePtr left, TypePtr right);
TypePtr t_forall(TypeVar v, TypePtr body);
TypePtr t_exists(TypeVar v, TypePtr body);
TypePtr t_var(TypeVar v);
TypePtr t_name(TypeNameId a);
TypePtr t_sealed(TypeNameId a, TypePtr under);

// Global type-name store. Names are dense indices; allocation order is the
// reduction order, which keeps traces reproducible.
struct Store {
  std::vector<TypePtr> bindings;

  TypeNameId alloc(TypePtr t) {
    bindings.push_back(std::move(t));
    return static_cast<TypeNameId>(bindings.size() - 1);
  }
  bool bound(TypeNameId a) const { return a < bindings.size(); }
  const TypePtr& lookup(TypeNameId a) const { return bindings[a]; }
  std::size_t size() const { return bindings.size(); }
};

bool is_gradual_type(const TypePtr& t);
bool is_evidence_type(const TypePtr& t);
bool is_static_type(const TypePtr& t);  // no Unknown anywhere

bool type_equal(const TypePtr& a, const TypePtr& b);  // alpha-equivalence
int type_depth(const TypePtr& t);
bool tyvar_free_in(const TypeVar& v, const TypePtr& t);

// G1 is at least as precise as G2.
bool precision(const TypePtr& g1, const TypePtr& g2);
// Strict precision: Forall/Exists/Var/Name are never below Unknown.
bool strict_type_precision(const TypePtr& g1, const TypePtr& g2);
// Greatest lower bound under precision, when the concretizations overlap.
std::optional<TypePtr> meet(const TypePtr& g1, const TypePtr& g2);

// lift annotates each type name with its transitive store bindings;
// unlift forgets the annotations. unlift(lift(s, g)) == g.
TypePtr lift(const Store& store, const TypePtr& g);
TypePtr unlift(const TypePtr& e);

// Capture-avoiding substitution of `replacement` for `v`.
TypePtr subst_type(const TypePtr& g, const TypeVar& v, const TypePtr& replacement);

std::string show_type(const TypePtr& t);

// --- bounded concretization oracle (test support) ------------------------
//
// Brute force over the universe of static types of depth <= depth built from
// {Int, Bool}, arrows, pairs, foralls and exists, plus the given free vars.

std::vector<TypePtr> enumerate_static_types(int depth, const std::vector<TypeVar>& vars);
std::vector<TypePtr> enumerate_gradual_types(int depth, const std::vector<TypeVar>& vars);
// T in C(g)? T must be static.
bool in_concretization(const TypePtr& t, const TypePtr& g);

enum class OracleKind { Precision, Consistency, MeetGlb };

// Throws std::invalid_argument if depth is too small to be conclusive.
bool bounded_oracle(OracleKind kind, const TypePtr& g1, const TypePtr& g2, int depth);

}  // namespace gsf
