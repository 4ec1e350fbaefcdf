#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gsf/terms.hpp"
#include "gsf/types.hpp"

namespace gsf {

struct TypeEnv {
  const Store* store = nullptr;  // null means empty store
  std::vector<TypeVar> tyvars;
  std::map<std::string, TypePtr> vars;

  const Store& the_store() const {
    static const Store empty;
    return store ? *store : empty;
  }
  bool tyvar_bound(const TypeVar& v) const {
    for (const auto& w : tyvars)
      if (w == v) return true;
    return false;
  }
  TypeEnv with_tyvar(TypeVar v) const {
    TypeEnv e = *this;
    e.tyvars.push_back(std::move(v));
    return e;
  }
  TypeEnv with_var(const std::string& x, TypePtr t) const {
    TypeEnv e = *this;
    e.vars[x] = std::move(t);
    return e;
  }
};

enum class TypeErrorKind {
  IllFormedType,
  Inconsistent,
  NotAFunction,
  NotAForall,
  NotAPair,
  NotAnExists,
  UnboundVariable,
  OpArity,
  NotStatic,
};

struct TypeError {
  TypeErrorKind kind;
  Span location;
  std::string message;
};

using TypecheckResult = std::variant<TypePtr, TypeError>;

inline bool ok(const TypecheckResult& r) { return std::holds_alternative<TypePtr>(r); }
inline const TypePtr& type_of(const TypecheckResult& r) { return std::get<TypePtr>(r); }
inline const TypeError& error_of(const TypecheckResult& r) { return std::get<TypeError>(r); }

const char* type_error_kind_name(TypeErrorKind k);

bool wf_type(const TypeEnv& env, const TypePtr& g);

// Type consistency: plausibility of equality in the presence of ?.
bool consistent(const TypeEnv& env, const TypePtr& g1, const TypePtr& g2);

// Type equality modulo the store (names unfold to their bindings).
bool static_type_equal(const TypeEnv& env, const TypePtr& t1, const TypePtr& t2);

enum class PartialFn { Dom, Cod, Inst, Proj1, Proj2, SchmE };

// Lifted partial type functions; Inst takes the instantiation type in `arg`.
std::optional<TypePtr> partial_type_fn(PartialFn kind, const TypePtr& g, const TypePtr& arg = {});

TypecheckResult typecheck_gsf(const TypeEnv& env, const TermPtr& t);
// SF oracle: static types only, equality replaces consistency.
TypecheckResult typecheck_sf(const TypeEnv& env, const TermPtr& t);

struct EpsOptions {
  bool check_evidence = true;  // verify ascription evidence supports the judgment
};

TypecheckResult typecheck_eps(const TypeEnv& env, const ETermPtr& t, EpsOptions opts = {});

}  // namespace gsf
