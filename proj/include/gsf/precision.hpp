#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "gsf/statics.hpp"
#include "gsf/terms.hpp"
#include "gsf/types.hpp"

namespace gsf {

// Binds a variable to a pair of types related by (non-strict) precision.
struct PrecCtx {
  std::map<std::string, std::pair<TypePtr, TypePtr>> omega;
  std::vector<TypeVar> tyvars;

  PrecCtx with_var(const std::string& x, TypePtr g1, TypePtr g2) const {
    PrecCtx c = *this;
    c.omega[x] = {std::move(g1), std::move(g2)};
    return c;
  }
  PrecCtx with_tyvar(TypeVar v) const {
    PrecCtx c = *this;
    c.tyvars.push_back(std::move(v));
    return c;
  }
};

// Structural term precision: same shape, annotations pointwise related.
bool term_precision(const TermPtr& t1, const TermPtr& t2);

// Strict term precision on source terms (lets are desugared first). Returns
// the pair of types when the relation holds.
std::optional<std::pair<TypePtr, TypePtr>> strict_term_precision_gsf(const PrecCtx& ctx,
                                                                     const TermPtr& t1,
                                                                     const TermPtr& t2);

// Strict term precision on evidence-calculus terms, under the given stores.
std::optional<std::pair<TypePtr, TypePtr>> strict_term_precision_eps(
    const PrecCtx& ctx, const Store& store1, const ETermPtr& t1, const Store& store2,
    const ETermPtr& t2);

bool store_precision(const Store& s1, const Store& s2);

bool config_precision(const Store& s1, const ETermPtr& t1, const Store& s2,
                      const ETermPtr& t2);

}  // namespace gsf
