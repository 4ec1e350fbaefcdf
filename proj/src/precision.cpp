#include "gsf/precision.hpp"

#include "gsf/evidence.hpp"

namespace gsf {

namespace {

bool tp(const TypePtr& a, const TypePtr& b) { return precision(a, b); }

}  // namespace

bool term_precision(const TermPtr& t1, const TermPtr& t2) {
  if (t1->kind != t2->kind) return false;
  switch (t1->kind) {
    case TermKind::Const: return t1->lit == t2->lit;
    case TermKind::Var: return t1->var == t2->var;
    case TermKind::Lam:
      return t1->var == t2->var && tp(t1->type_a, t2->type_a) &&
             term_precision(t1->t1, t2->t1);
    case TermKind::TyLam:
      return t1->tyvar == t2->tyvar && term_precision(t1->t1, t2->t1);
    case TermKind::App:
    case TermKind::Pair:
      return term_precision(t1->t1, t2->t1) && term_precision(t1->t2, t2->t2);
    case TermKind::TyApp:
    case TermKind::Asc:
      return tp(t1->type_a, t2->type_a) && term_precision(t1->t1, t2->t1);
    case TermKind::Proj:
      return t1->proj_index == t2->proj_index && term_precision(t1->t1, t2->t1);
    case TermKind::Op: {
      if (t1->op != t2->op || t1->args.size() != t2->args.size()) return false;
      for (std::size_t i = 0; i < t1->args.size(); ++i)
        if (!term_precision(t1->args[i], t2->args[i])) return false;
      return true;
    }
    case TermKind::If:
      return term_precision(t1->t1, t2->t1) && term_precision(t1->t2, t2->t2) &&
             term_precision(t1->t3, t2->t3);
    case TermKind::Let:
      return t1->var == t2->var && tp(t1->type_a, t2->type_a) &&
             term_precision(t1->t1, t2->t1) && term_precision(t1->t2, t2->t2);
    case TermKind::Pack:
      return tp(t1->type_a, t2->type_a) && tp(t1->type_b, t2->type_b) &&
             term_precision(t1->t1, t2->t1);
    case TermKind::Unpack:
      return t1->tyvar == t2->tyvar && t1->var == t2->var &&
             term_precision(t1->t1, t2->t1) && term_precision(t1->t2, t2->t2);
  }
  return false;
}

// --- strict precision on source terms ----------------------------------------

namespace {

using TypePair = std::pair<TypePtr, TypePtr>;
using MaybePair = std::optional<TypePair>;

struct GsfPrec {
  MaybePair rel(const PrecCtx& ctx, const TermPtr& t1, const TermPtr& t2);
  MaybePair value_rel(const PrecCtx& ctx, const TermPtr& v1, const TermPtr& v2);
};

// A term whose elaboration is a single ascribed value can absorb an
// inserted coercion; bare pairs cannot, their components carry the
// ascriptions instead.
bool folds_coercion(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Lam:
    case TermKind::TyLam:
      return true;
    case TermKind::Pack:
      return is_source_value(t);
    case TermKind::Asc:
      // only a single ascription over a value collapses to one evidence
      return is_source_value(t->t1) && t->t1->kind != TermKind::Pair;
    default:
      return false;
  }
}

// meet must exist on well-typed inputs; bail out otherwise.
bool meets_strict(const TypePtr& a1, const TypePtr& b1, const TypePtr& a2,
                  const TypePtr& b2) {
  auto m1 = meet(a1, b1);
  auto m2 = meet(a2, b2);
  if (!m1 || !m2) return false;
  return strict_type_precision(*m1, *m2);
}

MaybePair GsfPrec::value_rel(const PrecCtx& ctx, const TermPtr& v1, const TermPtr& v2) {
  if (v1->kind != v2->kind) return std::nullopt;
  // A value nested directly under a binder stays in the value layer; its
  // evidence is supplied by the enclosing reduction rule, so no intrinsic
  // type condition applies there.
  auto body_rel = [this](const PrecCtx& c, const TermPtr& b1, const TermPtr& b2) {
    if (is_source_value(b1) && is_source_value(b2)) return value_rel(c, b1, b2);
    return rel(c, b1, b2);
  };
  switch (v1->kind) {
    case TermKind::Const:
      if (v1->lit == v2->lit) return TypePair{t_base(v1->lit.type), t_base(v2->lit.type)};
      return std::nullopt;
    case TermKind::Lam: {
      if (v1->var != v2->var || !tp(v1->type_a, v2->type_a)) return std::nullopt;
      auto body = body_rel(ctx.with_var(v1->var, v1->type_a, v2->type_a), v1->t1, v2->t1);
      if (!body) return std::nullopt;
      return TypePair{t_arrow(v1->type_a, body->first), t_arrow(v2->type_a, body->second)};
    }
    case TermKind::TyLam: {
      if (!(v1->tyvar == v2->tyvar)) return std::nullopt;
      auto body = body_rel(ctx.with_tyvar(v1->tyvar), v1->t1, v2->t1);
      if (!body) return std::nullopt;
      return TypePair{t_forall(v1->tyvar, body->first), t_forall(v2->tyvar, body->second)};
    }
    case TermKind::Pair: {
      auto a = value_rel(ctx, v1->t1, v2->t1);
      if (!a) return std::nullopt;
      auto b = value_rel(ctx, v1->t2, v2->t2);
      if (!b) return std::nullopt;
      return TypePair{t_pair(a->first, b->first), t_pair(a->second, b->second)};
    }
    case TermKind::Pack: {
      // The witness flows into evidence at unpack time; the package types
      // determine the wrapper evidences.
      if (!strict_type_precision(v1->type_a, v2->type_a)) return std::nullopt;
      if (!strict_type_precision(v1->type_b, v2->type_b)) return std::nullopt;
      if (v1->type_b->kind != TypeKind::Exists || v2->type_b->kind != TypeKind::Exists)
        return std::nullopt;
      auto body = rel(ctx, v1->t1, v2->t1);
      if (!body) return std::nullopt;
      TypePtr tgt1 = subst_type(v1->type_b->a, v1->type_b->var, v1->type_a);
      TypePtr tgt2 = subst_type(v2->type_b->a, v2->type_b->var, v2->type_a);
      if (!meets_strict(body->first, tgt1, body->second, tgt2)) return std::nullopt;
      if (!(folds_coercion(v1->t1) && folds_coercion(v2->t1)) &&
          type_equal(body->first, tgt1) != type_equal(body->second, tgt2))
        return std::nullopt;
      return TypePair{v1->type_b, v2->type_b};
    }
    default:
      return std::nullopt;
  }
}

// Elimination scrutinees must agree on the head constructor, so that
// elaboration inserts matching ascriptions on both sides or neither and the
// lockstep harness stays one-to-one.
bool same_head(const TypePtr& a, const TypePtr& b) { return a->kind == b->kind; }

MaybePair GsfPrec::rel(const PrecCtx& ctx, const TermPtr& t1, const TermPtr& t2) {
  // (<= ascv) / (<= asct)
  if (t1->kind == TermKind::Asc && t2->kind == TermKind::Asc) {
    if (!tp(t1->type_a, t2->type_a)) return std::nullopt;
    MaybePair inner;
    if (is_source_value(t1->t1) && is_source_value(t2->t1))
      inner = value_rel(ctx, t1->t1, t2->t1);
    else
      inner = rel(ctx, t1->t1, t2->t1);
    if (!inner) return std::nullopt;
    if (!meets_strict(inner->first, t1->type_a, inner->second, t2->type_a))
      return std::nullopt;
    return TypePair{t1->type_a, t2->type_a};
  }
  // (<= v): bare values require strictly related intrinsic types.
  if (is_source_value(t1) || is_source_value(t2)) {
    if (!is_source_value(t1) || !is_source_value(t2)) return std::nullopt;
    auto v = value_rel(ctx, t1, t2);
    if (!v) return std::nullopt;
    if (!strict_type_precision(v->first, v->second)) return std::nullopt;
    return v;
  }
  if (t1->kind != t2->kind) return std::nullopt;
  switch (t1->kind) {
    case TermKind::Var: {
      auto it = ctx.omega.find(t1->var);
      if (t1->var != t2->var || it == ctx.omega.end()) return std::nullopt;
      return TypePair{it->second.first, it->second.second};
    }
    case TermKind::App: {
      auto fn = rel(ctx, t1->t1, t2->t1);
      if (!fn) return std::nullopt;
      if (!same_head(fn->first, fn->second)) return std::nullopt;
      auto arg = rel(ctx, t1->t2, t2->t2);
      if (!arg) return std::nullopt;
      auto d1 = partial_type_fn(PartialFn::Dom, fn->first);
      auto d2 = partial_type_fn(PartialFn::Dom, fn->second);
      auto c1 = partial_type_fn(PartialFn::Cod, fn->first);
      auto c2 = partial_type_fn(PartialFn::Cod, fn->second);
      if (!d1 || !d2 || !c1 || !c2) return std::nullopt;
      if (!meets_strict(arg->first, *d1, arg->second, *d2)) return std::nullopt;
      // Elaboration coerces an argument only when its type differs from the
      // domain; both sides must agree for the translations to stay parallel,
      // except on values, where the coercion folds into the ascription.
      if (!(folds_coercion(t1->t2) && folds_coercion(t2->t2)) &&
          type_equal(arg->first, *d1) != type_equal(arg->second, *d2))
        return std::nullopt;
      return TypePair{*c1, *c2};
    }
    case TermKind::TyApp: {
      auto fn = rel(ctx, t1->t1, t2->t1);
      if (!fn) return std::nullopt;
      if (!same_head(fn->first, fn->second)) return std::nullopt;
      if (!strict_type_precision(t1->type_a, t2->type_a)) return std::nullopt;
      auto r1 = partial_type_fn(PartialFn::Inst, fn->first, t1->type_a);
      auto r2 = partial_type_fn(PartialFn::Inst, fn->second, t2->type_a);
      if (!r1 || !r2) return std::nullopt;
      return TypePair{*r1, *r2};
    }
    case TermKind::Pair: {
      auto a = rel(ctx, t1->t1, t2->t1);
      if (!a) return std::nullopt;
      auto b = rel(ctx, t1->t2, t2->t2);
      if (!b) return std::nullopt;
      return TypePair{t_pair(a->first, b->first), t_pair(a->second, b->second)};
    }
    case TermKind::Proj: {
      if (t1->proj_index != t2->proj_index) return std::nullopt;
      auto p = rel(ctx, t1->t1, t2->t1);
      if (!p) return std::nullopt;
      if (!same_head(p->first, p->second)) return std::nullopt;
      auto kind = t1->proj_index == 1 ? PartialFn::Proj1 : PartialFn::Proj2;
      auto r1 = partial_type_fn(kind, p->first);
      auto r2 = partial_type_fn(kind, p->second);
      if (!r1 || !r2) return std::nullopt;
      return TypePair{*r1, *r2};
    }
    case TermKind::Op: {
      if (t1->op != t2->op || t1->args.size() != t2->args.size()) return std::nullopt;
      TypePtr expected = t_base(op_arg_base(t1->op));
      for (std::size_t i = 0; i < t1->args.size(); ++i) {
        auto a = rel(ctx, t1->args[i], t2->args[i]);
        if (!a) return std::nullopt;
        if (!(folds_coercion(t1->args[i]) && folds_coercion(t2->args[i])) &&
            type_equal(a->first, expected) != type_equal(a->second, expected))
          return std::nullopt;
      }
      TypePtr b = t_base(op_result_base(t1->op));
      return TypePair{b, b};
    }
    case TermKind::If: {
      auto c = rel(ctx, t1->t1, t2->t1);
      if (!c) return std::nullopt;
      if (type_equal(c->first, t_bool()) != type_equal(c->second, t_bool()))
        return std::nullopt;
      auto th = rel(ctx, t1->t2, t2->t2);
      if (!th) return std::nullopt;
      auto el = rel(ctx, t1->t3, t2->t3);
      if (!el) return std::nullopt;
      auto m1 = meet(th->first, el->first);
      auto m2 = meet(th->second, el->second);
      if (!m1 || !m2 || !strict_type_precision(*m1, *m2)) return std::nullopt;
      // Branch coercions take initial evidence at the meets.
      if (!meets_strict(th->first, *m1, th->second, *m2)) return std::nullopt;
      if (!meets_strict(el->first, *m1, el->second, *m2)) return std::nullopt;
      if (!(folds_coercion(t1->t2) && folds_coercion(t2->t2)) &&
          type_equal(th->first, *m1) != type_equal(th->second, *m2))
        return std::nullopt;
      if (!(folds_coercion(t1->t3) && folds_coercion(t2->t3)) &&
          type_equal(el->first, *m1) != type_equal(el->second, *m2))
        return std::nullopt;
      return TypePair{*m1, *m2};
    }
    case TermKind::Unpack: {
      if (!(t1->tyvar == t2->tyvar) || t1->var != t2->var) return std::nullopt;
      auto pkg = rel(ctx, t1->t1, t2->t1);
      if (!pkg) return std::nullopt;
      if (pkg->first->kind != TypeKind::Exists || pkg->second->kind != TypeKind::Exists)
        return std::nullopt;
      TypePtr x1 = subst_type(pkg->first->a, pkg->first->var, t_var(t1->tyvar));
      TypePtr x2 = subst_type(pkg->second->a, pkg->second->var, t_var(t2->tyvar));
      return rel(ctx.with_tyvar(t1->tyvar).with_var(t1->var, x1, x2), t1->t2, t2->t2);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<std::pair<TypePtr, TypePtr>> strict_term_precision_gsf(const PrecCtx& ctx,
                                                                     const TermPtr& t1,
                                                                     const TermPtr& t2) {
  GsfPrec p;
  return p.rel(ctx, desugar_lets(t1), desugar_lets(t2));
}

// --- strict precision on GSFe terms -------------------------------------------

namespace {

struct EpsPrec {
  const Store* s1;
  const Store* s2;

  MaybePair rel(const PrecCtx& ctx, const ETermPtr& t1, const ETermPtr& t2);
};

// Matching-expansion check for the Masc escape hatch: an unknown-typed term
// ascribed to the shape template that elaboration introduced.
bool expansion_match(const TypePtr& from, const TypePtr& to) {
  if (from->kind != TypeKind::Unknown) return false;
  switch (to->kind) {
    case TypeKind::Arrow:
      return to->a->kind == TypeKind::Unknown && to->b->kind == TypeKind::Unknown;
    case TypeKind::Pair:
      return to->a->kind == TypeKind::Unknown && to->b->kind == TypeKind::Unknown;
    case TypeKind::Forall:
    case TypeKind::Exists:
      return to->a->kind == TypeKind::Unknown;
    default:
      return false;
  }
}

MaybePair EpsPrec::rel(const PrecCtx& ctx, const ETermPtr& t1, const ETermPtr& t2) {
  if (t1->kind != t2->kind) return std::nullopt;
  switch (t1->kind) {
    case EKind::Const:
      if (t1->lit == t2->lit) return TypePair{t_base(t1->lit.type), t_base(t2->lit.type)};
      return std::nullopt;
    case EKind::Var: {
      auto it = ctx.omega.find(t1->var);
      if (t1->var != t2->var || it == ctx.omega.end()) return std::nullopt;
      return TypePair{it->second.first, it->second.second};
    }
    case EKind::Lam: {
      if (t1->var != t2->var || !tp(t1->type_a, t2->type_a)) return std::nullopt;
      auto body = rel(ctx.with_var(t1->var, t1->type_a, t2->type_a), t1->t1, t2->t1);
      if (!body) return std::nullopt;
      return TypePair{t_arrow(t1->type_a, body->first), t_arrow(t2->type_a, body->second)};
    }
    case EKind::TyLam: {
      if (!(t1->tyvar == t2->tyvar)) return std::nullopt;
      auto body = rel(ctx.with_tyvar(t1->tyvar), t1->t1, t2->t1);
      if (!body) return std::nullopt;
      return TypePair{t_forall(t1->tyvar, body->first), t_forall(t2->tyvar, body->second)};
    }
    case EKind::Asc: {
      auto inner = rel(ctx, t1->t1, t2->t1);
      if (!inner) return std::nullopt;
      if (!tp(t1->type_a, t2->type_a)) return std::nullopt;
      if (evidence_strict_precision(t1->ev, t2->ev))
        return TypePair{t1->type_a, t2->type_a};
      // (<=Masc): matching-generated reflexive evidences need not be related.
      Evidence r1 = refl_evidence(*s1, t1->type_a);
      Evidence r2 = refl_evidence(*s2, t2->type_a);
      if (evidence_equal(t1->ev, r1) && evidence_equal(t2->ev, r2) &&
          expansion_match(inner->first, t1->type_a) &&
          expansion_match(inner->second, t2->type_a))
        return TypePair{t1->type_a, t2->type_a};
      return std::nullopt;
    }
    case EKind::App: {
      auto fn = rel(ctx, t1->t1, t2->t1);
      if (!fn) return std::nullopt;
      if (fn->first->kind != TypeKind::Arrow || fn->second->kind != TypeKind::Arrow)
        return std::nullopt;
      auto arg = rel(ctx, t1->t2, t2->t2);
      if (!arg) return std::nullopt;
      if (!type_equal(arg->first, fn->first->a) || !type_equal(arg->second, fn->second->a))
        return std::nullopt;
      return TypePair{fn->first->b, fn->second->b};
    }
    case EKind::TyApp: {
      auto fn = rel(ctx, t1->t1, t2->t1);
      if (!fn) return std::nullopt;
      if (fn->first->kind != TypeKind::Forall || fn->second->kind != TypeKind::Forall)
        return std::nullopt;
      if (!strict_type_precision(t1->type_a, t2->type_a)) return std::nullopt;
      return TypePair{subst_type(fn->first->a, fn->first->var, t1->type_a),
                      subst_type(fn->second->a, fn->second->var, t2->type_a)};
    }
    case EKind::Pair: {
      auto a = rel(ctx, t1->t1, t2->t1);
      if (!a) return std::nullopt;
      auto b = rel(ctx, t1->t2, t2->t2);
      if (!b) return std::nullopt;
      return TypePair{t_pair(a->first, b->first), t_pair(a->second, b->second)};
    }
    case EKind::Proj: {
      if (t1->proj_index != t2->proj_index) return std::nullopt;
      auto p = rel(ctx, t1->t1, t2->t1);
      if (!p) return std::nullopt;
      if (p->first->kind != TypeKind::Pair || p->second->kind != TypeKind::Pair)
        return std::nullopt;
      bool first = t1->proj_index == 1;
      return TypePair{first ? p->first->a : p->first->b,
                      first ? p->second->a : p->second->b};
    }
    case EKind::Op: {
      if (t1->op != t2->op || t1->args.size() != t2->args.size()) return std::nullopt;
      for (std::size_t i = 0; i < t1->args.size(); ++i)
        if (!rel(ctx, t1->args[i], t2->args[i])) return std::nullopt;
      TypePtr b = t_base(op_result_base(t1->op));
      return TypePair{b, b};
    }
    case EKind::If: {
      if (!rel(ctx, t1->t1, t2->t1)) return std::nullopt;
      auto th = rel(ctx, t1->t2, t2->t2);
      if (!th) return std::nullopt;
      if (!rel(ctx, t1->t3, t2->t3)) return std::nullopt;
      return th;
    }
    case EKind::Pack: {
      if (!strict_type_precision(t1->type_a, t2->type_a)) return std::nullopt;
      if (!tp(t1->type_b, t2->type_b)) return std::nullopt;
      if (!rel(ctx, t1->t1, t2->t1)) return std::nullopt;
      return TypePair{t1->type_b, t2->type_b};
    }
    case EKind::Unpack: {
      if (!(t1->tyvar == t2->tyvar) || t1->var != t2->var) return std::nullopt;
      auto pkg = rel(ctx, t1->t1, t2->t1);
      if (!pkg) return std::nullopt;
      if (pkg->first->kind != TypeKind::Exists || pkg->second->kind != TypeKind::Exists)
        return std::nullopt;
      TypePtr x1 = subst_type(pkg->first->a, pkg->first->var, t_var(t1->tyvar));
      TypePtr x2 = subst_type(pkg->second->a, pkg->second->var, t_var(t2->tyvar));
      return rel(ctx.with_tyvar(t1->tyvar).with_var(t1->var, x1, x2), t1->t2, t2->t2);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<TypePtr, TypePtr>> strict_term_precision_eps(
    const PrecCtx& ctx, const Store& store1, const ETermPtr& t1, const Store& store2,
    const ETermPtr& t2) {
  EpsPrec p{&store1, &store2};
  return p.rel(ctx, t1, t2);
}

bool store_precision(const Store& s1, const Store& s2) {
  if (s1.size() != s2.size()) return false;
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (!strict_type_precision(s1.bindings[i], s2.bindings[i])) return false;
  return true;
}

bool config_precision(const Store& s1, const ETermPtr& t1, const Store& s2,
                      const ETermPtr& t2) {
  if (!store_precision(s1, s2)) return false;
  if (!strict_term_precision_eps(PrecCtx{}, s1, t1, s2, t2)) return false;
  TypeEnv e1;
  e1.store = &s1;
  TypeEnv e2;
  e2.store = &s2;
  return ok(typecheck_eps(e1, t1)) && ok(typecheck_eps(e2, t2));
}

}  // namespace gsf
