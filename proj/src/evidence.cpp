#include "gsf/evidence.hpp"

#include <stdexcept>

namespace gsf {

Evidence refl_evidence(const Store& store, const TypePtr& g) {
  TypePtr e = lift(store, g);
  return {e, e};
}

std::optional<Evidence> initial_evidence(const Store& store, const TypePtr& g1,
                                         const TypePtr& g2) {
  auto m = meet(g1, g2);
  if (!m) return std::nullopt;
  return refl_evidence(store, *m);
}

namespace {

bool is_unknown(const TypePtr& t) { return t->kind == TypeKind::Unknown; }

bool both_unknown(const Evidence& e) { return is_unknown(e.left) && is_unknown(e.right); }

int max_binder_index(const TypePtr& t) {
  if (!t) return 0;
  int m = 0;
  if (t->kind == TypeKind::Var || t->kind == TypeKind::Forall || t->kind == TypeKind::Exists)
    m = t->var.index;
  return std::max({m, max_binder_index(t->a), max_binder_index(t->b)});
}

// Align the body of a binder type to the variable `to`.
TypePtr align_body(const TypePtr& quant, const TypeVar& to) {
  if (quant->var == to) return quant->a;
  return subst_type(quant->a, quant->var, t_var(to));
}

std::optional<Evidence> trans_rec(const Evidence& e1, const Evidence& e2);

std::optional<Evidence> trans_structural(const Evidence& e1, const Evidence& e2) {
  const TypePtr comps[4] = {e1.left, e1.right, e2.left, e2.right};
  // A sealed name in any position at this stage means a mismatched seal.
  for (const auto& c : comps)
    if (c->kind == TypeKind::Sealed) return std::nullopt;

  TypeKind ctor = TypeKind::Unknown;
  for (const auto& c : comps)
    if (!is_unknown(c)) {
      if (ctor != TypeKind::Unknown && c->kind != ctor) return std::nullopt;
      ctor = c->kind;
    }
  if (ctor == TypeKind::Unknown) return Evidence{t_unknown(), t_unknown()};

  switch (ctor) {
    case TypeKind::Base: {
      BaseKind b = BaseKind::Int;
      bool seen = false;
      for (const auto& c : comps) {
        if (is_unknown(c)) continue;
        if (seen && c->base != b) return std::nullopt;
        b = c->base;
        seen = true;
      }
      return Evidence{t_base(b), t_base(b)};
    }
    case TypeKind::Var: {
      const TypeVar* v = nullptr;
      for (const auto& c : comps) {
        if (is_unknown(c)) continue;
        if (v && !(*v == c->var)) return std::nullopt;
        v = &c->var;
      }
      return Evidence{t_var(*v), t_var(*v)};
    }
    case TypeKind::Arrow: {
      auto expand = [](const TypePtr& c) {
        return is_unknown(c) ? t_arrow(t_unknown(), t_unknown()) : c;
      };
      TypePtr a = expand(comps[0]), b = expand(comps[1]), c = expand(comps[2]),
              d = expand(comps[3]);
      auto dom = trans_rec({d->a, c->a}, {b->a, a->a});
      if (!dom) return std::nullopt;
      auto cod = trans_rec({a->b, b->b}, {c->b, d->b});
      if (!cod) return std::nullopt;
      return Evidence{t_arrow(dom->right, cod->left), t_arrow(dom->left, cod->right)};
    }
    case TypeKind::Pair: {
      auto expand = [](const TypePtr& c) {
        return is_unknown(c) ? t_pair(t_unknown(), t_unknown()) : c;
      };
      TypePtr a = expand(comps[0]), b = expand(comps[1]), c = expand(comps[2]),
              d = expand(comps[3]);
      auto fst = trans_rec({a->a, b->a}, {c->a, d->a});
      if (!fst) return std::nullopt;
      auto snd = trans_rec({a->b, b->b}, {c->b, d->b});
      if (!snd) return std::nullopt;
      return Evidence{t_pair(fst->left, snd->left), t_pair(fst->right, snd->right)};
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      // Pick a common binder; rename only when the binders disagree.
      const TypeVar* binder = nullptr;
      bool uniform = true;
      for (const auto& c : comps) {
        if (is_unknown(c)) continue;
        if (!binder)
          binder = &c->var;
        else if (!(*binder == c->var))
          uniform = false;
      }
      TypeVar x = *binder;
      if (!uniform) {
        int idx = 0;
        for (const auto& c : comps) idx = std::max(idx, max_binder_index(c));
        bool clash = false;
        for (const auto& c : comps)
          if (!is_unknown(c) && !(c->var == x) && tyvar_free_in(x, c->a)) clash = true;
        if (clash) x = TypeVar{binder->name, idx + 1};
      }
      auto body_of = [&](const TypePtr& c) {
        return is_unknown(c) ? t_unknown() : align_body(c, x);
      };
      auto body = trans_rec({body_of(comps[0]), body_of(comps[1])},
                            {body_of(comps[2]), body_of(comps[3])});
      if (!body) return std::nullopt;
      if (ctor == TypeKind::Forall)
        return Evidence{t_forall(x, body->left), t_forall(x, body->right)};
      return Evidence{t_exists(x, body->left), t_exists(x, body->right)};
    }
    default:
      return std::nullopt;
  }
}

std::optional<Evidence> trans_rec(const Evidence& e1, const Evidence& e2) {
  // Outer seals first: a sealed left of e1 (or right of e2) survives the
  // combination and is re-applied to the result.
  if (e1.left->kind == TypeKind::Sealed) {
    auto r = trans_rec({e1.left->a, e1.right}, e2);
    if (!r) return std::nullopt;
    return Evidence{t_sealed(e1.left->name, r->left), r->right};
  }
  if (e2.right->kind == TypeKind::Sealed) {
    auto r = trans_rec(e1, {e2.left, e2.right->a});
    if (!r) return std::nullopt;
    return Evidence{r->left, t_sealed(e2.right->name, r->right)};
  }
  // A sealing meeting an unsealing of the same name in the middle cancels.
  if (e1.right->kind == TypeKind::Sealed && e2.left->kind == TypeKind::Sealed) {
    if (e1.right->name != e2.left->name) return std::nullopt;
    return trans_rec({e1.left, e1.right->a}, {e2.left->a, e2.right});
  }
  if (both_unknown(e2)) return e1;
  if (both_unknown(e1)) return e2;
  return trans_structural(e1, e2);
}

TypePtr shape_arrow(const TypePtr& e) {
  if (e->kind == TypeKind::Arrow) return e;
  if (is_unknown(e)) return t_arrow(t_unknown(), t_unknown());
  throw std::logic_error("evidence type is not a function shape: " + show_type(e));
}

TypePtr shape_pair(const TypePtr& e) {
  if (e->kind == TypeKind::Pair) return e;
  if (is_unknown(e)) return t_pair(t_unknown(), t_unknown());
  throw std::logic_error("evidence type is not a pair shape: " + show_type(e));
}

TypePtr shape_forall(const TypePtr& e) {
  if (e->kind == TypeKind::Forall) return e;
  if (is_unknown(e)) return t_forall(TypeVar{"X", 0}, t_unknown());
  throw std::logic_error("evidence type is not a forall shape: " + show_type(e));
}

TypePtr shape_exists(const TypePtr& e) {
  if (e->kind == TypeKind::Exists) return e;
  if (is_unknown(e)) return t_exists(TypeVar{"X", 0}, t_unknown());
  throw std::logic_error("evidence type is not an exists shape: " + show_type(e));
}

}  // namespace

std::optional<Evidence> trans(const Evidence& e1, const Evidence& e2) {
  return trans_rec(e1, e2);
}

Evidence ev_invert(EvInvert kind, const Evidence& e) {
  switch (kind) {
    case EvInvert::Dom: {
      TypePtr l = shape_arrow(e.left), r = shape_arrow(e.right);
      return {r->a, l->a};
    }
    case EvInvert::Cod: {
      TypePtr l = shape_arrow(e.left), r = shape_arrow(e.right);
      return {l->b, r->b};
    }
    case EvInvert::Proj1: {
      TypePtr l = shape_pair(e.left), r = shape_pair(e.right);
      return {l->a, r->a};
    }
    case EvInvert::Proj2: {
      TypePtr l = shape_pair(e.left), r = shape_pair(e.right);
      return {l->b, r->b};
    }
  }
  throw std::logic_error("unreachable");
}

Evidence ev_pair(const Evidence& e1, const Evidence& e2) {
  return {t_pair(e1.left, e2.left), t_pair(e1.right, e2.right)};
}

Evidence ev_inst(const Evidence& e, const TypePtr& arg) {
  TypePtr l = shape_forall(e.left), r = shape_forall(e.right);
  return {subst_type(l->a, l->var, arg), subst_type(r->a, r->var, arg)};
}

Evidence ev_inst_exists(const Evidence& e, const TypePtr& rep, const TypePtr& name) {
  TypePtr l = shape_exists(e.left), r = shape_exists(e.right);
  return {subst_type(l->a, l->var, rep), subst_type(r->a, r->var, name)};
}

Evidence out_evidence(const Evidence& e, TypeNameId alpha, const TypePtr& g_arg,
                      const Store& store, const Store& store_ext) {
  TypePtr estar = shape_forall(lift(store, unlift(e.right)));
  TypePtr sealed_name = lift(store_ext, t_name(alpha));
  TypePtr lifted_arg = lift(store, g_arg);
  return {subst_type(estar->a, estar->var, sealed_name),
          subst_type(estar->a, estar->var, lifted_arg)};
}

namespace {

bool forall_pair(const Evidence& e) {
  return e.left->kind == TypeKind::Forall && e.right->kind == TypeKind::Forall;
}

bool arrow_pair(const Evidence& e) {
  return e.left->kind == TypeKind::Arrow && e.right->kind == TypeKind::Arrow;
}

// schm with ?-expansion, renaming the binder to `x`.
TypePtr scheme_of(const TypePtr& e, const TypeVar& x) {
  if (is_unknown(e)) return t_unknown();
  if (e->kind != TypeKind::Forall)
    throw std::logic_error("scheme of a non-forall evidence type");
  return align_body(e, x);
}

}  // namespace

std::optional<ETermPtr> dip(const Store& store, const ETermPtr& v, const Evidence& e2) {
  if (!is_value(v)) return std::nullopt;
  const Evidence& e1 = v->ev;
  const ETermPtr& u = v->t1;
  const TypePtr& g1 = v->type_a;

  // Expected polymorphic, value is not: wrap a dummy type abstraction.
  if (!forall_pair(e1) && forall_pair(e2)) {
    TypeVar x{"X", 0};
    Evidence ev = refl_evidence(store, t_forall(x, g1));
    return e_asc(ev, e_tylam(x, e_asc(e1, u, t_unknown())), g1);
  }
  // Value is polymorphic, expected is not: instantiate at ?.
  if (u->kind == EKind::TyLam && forall_pair(e1) && !forall_pair(e2)) {
    TypeVar x{"X", 0};
    ETermPtr inst = e_tyapp(e_asc(e1, u, t_forall(x, t_unknown())), t_unknown());
    return e_asc(refl_evidence(store, g1), inst, g1);
  }
  // Both functions: delay through a proxy so adaptation can happen on use.
  if (arrow_pair(e1) && arrow_pair(e2)) {
    TypePtr lifted = lift(store, g1);
    TypePtr la = shape_arrow(lifted);
    TypePtr arrowed = t_arrow(la->a, la->b);
    ETermPtr body = e_app(e_asc(e1, u, t_arrow(t_unknown(), t_unknown())),
                          e_asc({t_unknown(), t_unknown()}, e_var("x"), t_unknown()));
    return e_asc({arrowed, arrowed}, e_lam("x", t_unknown(), body), g1);
  }
  // Both type abstractions: push the scheme of the evidence inside.
  if (u->kind == EKind::TyLam && forall_pair(e1) && forall_pair(e2)) {
    TypeVar x = u->tyvar;
    TypePtr lifted = lift(store, g1);
    TypePtr quant;
    if (is_unknown(lifted)) {
      quant = t_forall(x, t_unknown());
    } else if (lifted->kind == TypeKind::Forall) {
      quant = t_forall(x, align_body(lifted, x));
    } else {
      return std::nullopt;
    }
    Evidence inner{scheme_of(e1.left, x), scheme_of(e1.right, x)};
    return e_asc({quant, quant}, e_tylam(x, e_asc(inner, u->t1, t_unknown())), g1);
  }
  return std::nullopt;
}

}  // namespace gsf
