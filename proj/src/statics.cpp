#include "gsf/statics.hpp"

#include <utility>

namespace gsf {

const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::IllFormedType: return "ill-formed-type";
    case TypeErrorKind::Inconsistent: return "inconsistent";
    case TypeErrorKind::NotAFunction: return "not-a-function";
    case TypeErrorKind::NotAForall: return "not-a-forall";
    case TypeErrorKind::NotAPair: return "not-a-pair";
    case TypeErrorKind::NotAnExists: return "not-an-exists";
    case TypeErrorKind::UnboundVariable: return "unbound-variable";
    case TypeErrorKind::OpArity: return "op-arity";
    case TypeErrorKind::NotStatic: return "not-static";
  }
  return "unknown";
}

namespace {

struct BoundVars {
  const TypeVar* v;
  const BoundVars* next;
};

bool wf_rec(const TypeEnv& env, const TypePtr& g, const BoundVars* bound) {
  switch (g->kind) {
    case TypeKind::Base:
    case TypeKind::Unknown:
      return true;
    case TypeKind::Var: {
      for (const BoundVars* p = bound; p; p = p->next)
        if (*p->v == g->var) return true;
      return env.tyvar_bound(g->var);
    }
    case TypeKind::Name:
      return env.the_store().bound(g->name);
    case TypeKind::Sealed:
      return false;  // sealed names live in evidence types only
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return wf_rec(env, g->a, bound) && wf_rec(env, g->b, bound);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      BoundVars link{&g->var, bound};
      return wf_rec(env, g->a, &link);
    }
  }
  return false;
}

struct VarPairs {
  const TypeVar* l;
  const TypeVar* r;
  const VarPairs* next;
};

int pair_lookup(const VarPairs* env, const TypeVar& l, const TypeVar& r) {
  for (const VarPairs* p = env; p; p = p->next) {
    bool ml = *p->l == l;
    bool mr = *p->r == r;
    if (ml || mr) return (ml && mr) ? 1 : -1;
  }
  return 0;
}

bool free_var_visible(const TypeEnv& env, const VarPairs* pairs, const TypeVar& v, bool left) {
  for (const VarPairs* p = pairs; p; p = p->next)
    if ((left ? *p->l : *p->r) == v) return true;
  return env.tyvar_bound(v);
}

bool cons_rec(const TypeEnv& env, const TypePtr& g1, const TypePtr& g2, const VarPairs* pairs) {
  if (g1->kind == TypeKind::Unknown || g2->kind == TypeKind::Unknown) {
    // ? is consistent with any well-formed type; free variables introduced by
    // congruence pass through `pairs`.
    const TypePtr& other = g1->kind == TypeKind::Unknown ? g2 : g1;
    (void)other;
    return true;
  }
  if (g1->kind == TypeKind::Name && g2->kind == TypeKind::Name && g1->name == g2->name)
    return env.the_store().bound(g1->name);
  if (g1->kind == TypeKind::Name) {
    if (!env.the_store().bound(g1->name)) return false;
    return cons_rec(env, env.the_store().lookup(g1->name), g2, pairs);
  }
  if (g2->kind == TypeKind::Name) {
    if (!env.the_store().bound(g2->name)) return false;
    return cons_rec(env, g1, env.the_store().lookup(g2->name), pairs);
  }
  if (g1->kind != g2->kind) return false;
  switch (g1->kind) {
    case TypeKind::Base: return g1->base == g2->base;
    case TypeKind::Var: {
      int m = pair_lookup(pairs, g1->var, g2->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return g1->var == g2->var && env.tyvar_bound(g1->var);
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return cons_rec(env, g1->a, g2->a, pairs) && cons_rec(env, g1->b, g2->b, pairs);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarPairs link{&g1->var, &g2->var, pairs};
      return cons_rec(env, g1->a, g2->a, &link);
    }
    default:
      return false;
  }
}

bool eq_rec(const TypeEnv& env, const TypePtr& t1, const TypePtr& t2, const VarPairs* pairs) {
  if (t1->kind == TypeKind::Unknown || t2->kind == TypeKind::Unknown) return false;
  if (t1->kind == TypeKind::Name && t2->kind == TypeKind::Name && t1->name == t2->name)
    return env.the_store().bound(t1->name);
  if (t1->kind == TypeKind::Name) {
    if (!env.the_store().bound(t1->name)) return false;
    return eq_rec(env, env.the_store().lookup(t1->name), t2, pairs);
  }
  if (t2->kind == TypeKind::Name) {
    if (!env.the_store().bound(t2->name)) return false;
    return eq_rec(env, t1, env.the_store().lookup(t2->name), pairs);
  }
  if (t1->kind != t2->kind) return false;
  switch (t1->kind) {
    case TypeKind::Base: return t1->base == t2->base;
    case TypeKind::Var: {
      int m = pair_lookup(pairs, t1->var, t2->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return t1->var == t2->var && env.tyvar_bound(t1->var);
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return eq_rec(env, t1->a, t2->a, pairs) && eq_rec(env, t1->b, t2->b, pairs);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarPairs link{&t1->var, &t2->var, pairs};
      return eq_rec(env, t1->a, t2->a, &link);
    }
    default:
      return false;
  }
}

}  // namespace

bool wf_type(const TypeEnv& env, const TypePtr& g) { return wf_rec(env, g, nullptr); }

bool consistent(const TypeEnv& env, const TypePtr& g1, const TypePtr& g2) {
  if (g1->kind == TypeKind::Unknown) return wf_type(env, g2);
  if (g2->kind == TypeKind::Unknown) return wf_type(env, g1);
  if (!wf_type(env, g1) || !wf_type(env, g2)) return false;
  return cons_rec(env, g1, g2, nullptr);
}

bool static_type_equal(const TypeEnv& env, const TypePtr& t1, const TypePtr& t2) {
  return eq_rec(env, t1, t2, nullptr);
}

std::optional<TypePtr> partial_type_fn(PartialFn kind, const TypePtr& g, const TypePtr& arg) {
  switch (kind) {
    case PartialFn::Dom:
      if (g->kind == TypeKind::Arrow) return g->a;
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
    case PartialFn::Cod:
      if (g->kind == TypeKind::Arrow) return g->b;
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
    case PartialFn::Inst:
      if (g->kind == TypeKind::Forall) return subst_type(g->a, g->var, arg);
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
    case PartialFn::Proj1:
      if (g->kind == TypeKind::Pair) return g->a;
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
    case PartialFn::Proj2:
      if (g->kind == TypeKind::Pair) return g->b;
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
    case PartialFn::SchmE:
      if (g->kind == TypeKind::Exists) return g->a;
      if (g->kind == TypeKind::Unknown) return t_unknown();
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

TypeError err(TypeErrorKind k, Span s, std::string msg) {
  return TypeError{k, s, std::move(msg)};
}

TypecheckResult check_gsf(const TypeEnv& env, const TermPtr& t);

TypecheckResult check_gsf_op(const TypeEnv& env, const TermPtr& t) {
  if (static_cast<int>(t->args.size()) != op_arity(t->op))
    return err(TypeErrorKind::OpArity, t->span,
               std::string("operator ") + op_token(t->op) + " expects " +
                   std::to_string(op_arity(t->op)) + " arguments");
  TypePtr expected = t_base(op_arg_base(t->op));
  for (const auto& a : t->args) {
    auto r = check_gsf(env, a);
    if (!ok(r)) return r;
    if (!consistent(env, type_of(r), expected))
      return err(TypeErrorKind::Inconsistent, a->span,
                 "operand of " + std::string(op_token(t->op)) + " has type " +
                     show_type(type_of(r)) + ", expected " + show_type(expected));
  }
  return TypePtr(t_base(op_result_base(t->op)));
}

TypecheckResult check_gsf(const TypeEnv& env, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
      return TypePtr(t_base(t->lit.type));
    case TermKind::Var: {
      auto it = env.vars.find(t->var);
      if (it == env.vars.end())
        return err(TypeErrorKind::UnboundVariable, t->span, "unbound variable " + t->var);
      return it->second;
    }
    case TermKind::Lam: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      auto r = check_gsf(env.with_var(t->var, t->type_a), t->t1);
      if (!ok(r)) return r;
      return TypePtr(t_arrow(t->type_a, type_of(r)));
    }
    case TermKind::TyLam: {
      auto r = check_gsf(env.with_tyvar(t->tyvar), t->t1);
      if (!ok(r)) return r;
      return TypePtr(t_forall(t->tyvar, type_of(r)));
    }
    case TermKind::App: {
      auto rf = check_gsf(env, t->t1);
      if (!ok(rf)) return rf;
      auto dom = partial_type_fn(PartialFn::Dom, type_of(rf));
      if (!dom)
        return err(TypeErrorKind::NotAFunction, t->span,
                   "cannot apply a term of type " + show_type(type_of(rf)));
      auto ra = check_gsf(env, t->t2);
      if (!ok(ra)) return ra;
      if (!consistent(env, *dom, type_of(ra)))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "argument type " + show_type(type_of(ra)) + " is not consistent with " +
                       show_type(*dom));
      return *partial_type_fn(PartialFn::Cod, type_of(rf));
    }
    case TermKind::TyApp: {
      auto rf = check_gsf(env, t->t1);
      if (!ok(rf)) return rf;
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      auto inst = partial_type_fn(PartialFn::Inst, type_of(rf), t->type_a);
      if (!inst)
        return err(TypeErrorKind::NotAForall, t->span,
                   "cannot instantiate a term of type " + show_type(type_of(rf)));
      return *inst;
    }
    case TermKind::Asc: {
      auto r = check_gsf(env, t->t1);
      if (!ok(r)) return r;
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      if (!consistent(env, type_of(r), t->type_a))
        return err(TypeErrorKind::Inconsistent, t->span,
                   show_type(type_of(r)) + " is not consistent with " + show_type(t->type_a));
      return t->type_a;
    }
    case TermKind::Pair: {
      auto r1 = check_gsf(env, t->t1);
      if (!ok(r1)) return r1;
      auto r2 = check_gsf(env, t->t2);
      if (!ok(r2)) return r2;
      return TypePtr(t_pair(type_of(r1), type_of(r2)));
    }
    case TermKind::Proj: {
      auto r = check_gsf(env, t->t1);
      if (!ok(r)) return r;
      auto p = partial_type_fn(t->proj_index == 1 ? PartialFn::Proj1 : PartialFn::Proj2,
                               type_of(r));
      if (!p)
        return err(TypeErrorKind::NotAPair, t->span,
                   "cannot project from type " + show_type(type_of(r)));
      return *p;
    }
    case TermKind::Op:
      return check_gsf_op(env, t);
    case TermKind::If: {
      auto rc = check_gsf(env, t->t1);
      if (!ok(rc)) return rc;
      if (!consistent(env, type_of(rc), t_bool()))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "condition has type " + show_type(type_of(rc)));
      auto rt = check_gsf(env, t->t2);
      if (!ok(rt)) return rt;
      auto re = check_gsf(env, t->t3);
      if (!ok(re)) return re;
      auto m = meet(type_of(rt), type_of(re));
      if (!m)
        return err(TypeErrorKind::Inconsistent, t->span,
                   "branch types " + show_type(type_of(rt)) + " and " + show_type(type_of(re)) +
                       " have no meet");
      return *m;
    }
    case TermKind::Let: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      auto rb = check_gsf(env, t->t1);
      if (!ok(rb)) return rb;
      if (!consistent(env, type_of(rb), t->type_a))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "bound term has type " + show_type(type_of(rb)) + ", not consistent with " +
                       show_type(t->type_a));
      return check_gsf(env.with_var(t->var, t->type_a), t->t2);
    }
    case TermKind::Pack: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed witness type " + show_type(t->type_a));
      if (!wf_type(env, t->type_b))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed package type " + show_type(t->type_b));
      TypePtr as = t->type_b;
      TypePtr body;
      TypeVar binder{"X", 0};
      if (as->kind == TypeKind::Exists) {
        binder = as->var;
        body = as->a;
      } else if (as->kind == TypeKind::Unknown) {
        body = t_unknown();
      } else {
        return err(TypeErrorKind::NotAnExists, t->span,
                   "pack type must be existential, got " + show_type(as));
      }
      auto r = check_gsf(env, t->t1);
      if (!ok(r)) return r;
      TypePtr target = subst_type(body, binder, t->type_a);
      if (!consistent(env, type_of(r), target))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "package body has type " + show_type(type_of(r)) +
                       ", not consistent with " + show_type(target));
      return as;
    }
    case TermKind::Unpack: {
      auto r1 = check_gsf(env, t->t1);
      if (!ok(r1)) return r1;
      auto schm = partial_type_fn(PartialFn::SchmE, type_of(r1));
      if (!schm)
        return err(TypeErrorKind::NotAnExists, t->span,
                   "cannot unpack a term of type " + show_type(type_of(r1)));
      TypePtr xty = *schm;
      if (type_of(r1)->kind == TypeKind::Exists)
        xty = subst_type(type_of(r1)->a, type_of(r1)->var, t_var(t->tyvar));
      auto r2 = check_gsf(env.with_tyvar(t->tyvar).with_var(t->var, xty), t->t2);
      if (!ok(r2)) return r2;
      if (!wf_type(env, type_of(r2)))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "type variable escapes its scope in " + show_type(type_of(r2)));
      return r2;
    }
  }
  return err(TypeErrorKind::Inconsistent, t->span, "unreachable");
}

bool term_is_static(const TermPtr& t) {
  auto st = [](const TypePtr& g) { return !g || is_static_type(g); };
  if (!st(t->type_a) || !st(t->type_b)) return false;
  for (const auto& a : t->args)
    if (!term_is_static(a)) return false;
  for (const auto& sub : {t->t1, t->t2, t->t3})
    if (sub && !term_is_static(sub)) return false;
  return true;
}

TypecheckResult check_sf(const TypeEnv& env, const TermPtr& t);

TypecheckResult check_sf(const TypeEnv& env, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
      return TypePtr(t_base(t->lit.type));
    case TermKind::Var: {
      auto it = env.vars.find(t->var);
      if (it == env.vars.end())
        return err(TypeErrorKind::UnboundVariable, t->span, "unbound variable " + t->var);
      return it->second;
    }
    case TermKind::Lam: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      auto r = check_sf(env.with_var(t->var, t->type_a), t->t1);
      if (!ok(r)) return r;
      return TypePtr(t_arrow(t->type_a, type_of(r)));
    }
    case TermKind::TyLam: {
      auto r = check_sf(env.with_tyvar(t->tyvar), t->t1);
      if (!ok(r)) return r;
      return TypePtr(t_forall(t->tyvar, type_of(r)));
    }
    case TermKind::App: {
      auto rf = check_sf(env, t->t1);
      if (!ok(rf)) return rf;
      if (type_of(rf)->kind != TypeKind::Arrow)
        return err(TypeErrorKind::NotAFunction, t->span,
                   "cannot apply a term of type " + show_type(type_of(rf)));
      auto ra = check_sf(env, t->t2);
      if (!ok(ra)) return ra;
      if (!static_type_equal(env, type_of(rf)->a, type_of(ra)))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "argument type " + show_type(type_of(ra)) + " does not equal " +
                       show_type(type_of(rf)->a));
      return type_of(rf)->b;
    }
    case TermKind::TyApp: {
      auto rf = check_sf(env, t->t1);
      if (!ok(rf)) return rf;
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      if (type_of(rf)->kind != TypeKind::Forall)
        return err(TypeErrorKind::NotAForall, t->span,
                   "cannot instantiate a term of type " + show_type(type_of(rf)));
      return subst_type(type_of(rf)->a, type_of(rf)->var, t->type_a);
    }
    case TermKind::Asc: {
      auto r = check_sf(env, t->t1);
      if (!ok(r)) return r;
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span,
                   "ill-formed type " + show_type(t->type_a));
      if (!static_type_equal(env, type_of(r), t->type_a))
        return err(TypeErrorKind::Inconsistent, t->span,
                   show_type(type_of(r)) + " does not equal " + show_type(t->type_a));
      return t->type_a;
    }
    case TermKind::Pair: {
      auto r1 = check_sf(env, t->t1);
      if (!ok(r1)) return r1;
      auto r2 = check_sf(env, t->t2);
      if (!ok(r2)) return r2;
      return TypePtr(t_pair(type_of(r1), type_of(r2)));
    }
    case TermKind::Proj: {
      auto r = check_sf(env, t->t1);
      if (!ok(r)) return r;
      if (type_of(r)->kind != TypeKind::Pair)
        return err(TypeErrorKind::NotAPair, t->span,
                   "cannot project from type " + show_type(type_of(r)));
      return t->proj_index == 1 ? type_of(r)->a : type_of(r)->b;
    }
    case TermKind::Op: {
      if (static_cast<int>(t->args.size()) != op_arity(t->op))
        return err(TypeErrorKind::OpArity, t->span, "bad operator arity");
      TypePtr expected = t_base(op_arg_base(t->op));
      for (const auto& a : t->args) {
        auto r = check_sf(env, a);
        if (!ok(r)) return r;
        if (!static_type_equal(env, type_of(r), expected))
          return err(TypeErrorKind::Inconsistent, a->span,
                     "operand has type " + show_type(type_of(r)));
      }
      return TypePtr(t_base(op_result_base(t->op)));
    }
    case TermKind::If: {
      auto rc = check_sf(env, t->t1);
      if (!ok(rc)) return rc;
      if (!static_type_equal(env, type_of(rc), t_bool()))
        return err(TypeErrorKind::Inconsistent, t->span, "condition is not Bool");
      auto rt = check_sf(env, t->t2);
      if (!ok(rt)) return rt;
      auto re = check_sf(env, t->t3);
      if (!ok(re)) return re;
      if (!static_type_equal(env, type_of(rt), type_of(re)))
        return err(TypeErrorKind::Inconsistent, t->span, "branch types differ");
      return rt;
    }
    case TermKind::Let: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, t->span, "ill-formed type");
      auto rb = check_sf(env, t->t1);
      if (!ok(rb)) return rb;
      if (!static_type_equal(env, type_of(rb), t->type_a))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "bound term has type " + show_type(type_of(rb)));
      return check_sf(env.with_var(t->var, t->type_a), t->t2);
    }
    case TermKind::Pack: {
      if (!wf_type(env, t->type_a) || !wf_type(env, t->type_b))
        return err(TypeErrorKind::IllFormedType, t->span, "ill-formed type in pack");
      if (t->type_b->kind != TypeKind::Exists)
        return err(TypeErrorKind::NotAnExists, t->span, "pack type must be existential");
      auto r = check_sf(env, t->t1);
      if (!ok(r)) return r;
      TypePtr target = subst_type(t->type_b->a, t->type_b->var, t->type_a);
      if (!static_type_equal(env, type_of(r), target))
        return err(TypeErrorKind::Inconsistent, t->span,
                   "package body has type " + show_type(type_of(r)) + ", expected " +
                       show_type(target));
      return t->type_b;
    }
    case TermKind::Unpack: {
      auto r1 = check_sf(env, t->t1);
      if (!ok(r1)) return r1;
      if (type_of(r1)->kind != TypeKind::Exists)
        return err(TypeErrorKind::NotAnExists, t->span,
                   "cannot unpack a term of type " + show_type(type_of(r1)));
      TypePtr xty = subst_type(type_of(r1)->a, type_of(r1)->var, t_var(t->tyvar));
      auto r2 = check_sf(env.with_tyvar(t->tyvar).with_var(t->var, xty), t->t2);
      if (!ok(r2)) return r2;
      if (!wf_type(env, type_of(r2)))
        return err(TypeErrorKind::IllFormedType, t->span, "type variable escapes its scope");
      return r2;
    }
  }
  return err(TypeErrorKind::Inconsistent, t->span, "unreachable");
}

}  // namespace

TypecheckResult typecheck_gsf(const TypeEnv& env, const TermPtr& t) {
  return check_gsf(env, t);
}

TypecheckResult typecheck_sf(const TypeEnv& env, const TermPtr& t) {
  if (!term_is_static(t))
    return TypeError{TypeErrorKind::NotStatic, t->span, "term contains the unknown type"};
  return check_sf(env, t);
}

namespace {

TypecheckResult check_eps(const TypeEnv& env, const ETermPtr& t, const EpsOptions& opts) {
  switch (t->kind) {
    case EKind::Const:
      return TypePtr(t_base(t->lit.type));
    case EKind::Var: {
      auto it = env.vars.find(t->var);
      if (it == env.vars.end())
        return err(TypeErrorKind::UnboundVariable, {}, "unbound variable " + t->var);
      return it->second;
    }
    case EKind::Lam: {
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, {}, "ill-formed type " + show_type(t->type_a));
      auto r = check_eps(env.with_var(t->var, t->type_a), t->t1, opts);
      if (!ok(r)) return r;
      return TypePtr(t_arrow(t->type_a, type_of(r)));
    }
    case EKind::TyLam: {
      auto r = check_eps(env.with_tyvar(t->tyvar), t->t1, opts);
      if (!ok(r)) return r;
      return TypePtr(t_forall(t->tyvar, type_of(r)));
    }
    case EKind::Asc: {
      auto r = check_eps(env, t->t1, opts);
      if (!ok(r)) return r;
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, {}, "ill-formed type " + show_type(t->type_a));
      if (opts.check_evidence) {
        if (!is_evidence_type(t->ev.left) || !is_evidence_type(t->ev.right))
          return err(TypeErrorKind::IllFormedType, {}, "bare type name in evidence");
        if (!precision(unlift(t->ev.left), type_of(r)) ||
            !precision(unlift(t->ev.right), t->type_a))
          return err(TypeErrorKind::Inconsistent, {},
                     "evidence " + show_evidence(t->ev) + " does not support " +
                         show_type(type_of(r)) + " ~ " + show_type(t->type_a));
      }
      return t->type_a;
    }
    case EKind::App: {
      auto rf = check_eps(env, t->t1, opts);
      if (!ok(rf)) return rf;
      if (type_of(rf)->kind != TypeKind::Arrow)
        return err(TypeErrorKind::NotAFunction, {},
                   "cannot apply a term of type " + show_type(type_of(rf)));
      auto ra = check_eps(env, t->t2, opts);
      if (!ok(ra)) return ra;
      if (!type_equal(type_of(rf)->a, type_of(ra)))
        return err(TypeErrorKind::Inconsistent, {},
                   "argument type " + show_type(type_of(ra)) + " does not match " +
                       show_type(type_of(rf)->a));
      return type_of(rf)->b;
    }
    case EKind::TyApp: {
      auto rf = check_eps(env, t->t1, opts);
      if (!ok(rf)) return rf;
      if (type_of(rf)->kind != TypeKind::Forall)
        return err(TypeErrorKind::NotAForall, {},
                   "cannot instantiate a term of type " + show_type(type_of(rf)));
      if (!wf_type(env, t->type_a))
        return err(TypeErrorKind::IllFormedType, {}, "ill-formed type " + show_type(t->type_a));
      return subst_type(type_of(rf)->a, type_of(rf)->var, t->type_a);
    }
    case EKind::Pair: {
      auto r1 = check_eps(env, t->t1, opts);
      if (!ok(r1)) return r1;
      auto r2 = check_eps(env, t->t2, opts);
      if (!ok(r2)) return r2;
      return TypePtr(t_pair(type_of(r1), type_of(r2)));
    }
    case EKind::Proj: {
      auto r = check_eps(env, t->t1, opts);
      if (!ok(r)) return r;
      if (type_of(r)->kind != TypeKind::Pair)
        return err(TypeErrorKind::NotAPair, {},
                   "cannot project from type " + show_type(type_of(r)));
      return t->proj_index == 1 ? type_of(r)->a : type_of(r)->b;
    }
    case EKind::Op: {
      if (static_cast<int>(t->args.size()) != op_arity(t->op))
        return err(TypeErrorKind::OpArity, {}, "bad operator arity");
      TypePtr expected = t_base(op_arg_base(t->op));
      for (const auto& a : t->args) {
        auto r = check_eps(env, a, opts);
        if (!ok(r)) return r;
        if (!type_equal(type_of(r), expected))
          return err(TypeErrorKind::Inconsistent, {},
                     "operand has type " + show_type(type_of(r)) + ", expected " +
                         show_type(expected));
      }
      return TypePtr(t_base(op_result_base(t->op)));
    }
    case EKind::If: {
      auto rc = check_eps(env, t->t1, opts);
      if (!ok(rc)) return rc;
      if (!type_equal(type_of(rc), t_bool()))
        return err(TypeErrorKind::Inconsistent, {}, "condition is not Bool");
      auto rt = check_eps(env, t->t2, opts);
      if (!ok(rt)) return rt;
      auto re = check_eps(env, t->t3, opts);
      if (!ok(re)) return re;
      if (!type_equal(type_of(rt), type_of(re)))
        return err(TypeErrorKind::Inconsistent, {}, "branch types differ");
      return rt;
    }
    case EKind::Pack: {
      if (!wf_type(env, t->type_a) || !wf_type(env, t->type_b))
        return err(TypeErrorKind::IllFormedType, {}, "ill-formed type in pack");
      if (t->type_b->kind != TypeKind::Exists)
        return err(TypeErrorKind::NotAnExists, {}, "pack type must be existential");
      auto r = check_eps(env, t->t1, opts);
      if (!ok(r)) return r;
      TypePtr target = subst_type(t->type_b->a, t->type_b->var, t->type_a);
      if (!type_equal(type_of(r), target))
        return err(TypeErrorKind::Inconsistent, {},
                   "package body has type " + show_type(type_of(r)) + ", expected " +
                       show_type(target));
      return t->type_b;
    }
    case EKind::Unpack: {
      auto r1 = check_eps(env, t->t1, opts);
      if (!ok(r1)) return r1;
      if (type_of(r1)->kind != TypeKind::Exists)
        return err(TypeErrorKind::NotAnExists, {},
                   "cannot unpack a term of type " + show_type(type_of(r1)));
      TypePtr xty = subst_type(type_of(r1)->a, type_of(r1)->var, t_var(t->tyvar));
      auto r2 = check_eps(env.with_tyvar(t->tyvar).with_var(t->var, xty), t->t2, opts);
      if (!ok(r2)) return r2;
      if (!wf_type(env, type_of(r2)))
        return err(TypeErrorKind::IllFormedType, {}, "type variable escapes its scope");
      return r2;
    }
  }
  return err(TypeErrorKind::Inconsistent, {}, "unreachable");
}

}  // namespace

TypecheckResult typecheck_eps(const TypeEnv& env, const ETermPtr& t, EpsOptions opts) {
  return check_eps(env, t, opts);
}

}  // namespace gsf
