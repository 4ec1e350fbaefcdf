#include "gsf/elaboration.hpp"

#include <stdexcept>

#include "gsf/evidence.hpp"

namespace gsf {

TypePtr matching(const TypePtr& g, MatchShape shape) {
  switch (shape) {
    case MatchShape::Function:
      if (g->kind == TypeKind::Arrow) return g;
      if (g->kind == TypeKind::Unknown) return t_arrow(t_unknown(), t_unknown());
      break;
    case MatchShape::Forall:
      if (g->kind == TypeKind::Forall) return g;
      if (g->kind == TypeKind::Unknown) return t_forall(TypeVar{"X", 0}, t_unknown());
      break;
    case MatchShape::Pair:
      if (g->kind == TypeKind::Pair) return g;
      if (g->kind == TypeKind::Unknown) return t_pair(t_unknown(), t_unknown());
      break;
    case MatchShape::Exists:
      if (g->kind == TypeKind::Exists) return g;
      if (g->kind == TypeKind::Unknown) return t_exists(TypeVar{"X", 0}, t_unknown());
      break;
  }
  throw std::logic_error("matching: wrong constructor " + show_type(g));
}

namespace {

[[noreturn]] void elab_fail(const std::string& what) {
  throw std::logic_error("elaborate: " + what + " (term does not typecheck?)");
}

Evidence require_initial(const TypeEnv& env, const TypePtr& g1, const TypePtr& g2) {
  auto ev = initial_evidence(env.the_store(), g1, g2);
  if (!ev) elab_fail("no initial evidence for " + show_type(g1) + " ~ " + show_type(g2));
  return *ev;
}

// Ascribe t (of type from) to target, unless the types already coincide.
// A coercion landing on a value folds into the value's ascription: this is
// the (Rasc) collapse done eagerly, and it keeps the translations of
// precision-related terms structurally aligned.
ETermPtr coerce(const TypeEnv& env, ETermPtr t, const TypePtr& from, const TypePtr& target) {
  if (type_equal(from, target)) return t;
  Evidence step = require_initial(env, from, target);
  if (t->kind == EKind::Asc && is_raw_value(t->t1)) {
    // When the collapse is doomed the wrapper stays, and reduction raises
    // the error at the usual moment.
    if (auto combined = trans(t->ev, step))
      return e_asc(*combined, t->t1, target);
  }
  return e_asc(step, std::move(t), target);
}

// `wrapped` marks the direct body of a binder: the reduction rules for
// application and type application ascribe those positions themselves, so a
// lambda there stays raw (this is what keeps values carrying one evidence).
Elaborated elab(const TypeEnv& env, const TermPtr& t, bool wrapped);

// Match-expand the elaborated scrutinee when its type is ?.
Elaborated match_coerce(const TypeEnv& env, Elaborated e, MatchShape shape) {
  if (e.type->kind != TypeKind::Unknown) return e;
  TypePtr shaped = matching(e.type, shape);
  Evidence ev = refl_evidence(env.the_store(), shaped);
  return {e_asc(ev, e.term, shaped), shaped};
}

Elaborated elab(const TypeEnv& env, const TermPtr& t, bool wrapped) {
  switch (t->kind) {
    case TermKind::Const: {
      TypePtr b = t_base(t->lit.type);
      return {e_asc(refl_evidence(env.the_store(), b), e_const(t->lit), b), b};
    }
    case TermKind::Var: {
      auto it = env.vars.find(t->var);
      if (it == env.vars.end()) elab_fail("unbound variable " + t->var);
      return {e_var(t->var), it->second};
    }
    case TermKind::Lam: {
      Elaborated body = elab(env.with_var(t->var, t->type_a), t->t1, true);
      TypePtr ty = t_arrow(t->type_a, body.type);
      ETermPtr lam = e_lam(t->var, t->type_a, body.term);
      if (wrapped) return {lam, ty};
      return {e_asc(refl_evidence(env.the_store(), ty), lam, ty), ty};
    }
    case TermKind::TyLam: {
      Elaborated body = elab(env.with_tyvar(t->tyvar), t->t1, true);
      TypePtr ty = t_forall(t->tyvar, body.type);
      ETermPtr tylam = e_tylam(t->tyvar, body.term);
      if (wrapped) return {tylam, ty};
      return {e_asc(refl_evidence(env.the_store(), ty), tylam, ty), ty};
    }
    case TermKind::Asc: {
      Elaborated sub = elab(env, t->t1, false);
      Evidence step = require_initial(env, sub.type, t->type_a);
      // A source ascription on a syntactic value folds into the value's own
      // ascription, so values carry exactly one evidence.
      if (is_source_value(t->t1) && sub.term->kind == EKind::Asc &&
          is_raw_value(sub.term->t1)) {
        auto combined = trans(sub.term->ev, step);
        if (!combined) elab_fail("value ascription evidence does not combine");
        return {e_asc(*combined, sub.term->t1, t->type_a), t->type_a};
      }
      return {e_asc(step, sub.term, t->type_a), t->type_a};
    }
    case TermKind::App: {
      Elaborated fn = match_coerce(env, elab(env, t->t1, false), MatchShape::Function);
      if (fn.type->kind != TypeKind::Arrow) elab_fail("application head is not a function");
      Elaborated arg = elab(env, t->t2, false);
      return {e_app(fn.term, coerce(env, arg.term, arg.type, fn.type->a)), fn.type->b};
    }
    case TermKind::TyApp: {
      Elaborated fn = match_coerce(env, elab(env, t->t1, false), MatchShape::Forall);
      if (fn.type->kind != TypeKind::Forall) elab_fail("type application head is not a forall");
      TypePtr result = subst_type(fn.type->a, fn.type->var, t->type_a);
      return {e_tyapp(fn.term, t->type_a), result};
    }
    case TermKind::Pair: {
      Elaborated a = elab(env, t->t1, false);
      Elaborated b = elab(env, t->t2, false);
      return {e_pair(a.term, b.term), t_pair(a.type, b.type)};
    }
    case TermKind::Proj: {
      Elaborated sub = match_coerce(env, elab(env, t->t1, false), MatchShape::Pair);
      if (sub.type->kind != TypeKind::Pair) elab_fail("projection from a non-pair");
      return {e_proj(t->proj_index, sub.term),
              t->proj_index == 1 ? sub.type->a : sub.type->b};
    }
    case TermKind::Op: {
      TypePtr expected = t_base(op_arg_base(t->op));
      std::vector<ETermPtr> args;
      for (const auto& a : t->args) {
        Elaborated ea = elab(env, a, false);
        args.push_back(coerce(env, ea.term, ea.type, expected));
      }
      return {e_op(t->op, std::move(args)), t_base(op_result_base(t->op))};
    }
    case TermKind::If: {
      Elaborated c = elab(env, t->t1, false);
      Elaborated th = elab(env, t->t2, false);
      Elaborated el = elab(env, t->t3, false);
      auto m = meet(th.type, el.type);
      if (!m) elab_fail("if branches have no meet");
      return {e_if(coerce(env, c.term, c.type, t_bool()),
                   coerce(env, th.term, th.type, *m), coerce(env, el.term, el.type, *m)),
              *m};
    }
    case TermKind::Let:
      return elab(env, desugar_lets(t), wrapped);
    case TermKind::Pack: {
      TypePtr as = t->type_b;
      if (as->kind == TypeKind::Unknown) as = matching(as, MatchShape::Exists);
      if (as->kind != TypeKind::Exists) elab_fail("pack at a non-existential type");
      TypePtr target = subst_type(as->a, as->var, t->type_a);
      Elaborated body = elab(env, t->t1, false);
      ETermPtr packed =
          e_pack(t->type_a, coerce(env, body.term, body.type, target), as);
      ETermPtr wrapped = e_asc(refl_evidence(env.the_store(), as), packed, as);
      if (t->type_b->kind == TypeKind::Unknown)
        return {coerce(env, wrapped, as, t->type_b), t->type_b};
      return {wrapped, as};
    }
    case TermKind::Unpack: {
      Elaborated pkg = match_coerce(env, elab(env, t->t1, false), MatchShape::Exists);
      if (pkg.type->kind != TypeKind::Exists) elab_fail("unpack of a non-package");
      TypePtr xty = subst_type(pkg.type->a, pkg.type->var, t_var(t->tyvar));
      Elaborated body = elab(env.with_tyvar(t->tyvar).with_var(t->var, xty), t->t2, false);
      return {e_unpack(t->tyvar, t->var, pkg.term, body.term), body.type};
    }
  }
  elab_fail("unhandled term form");
}

}  // namespace

Elaborated elaborate_in(const TypeEnv& env, const TermPtr& t) { return elab(env, t, false); }

ETermPtr elaborate(const TermPtr& t) {
  TypeEnv env;
  return elab(env, t, false).term;
}

}  // namespace gsf
