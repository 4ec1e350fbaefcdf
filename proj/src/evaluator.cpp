#include "gsf/evaluator.hpp"

#include <stdexcept>
#include <utility>

#include "gsf/elaboration.hpp"
#include "gsf/evidence.hpp"
#include "gsf/precision.hpp"

namespace gsf {

namespace {

[[noreturn]] void stuck(const std::string& what) {
  throw std::logic_error("evaluator: stuck state (" + what + ")");
}

Constant apply_delta(OpKind op, const std::vector<Constant>& args) {
  switch (op) {
    case OpKind::Add: return Constant::of_int(args[0].int_val + args[1].int_val);
    case OpKind::Sub: return Constant::of_int(args[0].int_val - args[1].int_val);
    case OpKind::Mul: return Constant::of_int(args[0].int_val * args[1].int_val);
    case OpKind::Lt: return Constant::of_bool(args[0].int_val < args[1].int_val);
    case OpKind::Eq: return Constant::of_bool(args[0].int_val == args[1].int_val);
    case OpKind::Not: return Constant::of_bool(!args[0].bool_val);
    case OpKind::And: return Constant::of_bool(args[0].bool_val && args[1].bool_val);
    case OpKind::Or: return Constant::of_bool(args[0].bool_val || args[1].bool_val);
  }
  stuck("unknown primitive");
}

// The notion of reduction, one rule per helper, shared by both drivers.
// A null result together with a set `error` means a runtime failure.
struct Reducer {
  Store* store;
  const EvalOptions* opts;
  const char* rule = nullptr;
  bool failed = false;
  std::string error;

  ETermPtr fail(std::string what) {
    failed = true;
    error = std::move(what);
    return nullptr;
  }

  // outer ascription around an ascribed value
  ETermPtr rasc(const ETermPtr& inner, const Evidence& ev2, const TypePtr& target,
                bool out_provenance) {
    auto combined = trans(inner->ev, ev2);
    if (combined) {
      rule = "Rasc";
      return e_asc(*combined, inner->t1, target);
    }
    if (out_provenance)
      throw std::logic_error("outer evidence failed to combine: " +
                             show_evidence(inner->ev) + " o " + show_evidence(ev2));
    if (opts->dip_enabled) {
      if (auto adapted = dip(*store, inner, ev2)) {
        rule = "Rasc-dip";
        return e_asc(ev2, *adapted, target);
      }
    }
    return fail("cannot combine " + show_evidence(inner->ev) + " with " +
                show_evidence(ev2));
  }

  ETermPtr rapp(const ETermPtr& f, const ETermPtr& a) {
    if (f->t1->kind != EKind::Lam) stuck("applying a non-function value");
    Evidence dom_ev = ev_invert(EvInvert::Dom, f->ev);
    auto combined = trans(a->ev, dom_ev);
    if (!combined) {
      if (opts->dip_enabled) {
        if (auto adapted = dip(*store, a, dom_ev)) {
          rule = "Rapp-dip";
          return e_app(f, *adapted);
        }
      }
      return fail("cannot combine " + show_evidence(a->ev) + " with " +
                  show_evidence(dom_ev) + " (argument)");
    }
    const ETermPtr& lam = f->t1;
    ETermPtr arg_value = e_asc(*combined, a->t1, lam->type_a);
    ETermPtr body = esubst_term(lam->t1, lam->var, arg_value);
    if (f->type_a->kind != TypeKind::Arrow) stuck("function value at non-arrow type");
    rule = "Rapp";
    return e_asc(ev_invert(EvInvert::Cod, f->ev), body, f->type_a->b);
  }

  ETermPtr rappt(const ETermPtr& f, const TypePtr& arg) {
    if (f->t1->kind != EKind::TyLam) stuck("instantiating a non-type-abstraction");
    if (f->type_a->kind != TypeKind::Forall) stuck("type application at non-forall type");
    const TypePtr& target = f->type_a;
    Store old_store = *store;
    TypeNameId alpha = store->alloc(arg);
    TypePtr alpha_lifted = lift(*store, t_name(alpha));
    Evidence inner_ev = ev_inst(f->ev, alpha_lifted);
    ETermPtr body = esubst_tyvar(f->t1->t1, f->t1->tyvar, t_name(alpha), alpha_lifted);
    TypePtr inner_ty = subst_type(target->a, target->var, t_name(alpha));
    TypePtr outer_ty = subst_type(target->a, target->var, arg);
    Evidence out_ev = out_evidence(f->ev, alpha, arg, old_store, *store);
    rule = "RappT";
    return e_asc(out_ev, e_asc(inner_ev, body, inner_ty), outer_ty, true);
  }

  ETermPtr rpair(const ETermPtr& a, const ETermPtr& b) {
    rule = "Rpair";
    return e_asc(ev_pair(a->ev, b->ev), e_pair(a->t1, b->t1), t_pair(a->type_a, b->type_a));
  }

  ETermPtr rproj(int index, const ETermPtr& v) {
    if (v->t1->kind != EKind::Pair) stuck("projecting from a non-pair value");
    if (v->type_a->kind != TypeKind::Pair) stuck("pair value at non-pair type");
    bool first = index == 1;
    Evidence pe = ev_invert(first ? EvInvert::Proj1 : EvInvert::Proj2, v->ev);
    rule = first ? "Rproj1" : "Rproj2";
    return e_asc(pe, first ? v->t1->t1 : v->t1->t2, first ? v->type_a->a : v->type_a->b);
  }

  ETermPtr rop(OpKind op, const std::vector<ETermPtr>& args) {
    std::vector<Constant> consts;
    for (const auto& a : args) {
      if (a->t1->kind != EKind::Const) stuck("primitive applied to a non-constant");
      consts.push_back(a->t1->lit);
    }
    Constant result = apply_delta(op, consts);
    TypePtr b = t_base(op_result_base(op));
    rule = "Rop";
    return e_asc({b, b}, e_const(result), b);
  }

  ETermPtr rif(const ETermPtr& c, const ETermPtr& th, const ETermPtr& el) {
    if (c->t1->kind != EKind::Const || c->t1->lit.type != BaseKind::Bool)
      stuck("if condition is not a boolean");
    rule = "Rif";
    return c->t1->lit.bool_val ? th : el;
  }

  ETermPtr runpack(const ETermPtr& pkg, const TypeVar& tv, const std::string& x,
                   const ETermPtr& body_in) {
    if (pkg->t1->kind != EKind::Pack) stuck("unpacking a non-package value");
    if (pkg->type_a->kind != TypeKind::Exists) stuck("package value at non-exists type");
    const ETermPtr& raw = pkg->t1;      // pack <G', payload> as S
    const ETermPtr& payload = raw->t1;  // a value
    Store old_store = *store;
    TypeNameId alpha = store->alloc(raw->type_a);
    TypePtr alpha_lifted = lift(*store, t_name(alpha));
    TypePtr rep_lifted = lift(old_store, raw->type_a);
    Evidence inst = ev_inst_exists(pkg->ev, rep_lifted, alpha_lifted);
    auto combined = trans(payload->ev, inst);
    if (!combined)
      return fail("cannot combine " + show_evidence(payload->ev) + " with " +
                  show_evidence(inst) + " (unpack)");
    TypePtr xty = subst_type(pkg->type_a->a, pkg->type_a->var, t_name(alpha));
    ETermPtr xval = e_asc(*combined, payload->t1, xty);
    ETermPtr body = esubst_tyvar(body_in, tv, t_name(alpha), alpha_lifted);
    body = esubst_term(body, x, xval);
    rule = "Runpack";
    return body;
  }
};

// Reference driver: locate the leftmost-innermost redex by recursion. Returns
// the reduced term, or null when t is a value or an error was recorded.
ETermPtr step_rec(Reducer& rd, const ETermPtr& t) {
  switch (t->kind) {
    case EKind::Asc: {
      if (is_raw_value(t->t1)) return nullptr;  // whole ascription is a value
      if (is_value(t->t1)) return rd.rasc(t->t1, t->ev, t->type_a, t->out_provenance);
      ETermPtr inner = step_rec(rd, t->t1);
      if (!inner) return nullptr;
      return e_asc(t->ev, inner, t->type_a, t->out_provenance);
    }
    case EKind::App: {
      if (!is_value(t->t1)) {
        ETermPtr f = step_rec(rd, t->t1);
        if (!f) return nullptr;
        return e_app(f, t->t2);
      }
      if (!is_value(t->t2)) {
        ETermPtr a = step_rec(rd, t->t2);
        if (!a) return nullptr;
        return e_app(t->t1, a);
      }
      return rd.rapp(t->t1, t->t2);
    }
    case EKind::TyApp: {
      if (!is_value(t->t1)) {
        ETermPtr f = step_rec(rd, t->t1);
        if (!f) return nullptr;
        return e_tyapp(f, t->type_a);
      }
      return rd.rappt(t->t1, t->type_a);
    }
    case EKind::Pair: {
      if (!is_value(t->t1)) {
        ETermPtr a = step_rec(rd, t->t1);
        if (!a) return nullptr;
        return e_pair(a, t->t2);
      }
      if (!is_value(t->t2)) {
        ETermPtr b = step_rec(rd, t->t2);
        if (!b) return nullptr;
        return e_pair(t->t1, b);
      }
      return rd.rpair(t->t1, t->t2);
    }
    case EKind::Proj: {
      if (!is_value(t->t1)) {
        ETermPtr s = step_rec(rd, t->t1);
        if (!s) return nullptr;
        return e_proj(t->proj_index, s);
      }
      return rd.rproj(t->proj_index, t->t1);
    }
    case EKind::Op: {
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (!is_value(t->args[i])) {
          ETermPtr a = step_rec(rd, t->args[i]);
          if (!a) return nullptr;
          std::vector<ETermPtr> args = t->args;
          args[i] = a;
          return e_op(t->op, std::move(args));
        }
      }
      return rd.rop(t->op, t->args);
    }
    case EKind::If: {
      if (!is_value(t->t1)) {
        ETermPtr c = step_rec(rd, t->t1);
        if (!c) return nullptr;
        return e_if(c, t->t2, t->t3);
      }
      return rd.rif(t->t1, t->t2, t->t3);
    }
    case EKind::Unpack: {
      if (!is_value(t->t1)) {
        ETermPtr p = step_rec(rd, t->t1);
        if (!p) return nullptr;
        return e_unpack(t->tyvar, t->var, p, t->t2);
      }
      return rd.runpack(t->t1, t->tyvar, t->var, t->t2);
    }
    case EKind::Pack: {
      // Only reachable inside an ascription frame, while the payload reduces.
      if (is_value(t->t1)) return nullptr;
      ETermPtr p = step_rec(rd, t->t1);
      if (!p) return nullptr;
      return e_pack(t->type_a, p, t->type_b);
    }
    case EKind::Const:
    case EKind::Var:
    case EKind::Lam:
    case EKind::TyLam:
      stuck("bare raw term outside an ascription");
  }
  stuck("unhandled term form");
}

}  // namespace

StepResult step(const Configuration& c, const EvalOptions& opts) {
  if (is_value(c.term)) return AlreadyValue{};
  Store store = c.store;
  Reducer rd{&store, &opts};
  ETermPtr next = step_rec(rd, c.term);
  if (rd.failed) return RuntimeError{0, rd.error};
  if (!next) return AlreadyValue{};
  return StepOk{{std::move(store), std::move(next)}, rd.rule ? rd.rule : "?"};
}

namespace {

// Frame-stack driver: the evaluation context is kept explicit, so a step
// costs the local work only, not a walk from the root. Used when no trace
// or per-step checking is requested.
struct Frame {
  EKind kind;            // the node this frame reassembles
  Evidence ev;           // Asc
  TypePtr type_a;        // Asc target / TyApp argument / Pack witness
  TypePtr type_b;        // Pack "as"
  bool out_provenance = false;
  ETermPtr t2, t3;       // pending siblings
  ETermPtr done;         // evaluated sibling (App fn / Pair left)
  bool second = false;   // evaluating the second child
  int proj_index = 1;
  OpKind op = OpKind::Add;
  std::vector<ETermPtr> op_done;
  std::vector<ETermPtr> op_pending;
  TypeVar tyvar;
  std::string var;
};

Outcome run_fast(Configuration c, const EvalOptions& opts) {
  Reducer rd{&c.store, &opts};
  std::vector<Frame> stack;
  ETermPtr focus = c.term;
  std::size_t steps = 0;

  auto reduced = [&](ETermPtr next) -> bool {
    // counts one application of the notion of reduction
    if (rd.failed) return false;
    focus = std::move(next);
    ++steps;
    return true;
  };

  for (;;) {
    if (is_value(focus) || (focus->kind == EKind::Pack && is_value(focus->t1))) {
      if (stack.empty()) {
        if (focus->kind == EKind::Pack) stuck("bare package outside an ascription");
        // the reference driver only notices a value on the next iteration
        if (steps >= opts.max_steps) return TimeoutOutcome{steps};
        return ValueOutcome{std::move(c.store), std::move(focus), steps};
      }
      Frame f = std::move(stack.back());
      stack.pop_back();
      switch (f.kind) {
        case EKind::Asc:
          focus = e_asc(f.ev, focus, f.type_a, f.out_provenance);
          break;
        case EKind::App:
          focus = f.second ? e_app(f.done, focus) : e_app(focus, f.t2);
          break;
        case EKind::TyApp:
          focus = e_tyapp(focus, f.type_a);
          break;
        case EKind::Pair:
          focus = f.second ? e_pair(f.done, focus) : e_pair(focus, f.t2);
          break;
        case EKind::Proj:
          focus = e_proj(f.proj_index, focus);
          break;
        case EKind::Op: {
          f.op_done.push_back(focus);
          std::vector<ETermPtr> args = std::move(f.op_done);
          for (auto& p : f.op_pending) args.push_back(std::move(p));
          focus = e_op(f.op, std::move(args));
          break;
        }
        case EKind::If:
          focus = e_if(focus, f.t2, f.t3);
          break;
        case EKind::Unpack:
          focus = e_unpack(f.tyvar, f.var, focus, f.t2);
          break;
        case EKind::Pack:
          focus = e_pack(f.type_a, focus, f.type_b);
          break;
        default:
          stuck("corrupt frame");
      }
      continue;
    }
    if (steps >= opts.max_steps) return TimeoutOutcome{steps};

    switch (focus->kind) {
      case EKind::Asc: {
        if (is_value(focus->t1)) {
          if (!reduced(rd.rasc(focus->t1, focus->ev, focus->type_a, focus->out_provenance)))
            return RuntimeError{steps, rd.error};
        } else {
          Frame f{EKind::Asc};
          f.ev = focus->ev;
          f.type_a = focus->type_a;
          f.out_provenance = focus->out_provenance;
          stack.push_back(std::move(f));
          focus = focus->t1;
        }
        break;
      }
      case EKind::App: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::App};
          f.t2 = focus->t2;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!is_value(focus->t2)) {
          Frame f{EKind::App};
          f.done = focus->t1;
          f.second = true;
          stack.push_back(std::move(f));
          focus = focus->t2;
        } else if (!reduced(rd.rapp(focus->t1, focus->t2))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::TyApp: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::TyApp};
          f.type_a = focus->type_a;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!reduced(rd.rappt(focus->t1, focus->type_a))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::Pair: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::Pair};
          f.t2 = focus->t2;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!is_value(focus->t2)) {
          Frame f{EKind::Pair};
          f.done = focus->t1;
          f.second = true;
          stack.push_back(std::move(f));
          focus = focus->t2;
        } else if (!reduced(rd.rpair(focus->t1, focus->t2))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::Proj: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::Proj};
          f.proj_index = focus->proj_index;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!reduced(rd.rproj(focus->proj_index, focus->t1))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::Op: {
        std::size_t i = 0;
        while (i < focus->args.size() && is_value(focus->args[i])) ++i;
        if (i == focus->args.size()) {
          if (!reduced(rd.rop(focus->op, focus->args))) return RuntimeError{steps, rd.error};
        } else {
          Frame f{EKind::Op};
          f.op = focus->op;
          f.op_done.assign(focus->args.begin(), focus->args.begin() + i);
          f.op_pending.assign(focus->args.begin() + i + 1, focus->args.end());
          stack.push_back(std::move(f));
          focus = focus->args[i];
        }
        break;
      }
      case EKind::If: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::If};
          f.t2 = focus->t2;
          f.t3 = focus->t3;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!reduced(rd.rif(focus->t1, focus->t2, focus->t3))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::Unpack: {
        if (!is_value(focus->t1)) {
          Frame f{EKind::Unpack};
          f.tyvar = focus->tyvar;
          f.var = focus->var;
          f.t2 = focus->t2;
          stack.push_back(std::move(f));
          focus = focus->t1;
        } else if (!reduced(rd.runpack(focus->t1, focus->tyvar, focus->var, focus->t2))) {
          return RuntimeError{steps, rd.error};
        }
        break;
      }
      case EKind::Pack: {
        Frame f{EKind::Pack};
        f.type_a = focus->type_a;
        f.type_b = focus->type_b;
        stack.push_back(std::move(f));
        focus = focus->t1;
        break;
      }
      case EKind::Const:
      case EKind::Var:
      case EKind::Lam:
      case EKind::TyLam:
        stuck("bare raw term outside an ascription");
    }
  }
}

Outcome run(Configuration c, const EvalOptions& opts, std::vector<TraceEntry>* entries) {
  if (!entries && !opts.debug_typecheck) return run_fast(std::move(c), opts);

  TypePtr expected;
  if (opts.debug_typecheck) {
    TypeEnv env;
    env.store = &c.store;
    auto r = typecheck_eps(env, c.term);
    if (!ok(r))
      throw std::logic_error("eval: initial term is ill-typed: " + error_of(r).message);
    expected = type_of(r);
  }
  for (std::size_t steps = 0; steps < opts.max_steps; ++steps) {
    StepResult r = step(c, opts);
    if (std::holds_alternative<AlreadyValue>(r)) return ValueOutcome{c.store, c.term, steps};
    if (std::holds_alternative<RuntimeError>(r)) {
      RuntimeError e = std::get<RuntimeError>(r);
      e.at_step = steps;
      return e;
    }
    c = std::move(std::get<StepOk>(r).config);
    if (entries) entries->push_back({steps + 1, std::get<StepOk>(r).rule, c});
    if (opts.debug_typecheck) {
      TypeEnv env;
      env.store = &c.store;
      auto tr = typecheck_eps(env, c.term);
      if (!ok(tr))
        throw std::logic_error("preservation failure after " +
                               std::string(std::get<StepOk>(r).rule) + ": " +
                               error_of(tr).message);
      if (!type_equal(type_of(tr), expected))
        throw std::logic_error("type changed during reduction: " + show_type(expected) +
                               " vs " + show_type(type_of(tr)));
    }
  }
  return TimeoutOutcome{opts.max_steps};
}

}  // namespace

Outcome eval_eps(Configuration c, const EvalOptions& opts) {
  return run(std::move(c), opts, nullptr);
}

Outcome eval(const TermPtr& t, const EvalOptions& opts) {
  ETermPtr te = elaborate(t);
  return run({Store{}, te}, opts, nullptr);
}

TraceResult trace(const TermPtr& t, const EvalOptions& opts) {
  TraceResult out;
  ETermPtr te = elaborate(t);
  out.outcome = run({Store{}, te}, opts, &out.entries);
  return out;
}

LockstepVerdict lockstep_check(const TermPtr& t1, const TermPtr& t2, const EvalOptions& opts) {
  Configuration c1{Store{}, elaborate(t1)};
  Configuration c2{Store{}, elaborate(t2)};
  if (!config_precision(c1.store, c1.term, c2.store, c2.term))
    return {LockstepKind::PrecisionBroken, 0, "initial configurations unrelated"};
  for (std::size_t steps = 0; steps < opts.max_steps; ++steps) {
    if (is_value(c1.term)) {
      if (is_value(c2.term)) return {LockstepKind::Held, steps, ""};
      return {LockstepKind::RightStuck, steps, "left is a value, right is not"};
    }
    StepResult r1 = step(c1, opts);
    if (std::holds_alternative<RuntimeError>(r1))
      return {LockstepKind::LeftErrorFirst, steps, std::get<RuntimeError>(r1).detail};
    StepResult r2 = step(c2, opts);
    if (std::holds_alternative<RuntimeError>(r2))
      return {LockstepKind::RightStuck, steps,
              "right errored first: " + std::get<RuntimeError>(r2).detail};
    if (std::holds_alternative<AlreadyValue>(r2))
      return {LockstepKind::RightStuck, steps, "right finished before left"};
    c1 = std::move(std::get<StepOk>(r1).config);
    c2 = std::move(std::get<StepOk>(r2).config);
    if (!config_precision(c1.store, c1.term, c2.store, c2.term))
      return {LockstepKind::PrecisionBroken, steps + 1,
              "configurations unrelated after step"};
  }
  return {LockstepKind::Held, opts.max_steps, "budget exhausted with precision held"};
}

std::string show_outcome(const Outcome& o) {
  if (is_value_outcome(o)) {
    const auto& v = std::get<ValueOutcome>(o);
    return show_eterm(v.value);
  }
  if (is_error_outcome(o)) {
    const auto& e = std::get<RuntimeError>(o);
    return "error: " + e.detail;
  }
  return "timeout after " + std::to_string(std::get<TimeoutOutcome>(o).steps) + " steps";
}

}  // namespace gsf
