#include "gsf/embeddings.hpp"

#include <stdexcept>
#include <utility>

#include "gsf/evaluator.hpp"

namespace gsf {

namespace {
SealTermPtr smk(SealTerm t) { return std::make_shared<const SealTerm>(std::move(t)); }
}  // namespace

SealTermPtr s_const(Constant c) {
  SealTerm t{SealTermKind::Const};
  t.lit = c;
  return smk(std::move(t));
}
SealTermPtr s_int(long long v) { return s_const(Constant::of_int(v)); }
SealTermPtr s_bool(bool v) { return s_const(Constant::of_bool(v)); }

SealTermPtr s_var(std::string x) {
  SealTerm t{SealTermKind::Var};
  t.var = std::move(x);
  return smk(std::move(t));
}

SealTermPtr s_lam(std::string x, SealTermPtr body) {
  SealTerm t{SealTermKind::Lam};
  t.var = std::move(x);
  t.t1 = std::move(body);
  return smk(std::move(t));
}

SealTermPtr s_app(SealTermPtr f, SealTermPtr a) {
  SealTerm t{SealTermKind::App};
  t.t1 = std::move(f);
  t.t2 = std::move(a);
  return smk(std::move(t));
}

SealTermPtr s_pair(SealTermPtr a, SealTermPtr b) {
  SealTerm t{SealTermKind::Pair};
  t.t1 = std::move(a);
  t.t2 = std::move(b);
  return smk(std::move(t));
}

SealTermPtr s_proj(int i, SealTermPtr sub) {
  SealTerm t{SealTermKind::Proj};
  t.proj_index = i;
  t.t1 = std::move(sub);
  return smk(std::move(t));
}

SealTermPtr s_op(OpKind op, std::vector<SealTermPtr> args) {
  SealTerm t{SealTermKind::Op};
  t.op = op;
  t.args = std::move(args);
  return smk(std::move(t));
}

SealTermPtr s_if(SealTermPtr c, SealTermPtr th, SealTermPtr el) {
  SealTerm t{SealTermKind::If};
  t.t1 = std::move(c);
  t.t2 = std::move(th);
  t.t3 = std::move(el);
  return smk(std::move(t));
}

SealTermPtr s_nu(std::string x, SealTermPtr body) {
  SealTerm t{SealTermKind::NuSeal};
  t.var = std::move(x);
  t.t1 = std::move(body);
  return smk(std::move(t));
}

SealTermPtr s_sealed(SealTermPtr payload, SealTermPtr key) {
  SealTerm t{SealTermKind::Sealed};
  t.t1 = std::move(payload);
  t.t2 = std::move(key);
  return smk(std::move(t));
}

SealTermPtr s_unseal(std::string x, SealTermPtr key, SealTermPtr payload, SealTermPtr body) {
  SealTerm t{SealTermKind::Unseal};
  t.var = std::move(x);
  t.t1 = std::move(key);
  t.t2 = std::move(payload);
  t.t3 = std::move(body);
  return smk(std::move(t));
}

SealTermPtr s_sealconst(std::size_t s) {
  SealTerm t{SealTermKind::SealConst};
  t.seal = s;
  return smk(std::move(t));
}

bool seal_term_uses_sealing(const SealTermPtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case SealTermKind::NuSeal:
    case SealTermKind::Sealed:
    case SealTermKind::Unseal:
    case SealTermKind::SealConst:
      return true;
    default:
      break;
  }
  for (const auto& a : t->args)
    if (seal_term_uses_sealing(a)) return true;
  return seal_term_uses_sealing(t->t1) || seal_term_uses_sealing(t->t2) ||
         seal_term_uses_sealing(t->t3);
}

std::string show_seal_term(const SealTermPtr& t) {
  switch (t->kind) {
    case SealTermKind::Const:
      if (t->lit.type == BaseKind::Int) return std::to_string(t->lit.int_val);
      if (t->lit.type == BaseKind::Bool) return t->lit.bool_val ? "true" : "false";
      return "unit";
    case SealTermKind::Var: return t->var;
    case SealTermKind::Lam: return "(\\" + t->var + ". " + show_seal_term(t->t1) + ")";
    case SealTermKind::App:
      return "(" + show_seal_term(t->t1) + " " + show_seal_term(t->t2) + ")";
    case SealTermKind::Pair:
      return "(" + show_seal_term(t->t1) + ", " + show_seal_term(t->t2) + ")";
    case SealTermKind::Proj:
      return (t->proj_index == 1 ? "(fst " : "(snd ") + show_seal_term(t->t1) + ")";
    case SealTermKind::Op:
      if (t->op == OpKind::Not) return "(not " + show_seal_term(t->args[0]) + ")";
      return "(" + show_seal_term(t->args[0]) + " " + op_token(t->op) + " " +
             show_seal_term(t->args[1]) + ")";
    case SealTermKind::If:
      return "(if " + show_seal_term(t->t1) + " then " + show_seal_term(t->t2) + " else " +
             show_seal_term(t->t3) + ")";
    case SealTermKind::NuSeal: return "(nu " + t->var + ". " + show_seal_term(t->t1) + ")";
    case SealTermKind::Sealed:
      return "seal(" + show_seal_term(t->t1) + ", " + show_seal_term(t->t2) + ")";
    case SealTermKind::Unseal:
      return "(unseal " + t->var + " = (" + show_seal_term(t->t1) + ", " +
             show_seal_term(t->t2) + ") in " + show_seal_term(t->t3) + ")";
    case SealTermKind::SealConst: return "<seal#" + std::to_string(t->seal) + ">";
  }
  return "?";
}

// --- interpreter ------------------------------------------------------------

namespace {

bool is_seal_value(const SealTermPtr& t) {
  switch (t->kind) {
    case SealTermKind::Const:
    case SealTermKind::Lam:
    case SealTermKind::SealConst:
      return true;
    case SealTermKind::Pair:
      return is_seal_value(t->t1) && is_seal_value(t->t2);
    case SealTermKind::Sealed:
      return is_seal_value(t->t1) && t->t2->kind == SealTermKind::SealConst;
    default:
      return false;
  }
}

SealTermPtr subst_seal(const SealTermPtr& t, const std::string& x, const SealTermPtr& v) {
  switch (t->kind) {
    case SealTermKind::Const:
    case SealTermKind::SealConst:
      return t;
    case SealTermKind::Var: return t->var == x ? v : t;
    case SealTermKind::Lam:
      if (t->var == x) return t;
      return s_lam(t->var, subst_seal(t->t1, x, v));
    case SealTermKind::App:
      return s_app(subst_seal(t->t1, x, v), subst_seal(t->t2, x, v));
    case SealTermKind::Pair:
      return s_pair(subst_seal(t->t1, x, v), subst_seal(t->t2, x, v));
    case SealTermKind::Proj:
      return s_proj(t->proj_index, subst_seal(t->t1, x, v));
    case SealTermKind::Op: {
      std::vector<SealTermPtr> args;
      for (const auto& a : t->args) args.push_back(subst_seal(a, x, v));
      return s_op(t->op, std::move(args));
    }
    case SealTermKind::If:
      return s_if(subst_seal(t->t1, x, v), subst_seal(t->t2, x, v), subst_seal(t->t3, x, v));
    case SealTermKind::NuSeal:
      if (t->var == x) return t;
      return s_nu(t->var, subst_seal(t->t1, x, v));
    case SealTermKind::Sealed:
      return s_sealed(subst_seal(t->t1, x, v), subst_seal(t->t2, x, v));
    case SealTermKind::Unseal: {
      auto key = subst_seal(t->t1, x, v);
      auto payload = subst_seal(t->t2, x, v);
      auto body = t->var == x ? t->t3 : subst_seal(t->t3, x, v);
      return s_unseal(t->var, key, payload, body);
    }
  }
  return t;
}

struct SealState {
  std::size_t seals = 0;
  SealOutcomeKind error = SealOutcomeKind::Value;  // Value means "no error"
  std::string detail;

  void type_error(std::string d) {
    error = SealOutcomeKind::TypeError;
    detail = std::move(d);
  }
  void seal_type_error(std::string d) {
    error = SealOutcomeKind::SealTypeError;
    detail = std::move(d);
  }
  void unseal_error(std::string d) {
    error = SealOutcomeKind::UnsealError;
    detail = std::move(d);
  }
};

// One step; null result means value reached or error recorded.
SealTermPtr seal_step(SealState& st, const SealTermPtr& t) {
  switch (t->kind) {
    case SealTermKind::Const:
    case SealTermKind::Lam:
    case SealTermKind::SealConst:
      return nullptr;
    case SealTermKind::Var:
      st.type_error("unbound variable " + t->var);
      return nullptr;
    case SealTermKind::App: {
      if (!is_seal_value(t->t1)) {
        auto f = seal_step(st, t->t1);
        return f ? s_app(f, t->t2) : nullptr;
      }
      if (!is_seal_value(t->t2)) {
        auto a = seal_step(st, t->t2);
        return a ? s_app(t->t1, a) : nullptr;
      }
      if (t->t1->kind != SealTermKind::Lam) {
        st.type_error("applying a non-function");
        return nullptr;
      }
      return subst_seal(t->t1->t1, t->t1->var, t->t2);
    }
    case SealTermKind::Pair: {
      if (!is_seal_value(t->t1)) {
        auto a = seal_step(st, t->t1);
        return a ? s_pair(a, t->t2) : nullptr;
      }
      if (!is_seal_value(t->t2)) {
        auto b = seal_step(st, t->t2);
        return b ? s_pair(t->t1, b) : nullptr;
      }
      return nullptr;  // pair of values
    }
    case SealTermKind::Proj: {
      if (!is_seal_value(t->t1)) {
        auto s = seal_step(st, t->t1);
        return s ? s_proj(t->proj_index, s) : nullptr;
      }
      if (t->t1->kind != SealTermKind::Pair) {
        st.type_error("projecting from a non-pair");
        return nullptr;
      }
      return t->proj_index == 1 ? t->t1->t1 : t->t1->t2;
    }
    case SealTermKind::Op: {
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (!is_seal_value(t->args[i])) {
          auto a = seal_step(st, t->args[i]);
          if (!a) return nullptr;
          std::vector<SealTermPtr> args = t->args;
          args[i] = a;
          return s_op(t->op, std::move(args));
        }
      }
      BaseKind need = op_arg_base(t->op);
      std::vector<Constant> consts;
      for (const auto& a : t->args) {
        if (a->kind != SealTermKind::Const || a->lit.type != need) {
          st.type_error("bad operand for " + std::string(op_token(t->op)));
          return nullptr;
        }
        consts.push_back(a->lit);
      }
      switch (t->op) {
        case OpKind::Add: return s_int(consts[0].int_val + consts[1].int_val);
        case OpKind::Sub: return s_int(consts[0].int_val - consts[1].int_val);
        case OpKind::Mul: return s_int(consts[0].int_val * consts[1].int_val);
        case OpKind::Lt: return s_bool(consts[0].int_val < consts[1].int_val);
        case OpKind::Eq: return s_bool(consts[0].int_val == consts[1].int_val);
        case OpKind::Not: return s_bool(!consts[0].bool_val);
        case OpKind::And: return s_bool(consts[0].bool_val && consts[1].bool_val);
        case OpKind::Or: return s_bool(consts[0].bool_val || consts[1].bool_val);
      }
      return nullptr;
    }
    case SealTermKind::If: {
      if (!is_seal_value(t->t1)) {
        auto c = seal_step(st, t->t1);
        return c ? s_if(c, t->t2, t->t3) : nullptr;
      }
      if (t->t1->kind != SealTermKind::Const || t->t1->lit.type != BaseKind::Bool) {
        st.type_error("if condition is not a boolean");
        return nullptr;
      }
      return t->t1->lit.bool_val ? t->t2 : t->t3;
    }
    case SealTermKind::NuSeal: {
      std::size_t s = st.seals++;
      return subst_seal(t->t1, t->var, s_sealconst(s));
    }
    case SealTermKind::Sealed: {
      if (!is_seal_value(t->t1)) {
        auto p = seal_step(st, t->t1);
        return p ? s_sealed(p, t->t2) : nullptr;
      }
      if (!is_seal_value(t->t2)) {
        auto k = seal_step(st, t->t2);
        return k ? s_sealed(t->t1, k) : nullptr;
      }
      if (t->t2->kind != SealTermKind::SealConst)
        st.seal_type_error("sealing key is not a seal");
      return nullptr;  // a sealed value (or the error above)
    }
    case SealTermKind::Unseal: {
      if (!is_seal_value(t->t1)) {
        auto k = seal_step(st, t->t1);
        return k ? s_unseal(t->var, k, t->t2, t->t3) : nullptr;
      }
      if (!is_seal_value(t->t2)) {
        auto p = seal_step(st, t->t2);
        return p ? s_unseal(t->var, t->t1, p, t->t3) : nullptr;
      }
      if (t->t1->kind != SealTermKind::SealConst) {
        st.seal_type_error("unsealing key is not a seal");
        return nullptr;
      }
      if (t->t2->kind != SealTermKind::Sealed) {
        st.type_error("unsealing a non-sealed value");
        return nullptr;
      }
      if (t->t2->t2->seal != t->t1->seal) {
        st.unseal_error("seal mismatch");
        return nullptr;
      }
      return subst_seal(t->t3, t->var, t->t2->t1);
    }
  }
  return nullptr;
}

}  // namespace

SealOutcome eval_seal(const SealTermPtr& t, std::size_t max_steps) {
  SealState st;
  SealTermPtr cur = t;
  for (std::size_t i = 0; i < max_steps; ++i) {
    if (is_seal_value(cur)) return {SealOutcomeKind::Value, cur, st.seals, ""};
    SealTermPtr next = seal_step(st, cur);
    if (!next) {
      if (st.error == SealOutcomeKind::Value && is_seal_value(cur))
        return {SealOutcomeKind::Value, cur, st.seals, ""};
      if (st.error == SealOutcomeKind::Value)
        return {SealOutcomeKind::TypeError, nullptr, st.seals, "stuck"};
      return {st.error, nullptr, st.seals, st.detail};
    }
    cur = next;
  }
  return {SealOutcomeKind::Timeout, nullptr, st.seals, ""};
}

// --- embeddings -------------------------------------------------------------

namespace {

// su = (/\X. (\x:X. x :: ?, \x:?. x :: X)) [?] :: ?
TermPtr su_term() {
  TypeVar X{"X", 0};
  TermPtr seal_fn = m_lam("x", t_var(X), m_asc(m_var("x"), t_unknown()));
  TermPtr unseal_fn = m_lam("x", t_unknown(), m_asc(m_var("x"), t_var(X)));
  TermPtr p = m_tylam(X, m_pair(seal_fn, unseal_fn));
  return m_asc(m_tyapp(p, t_unknown()), t_unknown());
}

TermPtr embed(const SealTermPtr& t, bool allow_sealing, int& fresh) {
  auto let_unknown = [](std::string x, TermPtr bound, TermPtr body) {
    return m_let(std::move(x), t_unknown(), std::move(bound), std::move(body));
  };
  switch (t->kind) {
    case SealTermKind::Const:
      return m_asc(m_const(t->lit), t_unknown());
    case SealTermKind::Var:
      return m_var(t->var);
    case SealTermKind::Lam:
      return m_asc(m_lam(t->var, t_unknown(), embed(t->t1, allow_sealing, fresh)),
                   t_unknown());
    case SealTermKind::App: {
      std::string x = "$f" + std::to_string(fresh++);
      std::string y = "$a" + std::to_string(fresh++);
      return let_unknown(x, embed(t->t1, allow_sealing, fresh),
                         let_unknown(y, embed(t->t2, allow_sealing, fresh),
                                     m_app(m_var(x), m_var(y))));
    }
    case SealTermKind::Pair:
      return m_asc(m_pair(embed(t->t1, allow_sealing, fresh),
                          embed(t->t2, allow_sealing, fresh)),
                   t_unknown());
    case SealTermKind::Proj:
      return m_proj(t->proj_index, embed(t->t1, allow_sealing, fresh));
    case SealTermKind::Op: {
      std::vector<std::string> names;
      std::vector<TermPtr> vars;
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        names.push_back("$o" + std::to_string(fresh++));
        vars.push_back(m_var(names.back()));
      }
      TermPtr body = m_asc(m_op(t->op, vars), t_unknown());
      for (std::size_t i = t->args.size(); i-- > 0;)
        body = let_unknown(names[i], embed(t->args[i], allow_sealing, fresh), body);
      return body;
    }
    case SealTermKind::If:
      return m_if(embed(t->t1, allow_sealing, fresh), embed(t->t2, allow_sealing, fresh),
                  embed(t->t3, allow_sealing, fresh));
    case SealTermKind::NuSeal:
      if (!allow_sealing) throw std::invalid_argument("sealing construct in a dyn term");
      return let_unknown(t->var, su_term(), embed(t->t1, allow_sealing, fresh));
    case SealTermKind::Sealed: {
      if (!allow_sealing) throw std::invalid_argument("sealing construct in a dyn term");
      std::string x = "$v" + std::to_string(fresh++);
      std::string y = "$s" + std::to_string(fresh++);
      return let_unknown(
          x, embed(t->t1, allow_sealing, fresh),
          let_unknown(y, embed(t->t2, allow_sealing, fresh),
                      m_app(m_proj(1, m_var(y)), m_var(x))));
    }
    case SealTermKind::Unseal: {
      if (!allow_sealing) throw std::invalid_argument("sealing construct in a dyn term");
      std::string x = "$k" + std::to_string(fresh++);
      std::string y = "$p" + std::to_string(fresh++);
      return let_unknown(
          x, embed(t->t1, allow_sealing, fresh),
          let_unknown(y, embed(t->t2, allow_sealing, fresh),
                      let_unknown(t->var, m_app(m_proj(2, m_var(x)), m_var(y)),
                                  embed(t->t3, allow_sealing, fresh))));
    }
    case SealTermKind::SealConst:
      throw std::invalid_argument("seal literal in source text");
  }
  throw std::invalid_argument("unhandled seal term");
}

}  // namespace

TermPtr embed_dyn(const SealTermPtr& t) {
  int fresh = 0;
  return embed(t, false, fresh);
}

TermPtr embed_seal(const SealTermPtr& t) {
  int fresh = 0;
  return embed(t, true, fresh);
}

DiffVerdict differential_check(const SealTermPtr& t, std::size_t max_steps) {
  SealOutcome direct = eval_seal(t, max_steps);
  if (direct.kind == SealOutcomeKind::SealTypeError)
    return {DiffVerdictKind::SkippedSealTypeError, direct.detail};

  EvalOptions opts;
  opts.max_steps = max_steps;
  Outcome emb = eval(embed_seal(t), opts);

  auto agree = [&](const char* what) { return DiffVerdict{DiffVerdictKind::Agree, what}; };
  switch (direct.kind) {
    case SealOutcomeKind::Value:
      if (is_value_outcome(emb)) return agree("value/value");
      return {DiffVerdictKind::Disagree,
              "direct interpreter produced a value, embedding: " + show_outcome(emb)};
    case SealOutcomeKind::Timeout:
      if (is_timeout_outcome(emb)) return agree("timeout/timeout");
      return {DiffVerdictKind::Disagree,
              "direct interpreter timed out, embedding: " + show_outcome(emb)};
    case SealOutcomeKind::UnsealError:
    case SealOutcomeKind::TypeError:
      if (is_error_outcome(emb)) return agree("error/error");
      return {DiffVerdictKind::Disagree,
              "direct interpreter errored (" + direct.detail + "), embedding: " +
                  show_outcome(emb)};
    case SealOutcomeKind::SealTypeError:
      break;
  }
  return {DiffVerdictKind::SkippedSealTypeError, direct.detail};
}

}  // namespace gsf
