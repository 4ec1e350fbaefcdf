#include "gsf/terms.hpp"

#include <utility>

namespace gsf {

const char* op_token(OpKind op) {
  switch (op) {
    case OpKind::Add: return "+";
    case OpKind::Sub: return "-";
    case OpKind::Mul: return "*";
    case OpKind::Lt: return "<";
    case OpKind::Eq: return "==";
    case OpKind::Not: return "not";
    case OpKind::And: return "&&";
    case OpKind::Or: return "||";
  }
  return "?";
}

int op_arity(OpKind op) { return op == OpKind::Not ? 1 : 2; }

BaseKind op_arg_base(OpKind op) {
  switch (op) {
    case OpKind::Add:
    case OpKind::Sub:
    case OpKind::Mul:
    case OpKind::Lt:
    case OpKind::Eq:
      return BaseKind::Int;
    default:
      return BaseKind::Bool;
  }
}

BaseKind op_result_base(OpKind op) {
  switch (op) {
    case OpKind::Add:
    case OpKind::Sub:
    case OpKind::Mul:
      return BaseKind::Int;
    default:
      return BaseKind::Bool;
  }
}

namespace {
TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
ETermPtr emk(ETerm t) { return std::make_shared<const ETerm>(std::move(t)); }
}  // namespace

TermPtr m_const(Constant c, Span s) {
  Term t{TermKind::Const, s};
  t.lit = c;
  return mk(std::move(t));
}
TermPtr m_int(long long v) { return m_const(Constant::of_int(v)); }
TermPtr m_bool(bool v) { return m_const(Constant::of_bool(v)); }
TermPtr m_unit() { return m_const(Constant::unit()); }

TermPtr m_var(std::string x, Span s) {
  Term t{TermKind::Var, s};
  t.var = std::move(x);
  return mk(std::move(t));
}

TermPtr m_lam(std::string x, TypePtr ann, TermPtr body, Span s) {
  Term t{TermKind::Lam, s};
  t.var = std::move(x);
  t.type_a = std::move(ann);
  t.t1 = std::move(body);
  return mk(std::move(t));
}

TermPtr m_tylam(TypeVar x, TermPtr body, Span s) {
  Term t{TermKind::TyLam, s};
  t.tyvar = std::move(x);
  t.t1 = std::move(body);
  return mk(std::move(t));
}

TermPtr m_app(TermPtr f, TermPtr a, Span s) {
  Term t{TermKind::App, s};
  t.t1 = std::move(f);
  t.t2 = std::move(a);
  return mk(std::move(t));
}

TermPtr m_tyapp(TermPtr f, TypePtr ty, Span s) {
  Term t{TermKind::TyApp, s};
  t.t1 = std::move(f);
  t.type_a = std::move(ty);
  return mk(std::move(t));
}

TermPtr m_asc(TermPtr sub, TypePtr ty, Span s) {
  Term t{TermKind::Asc, s};
  t.t1 = std::move(sub);
  t.type_a = std::move(ty);
  return mk(std::move(t));
}

TermPtr m_pair(TermPtr a, TermPtr b, Span s) {
  Term t{TermKind::Pair, s};
  t.t1 = std::move(a);
  t.t2 = std::move(b);
  return mk(std::move(t));
}

TermPtr m_proj(int i, TermPtr sub, Span s) {
  Term t{TermKind::Proj, s};
  t.proj_index = i;
  t.t1 = std::move(sub);
  return mk(std::move(t));
}

TermPtr m_op(OpKind op, std::vector<TermPtr> args, Span s) {
  Term t{TermKind::Op, s};
  t.op = op;
  t.args = std::move(args);
  return mk(std::move(t));
}

TermPtr m_if(TermPtr c, TermPtr th, TermPtr el, Span s) {
  Term t{TermKind::If, s};
  t.t1 = std::move(c);
  t.t2 = std::move(th);
  t.t3 = std::move(el);
  return mk(std::move(t));
}

TermPtr m_let(std::string x, TypePtr ann, TermPtr bound, TermPtr body, Span s) {
  Term t{TermKind::Let, s};
  t.var = std::move(x);
  t.type_a = std::move(ann);
  t.t1 = std::move(bound);
  t.t2 = std::move(body);
  return mk(std::move(t));
}

TermPtr m_pack(TypePtr witness, TermPtr sub, TypePtr as, Span s) {
  Term t{TermKind::Pack, s};
  t.type_a = std::move(witness);
  t.type_b = std::move(as);
  t.t1 = std::move(sub);
  return mk(std::move(t));
}

TermPtr m_unpack(TypeVar tx, std::string x, TermPtr pkg, TermPtr body, Span s) {
  Term t{TermKind::Unpack, s};
  t.tyvar = std::move(tx);
  t.var = std::move(x);
  t.t1 = std::move(pkg);
  t.t2 = std::move(body);
  return mk(std::move(t));
}

bool is_source_value(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Lam:
    case TermKind::TyLam:
      return true;
    case TermKind::Pair:
      return is_source_value(t->t1) && is_source_value(t->t2);
    case TermKind::Pack:
      return is_source_value(t->t1);
    default:
      return false;
  }
}

TermPtr desugar_lets(const TermPtr& t) {
  if (!t) return t;
  auto d = desugar_lets;
  switch (t->kind) {
    case TermKind::Let:
      return m_app(m_lam(t->var, t->type_a, d(t->t2), t->span), d(t->t1), t->span);
    case TermKind::Const:
    case TermKind::Var:
      return t;
    case TermKind::Lam: return m_lam(t->var, t->type_a, d(t->t1), t->span);
    case TermKind::TyLam: return m_tylam(t->tyvar, d(t->t1), t->span);
    case TermKind::App: return m_app(d(t->t1), d(t->t2), t->span);
    case TermKind::TyApp: return m_tyapp(d(t->t1), t->type_a, t->span);
    case TermKind::Asc: return m_asc(d(t->t1), t->type_a, t->span);
    case TermKind::Pair: return m_pair(d(t->t1), d(t->t2), t->span);
    case TermKind::Proj: return m_proj(t->proj_index, d(t->t1), t->span);
    case TermKind::Op: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(d(a));
      return m_op(t->op, std::move(args), t->span);
    }
    case TermKind::If: return m_if(d(t->t1), d(t->t2), d(t->t3), t->span);
    case TermKind::Pack: return m_pack(t->type_a, d(t->t1), t->type_b, t->span);
    case TermKind::Unpack: return m_unpack(t->tyvar, t->var, d(t->t1), d(t->t2), t->span);
  }
  return t;
}

// --- printing ---------------------------------------------------------------

namespace {

std::string show_tyvar(const TypeVar& v) {
  if (v.index == 0) return v.name;
  return v.name + "_" + std::to_string(v.index);
}

std::string show_const(const Constant& c) {
  switch (c.type) {
    case BaseKind::Int: return std::to_string(c.int_val);
    case BaseKind::Bool: return c.bool_val ? "true" : "false";
    case BaseKind::Unit: return "unit";
  }
  return "unit";
}

// precedence: 0 full term, 1 ascription operand, 2 binary ops, 3 application, 4 atom
void show_term_rec(const TermPtr& t, int prec, std::string& out);

void show_paren(const TermPtr& t, int sub, int prec, int mine, std::string& out) {
  if (prec > mine) out += '(';
  show_term_rec(t, sub, out);
  if (prec > mine) out += ')';
}

void show_term_rec(const TermPtr& t, int prec, std::string& out) {
  switch (t->kind) {
    case TermKind::Const: out += show_const(t->lit); return;
    case TermKind::Var: out += t->var; return;
    case TermKind::Lam:
      if (prec > 0) out += '(';
      out += "\\" + t->var + ":" + show_type(t->type_a) + ". ";
      show_term_rec(t->t1, 0, out);
      if (prec > 0) out += ')';
      return;
    case TermKind::TyLam:
      if (prec > 0) out += '(';
      out += "/\\" + show_tyvar(t->tyvar) + ". ";
      show_term_rec(t->t1, 0, out);
      if (prec > 0) out += ')';
      return;
    case TermKind::App:
      if (prec > 3) out += '(';
      show_term_rec(t->t1, 3, out);
      out += ' ';
      show_term_rec(t->t2, 4, out);
      if (prec > 3) out += ')';
      return;
    case TermKind::TyApp:
      if (prec > 3) out += '(';
      show_term_rec(t->t1, 3, out);
      out += " [" + show_type(t->type_a) + "]";
      if (prec > 3) out += ')';
      return;
    case TermKind::Asc:
      if (prec > 1) out += '(';
      show_term_rec(t->t1, 2, out);
      out += " :: " + show_type(t->type_a);
      if (prec > 1) out += ')';
      return;
    case TermKind::Pair:
      out += '(';
      show_term_rec(t->t1, 0, out);
      out += ", ";
      show_term_rec(t->t2, 0, out);
      out += ')';
      return;
    case TermKind::Proj:
      if (prec > 3) out += '(';
      out += t->proj_index == 1 ? "fst " : "snd ";
      show_term_rec(t->t1, 4, out);
      if (prec > 3) out += ')';
      return;
    case TermKind::Op:
      if (t->op == OpKind::Not) {
        if (prec > 3) out += '(';
        out += "not ";
        show_term_rec(t->args[0], 4, out);
        if (prec > 3) out += ')';
      } else {
        if (prec > 2) out += '(';
        show_term_rec(t->args[0], 3, out);
        out += ' ';
        out += op_token(t->op);
        out += ' ';
        show_term_rec(t->args[1], 3, out);
        if (prec > 2) out += ')';
      }
      return;
    case TermKind::If:
      if (prec > 0) out += '(';
      out += "if ";
      show_term_rec(t->t1, 0, out);
      out += " then ";
      show_term_rec(t->t2, 0, out);
      out += " else ";
      show_term_rec(t->t3, 0, out);
      if (prec > 0) out += ')';
      return;
    case TermKind::Let:
      if (prec > 0) out += '(';
      out += "let " + t->var + ":" + show_type(t->type_a) + " = ";
      show_term_rec(t->t1, 0, out);
      out += " in ";
      show_term_rec(t->t2, 0, out);
      if (prec > 0) out += ')';
      return;
    case TermKind::Pack:
      if (prec > 3) out += '(';
      out += "pack <" + show_type(t->type_a) + ", ";
      show_term_rec(t->t1, 0, out);
      out += "> as " + show_type(t->type_b);
      if (prec > 3) out += ')';
      return;
    case TermKind::Unpack:
      if (prec > 0) out += '(';
      out += "unpack <" + show_tyvar(t->tyvar) + ", " + t->var + "> = ";
      show_term_rec(t->t1, 1, out);
      out += " in ";
      show_term_rec(t->t2, 0, out);
      if (prec > 0) out += ')';
      return;
  }
}

}  // namespace

std::string show_term(const TermPtr& t) {
  std::string out;
  show_term_rec(t, 0, out);
  return out;
}

// --- evidence ---------------------------------------------------------------

bool evidence_equal(const Evidence& a, const Evidence& b) {
  return type_equal(a.left, b.left) && type_equal(a.right, b.right);
}

bool evidence_precision(const Evidence& a, const Evidence& b) {
  return precision(a.left, b.left) && precision(a.right, b.right);
}

bool evidence_strict_precision(const Evidence& a, const Evidence& b) {
  return strict_type_precision(a.left, b.left) && strict_type_precision(a.right, b.right);
}

std::string show_evidence(const Evidence& e) {
  return "<" + show_type(e.left) + ", " + show_type(e.right) + ">";
}

// --- GSFe terms -------------------------------------------------------------

ETermPtr e_const(Constant c) {
  ETerm t{EKind::Const};
  t.lit = c;
  return emk(std::move(t));
}

ETermPtr e_var(std::string x) {
  ETerm t{EKind::Var};
  t.var = std::move(x);
  return emk(std::move(t));
}

ETermPtr e_lam(std::string x, TypePtr ann, ETermPtr body) {
  ETerm t{EKind::Lam};
  t.var = std::move(x);
  t.type_a = std::move(ann);
  t.t1 = std::move(body);
  return emk(std::move(t));
}

ETermPtr e_tylam(TypeVar x, ETermPtr body) {
  ETerm t{EKind::TyLam};
  t.tyvar = std::move(x);
  t.t1 = std::move(body);
  return emk(std::move(t));
}

ETermPtr e_app(ETermPtr f, ETermPtr a) {
  ETerm t{EKind::App};
  t.t1 = std::move(f);
  t.t2 = std::move(a);
  return emk(std::move(t));
}

ETermPtr e_tyapp(ETermPtr f, TypePtr ty) {
  ETerm t{EKind::TyApp};
  t.t1 = std::move(f);
  t.type_a = std::move(ty);
  return emk(std::move(t));
}

ETermPtr e_asc(Evidence ev, ETermPtr sub, TypePtr ty, bool out_provenance) {
  ETerm t{EKind::Asc};
  t.ev = std::move(ev);
  t.t1 = std::move(sub);
  t.type_a = std::move(ty);
  t.out_provenance = out_provenance;
  return emk(std::move(t));
}

ETermPtr e_pair(ETermPtr a, ETermPtr b) {
  ETerm t{EKind::Pair};
  t.t1 = std::move(a);
  t.t2 = std::move(b);
  return emk(std::move(t));
}

ETermPtr e_proj(int i, ETermPtr sub) {
  ETerm t{EKind::Proj};
  t.proj_index = i;
  t.t1 = std::move(sub);
  return emk(std::move(t));
}

ETermPtr e_op(OpKind op, std::vector<ETermPtr> args) {
  ETerm t{EKind::Op};
  t.op = op;
  t.args = std::move(args);
  return emk(std::move(t));
}

ETermPtr e_if(ETermPtr c, ETermPtr th, ETermPtr el) {
  ETerm t{EKind::If};
  t.t1 = std::move(c);
  t.t2 = std::move(th);
  t.t3 = std::move(el);
  return emk(std::move(t));
}

ETermPtr e_pack(TypePtr witness, ETermPtr sub, TypePtr as) {
  ETerm t{EKind::Pack};
  t.type_a = std::move(witness);
  t.type_b = std::move(as);
  t.t1 = std::move(sub);
  return emk(std::move(t));
}

ETermPtr e_unpack(TypeVar tx, std::string x, ETermPtr pkg, ETermPtr body) {
  ETerm t{EKind::Unpack};
  t.tyvar = std::move(tx);
  t.var = std::move(x);
  t.t1 = std::move(pkg);
  t.t2 = std::move(body);
  return emk(std::move(t));
}

bool is_raw_value(const ETermPtr& t) {
  switch (t->kind) {
    case EKind::Const:
    case EKind::Lam:
    case EKind::TyLam:
      return true;
    case EKind::Pair:
      return is_raw_value(t->t1) && is_raw_value(t->t2);
    case EKind::Pack:
      return is_value(t->t1);
    default:
      return false;
  }
}

bool is_value(const ETermPtr& t) {
  return t->kind == EKind::Asc && is_raw_value(t->t1);
}

ETermPtr esubst_term(const ETermPtr& t, const std::string& x, const ETermPtr& v) {
  switch (t->kind) {
    case EKind::Const: return t;
    case EKind::Var: return t->var == x ? v : t;
    case EKind::Lam:
      if (t->var == x) return t;
      return e_lam(t->var, t->type_a, esubst_term(t->t1, x, v));
    case EKind::TyLam:
      return e_tylam(t->tyvar, esubst_term(t->t1, x, v));
    case EKind::App: return e_app(esubst_term(t->t1, x, v), esubst_term(t->t2, x, v));
    case EKind::TyApp: return e_tyapp(esubst_term(t->t1, x, v), t->type_a);
    case EKind::Asc:
      return e_asc(t->ev, esubst_term(t->t1, x, v), t->type_a, t->out_provenance);
    case EKind::Pair: return e_pair(esubst_term(t->t1, x, v), esubst_term(t->t2, x, v));
    case EKind::Proj: return e_proj(t->proj_index, esubst_term(t->t1, x, v));
    case EKind::Op: {
      std::vector<ETermPtr> args;
      for (const auto& a : t->args) args.push_back(esubst_term(a, x, v));
      return e_op(t->op, std::move(args));
    }
    case EKind::If:
      return e_if(esubst_term(t->t1, x, v), esubst_term(t->t2, x, v), esubst_term(t->t3, x, v));
    case EKind::Pack: return e_pack(t->type_a, esubst_term(t->t1, x, v), t->type_b);
    case EKind::Unpack: {
      auto pkg = esubst_term(t->t1, x, v);
      auto body = t->var == x ? t->t2 : esubst_term(t->t2, x, v);
      return e_unpack(t->tyvar, t->var, pkg, body);
    }
  }
  return t;
}

ETermPtr esubst_tyvar(const ETermPtr& t, const TypeVar& v, const TypePtr& bare,
                      const TypePtr& lifted) {
  auto sub_g = [&](const TypePtr& g) { return g ? subst_type(g, v, bare) : g; };
  auto sub_e = [&](const TypePtr& e) { return e ? subst_type(e, v, lifted) : e; };
  switch (t->kind) {
    case EKind::Const:
    case EKind::Var:
      return t;
    case EKind::Lam:
      return e_lam(t->var, sub_g(t->type_a), esubst_tyvar(t->t1, v, bare, lifted));
    case EKind::TyLam:
      if (t->tyvar == v) return t;
      return e_tylam(t->tyvar, esubst_tyvar(t->t1, v, bare, lifted));
    case EKind::App:
      return e_app(esubst_tyvar(t->t1, v, bare, lifted), esubst_tyvar(t->t2, v, bare, lifted));
    case EKind::TyApp:
      return e_tyapp(esubst_tyvar(t->t1, v, bare, lifted), sub_g(t->type_a));
    case EKind::Asc:
      return e_asc({sub_e(t->ev.left), sub_e(t->ev.right)},
                   esubst_tyvar(t->t1, v, bare, lifted), sub_g(t->type_a), t->out_provenance);
    case EKind::Pair:
      return e_pair(esubst_tyvar(t->t1, v, bare, lifted), esubst_tyvar(t->t2, v, bare, lifted));
    case EKind::Proj:
      return e_proj(t->proj_index, esubst_tyvar(t->t1, v, bare, lifted));
    case EKind::Op: {
      std::vector<ETermPtr> args;
      for (const auto& a : t->args) args.push_back(esubst_tyvar(a, v, bare, lifted));
      return e_op(t->op, std::move(args));
    }
    case EKind::If:
      return e_if(esubst_tyvar(t->t1, v, bare, lifted), esubst_tyvar(t->t2, v, bare, lifted),
                  esubst_tyvar(t->t3, v, bare, lifted));
    case EKind::Pack:
      return e_pack(sub_g(t->type_a), esubst_tyvar(t->t1, v, bare, lifted), sub_g(t->type_b));
    case EKind::Unpack: {
      auto pkg = esubst_tyvar(t->t1, v, bare, lifted);
      auto body = t->tyvar == v ? t->t2 : esubst_tyvar(t->t2, v, bare, lifted);
      return e_unpack(t->tyvar, t->var, pkg, body);
    }
  }
  return t;
}

namespace {

void show_eterm_rec(const ETermPtr& t, int prec, std::string& out);

void show_eterm_rec(const ETermPtr& t, int prec, std::string& out) {
  switch (t->kind) {
    case EKind::Const: out += show_const(t->lit); return;
    case EKind::Var: out += t->var; return;
    case EKind::Lam:
      if (prec > 0) out += '(';
      out += "\\" + t->var + ":" + show_type(t->type_a) + ". ";
      show_eterm_rec(t->t1, 0, out);
      if (prec > 0) out += ')';
      return;
    case EKind::TyLam:
      if (prec > 0) out += '(';
      out += "/\\" + show_tyvar(t->tyvar) + ". ";
      show_eterm_rec(t->t1, 0, out);
      if (prec > 0) out += ')';
      return;
    case EKind::App:
      if (prec > 3) out += '(';
      show_eterm_rec(t->t1, 3, out);
      out += ' ';
      show_eterm_rec(t->t2, 4, out);
      if (prec > 3) out += ')';
      return;
    case EKind::TyApp:
      if (prec > 3) out += '(';
      show_eterm_rec(t->t1, 3, out);
      out += " [" + show_type(t->type_a) + "]";
      if (prec > 3) out += ')';
      return;
    case EKind::Asc: {
      if (prec > 1) out += '(';
      out += show_evidence(t->ev);
      bool atom = t->t1->kind == EKind::Const || t->t1->kind == EKind::Var;
      if (atom) {
        show_eterm_rec(t->t1, 4, out);
      } else {
        out += '(';
        show_eterm_rec(t->t1, 0, out);
        out += ')';
      }
      out += " :: " + show_type(t->type_a);
      if (prec > 1) out += ')';
      return;
    }
    case EKind::Pair:
      out += '(';
      show_eterm_rec(t->t1, 0, out);
      out += ", ";
      show_eterm_rec(t->t2, 0, out);
      out += ')';
      return;
    case EKind::Proj:
      if (prec > 3) out += '(';
      out += t->proj_index == 1 ? "fst " : "snd ";
      show_eterm_rec(t->t1, 4, out);
      if (prec > 3) out += ')';
      return;
    case EKind::Op:
      if (t->op == OpKind::Not) {
        if (prec > 3) out += '(';
        out += "not ";
        show_eterm_rec(t->args[0], 4, out);
        if (prec > 3) out += ')';
      } else {
        if (prec > 2) out += '(';
        show_eterm_rec(t->args[0], 3, out);
        out += ' ';
        out += op_token(t->op);
        out += ' ';
        show_eterm_rec(t->args[1], 3, out);
        if (prec > 2) out += ')';
      }
      return;
    case EKind::If:
      if (prec > 0) out += '(';
      out += "if ";
      show_eterm_rec(t->t1, 0, out);
      out += " then ";
      show_eterm_rec(t->t2, 0, out);
      out += " else ";
      show_eterm_rec(t->t3, 0, out);
      if (prec > 0) out += ')';
      return;
    case EKind::Pack:
      if (prec > 3) out += '(';
      out += "pack <" + show_type(t->type_a) + ", ";
      show_eterm_rec(t->t1, 0, out);
      out += "> as " + show_type(t->type_b);
      if (prec > 3) out += ')';
      return;
    case EKind::Unpack:
      if (prec > 0) out += '(';
      out += "unpack <" + show_tyvar(t->tyvar) + ", " + t->var + "> = ";
      show_eterm_rec(t->t1, 1, out);
      out += " in ";
      show_eterm_rec(t->t2, 0, out);
      if (prec > 0) out += ')';
      return;
  }
}

}  // namespace

std::string show_eterm(const ETermPtr& t) {
  std::string out;
  show_eterm_rec(t, 0, out);
  return out;
}

}  // namespace gsf
