#include "gsf/types.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace gsf {

namespace {

TypePtr make(Type t) { return std::make_shared<const Type>(std::move(t)); }

const TypePtr kInt = make({TypeKind::Base, BaseKind::Int});
const TypePtr kBool = make({TypeKind::Base, BaseKind::Bool});
const TypePtr kUnit = make({TypeKind::Base, BaseKind::Unit});
const TypePtr kUnknown = make({TypeKind::Unknown});

}  // namespace

TypePtr t_int() { return kInt; }
TypePtr t_bool() { return kBool; }
TypePtr t_unit() { return kUnit; }
TypePtr t_base(BaseKind b) {
  switch (b) {
    case BaseKind::Int: return kInt;
    case BaseKind::Bool: return kBool;
    case BaseKind::Unit: return kUnit;
  }
  return kInt;
}
TypePtr t_unknown() { return kUnknown; }

TypePtr t_arrow(TypePtr dom, TypePtr cod) {
  Type t{TypeKind::Arrow};
  t.a = std::move(dom);
  t.b = std::move(cod);
  return make(std::move(t));
}

TypePtr t_pair(TypePtr left, TypePtr right) {
  Type t{TypeKind::Pair};
  t.a = std::move(left);
  t.b = std::move(right);
  return make(std::move(t));
}

TypePtr t_forall(TypeVar v, TypePtr body) {
  Type t{TypeKind::Forall};
  t.var = std::move(v);
  t.a = std::move(body);
  return make(std::move(t));
}

TypePtr t_exists(TypeVar v, TypePtr body) {
  Type t{TypeKind::Exists};
  t.var = std::move(v);
  t.a = std::move(body);
  return make(std::move(t));
}

TypePtr t_var(TypeVar v) {
  Type t{TypeKind::Var};
  t.var = std::move(v);
  return make(std::move(t));
}

TypePtr t_name(TypeNameId a) {
  Type t{TypeKind::Name};
  t.name = a;
  return make(std::move(t));
}

TypePtr t_sealed(TypeNameId a, TypePtr under) {
  Type t{TypeKind::Sealed};
  t.name = a;
  t.a = std::move(under);
  return make(std::move(t));
}

namespace {

bool scan(const TypePtr& t, const std::function<bool(const Type&)>& bad) {
  if (!t) return false;
  if (bad(*t)) return true;
  return scan(t->a, bad) || scan(t->b, bad);
}

}  // namespace

bool is_gradual_type(const TypePtr& t) {
  return !scan(t, [](const Type& n) { return n.kind == TypeKind::Sealed; });
}

bool is_evidence_type(const TypePtr& t) {
  return !scan(t, [](const Type& n) { return n.kind == TypeKind::Name; });
}

bool is_static_type(const TypePtr& t) {
  return !scan(t, [](const Type& n) { return n.kind == TypeKind::Unknown; });
}

int type_depth(const TypePtr& t) {
  if (!t) return 0;
  switch (t->kind) {
    case TypeKind::Base:
    case TypeKind::Var:
    case TypeKind::Name:
    case TypeKind::Unknown:
      return 1;
    case TypeKind::Sealed:
      return 1 + type_depth(t->a);
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return 1 + std::max(type_depth(t->a), type_depth(t->b));
    case TypeKind::Forall:
    case TypeKind::Exists:
      return 1 + type_depth(t->a);
  }
  return 1;
}

bool tyvar_free_in(const TypeVar& v, const TypePtr& t) {
  if (!t) return false;
  switch (t->kind) {
    case TypeKind::Var:
      return t->var == v;
    case TypeKind::Forall:
    case TypeKind::Exists:
      if (t->var == v) return false;
      return tyvar_free_in(v, t->a);
    default:
      return tyvar_free_in(v, t->a) || tyvar_free_in(v, t->b);
  }
}

namespace {

// Binder association list for alpha-aware comparisons.
struct VarLink {
  const TypeVar* left;
  const TypeVar* right;
  const VarLink* next;
};

// -1: bound on one side only / mismatch, 0: both free, 1: bound pair matches.
int lookup_link(const VarLink* env, const TypeVar& l, const TypeVar& r) {
  for (const VarLink* p = env; p; p = p->next) {
    bool ml = *p->left == l;
    bool mr = *p->right == r;
    if (ml || mr) return (ml && mr) ? 1 : -1;
  }
  return 0;
}

bool equal_rec(const TypePtr& a, const TypePtr& b, const VarLink* env) {
  if (a.get() == b.get() && !env) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Base: return a->base == b->base;
    case TypeKind::Unknown: return true;
    case TypeKind::Name: return a->name == b->name;
    case TypeKind::Sealed: return a->name == b->name && equal_rec(a->a, b->a, env);
    case TypeKind::Var: {
      int m = lookup_link(env, a->var, b->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return a->var == b->var;
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return equal_rec(a->a, b->a, env) && equal_rec(a->b, b->b, env);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarLink link{&a->var, &b->var, env};
      return equal_rec(a->a, b->a, &link);
    }
  }
  return false;
}

bool prec_rec(const TypePtr& a, const TypePtr& b, const VarLink* env) {
  if (b->kind == TypeKind::Unknown) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Base: return a->base == b->base;
    case TypeKind::Name: return a->name == b->name;
    case TypeKind::Sealed: return a->name == b->name && prec_rec(a->a, b->a, env);
    case TypeKind::Var: {
      int m = lookup_link(env, a->var, b->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return a->var == b->var;
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return prec_rec(a->a, b->a, env) && prec_rec(a->b, b->b, env);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarLink link{&a->var, &b->var, env};
      return prec_rec(a->a, b->a, &link);
    }
    case TypeKind::Unknown:
      return false;  // b is not Unknown here
  }
  return false;
}

bool sprec_rec(const TypePtr& a, const TypePtr& b, const VarLink* env) {
  if (b->kind == TypeKind::Unknown) {
    switch (a->kind) {
      case TypeKind::Unknown:
      case TypeKind::Base:
        return true;
      case TypeKind::Arrow:
        return sprec_rec(a->a, t_unknown(), env) && sprec_rec(a->b, t_unknown(), env);
      case TypeKind::Pair:
        return sprec_rec(a->a, t_unknown(), env) && sprec_rec(a->b, t_unknown(), env);
      default:
        return false;  // Forall, Exists, Var, Name, Sealed
    }
  }
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Base: return a->base == b->base;
    case TypeKind::Name: return a->name == b->name;
    case TypeKind::Sealed: return a->name == b->name && sprec_rec(a->a, b->a, env);
    case TypeKind::Var: {
      int m = lookup_link(env, a->var, b->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return a->var == b->var;
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return sprec_rec(a->a, b->a, env) && sprec_rec(a->b, b->b, env);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarLink link{&a->var, &b->var, env};
      return sprec_rec(a->a, b->a, &link);
    }
    case TypeKind::Unknown:
      return false;
  }
  return false;
}

std::optional<TypePtr> meet_rec(const TypePtr& a, const TypePtr& b, const VarLink* env) {
  if (a->kind == TypeKind::Unknown) return b;
  if (b->kind == TypeKind::Unknown) return a;
  if (a->kind != b->kind) return std::nullopt;
  switch (a->kind) {
    case TypeKind::Base:
      if (a->base == b->base) return a;
      return std::nullopt;
    case TypeKind::Name:
      if (a->name == b->name) return a;
      return std::nullopt;
    case TypeKind::Var: {
      int m = lookup_link(env, a->var, b->var);
      if (m == 1 || (m == 0 && a->var == b->var)) return a;
      return std::nullopt;
    }
    case TypeKind::Arrow:
    case TypeKind::Pair: {
      auto l = meet_rec(a->a, b->a, env);
      auto r = meet_rec(a->b, b->b, env);
      if (!l || !r) return std::nullopt;
      return a->kind == TypeKind::Arrow ? t_arrow(*l, *r) : t_pair(*l, *r);
    }
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarLink link{&a->var, &b->var, env};
      auto body = meet_rec(a->a, b->a, &link);
      if (!body) return std::nullopt;
      // Keep a's binder; rename b-side variables already handled via env.
      return a->kind == TypeKind::Forall ? t_forall(a->var, *body) : t_exists(a->var, *body);
    }
    default:
      return std::nullopt;  // Sealed has no meet (gradual types only)
  }
}

}  // namespace

bool type_equal(const TypePtr& a, const TypePtr& b) { return equal_rec(a, b, nullptr); }
bool precision(const TypePtr& g1, const TypePtr& g2) { return prec_rec(g1, g2, nullptr); }
bool strict_type_precision(const TypePtr& g1, const TypePtr& g2) {
  return sprec_rec(g1, g2, nullptr);
}
std::optional<TypePtr> meet(const TypePtr& g1, const TypePtr& g2) {
  return meet_rec(g1, g2, nullptr);
}

TypePtr lift(const Store& store, const TypePtr& g) {
  switch (g->kind) {
    case TypeKind::Name: {
      if (!store.bound(g->name)) throw std::logic_error("lift: unbound type name");
      return t_sealed(g->name, lift(store, store.lookup(g->name)));
    }
    case TypeKind::Arrow: return t_arrow(lift(store, g->a), lift(store, g->b));
    case TypeKind::Pair: return t_pair(lift(store, g->a), lift(store, g->b));
    case TypeKind::Forall: return t_forall(g->var, lift(store, g->a));
    case TypeKind::Exists: return t_exists(g->var, lift(store, g->a));
    default: return g;
  }
}

TypePtr unlift(const TypePtr& e) {
  switch (e->kind) {
    case TypeKind::Sealed: return t_name(e->name);
    case TypeKind::Arrow: return t_arrow(unlift(e->a), unlift(e->b));
    case TypeKind::Pair: return t_pair(unlift(e->a), unlift(e->b));
    case TypeKind::Forall: return t_forall(e->var, unlift(e->a));
    case TypeKind::Exists: return t_exists(e->var, unlift(e->a));
    default: return e;
  }
}

namespace {

int max_var_index(const TypePtr& t) {
  if (!t) return 0;
  int m = 0;
  if (t->kind == TypeKind::Var || t->kind == TypeKind::Forall || t->kind == TypeKind::Exists)
    m = t->var.index;
  return std::max({m, max_var_index(t->a), max_var_index(t->b)});
}

TypePtr subst_rec(const TypePtr& g, const TypeVar& v, const TypePtr& rep) {
  switch (g->kind) {
    case TypeKind::Var:
      return g->var == v ? rep : g;
    case TypeKind::Arrow: return t_arrow(subst_rec(g->a, v, rep), subst_rec(g->b, v, rep));
    case TypeKind::Pair: return t_pair(subst_rec(g->a, v, rep), subst_rec(g->b, v, rep));
    case TypeKind::Sealed: return t_sealed(g->name, subst_rec(g->a, v, rep));
    case TypeKind::Forall:
    case TypeKind::Exists: {
      if (g->var == v) return g;
      TypeVar binder = g->var;
      TypePtr body = g->a;
      if (tyvar_free_in(binder, rep) && tyvar_free_in(v, body)) {
        TypeVar fresh{binder.name, std::max(max_var_index(rep), max_var_index(body)) + 1};
        body = subst_rec(body, binder, t_var(fresh));
        binder = fresh;
      }
      body = subst_rec(body, v, rep);
      return g->kind == TypeKind::Forall ? t_forall(binder, body) : t_exists(binder, body);
    }
    default:
      return g;
  }
}

}  // namespace

TypePtr subst_type(const TypePtr& g, const TypeVar& v, const TypePtr& replacement) {
  return subst_rec(g, v, replacement);
}

namespace {

std::string show_var(const TypeVar& v) {
  if (v.index == 0) return v.name;
  return v.name + "_" + std::to_string(v.index);
}

// precedence: 0 = forall/exists body and arrow, 1 = pair, 2 = atom
void show_rec(const TypePtr& t, int prec, std::string& out) {
  auto paren = [&](int need, auto&& body) {
    bool p = prec > need;
    if (p) out += '(';
    body();
    if (p) out += ')';
  };
  switch (t->kind) {
    case TypeKind::Base:
      out += t->base == BaseKind::Int ? "Int" : t->base == BaseKind::Bool ? "Bool" : "Unit";
      break;
    case TypeKind::Unknown: out += '?'; break;
    case TypeKind::Var: out += show_var(t->var); break;
    case TypeKind::Name: out += "a" + std::to_string(t->name); break;
    case TypeKind::Sealed: {
      out += "a" + std::to_string(t->name) + "^";
      const TypePtr& u = t->a;
      bool atom = u->kind == TypeKind::Base || u->kind == TypeKind::Unknown ||
                  u->kind == TypeKind::Var || u->kind == TypeKind::Name;
      if (atom) {
        show_rec(u, 2, out);
      } else {
        out += '(';
        show_rec(u, 0, out);
        out += ')';
      }
      break;
    }
    case TypeKind::Arrow:
      paren(0, [&] {
        show_rec(t->a, 1, out);
        out += "->";
        show_rec(t->b, 0, out);  // right assoc
      });
      break;
    case TypeKind::Pair:
      paren(1, [&] {
        show_rec(t->a, 2, out);
        out += '*';
        show_rec(t->b, 2, out);
      });
      break;
    case TypeKind::Forall:
    case TypeKind::Exists:
      paren(0, [&] {
        out += t->kind == TypeKind::Forall ? "forall " : "exists ";
        out += show_var(t->var);
        out += '.';
        show_rec(t->a, 0, out);
      });
      break;
  }
}

}  // namespace

std::string show_type(const TypePtr& t) {
  std::string out;
  show_rec(t, 0, out);
  return out;
}

// --- bounded oracle -------------------------------------------------------

namespace {

void enumerate_rec(int depth, const std::vector<TypeVar>& vars, bool gradual, int next_binder,
                   std::vector<TypePtr>& out) {
  if (depth <= 0) return;
  out.push_back(t_int());
  out.push_back(t_bool());
  if (gradual) out.push_back(t_unknown());
  for (const auto& v : vars) out.push_back(t_var(v));
  if (depth == 1) return;

  std::vector<TypePtr> sub;
  enumerate_rec(depth - 1, vars, gradual, next_binder, sub);
  for (const auto& l : sub)
    for (const auto& r : sub) {
      out.push_back(t_arrow(l, r));
      out.push_back(t_pair(l, r));
    }
  TypeVar binder{"X", next_binder};
  std::vector<TypeVar> inner = vars;
  inner.push_back(binder);
  std::vector<TypePtr> bodies;
  enumerate_rec(depth - 1, inner, gradual, next_binder + 1, bodies);
  for (const auto& b : bodies) {
    out.push_back(t_forall(binder, b));
    out.push_back(t_exists(binder, b));
  }
}

}  // namespace

std::vector<TypePtr> enumerate_static_types(int depth, const std::vector<TypeVar>& vars) {
  std::vector<TypePtr> out;
  enumerate_rec(depth, vars, false, 1000, out);
  return out;
}

std::vector<TypePtr> enumerate_gradual_types(int depth, const std::vector<TypeVar>& vars) {
  std::vector<TypePtr> out;
  enumerate_rec(depth, vars, true, 1000, out);
  return out;
}

namespace {

bool in_conc_rec(const TypePtr& t, const TypePtr& g, const VarLink* env) {
  if (g->kind == TypeKind::Unknown) return true;
  if (t->kind != g->kind) return false;
  switch (g->kind) {
    case TypeKind::Base: return t->base == g->base;
    case TypeKind::Name: return t->name == g->name;
    case TypeKind::Var: {
      int m = lookup_link(env, t->var, g->var);
      if (m == 1) return true;
      if (m == -1) return false;
      return t->var == g->var;
    }
    case TypeKind::Arrow:
    case TypeKind::Pair:
      return in_conc_rec(t->a, g->a, env) && in_conc_rec(t->b, g->b, env);
    case TypeKind::Forall:
    case TypeKind::Exists: {
      VarLink link{&t->var, &g->var, env};
      return in_conc_rec(t->a, g->a, &link);
    }
    default:
      return false;
  }
}

}  // namespace

bool in_concretization(const TypePtr& t, const TypePtr& g) {
  return in_conc_rec(t, g, nullptr);
}

bool bounded_oracle(OracleKind kind, const TypePtr& g1, const TypePtr& g2, int depth) {
  if (depth < std::max(type_depth(g1), type_depth(g2)))
    throw std::invalid_argument("bounded_oracle: depth too small to be conclusive");
  auto universe = enumerate_static_types(depth, {});
  switch (kind) {
    case OracleKind::Precision: {
      for (const auto& t : universe)
        if (in_concretization(t, g1) && !in_concretization(t, g2)) return false;
      return true;
    }
    case OracleKind::Consistency: {
      for (const auto& t : universe)
        if (in_concretization(t, g1) && in_concretization(t, g2)) return true;
      return false;
    }
    case OracleKind::MeetGlb: {
      auto m = meet(g1, g2);
      if (!m) {
        for (const auto& t : universe)
          if (in_concretization(t, g1) && in_concretization(t, g2)) return false;
        return true;
      }
      if (!precision(*m, g1) || !precision(*m, g2)) return false;
      for (const auto& g : enumerate_gradual_types(depth, {}))
        if (precision(g, g1) && precision(g, g2) && !precision(g, *m)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace gsf
