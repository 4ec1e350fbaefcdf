#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsf/types.hpp"

namespace gsf {

struct Span {
  int line = 0;
  int col = 0;
};

enum class OpKind { Add, Sub, Mul, Lt, Eq, Not, And, Or };

const char* op_token(OpKind op);
int op_arity(OpKind op);
BaseKind op_arg_base(OpKind op);
BaseKind op_result_base(OpKind op);

struct Constant {
  BaseKind type = BaseKind::Unit;
  long long int_val = 0;
  bool bool_val = false;

  static Constant of_int(long long v) { return {BaseKind::Int, v, false}; }
  static Constant of_bool(bool v) { return {BaseKind::Bool, 0, v}; }
  static Constant unit() { return {BaseKind::Unit, 0, false}; }

  friend bool operator==(const Constant& a, const Constant& b) {
    if (a.type != b.type) return false;
    if (a.type == BaseKind::Int) return a.int_val == b.int_val;
    if (a.type == BaseKind::Bool) return a.bool_val == b.bool_val;
    return true;
  }
};

// --- GSF source terms -------------------------------------------------------

enum class TermKind {
  Const, Var, Lam, TyLam, App, TyApp, Asc, Pair, Proj, Op, If, Let, Pack, Unpack
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  Span span;
  Constant lit;            // Const
  std::string var;         // Var, Lam/Let binder, Unpack term binder
  TypeVar tyvar;           // TyLam binder, Unpack type binder
  TypePtr type_a;          // Lam ann, Asc target, TyApp arg, Let ann, Pack witness
  TypePtr type_b;          // Pack "as" type
  TermPtr t1, t2, t3;      // subterms
  OpKind op = OpKind::Add; // Op
  std::vector<TermPtr> args;
  int proj_index = 1;      // Proj
};

TermPtr m_const(Constant c, Span s = {});
TermPtr m_int(long long v);
TermPtr m_bool(bool v);
TermPtr m_unit();
TermPtr m_var(std::string x, Span s = {});
TermPtr m_lam(std::string x, TypePtr ann, TermPtr body, Span s = {});
TermPtr m_tylam(TypeVar x, TermPtr body, Span s = {});
TermPtr m_app(TermPtr f, TermPtr a, Span s = {});
TermPtr m_tyapp(TermPtr f, TypePtr t, Span s = {});
TermPtr m_asc(TermPtr t, TypePtr ty, Span s = {});
TermPtr m_pair(TermPtr a, TermPtr b, Span s = {});
TermPtr m_proj(int i, TermPtr t, Span s = {});
TermPtr m_op(OpKind op, std::vector<TermPtr> args, Span s = {});
TermPtr m_if(TermPtr c, TermPtr t, TermPtr e, Span s = {});
TermPtr m_let(std::string x, TypePtr ann, TermPtr bound, TermPtr body, Span s = {});
TermPtr m_pack(TypePtr witness, TermPtr t, TypePtr as, Span s = {});
TermPtr m_unpack(TypeVar tx, std::string x, TermPtr pkg, TermPtr body, Span s = {});

// Source values: constants, lambdas, type lambdas, pairs of values, packs of values.
bool is_source_value(const TermPtr& t);

// let x:G = bound in body  ==>  (\x:G. body) bound
TermPtr desugar_lets(const TermPtr& t);

std::string show_term(const TermPtr& t);

// --- GSFe terms -------------------------------------------------------------

struct Evidence {
  TypePtr left;
  TypePtr right;
};

bool evidence_equal(const Evidence& a, const Evidence& b);
// Componentwise type precision lifted to evidence types.
bool evidence_precision(const Evidence& a, const Evidence& b);
// Componentwise strict precision (sealed names never below ?).
bool evidence_strict_precision(const Evidence& a, const Evidence& b);
std::string show_evidence(const Evidence& e);

enum class EKind {
  Const, Var, Lam, TyLam, App, TyApp, Asc, Pair, Proj, Op, If, Pack, Unpack
};

struct ETerm;
using ETermPtr = std::shared_ptr<const ETerm>;

struct ETerm {
  EKind kind;
  Constant lit;
  std::string var;
  TypeVar tyvar;
  TypePtr type_a;          // Lam ann, Asc target, TyApp arg, Pack witness
  TypePtr type_b;          // Pack "as"
  ETermPtr t1, t2, t3;
  OpKind op = OpKind::Add;
  std::vector<ETermPtr> args;
  int proj_index = 1;
  Evidence ev;             // Asc
  bool out_provenance = false;  // Asc evidence produced by out_evidence
};

ETermPtr e_const(Constant c);
ETermPtr e_var(std::string x);
ETermPtr e_lam(std::string x, TypePtr ann, ETermPtr body);
ETermPtr e_tylam(TypeVar x, ETermPtr body);
ETermPtr e_app(ETermPtr f, ETermPtr a);
ETermPtr e_tyapp(ETermPtr f, TypePtr t);
ETermPtr e_asc(Evidence ev, ETermPtr t, TypePtr ty, bool out_provenance = false);
ETermPtr e_pair(ETermPtr a, ETermPtr b);
ETermPtr e_proj(int i, ETermPtr t);
ETermPtr e_op(OpKind op, std::vector<ETermPtr> args);
ETermPtr e_if(ETermPtr c, ETermPtr t, ETermPtr e);
ETermPtr e_pack(TypePtr witness, ETermPtr t, TypePtr as);
ETermPtr e_unpack(TypeVar tx, std::string x, ETermPtr pkg, ETermPtr body);

// Raw values u: constants, lambdas, type lambdas, pairs of raw values,
// packs whose payload is a value. Values are ascribed raw values.
bool is_raw_value(const ETermPtr& t);
bool is_value(const ETermPtr& t);

// Substitution of a value for a term variable.
ETermPtr esubst_term(const ETermPtr& t, const std::string& x, const ETermPtr& v);
// Substitution of a type name for a type variable: bare name in type
// annotations, lifted (sealed) name inside evidences.
ETermPtr esubst_tyvar(const ETermPtr& t, const TypeVar& v, const TypePtr& bare,
                      const TypePtr& lifted);

std::string show_eterm(const ETermPtr& t);

}  // namespace gsf
