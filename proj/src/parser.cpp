#include "gsf/parser.hpp"

#include <cctype>
#include <stdexcept>

namespace gsf {

namespace {

enum class Tok {
  End, Int, Ident,
  Lambda, TyLambda, Dot, Colon, DblColon, Comma, LParen, RParen, LBrack, RBrack,
  Lt, Gt, Arrow, Star, Plus, Minus, EqEq, Eq, AndAnd, OrOr, Question,
  KwForall, KwExists, KwIf, KwThen, KwElse, KwLet, KwIn, KwPack, KwUnpack, KwAs,
  KwFst, KwSnd, KwNot, KwTrue, KwFalse, KwUnit, KwInt, KwBool, KwUnitTy,
  KwNu, KwSeal, KwUnseal,
};

struct Token {
  Tok kind;
  std::string text;
  long long int_val = 0;
  Span span;
};

struct ParseFail {
  ParseError err;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseFail{{{line_, col_}, msg}};
  }

  bool starts_with(const char* s) const {
    std::size_t n = 0;
    while (s[n]) ++n;
    return text_.compare(pos_, n, s) == 0;
  }

  void skip(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
        skip(1);
      if (starts_with("--")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') skip(1);
        continue;
      }
      break;
    }
  }

  void advance() {
    skip_space();
    tok_.span = {line_, col_};
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    // Unicode aliases for the binder syntax.
    if (starts_with("\xce\xbb")) { skip(2); tok_.kind = Tok::Lambda; return; }
    if (starts_with("\xce\x9b")) { skip(2); tok_.kind = Tok::TyLambda; return; }
    if (starts_with("\xe2\x88\x80")) { skip(3); tok_.kind = Tok::KwForall; return; }
    if (starts_with("\xe2\x88\x83")) { skip(3); tok_.kind = Tok::KwExists; return; }
    if (starts_with("/\\")) { skip(2); tok_.kind = Tok::TyLambda; return; }
    if (starts_with("::")) { skip(2); tok_.kind = Tok::DblColon; return; }
    if (starts_with("->")) { skip(2); tok_.kind = Tok::Arrow; return; }
    if (starts_with("==")) { skip(2); tok_.kind = Tok::EqEq; return; }
    if (starts_with("&&")) { skip(2); tok_.kind = Tok::AndAnd; return; }
    if (starts_with("||")) { skip(2); tok_.kind = Tok::OrOr; return; }
    switch (c) {
      case '\\': skip(1); tok_.kind = Tok::Lambda; return;
      case '.': skip(1); tok_.kind = Tok::Dot; return;
      case ':': skip(1); tok_.kind = Tok::Colon; return;
      case ',': skip(1); tok_.kind = Tok::Comma; return;
      case '(': skip(1); tok_.kind = Tok::LParen; return;
      case ')': skip(1); tok_.kind = Tok::RParen; return;
      case '[': skip(1); tok_.kind = Tok::LBrack; return;
      case ']': skip(1); tok_.kind = Tok::RBrack; return;
      case '<': skip(1); tok_.kind = Tok::Lt; return;
      case '>': skip(1); tok_.kind = Tok::Gt; return;
      case '*': skip(1); tok_.kind = Tok::Star; return;
      case '+': skip(1); tok_.kind = Tok::Plus; return;
      case '-': skip(1); tok_.kind = Tok::Minus; return;
      case '=': skip(1); tok_.kind = Tok::Eq; return;
      case '?': skip(1); tok_.kind = Tok::Question; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        skip(1);
      tok_.kind = Tok::Int;
      tok_.text = text_.substr(start, pos_ - start);
      tok_.int_val = std::stoll(tok_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '$' || text_[pos_] == '\''))
        skip(1);
      tok_.text = text_.substr(start, pos_ - start);
      tok_.kind = keyword(tok_.text);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  static Tok keyword(const std::string& s) {
    if (s == "forall") return Tok::KwForall;
    if (s == "exists") return Tok::KwExists;
    if (s == "if") return Tok::KwIf;
    if (s == "then") return Tok::KwThen;
    if (s == "else") return Tok::KwElse;
    if (s == "let") return Tok::KwLet;
    if (s == "in") return Tok::KwIn;
    if (s == "pack") return Tok::KwPack;
    if (s == "unpack") return Tok::KwUnpack;
    if (s == "as") return Tok::KwAs;
    if (s == "fst") return Tok::KwFst;
    if (s == "snd") return Tok::KwSnd;
    if (s == "not") return Tok::KwNot;
    if (s == "true") return Tok::KwTrue;
    if (s == "false") return Tok::KwFalse;
    if (s == "unit") return Tok::KwUnit;
    if (s == "Int") return Tok::KwInt;
    if (s == "Bool") return Tok::KwBool;
    if (s == "Unit") return Tok::KwUnitTy;
    if (s == "nu") return Tok::KwNu;
    if (s == "seal") return Tok::KwSeal;
    if (s == "unseal") return Tok::KwUnseal;
    return Tok::Ident;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// Type variable names vs runtime type names: a0, a1, ... are names.
bool is_type_name(const std::string& s, TypeNameId& out) {
  if (s.size() < 2 || s[0] != 'a') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  out = static_cast<TypeNameId>(std::stoul(s.substr(1)));
  return true;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  TermPtr parse_term_all() {
    TermPtr t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  SealTermPtr parse_seal_all() {
    SealTermPtr t = seal_term();
    expect(Tok::End, "end of input");
    return t;
  }

  TypePtr parse_type_all() {
    TypePtr t = type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseFail{{lex_.peek().span, msg}}; }

  Token expect(Tok k, const std::string& what) {
    if (lex_.peek().kind != k) fail("expected " + what);
    return lex_.next();
  }

  bool accept(Tok k) {
    if (lex_.peek().kind == k) {
      lex_.next();
      return true;
    }
    return false;
  }

  std::string ident() { return expect(Tok::Ident, "an identifier").text; }

  // ---- types ----

  TypePtr type() {
    TypePtr l = type_pair();
    if (accept(Tok::Arrow)) return t_arrow(l, type());
    return l;
  }

  TypePtr type_pair() {
    TypePtr l = type_atom();
    while (accept(Tok::Star)) l = t_pair(l, type_atom());
    return l;
  }

  TypePtr type_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::KwInt: lex_.next(); return t_int();
      case Tok::KwBool: lex_.next(); return t_bool();
      case Tok::KwUnitTy: lex_.next(); return t_unit();
      case Tok::Question: lex_.next(); return t_unknown();
      case Tok::KwForall: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Dot, "'.'");
        return t_forall(TypeVar{x, 0}, type());
      }
      case Tok::KwExists: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Dot, "'.'");
        return t_exists(TypeVar{x, 0}, type());
      }
      case Tok::Ident: {
        Token id = lex_.next();
        TypeNameId a;
        if (is_type_name(id.text, a)) return t_name(a);
        return t_var(TypeVar{id.text, 0});
      }
      case Tok::LParen: {
        lex_.next();
        TypePtr inner = type();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a type");
    }
  }

  // ---- GSF terms ----

  TermPtr term() {
    Span sp = lex_.peek().span;
    switch (lex_.peek().kind) {
      case Tok::Lambda: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Colon, "':' after lambda binder");
        TypePtr ann = type();
        expect(Tok::Dot, "'.'");
        return m_lam(x, ann, term(), sp);
      }
      case Tok::TyLambda: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Dot, "'.'");
        return m_tylam(TypeVar{x, 0}, term(), sp);
      }
      case Tok::KwIf: {
        lex_.next();
        TermPtr c = term();
        expect(Tok::KwThen, "'then'");
        TermPtr th = term();
        expect(Tok::KwElse, "'else'");
        return m_if(c, th, term(), sp);
      }
      case Tok::KwLet: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Colon, "':' after let binder");
        TypePtr ann = type();
        expect(Tok::Eq, "'='");
        TermPtr bound = term();
        expect(Tok::KwIn, "'in'");
        return m_let(x, ann, bound, term(), sp);
      }
      case Tok::KwUnpack: {
        lex_.next();
        expect(Tok::Lt, "'<'");
        std::string tx = ident();
        expect(Tok::Comma, "','");
        std::string x = ident();
        expect(Tok::Gt, "'>'");
        expect(Tok::Eq, "'='");
        TermPtr pkg = asc_chain();
        expect(Tok::KwIn, "'in'");
        return m_unpack(TypeVar{tx, 0}, x, pkg, term(), sp);
      }
      default:
        return asc_chain();
    }
  }

  TermPtr asc_chain() {
    TermPtr t = or_expr();
    while (accept(Tok::DblColon)) t = m_asc(t, type());
    return t;
  }

  TermPtr or_expr() {
    TermPtr t = and_expr();
    while (accept(Tok::OrOr)) t = m_op(OpKind::Or, {t, and_expr()});
    return t;
  }

  TermPtr and_expr() {
    TermPtr t = cmp_expr();
    while (accept(Tok::AndAnd)) t = m_op(OpKind::And, {t, cmp_expr()});
    return t;
  }

  TermPtr cmp_expr() {
    TermPtr t = add_expr();
    if (accept(Tok::Lt)) return m_op(OpKind::Lt, {t, add_expr()});
    if (accept(Tok::EqEq)) return m_op(OpKind::Eq, {t, add_expr()});
    return t;
  }

  TermPtr add_expr() {
    TermPtr t = mul_expr();
    for (;;) {
      if (accept(Tok::Plus))
        t = m_op(OpKind::Add, {t, mul_expr()});
      else if (accept(Tok::Minus))
        t = m_op(OpKind::Sub, {t, mul_expr()});
      else
        return t;
    }
  }

  TermPtr mul_expr() {
    TermPtr t = app_expr();
    while (accept(Tok::Star)) t = m_op(OpKind::Mul, {t, app_expr()});
    return t;
  }

  bool starts_atom() {
    switch (lex_.peek().kind) {
      case Tok::Int:
      case Tok::Ident:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::KwUnit:
      case Tok::LParen:
      case Tok::KwPack:
        return true;
      default:
        return false;
    }
  }

  TermPtr app_expr() {
    TermPtr t = prefix_expr();
    for (;;) {
      if (lex_.peek().kind == Tok::LBrack) {
        Span sp = lex_.next().span;
        TypePtr ty = type();
        expect(Tok::RBrack, "']'");
        t = m_tyapp(t, ty, sp);
      } else if (starts_atom() || lex_.peek().kind == Tok::KwFst ||
                 lex_.peek().kind == Tok::KwSnd || lex_.peek().kind == Tok::KwNot) {
        t = m_app(t, prefix_expr(), t->span);
      } else {
        return t;
      }
    }
  }

  TermPtr prefix_expr() {
    Span sp = lex_.peek().span;
    if (accept(Tok::KwNot)) return m_op(OpKind::Not, {prefix_expr()}, sp);
    if (accept(Tok::KwFst)) return m_proj(1, prefix_expr(), sp);
    if (accept(Tok::KwSnd)) return m_proj(2, prefix_expr(), sp);
    return atom();
  }

  TermPtr atom() {
    Span sp = lex_.peek().span;
    switch (lex_.peek().kind) {
      case Tok::Int: return m_const(Constant::of_int(lex_.next().int_val), sp);
      case Tok::KwTrue: lex_.next(); return m_const(Constant::of_bool(true), sp);
      case Tok::KwFalse: lex_.next(); return m_const(Constant::of_bool(false), sp);
      case Tok::KwUnit: lex_.next(); return m_const(Constant::unit(), sp);
      case Tok::Ident: return m_var(lex_.next().text, sp);
      case Tok::KwPack: {
        lex_.next();
        expect(Tok::Lt, "'<'");
        TypePtr witness = type();
        expect(Tok::Comma, "','");
        TermPtr body = term();
        expect(Tok::Gt, "'>'");
        expect(Tok::KwAs, "'as'");
        TypePtr as = type();
        if (as->kind != TypeKind::Exists && as->kind != TypeKind::Unknown)
          fail("pack type must be an existential type or ?");
        return m_pack(witness, body, as, sp);
      }
      case Tok::LParen: {
        lex_.next();
        TermPtr t = term();
        if (accept(Tok::Comma)) {
          TermPtr u = term();
          expect(Tok::RParen, "')'");
          return m_pair(t, u, sp);
        }
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  // ---- lambda-seal terms ----

  SealTermPtr seal_term() {
    switch (lex_.peek().kind) {
      case Tok::Lambda: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Dot, "'.'");
        return s_lam(x, seal_term());
      }
      case Tok::KwNu: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Dot, "'.'");
        return s_nu(x, seal_term());
      }
      case Tok::KwIf: {
        lex_.next();
        SealTermPtr c = seal_term();
        expect(Tok::KwThen, "'then'");
        SealTermPtr th = seal_term();
        expect(Tok::KwElse, "'else'");
        return s_if(c, th, seal_term());
      }
      case Tok::KwLet: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Eq, "'='");
        SealTermPtr bound = seal_term();
        expect(Tok::KwIn, "'in'");
        return s_app(s_lam(x, seal_term()), bound);
      }
      case Tok::KwUnseal: {
        lex_.next();
        std::string x = ident();
        expect(Tok::Eq, "'='");
        expect(Tok::LParen, "'('");
        SealTermPtr key = seal_term();
        expect(Tok::Comma, "','");
        SealTermPtr payload = seal_term();
        expect(Tok::RParen, "')'");
        expect(Tok::KwIn, "'in'");
        return s_unseal(x, key, payload, seal_term());
      }
      default:
        return seal_or();
    }
  }

  SealTermPtr seal_or() {
    SealTermPtr t = seal_and();
    while (accept(Tok::OrOr)) t = s_op(OpKind::Or, {t, seal_and()});
    return t;
  }

  SealTermPtr seal_and() {
    SealTermPtr t = seal_cmp();
    while (accept(Tok::AndAnd)) t = s_op(OpKind::And, {t, seal_cmp()});
    return t;
  }

  SealTermPtr seal_cmp() {
    SealTermPtr t = seal_add();
    if (accept(Tok::Lt)) return s_op(OpKind::Lt, {t, seal_add()});
    if (accept(Tok::EqEq)) return s_op(OpKind::Eq, {t, seal_add()});
    return t;
  }

  SealTermPtr seal_add() {
    SealTermPtr t = seal_mul();
    for (;;) {
      if (accept(Tok::Plus))
        t = s_op(OpKind::Add, {t, seal_mul()});
      else if (accept(Tok::Minus))
        t = s_op(OpKind::Sub, {t, seal_mul()});
      else
        return t;
    }
  }

  SealTermPtr seal_mul() {
    SealTermPtr t = seal_app();
    while (accept(Tok::Star)) t = s_op(OpKind::Mul, {t, seal_app()});
    return t;
  }

  bool starts_seal_atom() {
    switch (lex_.peek().kind) {
      case Tok::Int:
      case Tok::Ident:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::KwUnit:
      case Tok::LParen:
      case Tok::KwSeal:
        return true;
      default:
        return false;
    }
  }

  SealTermPtr seal_app() {
    SealTermPtr t = seal_prefix();
    while (starts_seal_atom() || lex_.peek().kind == Tok::KwFst ||
           lex_.peek().kind == Tok::KwSnd || lex_.peek().kind == Tok::KwNot)
      t = s_app(t, seal_prefix());
    return t;
  }

  SealTermPtr seal_prefix() {
    if (accept(Tok::KwNot)) return s_op(OpKind::Not, {seal_prefix()});
    if (accept(Tok::KwFst)) return s_proj(1, seal_prefix());
    if (accept(Tok::KwSnd)) return s_proj(2, seal_prefix());
    return seal_atom();
  }

  SealTermPtr seal_atom() {
    switch (lex_.peek().kind) {
      case Tok::Int: return s_int(lex_.next().int_val);
      case Tok::KwTrue: lex_.next(); return s_bool(true);
      case Tok::KwFalse: lex_.next(); return s_bool(false);
      case Tok::KwUnit: lex_.next(); return s_const(Constant::unit());
      case Tok::Ident: return s_var(lex_.next().text);
      case Tok::KwSeal: {
        lex_.next();
        expect(Tok::LParen, "'('");
        SealTermPtr payload = seal_term();
        expect(Tok::Comma, "','");
        SealTermPtr key = seal_term();
        expect(Tok::RParen, "')'");
        return s_sealed(payload, key);
      }
      case Tok::LParen: {
        lex_.next();
        SealTermPtr t = seal_term();
        if (accept(Tok::Comma)) {
          SealTermPtr u = seal_term();
          expect(Tok::RParen, "')'");
          return s_pair(t, u);
        }
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  Lexer lex_;
};

}  // namespace

ParsedTerm parse_gsf(const std::string& text) {
  try {
    Parser p(text);
    return p.parse_term_all();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

ParsedSeal parse_seal(const std::string& text) {
  try {
    Parser p(text);
    return p.parse_seal_all();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

ParsedType parse_type(const std::string& text) {
  try {
    Parser p(text);
    return p.parse_type_all();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

}  // namespace gsf
