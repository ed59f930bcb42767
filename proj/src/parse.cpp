#include "crosshammer/parse.hpp"

#include <cassert>
#include <vector>

namespace crosshammer {

Signature::Signature() {
  declare_tycon("bool", 0);
  declare_tycon("->", 2);
  TyPtr a = Ty::var("'a");
  TyPtr b = Ty::boolean();
  TyPtr bin_bool = Ty::fn(b, Ty::fn(b, b));
  declare_const("=", Ty::fn(a, Ty::fn(a, b)));
  declare_const("!", Ty::fn(Ty::fn(a, b), b));
  declare_const("?", Ty::fn(Ty::fn(a, b), b));
  declare_const("/\\", bin_bool);
  declare_const("\\/", bin_bool);
  declare_const("==>", bin_bool);
  declare_const("<=>", bin_bool);
  declare_const("~", Ty::fn(b, b));
  declare_const("T", b);
  declare_const("F", b);
}

void Signature::declare_const(const ConstId& id, TyPtr ty) {
  consts[id] = std::move(ty);
}

void Signature::declare_tycon(const std::string& id, int arity) {
  tycons[id] = arity;
}

namespace {

struct Token {
  enum Kind { LParen, RParen, Colon, Dot, Ident, End } kind;
  std::string text;
  size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::RParen, ")", i++});
    } else if (c == ':') {
      out.push_back({Token::Colon, ":", i++});
    } else if (c == '.') {
      out.push_back({Token::Dot, ".", i++});
    } else {
      size_t start = i;
      while (i < s.size() && !isspace(static_cast<unsigned char>(s[i])) &&
             s[i] != '(' && s[i] != ')' && s[i] != ':' && s[i] != '.')
        ++i;
      out.push_back({Token::Ident, s.substr(start, i - start), start});
    }
  }
  size_t end_off = out.empty() ? 0 : out.back().offset;
  out.push_back({Token::End, "", end_off});
  return out;
}

// Untyped pre-term produced by the grammar pass.
struct PTerm {
  enum Kind { Ref, App, Abs } kind;
  std::string name;               // Ref ident or Abs bound var
  TyPtr binder_ty;                // Abs only
  std::vector<PTerm> children;    // App: fn then args; Abs: body
  size_t offset = 0;
};

struct Parser {
  const std::vector<Token>& toks;
  const Signature& sig;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(ParseErrorKind::Syntax, peek().offset, msg);
  }

  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos;
  }

  TyPtr type() {
    const Token& t = peek();
    if (t.kind == Token::Ident) {
      ++pos;
      if (t.text[0] == '\'') return Ty::var(t.text);
      auto it = sig.tycons.find(t.text);
      if (it == sig.tycons.end())
        throw ParseError(ParseErrorKind::UnknownConst, t.offset,
                         "unknown type constructor: " + t.text);
      if (it->second != 0)
        throw ParseError(ParseErrorKind::TypeMismatch, t.offset,
                         "type constructor " + t.text + " expects " +
                             std::to_string(it->second) + " arguments");
      return Ty::con(t.text);
    }
    if (t.kind != Token::LParen) fail("expected type");
    ++pos;
    const Token& head = peek();
    if (head.kind != Token::Ident || head.text[0] == '\'')
      fail("expected type constructor");
    ++pos;
    auto it = sig.tycons.find(head.text);
    if (it == sig.tycons.end())
      throw ParseError(ParseErrorKind::UnknownConst, head.offset,
                       "unknown type constructor: " + head.text);
    std::vector<TyPtr> args;
    while (peek().kind != Token::RParen) {
      if (peek().kind == Token::End) fail("unexpected end of input in type");
      args.push_back(type());
    }
    ++pos;
    if (static_cast<int>(args.size()) != it->second)
      throw ParseError(ParseErrorKind::TypeMismatch, head.offset,
                       "type constructor " + head.text + " expects " +
                           std::to_string(it->second) + " arguments, got " +
                           std::to_string(args.size()));
    return Ty::con(head.text, std::move(args));
  }

  PTerm term() {
    const Token& t = peek();
    if (t.kind == Token::Ident) {
      ++pos;
      return PTerm{PTerm::Ref, t.text, nullptr, {}, t.offset};
    }
    if (t.kind != Token::LParen) fail("expected term");
    ++pos;
    // lambda: '(' '\x' ':' ty '.' term ')' (binder may be '\' 'x')
    if (peek().kind == Token::Ident && peek().text[0] == '\\' &&
        peek().text != "\\/") {
      Token binder = next();
      std::string var = binder.text.substr(1);
      if (var.empty()) {
        if (peek().kind != Token::Ident) fail("expected bound variable name");
        var = next().text;
      }
      expect(Token::Colon, "':' after bound variable");
      TyPtr ty = type();
      expect(Token::Dot, "'.' after binder type");
      PTerm body = term();
      expect(Token::RParen, "')' closing lambda");
      PTerm out{PTerm::Abs, var, ty, {}, binder.offset};
      out.children.push_back(std::move(body));
      return out;
    }
    PTerm fn = term();
    std::vector<PTerm> args;
    while (peek().kind != Token::RParen) {
      if (peek().kind == Token::End) fail("unexpected end of input");
      args.push_back(term());
    }
    ++pos;
    if (args.empty()) fail("application needs at least one argument");
    PTerm out{PTerm::App, "", nullptr, {}, t.offset};
    out.children.push_back(std::move(fn));
    for (auto& a : args) out.children.push_back(std::move(a));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Type inference: unification over types with meta variables '?N'.

struct Infer {
  const Signature& sig;
  std::map<std::string, TyPtr> subst;  // meta name -> type
  int fresh_counter = 0;

  TyPtr fresh() { return Ty::var("?" + std::to_string(fresh_counter++)); }

  static bool is_meta(const TyPtr& t) {
    return t->is_var && t->name[0] == '?';
  }

  TyPtr resolve(const TyPtr& t) {
    if (is_meta(t)) {
      auto it = subst.find(t->name);
      if (it != subst.end()) return resolve(it->second);
      return t;
    }
    return t;
  }

  bool occurs(const std::string& meta, const TyPtr& t) {
    TyPtr r = resolve(t);
    if (r->is_var) return r->name == meta;
    for (auto& a : r->args)
      if (occurs(meta, a)) return true;
    return false;
  }

  bool unify(const TyPtr& a0, const TyPtr& b0) {
    TyPtr a = resolve(a0), b = resolve(b0);
    if (is_meta(a)) {
      if (is_meta(b) && b->name == a->name) return true;
      if (occurs(a->name, b)) return false;
      subst[a->name] = b;
      return true;
    }
    if (is_meta(b)) return unify(b, a);
    if (a->is_var || b->is_var)
      return a->is_var && b->is_var && a->name == b->name;
    if (a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      if (!unify(a->args[i], b->args[i])) return false;
    return true;
  }

  TyPtr zonk(const TyPtr& t, std::map<std::string, TyPtr>& defaults) {
    TyPtr r = resolve(t);
    if (r->is_var) {
      if (r->name[0] != '?') return r;
      auto it = defaults.find(r->name);
      if (it == defaults.end()) {
        TyPtr d = Ty::var("'_" + std::to_string(defaults.size()));
        it = defaults.emplace(r->name, d).first;
      }
      return it->second;
    }
    std::vector<TyPtr> args;
    for (auto& a : r->args) args.push_back(zonk(a, defaults));
    return Ty::con(r->name, std::move(args));
  }

  TyPtr instantiate(const TyPtr& t, std::map<std::string, TyPtr>& inst) {
    if (t->is_var) {
      auto it = inst.find(t->name);
      if (it == inst.end()) it = inst.emplace(t->name, fresh()).first;
      return it->second;
    }
    std::vector<TyPtr> args;
    for (auto& a : t->args) args.push_back(instantiate(a, inst));
    return Ty::con(t->name, std::move(args));
  }
};

// Elaborated node: mirrors PTerm with every node's type resolved.
struct ETerm {
  TermKind kind;
  std::string name;
  TyPtr ty;  // Const/Var: the node's type; Abs: binder type
  std::vector<ETerm> children;
  size_t offset;
};

struct Elaborator {
  const Signature& sig;
  Infer inf;
  std::map<std::string, TyPtr> free_vars;  // free variable -> meta

  explicit Elaborator(const Signature& s) : sig(s), inf{s} {}

  // returns the node's type
  TyPtr elab(const PTerm& p, std::vector<std::pair<std::string, TyPtr>>& bound,
             ETerm& out) {
    out.offset = p.offset;
    switch (p.kind) {
      case PTerm::Ref: {
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
          if (it->first == p.name) {
            out.kind = TermKind::Var;
            out.name = p.name;
            out.ty = it->second;
            return out.ty;
          }
        }
        auto cit = sig.consts.find(p.name);
        if (cit != sig.consts.end()) {
          std::map<std::string, TyPtr> inst;
          out.kind = TermKind::Const;
          out.name = p.name;
          out.ty = inf.instantiate(cit->second, inst);
          return out.ty;
        }
        if (p.name.find('/') != std::string::npos || is_logical_const(p.name))
          throw ParseError(ParseErrorKind::UnknownConst, p.offset,
                           "unknown constant: " + p.name);
        auto fit = free_vars.find(p.name);
        if (fit == free_vars.end())
          fit = free_vars.emplace(p.name, inf.fresh()).first;
        out.kind = TermKind::Var;
        out.name = p.name;
        out.ty = fit->second;
        return out.ty;
      }
      case PTerm::Abs: {
        out.kind = TermKind::Abs;
        out.name = p.name;
        out.ty = p.binder_ty;
        bound.emplace_back(p.name, p.binder_ty);
        out.children.emplace_back();
        TyPtr body_ty = elab(p.children[0], bound, out.children[0]);
        bound.pop_back();
        return Ty::fn(p.binder_ty, body_ty);
      }
      case PTerm::App: {
        out.kind = TermKind::App;
        out.children.resize(p.children.size());
        TyPtr fn_ty = elab(p.children[0], bound, out.children[0]);
        for (size_t i = 1; i < p.children.size(); ++i) {
          TyPtr arg_ty = elab(p.children[i], bound, out.children[i]);
          TyPtr res = inf.fresh();
          if (!inf.unify(fn_ty, Ty::fn(arg_ty, res)))
            throw ParseError(ParseErrorKind::TypeMismatch,
                             p.children[i].offset, "type mismatch in argument");
          fn_ty = res;
        }
        return fn_ty;
      }
    }
    throw ParseError(ParseErrorKind::Syntax, p.offset, "corrupt parse tree");
  }

  TermPtr rebuild(const ETerm& e, std::map<std::string, TyPtr>& defaults) {
    switch (e.kind) {
      case TermKind::Const:
        return Term::constant(e.name, inf.zonk(e.ty, defaults));
      case TermKind::Var:
        return Term::var(e.name, inf.zonk(e.ty, defaults));
      case TermKind::Abs:
        return Term::abs(e.name, inf.zonk(e.ty, defaults),
                         rebuild(e.children[0], defaults));
      case TermKind::App: {
        TermPtr t = rebuild(e.children[0], defaults);
        for (size_t i = 1; i < e.children.size(); ++i) {
          try {
            t = Term::app(t, rebuild(e.children[i], defaults));
          } catch (const TypeError& ex) {
            throw ParseError(ParseErrorKind::TypeMismatch, e.children[i].offset,
                             ex.what());
          }
        }
        return t;
      }
    }
    throw ParseError(ParseErrorKind::Syntax, e.offset, "corrupt term");
  }
};

}  // namespace

TermPtr parse_term(const std::string& text, const Signature& sig) {
  auto toks = tokenize(text);
  Parser parser{toks, sig};
  PTerm p = parser.term();
  if (parser.peek().kind != Token::End)
    parser.fail("trailing input after term");
  Elaborator el(sig);
  ETerm e;
  std::vector<std::pair<std::string, TyPtr>> bound;
  el.elab(p, bound, e);
  std::map<std::string, TyPtr> defaults;
  return el.rebuild(e, defaults);
}

TyPtr parse_type(const std::string& text, const Signature& sig) {
  auto toks = tokenize(text);
  Parser parser{toks, sig};
  TyPtr t = parser.type();
  if (parser.peek().kind != Token::End)
    parser.fail("trailing input after type");
  return t;
}

}  // namespace crosshammer
