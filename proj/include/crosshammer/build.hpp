#pragma once

#include "crosshammer/term.hpp"

namespace crosshammer::build {

// Convenience constructors for logical structure.

inline TyPtr bool2() {
  return Ty::fn(Ty::boolean(), Ty::fn(Ty::boolean(), Ty::boolean()));
}

inline TermPtr binop(const char* op, const TermPtr& a, const TermPtr& b) {
  return Term::app(Term::app(Term::constant(op, bool2()), a), b);
}

inline TermPtr conj(const TermPtr& a, const TermPtr& b) { return binop("/\\", a, b); }
inline TermPtr disj(const TermPtr& a, const TermPtr& b) { return binop("\\/", a, b); }
inline TermPtr imp(const TermPtr& a, const TermPtr& b) { return binop("==>", a, b); }
inline TermPtr iff(const TermPtr& a, const TermPtr& b) { return binop("<=>", a, b); }

inline TermPtr neg(const TermPtr& a) {
  return Term::app(Term::constant("~", Ty::fn(Ty::boolean(), Ty::boolean())), a);
}

inline TermPtr eq(const TermPtr& a, const TermPtr& b) {
  TyPtr ta = type_of(a);
  return Term::app(
      Term::app(Term::constant("=", Ty::fn(ta, Ty::fn(ta, Ty::boolean()))), a),
      b);
}

inline TermPtr quant(const char* q, const std::string& var, const TyPtr& ty,
                     const TermPtr& body) {
  return Term::app(
      Term::constant(q, Ty::fn(Ty::fn(ty, Ty::boolean()), Ty::boolean())),
      Term::abs(var, ty, body));
}

inline TermPtr forall(const std::string& var, const TyPtr& ty,
                      const TermPtr& body) {
  return quant("!", var, ty, body);
}

inline TermPtr exists(const std::string& var, const TyPtr& ty,
                      const TermPtr& body) {
  return quant("?", var, ty, body);
}

}  // namespace crosshammer::build
