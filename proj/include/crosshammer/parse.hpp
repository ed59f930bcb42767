#pragma once

#include <map>
#include <string>

#include "crosshammer/term.hpp"

namespace crosshammer {

/// Constant-type table for the interchange syntax. Logical constants and the
/// builtin type constructors (bool, ->) are always present.
struct Signature {
  std::map<ConstId, TyPtr> consts;    // term constants, types may be polymorphic
  std::map<std::string, int> tycons;  // type constructor arities

  Signature();

  void declare_const(const ConstId& id, TyPtr ty);
  void declare_tycon(const std::string& id, int arity);
};

enum class ParseErrorKind { Syntax, UnknownConst, TypeMismatch };

struct ParseError : std::runtime_error {
  ParseErrorKind err_kind;
  size_t offset;
  ParseError(ParseErrorKind k, size_t off, const std::string& msg)
      : std::runtime_error(msg), err_kind(k), offset(off) {}
};

/// Parses the interchange term syntax and type-checks against the signature.
/// Free variables get their types inferred; unconstrained ones become fresh
/// type variables.
TermPtr parse_term(const std::string& text, const Signature& sig);

/// Parses a type: ident | '(' ident ty+ ')' | 'tyvar.
TyPtr parse_type(const std::string& text, const Signature& sig);

}  // namespace crosshammer
