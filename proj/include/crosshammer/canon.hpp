#pragma once

#include <string>
#include <vector>

#include "crosshammer/term.hpp"

namespace crosshammer {

struct Literal {
  bool positive = true;
  TermPtr atom;
};

using Clause = std::vector<Literal>;

/// Substitutes free occurrences of `name` by `repl` (shadowed under binders
/// of the same name). `repl` must not capture bound variables.
TermPtr subst_free_var(const TermPtr& t, const std::string& name,
                       const TermPtr& repl);

/// Removes the leading universal-quantifier prefix, turning the bound
/// variables into fresh free variables.
TermPtr strip_foralls(const TermPtr& t);

/// Clause normal form of the propositional skeleton of a formula. Leading
/// universal quantifiers are stripped first; quantified or lambda subformulas
/// below other connectives stay opaque atoms. Duplicate literals and clauses
/// are removed; no other simplification is applied, so the result is
/// truth-table equivalent to the input over its atoms.
std::vector<Clause> to_cnf(const TermPtr& t);

using CanonicalKey = std::string;

/// Key identical for formulas related by conjunct/disjunct permutation,
/// symmetry of equality, or alpha-conversion.
CanonicalKey canonical_key(const TermPtr& t);

}  // namespace crosshammer
