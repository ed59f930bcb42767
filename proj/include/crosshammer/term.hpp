#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace crosshammer {

using ConstId = std::string;

// ---------------------------------------------------------------------------
// Types

struct Ty;
using TyPtr = std::shared_ptr<const Ty>;

/// Higher-order logic type: a type variable ('a) or a constructor
/// application. The function arrow is the constructor "->" of arity 2.
struct Ty {
  bool is_var = false;
  std::string name;         // tyvar name (includes leading ') or constructor id
  std::vector<TyPtr> args;  // empty for tyvars

  static TyPtr var(std::string n);
  static TyPtr con(std::string n, std::vector<TyPtr> as = {});
  static TyPtr fn(TyPtr dom, TyPtr cod);
  static TyPtr boolean();
};

bool ty_equal(const TyPtr& a, const TyPtr& b);
std::string print_type(const TyPtr& t);
bool is_fn_type(const TyPtr& t);
bool is_bool_type(const TyPtr& t);

/// Number of curried argument positions in a type, e.g. a->b->c has 2.
int type_arity(const TyPtr& t);

/// Rewrite type-constructor names; unmapped names are kept.
TyPtr map_type_consts(const TyPtr& t, const std::map<std::string, std::string>& m);

void collect_type_names(const TyPtr& t, std::set<std::string>& cons,
                        std::set<std::string>& vars);

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Const, Var, App, Abs };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;  // Const id, Var name, or Abs bound-variable name
  TyPtr ty;          // Const/Var type; Abs bound-variable type
  TermPtr fn;        // App function; Abs body
  TermPtr arg;       // App argument

  static TermPtr constant(ConstId id, TyPtr ty);
  static TermPtr var(std::string name, TyPtr ty);
  static TermPtr app(TermPtr fn, TermPtr arg);
  static TermPtr abs(std::string bound, TyPtr ty, TermPtr body);
};

/// Thrown on ill-typed construction or use.
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TyPtr type_of(const TermPtr& t);
bool term_equal(const TermPtr& a, const TermPtr& b);

/// Interchange-syntax printing; parse_term(print_term(t)) == t.
std::string print_term(const TermPtr& t);

/// Reserved logical constants (=, !, ?, /\, \/, ~, ==>, <=>, T, F).
bool is_logical_const(const std::string& id);

/// Canonically renames bound variables in binder order; alpha-equivalent
/// inputs map to the same term.
TermPtr alpha_normalize(const TermPtr& t);

/// Replaces constants (term constants and type constructors) according to m.
/// The map must be injective; a non-injective map or a resulting type clash
/// raises TypeError.
TermPtr apply_const_map(const TermPtr& t, const std::map<ConstId, ConstId>& m);

/// Printed, variable-normalized subterms: constants and full application
/// spines, with variables abstracted to "V". Propositional connectives,
/// quantifiers and lambda nodes are traversed but not emitted.
std::set<std::string> subterm_strings(const TermPtr& t);

void collect_free_vars(const TermPtr& t, std::set<std::string>& out);
void collect_consts(const TermPtr& t, std::set<std::string>& out);

/// Constant ids together with type-constructor names from every type
/// annotation in the term.
void collect_all_const_names(const TermPtr& t, std::set<std::string>& out);

}  // namespace crosshammer
