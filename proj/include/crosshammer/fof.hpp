#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "crosshammer/library.hpp"
#include "crosshammer/term.hpp"

namespace crosshammer {

struct TranslateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FofFormula {
  std::string name;  // sanitized, unique within the problem
  std::string role;  // "axiom" or "conjecture"
  std::string formula;
};

struct FofProblem {
  std::vector<FofFormula> axioms;  // lemmas first, then lifted lambda defs
  FofFormula conjecture;
  std::map<std::string, ThmId> name_map;       // axiom name -> source lemma
  std::map<std::string, std::string> symbol_map;  // fof symbol -> HOL origin
};

/// First-order translation: free variables are universally closed, lambdas
/// are lifted to fresh defining axioms, symbols applied at one consistent
/// arity become direct functions or predicates, everything else goes through
/// a binary apply symbol with a truth-predicate guard, and constants used at
/// several types are monomorphized by an occurrence-type suffix.
FofProblem translate(const TermPtr& conjecture,
                     const std::vector<std::pair<ThmId, TermPtr>>& lemmas);

/// Deterministic byte-for-byte TPTP text.
std::string serialize(const FofProblem& p);

/// Writes the problem and a `<path>.map` file of `name<TAB>ThmId` lines.
void write_problem(const FofProblem& p, const std::string& path);

enum class AtpStatus { Theorem, CounterSatisfiable, Timeout, GaveUp, Error };

std::string atp_status_name(AtpStatus s);

struct AtpResult {
  AtpStatus status = AtpStatus::Error;
  std::set<ThmId> used;  // empty unless status == Theorem
  double wall_seconds = 0;
  bool cached = false;
};

struct AtpConfig {
  std::string bin;                 // prover executable
  std::vector<std::string> args;   // extra arguments, before the problem file
  int timeout_sec = 30;
  std::string cache_dir;           // empty disables the result cache
};

/// Runs the prover on the serialized problem with a wall-clock limit, parses
/// the SZS status line and, on Theorem, the axiom names mentioned in the
/// proof. Missing executables and unparsable output yield status Error.
AtpResult run_atp(const FofProblem& p, const AtpConfig& cfg);

/// Re-runs on the used premises only; keeps the original result when the
/// reduced problem no longer proves. Never enlarges the used set.
AtpResult minimize(const FofProblem& p, const AtpResult& r,
                   const AtpConfig& cfg);

}  // namespace crosshammer
