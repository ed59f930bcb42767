#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crosshammer/library.hpp"
#include "crosshammer/term.hpp"

namespace fixtures {

using crosshammer::ConstId;
using crosshammer::Library;
using crosshammer::TermPtr;
using crosshammer::ThmId;

// ---------------------------------------------------------------------------
// Propositional skeletons (truth-table oracle material).

struct PropFormula {
  TermPtr term;
  int num_atoms = 0;  // atoms are boolean variables a0..a{n-1}
};

PropFormula random_prop_formula(std::mt19937& rng, int max_atoms);

/// All connective trees with at most `max_connectives` internal nodes; leaf i
/// (left to right) is atom a_{i mod 6}.
std::vector<PropFormula> enumerate_prop_formulas(int max_connectives);

bool eval_prop(const PropFormula& f, unsigned mask);
bool eval_atom(const PropFormula& f, const TermPtr& atom, unsigned mask);

// ---------------------------------------------------------------------------
// Richer random formulas over a small fixed signature.

struct Formula {
  TermPtr term;
};

Formula random_formula(std::mt19937& rng);

/// Applies a random sequence of key-preserving transformations: conjunct and
/// disjunct swaps, equality-side flips, bound-variable renamings.
TermPtr random_equiv_transform(std::mt19937& rng, const TermPtr& t);

/// Changes the formula's atom multiset (renames one constant occurrence);
/// the result must get a different canonical key.
TermPtr perturb_formula(std::mt19937& rng, const TermPtr& t);

/// Independent recursive enumeration oracle for subterm_strings.
std::set<std::string> brute_force_subterms(const TermPtr& t);

// ---------------------------------------------------------------------------
// Synthetic libraries.

/// Deterministic synthetic library: `groups` concept groups (one type
/// constructor plus four term constants each) with `thms_per_group` theorems
/// whose dependencies stay inside the group's earlier theorems.
Library gen_library(const std::string& tag, int groups, int thms_per_group,
                    unsigned seed);

struct RenameFixture {
  Library original;
  Library renamed;
  std::map<ConstId, ConstId> const_truth;  // original -> renamed
  std::map<ThmId, ThmId> thm_truth;
};

/// Renamed and theorem-shuffled copy with known ground truth. `drop_fraction`
/// removes that share of theorems from the copy.
RenameFixture make_renamed_copy(const Library& lib, const std::string& new_tag,
                                unsigned seed, double drop_fraction = 0.0);

/// Byte-identical copy under a different tag.
RenameFixture make_twin(const Library& lib, const std::string& new_tag);

/// The bundled fixture: 6 groups, 30 constants, 120 theorems, including
/// lists-A/APPEND_ASSOC with exactly 3 dependencies.
Library gen_lists_A();

}  // namespace fixtures
