#pragma once

#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "crosshammer/canon.hpp"
#include "crosshammer/library.hpp"

namespace crosshammer {

/// Abstracted statement pattern around one focus constant: the focus becomes
/// a hole token, every other non-logical constant an arity-typed wildcard
/// (or its common representative once matched), and the result is keyed
/// canonically. `tag` is the kind/arity gate of the focus constant.
struct Property {
  CanonicalKey pattern;
  std::string tag;  // "t<arity>" for term constants, "y<arity>" for tycons

  auto operator<=>(const Property&) const = default;
};

struct PropertyStats {
  int freq = 0;                  // distinct constants (both libraries) with p
  std::set<ConstId> neighbors;   // non-focus non-logical constants in sources
};

struct MatchedPair {
  ConstId internal_id;
  ConstId external_id;
  double score = 0;
  size_t iteration = 0;
};

struct MatchState {
  std::map<ConstId, ConstId> int_to_ext;
  std::map<ConstId, ConstId> ext_to_int;
  std::vector<MatchedPair> log;
  std::map<Property, PropertyStats> table;  // frozen initial frequencies
  std::set<ConstId> matched_constants;      // both sides, non-logical

  bool is_matched(const ConstId& c) const {
    return matched_constants.count(c) > 0;
  }
  /// Fraction of p's neighbor constants currently matched.
  double mu(const Property& p) const;
};

struct MatchConfig {
  double threshold = 0.0;  // a pair must score strictly above this
  size_t max_iterations = std::numeric_limits<size_t>::max();
};

/// Kind/arity tag used for the compatibility gate.
std::string const_tag(const ConstDecl& c);

/// Patterns for every non-logical constant of the library, abstracted against
/// the current matched set.
std::map<ConstId, std::set<Property>> extract_properties(const Library& lib,
                                                         const MatchState& state);

/// w(p) = (1 + mu(p)) / f(p); highest for rare properties with many matched
/// neighbors.
double property_weight(const Property& p, const MatchState& state);

/// Sum of shared property weights amortised by sqrt of the property-set sizes.
double pair_score(const std::set<Property>& p1, const std::set<Property>& p2,
                  const MatchState& state);

/// Greedy iterated matching between the two libraries' constants. Initial
/// property frequencies are computed once; only the matched proportion
/// influences weights across iterations. Deterministic: equal top scores are
/// broken by the lexicographically smallest id pair.
MatchState compute_matching(const Library& internal_lib,
                            const Library& external_lib,
                            const MatchConfig& cfg = {});

struct MergeResult {
  Library internal_lib;
  Library external_lib;
  std::map<ConstId, ConstId> internal_map;  // original id -> common id
  std::map<ConstId, ConstId> external_map;
};

/// Rewrites both libraries so matched constants share common/ names.
MergeResult merge_namespace(const Library& internal_lib,
                            const Library& external_lib,
                            const MatchState& state);

struct EvolutionPoint {
  size_t seq;             // internal chronological boundary
  size_t matched_count;   // theory constants matched from the prefix
  size_t declared_count;  // theory constants occurring in the prefix
};

/// Matched-constant series for one internal theory: matching recomputed from each
/// accessible prefix against the full external library.
std::vector<EvolutionPoint> matching_evolution(const Library& lib_int,
                                               const Library& lib_ext,
                                               const std::string& theory,
                                               const MatchConfig& cfg = {});

void save_matching(const MatchState& state, const std::string& path);
MatchState load_matching(const std::string& path);

}  // namespace crosshammer
