#pragma once

#include <string>
#include <vector>

#include "crosshammer/equivalence.hpp"
#include "crosshammer/learning.hpp"
#include "crosshammer/library.hpp"

namespace crosshammer {

struct AdviceLemma {
  ThmId id;
  double score = 0;
  std::string note;  // which step produced the lemma
};

struct Advice {
  TermPtr conjecture;
  std::string scenario;
  bool applicable = true;
  std::vector<AdviceLemma> internal_lemmas;
  std::vector<AdviceLemma> external_lemmas;  // unchecked mode only
};

/// Read-only evaluation world for one conjecture position. Both libraries
/// must already be in the merged namespace, so cross-library equivalence is a
/// plain key lookup and no conjecture translation step is needed.
struct ScenarioContext {
  const Library* lib_int = nullptr;
  const Library* lib_ext = nullptr;
  EquivIndex idx_int, idx_ext;
  Model model_int;   // internal accessible prefix
  Model model_ext;   // full external library
  Model model_comb;  // prefix + full external corpus
  size_t seq_bound = 0;  // conjecture's position: facts need seq < bound
  size_t k = 128;
  bool unchecked = false;
};

ScenarioContext make_context(const Library& merged_int,
                             const Library& merged_ext, size_t seq_bound,
                             size_t k = 128, bool unchecked = false);

Advice scenario_empty(const ScenarioContext& ctx, const TermPtr& c);
Advice scenario_internal(const ScenarioContext& ctx, const TermPtr& c);
/// Not applicable when the conjecture has no external equivalent.
Advice scenario_external_deps(const ScenarioContext& ctx, const TermPtr& c);
Advice scenario_external_pred(const ScenarioContext& ctx, const TermPtr& c);
Advice scenario_combined_learning(const ScenarioContext& ctx, const TermPtr& c);
Advice scenario_combined_pred(const ScenarioContext& ctx, const TermPtr& c);

/// Dispatch by tag: empty, internal, ext-deps, ext-pred, comb-learn,
/// comb-pred. Throws std::invalid_argument on unknown tags.
Advice run_scenario(const ScenarioContext& ctx, const std::string& tag,
                    const TermPtr& c);

extern const std::vector<std::string> kScenarioTags;

}  // namespace crosshammer
