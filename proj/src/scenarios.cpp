#include "crosshammer/scenarios.hpp"

#include <algorithm>
#include <stdexcept>

namespace crosshammer {

const std::vector<std::string> kScenarioTags = {
    "empty", "internal", "ext-deps", "ext-pred", "comb-learn", "comb-pred"};

namespace {

std::vector<ThmId> internal_candidates(const ScenarioContext& ctx) {
  std::vector<ThmId> out;
  for (auto& t : ctx.lib_int->thms) {
    if (t.seq >= ctx.seq_bound) break;
    out.push_back(t.id);
  }
  return out;
}

/// External facts are bounded only when the conjecture itself has an external
/// equivalent: then everything offered must predate the earliest one.
std::optional<size_t> external_bound(const ScenarioContext& ctx,
                                     const TermPtr& c) {
  std::vector<ThmId> eq = equiv_class(ctx.idx_ext, c);
  if (eq.empty()) return std::nullopt;
  return ctx.lib_ext->theorem(eq.front()).seq;  // buckets are in seq order
}

std::vector<ThmId> external_candidates(const ScenarioContext& ctx,
                                       std::optional<size_t> bound) {
  std::vector<ThmId> out;
  for (auto& t : ctx.lib_ext->thms) {
    if (bound && t.seq >= *bound) break;
    out.push_back(t.id);
  }
  return out;
}

}  // namespace

ScenarioContext make_context(const Library& merged_int,
                             const Library& merged_ext, size_t seq_bound,
                             size_t k, bool unchecked) {
  ScenarioContext ctx;
  ctx.lib_int = &merged_int;
  ctx.lib_ext = &merged_ext;
  ctx.idx_int = build_index(merged_int);
  ctx.idx_ext = build_index(merged_ext);
  ctx.seq_bound = seq_bound;
  ctx.k = k;
  ctx.unchecked = unchecked;

  std::vector<Example> internal_data;
  for (auto& t : merged_int.thms) {
    if (t.seq >= seq_bound) break;
    internal_data.push_back(example_of(t));
  }
  std::vector<Example> external_data;
  for (auto& t : merged_ext.thms) external_data.push_back(example_of(t));

  std::vector<Example> combined = internal_data;
  combined.insert(combined.end(), external_data.begin(), external_data.end());

  ctx.model_int = train(internal_data);
  ctx.model_ext = train(external_data);
  ctx.model_comb = train(combined);
  return ctx;
}

Advice scenario_empty(const ScenarioContext&, const TermPtr& c) {
  return {c, "empty", true, {}, {}};
}

Advice scenario_internal(const ScenarioContext& ctx, const TermPtr& c) {
  Advice adv{c, "internal", true, {}, {}};
  auto preds = predict(ctx.model_int, extract_features(c),
                       internal_candidates(ctx), ctx.k);
  for (auto& p : preds)
    adv.internal_lemmas.push_back({p.id, p.score, "internal prediction"});
  return adv;
}

Advice scenario_external_deps(const ScenarioContext& ctx, const TermPtr& c) {
  Advice adv{c, "ext-deps", true, {}, {}};
  std::vector<ThmId> s1 = equiv_class(ctx.idx_ext, c);
  if (s1.empty()) {
    adv.applicable = false;
    return adv;
  }
  size_t min_seq = ctx.lib_ext->theorem(s1.front()).seq;

  std::set<ThmId> s2;
  for (auto& t : s1) s2.insert(dep(*ctx.lib_ext, t).begin(),
                               dep(*ctx.lib_ext, t).end());

  std::set<ThmId> seen;
  for (auto& d : s2) {
    const Theorem& ext = ctx.lib_ext->theorem(d);
    std::vector<ThmId> eq =
        equiv_class(ctx.idx_int, ext.statement, ctx.seq_bound);
    if (eq.empty()) {
      if (ctx.unchecked && ext.seq < min_seq)
        adv.external_lemmas.push_back({d, 0, "unmapped external dependency"});
      continue;
    }
    for (auto& i : eq)
      if (seen.insert(i).second)
        adv.internal_lemmas.push_back({i, 0, "equivalent of " + d});
  }
  return adv;
}

Advice scenario_external_pred(const ScenarioContext& ctx, const TermPtr& c) {
  Advice adv{c, "ext-pred", true, {}, {}};
  FeatureSet fs = extract_features(c);
  auto preds = predict(ctx.model_ext, fs,
                       external_candidates(ctx, external_bound(ctx, c)), ctx.k);
  std::set<ThmId> seen;
  size_t total = 0;
  for (auto& p : preds) {
    if (total >= ctx.k) break;
    const Theorem& ext = ctx.lib_ext->theorem(p.id);
    std::vector<ThmId> eq =
        equiv_class(ctx.idx_int, ext.statement, ctx.seq_bound);
    if (eq.empty()) {
      if (ctx.unchecked) {
        adv.external_lemmas.push_back({p.id, p.score, "external prediction"});
        ++total;
      }
      continue;
    }
    for (auto& i : eq) {
      if (total >= ctx.k) break;
      if (seen.insert(i).second) {
        adv.internal_lemmas.push_back({i, p.score, "equivalent of " + p.id});
        ++total;
      }
    }
  }
  return adv;
}

Advice scenario_combined_learning(const ScenarioContext& ctx, const TermPtr& c) {
  Advice adv{c, "comb-learn", true, {}, {}};
  auto preds = predict(ctx.model_comb, extract_features(c),
                       internal_candidates(ctx), ctx.k);
  for (auto& p : preds)
    adv.internal_lemmas.push_back({p.id, p.score, "combined prediction"});
  return adv;
}

Advice scenario_combined_pred(const ScenarioContext& ctx, const TermPtr& c) {
  Advice adv{c, "comb-pred", true, {}, {}};
  FeatureSet fs = extract_features(c);
  auto s2i = predict(ctx.model_comb, fs, internal_candidates(ctx), ctx.k);
  auto s2e = predict(ctx.model_comb, fs,
                     external_candidates(ctx, external_bound(ctx, c)), ctx.k);

  struct Cand {
    ThmId id;
    double score;
    bool internal_origin;
    bool external_lemma;
    std::string note;
  };
  std::vector<Cand> merged;
  std::map<ThmId, size_t> pos;  // internal id -> merged slot
  for (auto& p : s2i) {
    pos[p.id] = merged.size();
    merged.push_back({p.id, p.score, true, false, "combined prediction"});
  }
  for (auto& p : s2e) {
    const Theorem& ext = ctx.lib_ext->theorem(p.id);
    std::vector<ThmId> eq =
        equiv_class(ctx.idx_int, ext.statement, ctx.seq_bound);
    if (eq.empty()) {
      if (ctx.unchecked)
        merged.push_back({p.id, p.score, false, true, "external prediction"});
      continue;
    }
    for (auto& i : eq) {
      auto it = pos.find(i);
      if (it != pos.end()) {
        merged[it->second].score = std::max(merged[it->second].score, p.score);
      } else {
        pos[i] = merged.size();
        merged.push_back({i, p.score, false, false, "equivalent of " + p.id});
      }
    }
  }
  std::stable_sort(merged.begin(), merged.end(), [](const Cand& a,
                                                    const Cand& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.internal_origin != b.internal_origin) return a.internal_origin;
    return a.id < b.id;
  });
  if (merged.size() > ctx.k) merged.resize(ctx.k);
  for (auto& m : merged) {
    if (m.external_lemma)
      adv.external_lemmas.push_back({m.id, m.score, m.note});
    else
      adv.internal_lemmas.push_back({m.id, m.score, m.note});
  }
  return adv;
}

Advice run_scenario(const ScenarioContext& ctx, const std::string& tag,
                    const TermPtr& c) {
  if (tag == "empty") return scenario_empty(ctx, c);
  if (tag == "internal") return scenario_internal(ctx, c);
  if (tag == "ext-deps") return scenario_external_deps(ctx, c);
  if (tag == "ext-pred") return scenario_external_pred(ctx, c);
  if (tag == "comb-learn") return scenario_combined_learning(ctx, c);
  if (tag == "comb-pred") return scenario_combined_pred(ctx, c);
  throw std::invalid_argument("unknown scenario: " + tag);
}

}  // namespace crosshammer
