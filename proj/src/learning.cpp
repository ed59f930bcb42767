#include "crosshammer/learning.hpp"

#include <algorithm>
#include <cmath>

namespace crosshammer {

FeatureSet extract_features(const TermPtr& stmt) {
  return subterm_strings(stmt);
}

Example example_of(const Theorem& t) {
  return {t.id, extract_features(t.statement), t.deps};
}

Model train(const std::vector<Example>& data) {
  Model m;
  m.data = data;
  for (size_t i = 0; i < m.data.size(); ++i)
    for (auto& f : m.data[i].features) m.feature_index[f].push_back(i);
  return m;
}

double idf(const Model& m, const std::string& feature) {
  auto it = m.feature_index.find(feature);
  if (it == m.feature_index.end() || m.data.empty()) return 0.0;
  return std::log(double(m.data.size()) / double(it->second.size()));
}

std::vector<Prediction> predict(const Model& m, const FeatureSet& conjecture,
                                const std::vector<ThmId>& candidates,
                                size_t k) {
  std::vector<double> sim(m.data.size(), 0.0);
  for (auto& f : conjecture) {
    auto it = m.feature_index.find(f);
    if (it == m.feature_index.end()) continue;
    double w = idf(m, f);
    double w2 = w * w;
    for (size_t row : it->second) sim[row] += w2;
  }

  std::map<ThmId, double> votes;
  for (size_t row = 0; row < m.data.size(); ++row) {
    if (sim[row] <= 0) continue;
    const Example& e = m.data[row];
    double w = sim[row] / double(e.deps.size() + 1);
    votes[e.id] += w;
    for (auto& d : e.deps) votes[d] += w;
  }

  std::vector<Prediction> out;
  std::set<ThmId> seen;
  for (auto& c : candidates) {
    if (!seen.insert(c).second) continue;
    auto it = votes.find(c);
    out.push_back({c, it == votes.end() ? 0.0 : it->second});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Prediction& a, const Prediction& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.id < b.id;
                   });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace crosshammer
