#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "crosshammer/library.hpp"
#include "crosshammer/term.hpp"

namespace crosshammer {

using FeatureSet = std::set<std::string>;

/// Symbol and normalized-subterm features of a statement.
FeatureSet extract_features(const TermPtr& stmt);

struct Example {
  ThmId id;
  FeatureSet features;
  std::set<ThmId> deps;
};

Example example_of(const Theorem& t);

struct Model {
  std::vector<Example> data;
  std::map<std::string, std::vector<size_t>> feature_index;  // feature -> rows
  size_t default_k = 128;
};

Model train(const std::vector<Example>& data);

/// ln(N / df); zero for unseen features.
double idf(const Model& m, const std::string& feature);

struct Prediction {
  ThmId id;
  double score = 0;
};

/// Weighted k-nearest-neighbour ranking. Every training example with a
/// positive feature overlap votes for itself and its dependencies with weight
/// sim / (|deps| + 1), where sim is the sum of squared idf over shared
/// features. Returns the top-k candidates by accumulated vote; candidates
/// without votes follow in id order, so the output is a permutation of a
/// candidate prefix. Deterministic: ties break toward the smaller id.
std::vector<Prediction> predict(const Model& m, const FeatureSet& conjecture,
                                const std::vector<ThmId>& candidates,
                                size_t k);

}  // namespace crosshammer
