#include "crosshammer/equivalence.hpp"

namespace crosshammer {

EquivIndex build_index(const Library& lib) {
  EquivIndex idx;
  idx.lib = &lib;
  for (auto& t : lib.thms) {
    CanonicalKey k = canonical_key(t.statement);
    idx.buckets[k].push_back(t.id);  // thms iterate in seq order
    idx.key_of[t.id] = std::move(k);
  }
  return idx;
}

std::vector<ThmId> equiv_class_key(const EquivIndex& index,
                                   const CanonicalKey& key,
                                   std::optional<size_t> before) {
  auto it = index.buckets.find(key);
  if (it == index.buckets.end()) return {};
  if (!before) return it->second;
  std::vector<ThmId> out;
  for (auto& id : it->second)
    if (index.lib->theorem(id).seq < *before) out.push_back(id);
  return out;
}

std::vector<ThmId> equiv_class(const EquivIndex& index, const TermPtr& statement,
                               std::optional<size_t> before) {
  return equiv_class_key(index, canonical_key(statement), before);
}

}  // namespace crosshammer
