#pragma once

#include <map>
#include <optional>
#include <vector>

#include "crosshammer/canon.hpp"
#include "crosshammer/library.hpp"

namespace crosshammer {

/// Canonical-key buckets over one library's theorems; immutable after build.
struct EquivIndex {
  std::map<CanonicalKey, std::vector<ThmId>> buckets;  // seq order inside
  std::map<ThmId, CanonicalKey> key_of;
  const Library* lib = nullptr;
};

EquivIndex build_index(const Library& lib);

/// Theorems whose statement has the same canonical key; with `before` given,
/// restricted to seq < before.
std::vector<ThmId> equiv_class(const EquivIndex& index, const TermPtr& statement,
                               std::optional<size_t> before = std::nullopt);

std::vector<ThmId> equiv_class_key(const EquivIndex& index,
                                   const CanonicalKey& key,
                                   std::optional<size_t> before = std::nullopt);

}  // namespace crosshammer
