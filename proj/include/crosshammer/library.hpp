#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crosshammer/parse.hpp"
#include "crosshammer/term.hpp"

namespace crosshammer {

using ThmId = std::string;

enum class ConstKind { TermConstant, TypeConstructor };

struct ConstDecl {
  ConstId id;  // prefixed with the library tag, e.g. "h4/int"
  ConstKind kind;
  std::string theory;
  TyPtr type;     // term constants
  int arity = 0;  // type constructors
};

struct Theorem {
  ThmId id;
  TermPtr statement;
  std::string theory;
  size_t seq = 0;  // chronological index, dense within a library
  std::set<ThmId> deps;
};

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable after load; no coordination needed for concurrent readers.
struct Library {
  std::string tag;
  std::vector<ConstDecl> consts;
  std::vector<Theorem> thms;  // sorted by seq, seq values dense
  std::vector<std::string> theories;

  std::map<ConstId, size_t> const_index;
  std::map<ThmId, size_t> thm_index;

  Signature signature() const;
  const Theorem& theorem(const ThmId& id) const;
  bool has_theorem(const ThmId& id) const { return thm_index.count(id) > 0; }
  void reindex();
};

/// Loads and validates the line-oriented library file format.
/// Dependencies on theorems outside the export are dropped with a warning
/// written to `warnings` when given.
Library load_library(const std::string& path,
                     std::vector<std::string>* warnings = nullptr);
Library read_library(std::istream& in, const std::string& source_name,
                     std::vector<std::string>* warnings = nullptr);

void save_library(const Library& lib, const std::string& path);
void write_library(const Library& lib, std::ostream& out);

/// Theorems strictly before t in chronological order.
std::vector<ThmId> accessible(const Library& lib, const ThmId& t);

/// The stored direct dependency set of t.
const std::set<ThmId>& dep(const Library& lib, const ThmId& t);

/// Number of canonical keys occurring in both theories' theorem sets.
size_t common_class_count(const Library& lib_a, const Library& lib_b,
                          const std::string& theory_a,
                          const std::string& theory_b);

/// Runs the structural validation performed by load_library on an in-memory
/// library; throws LibraryError on the first violation.
void validate_library(const Library& lib);

}  // namespace crosshammer
