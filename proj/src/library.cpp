#include "crosshammer/library.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crosshammer/canon.hpp"

namespace crosshammer {

Signature Library::signature() const {
  Signature sig;
  for (auto& c : consts) {
    if (c.kind == ConstKind::TypeConstructor)
      sig.declare_tycon(c.id, c.arity);
    else
      sig.declare_const(c.id, c.type);
  }
  return sig;
}

const Theorem& Library::theorem(const ThmId& id) const {
  auto it = thm_index.find(id);
  if (it == thm_index.end()) throw LibraryError("unknown theorem id: " + id);
  return thms[it->second];
}

void Library::reindex() {
  const_index.clear();
  thm_index.clear();
  for (size_t i = 0; i < consts.size(); ++i) const_index[consts[i].id] = i;
  for (size_t i = 0; i < thms.size(); ++i) thm_index[thms[i].id] = i;
}

namespace {

std::string id_prefix(const std::string& id) {
  auto pos = id.find('/');
  return pos == std::string::npos ? std::string() : id.substr(0, pos);
}

void note_theory(std::vector<std::string>& theories, const std::string& th) {
  if (std::find(theories.begin(), theories.end(), th) == theories.end())
    theories.push_back(th);
}

}  // namespace

void validate_library(const Library& lib) {
  std::set<std::string> const_ids;
  for (auto& c : lib.consts) {
    if (!const_ids.insert(c.id).second)
      throw LibraryError("duplicate constant id: " + c.id);
    // merged namespaces introduce common/ ids next to the tagged ones
    if (!lib.tag.empty() && id_prefix(c.id) != lib.tag &&
        id_prefix(c.id) != "common")
      throw LibraryError("constant " + c.id + " does not carry library tag " +
                         lib.tag);
  }
  std::set<std::string> thm_ids;
  for (size_t i = 0; i < lib.thms.size(); ++i) {
    const Theorem& t = lib.thms[i];
    if (!thm_ids.insert(t.id).second)
      throw LibraryError("duplicate theorem id: " + t.id);
    if (t.seq != i)
      throw LibraryError("theorem " + t.id + " breaks dense seq ordering (seq " +
                         std::to_string(t.seq) + " at position " +
                         std::to_string(i) + ")");
    if (!is_bool_type(type_of(t.statement)))
      throw LibraryError("theorem " + t.id + " statement is not boolean");
    for (auto& d : t.deps) {
      auto it = lib.thm_index.find(d);
      if (it == lib.thm_index.end())
        throw LibraryError("theorem " + t.id + " depends on unknown id " + d);
      if (lib.thms[it->second].seq >= t.seq)
        throw LibraryError("theorem " + t.id + " depends on " + d +
                           " which is not proved earlier");
    }
  }
}

Library read_library(std::istream& in, const std::string& source_name,
                     std::vector<std::string>* warnings) {
  struct RawThm {
    std::string id, theory, stmt;
    size_t seq;
    int line;
  };
  std::map<std::string, std::vector<std::string>> raw_deps;
  std::vector<RawThm> raw_thms;
  Library lib;

  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> const_lines;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    size_t start = trimmed.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (trimmed[start] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    auto fail = [&](const std::string& msg) {
      throw LibraryError(source_name + ":" + std::to_string(lineno) + ": " +
                         msg);
    };
    if (kind == "C") {
      std::string id, ckind, theory;
      if (!(ls >> id >> ckind >> theory)) fail("malformed constant record");
      std::string rest;
      std::getline(ls, rest);
      ConstDecl d;
      d.id = id;
      d.theory = theory;
      if (ckind == "term") {
        d.kind = ConstKind::TermConstant;
        const_lines.emplace_back(lineno, rest);  // parsed after all tycons seen
      } else if (ckind == "tycon") {
        d.kind = ConstKind::TypeConstructor;
        try {
          d.arity = std::stoi(rest);
        } catch (...) {
          fail("malformed type constructor arity");
        }
        const_lines.emplace_back(lineno, "");
      } else {
        fail("unknown constant kind: " + ckind);
      }
      note_theory(lib.theories, theory);
      lib.consts.push_back(std::move(d));
    } else if (kind == "T") {
      RawThm t;
      if (!(ls >> t.id >> t.theory >> t.seq)) fail("malformed theorem record");
      std::getline(ls, t.stmt);
      t.line = lineno;
      note_theory(lib.theories, t.theory);
      raw_thms.push_back(std::move(t));
    } else if (kind == "D") {
      std::string id;
      if (!(ls >> id)) fail("malformed dependency record");
      std::string d;
      while (ls >> d) raw_deps[id].push_back(d);
    } else {
      fail("unknown record kind: " + kind);
    }
  }

  if (!lib.consts.empty())
    lib.tag = id_prefix(lib.consts.front().id);
  else if (!raw_thms.empty())
    lib.tag = id_prefix(raw_thms.front().id);

  Signature sig;
  for (auto& c : lib.consts)
    if (c.kind == ConstKind::TypeConstructor) sig.declare_tycon(c.id, c.arity);
  for (size_t i = 0; i < lib.consts.size(); ++i) {
    ConstDecl& c = lib.consts[i];
    if (c.kind != ConstKind::TermConstant) continue;
    try {
      c.type = parse_type(const_lines[i].second, sig);
    } catch (const ParseError& e) {
      throw LibraryError(source_name + ":" +
                         std::to_string(const_lines[i].first) +
                         ": bad type for " + c.id + ": " + e.what());
    }
    sig.declare_const(c.id, c.type);
  }

  std::sort(raw_thms.begin(), raw_thms.end(),
            [](const RawThm& a, const RawThm& b) { return a.seq < b.seq; });
  std::set<std::string> known_ids;
  for (auto& r : raw_thms) known_ids.insert(r.id);
  for (auto& r : raw_thms) {
    Theorem t;
    t.id = r.id;
    t.theory = r.theory;
    t.seq = r.seq;
    try {
      t.statement = parse_term(r.stmt, sig);
    } catch (const ParseError& e) {
      throw LibraryError(source_name + ":" + std::to_string(r.line) +
                         ": bad statement for " + r.id + ": " + e.what());
    }
    auto dit = raw_deps.find(r.id);
    if (dit != raw_deps.end()) {
      for (auto& d : dit->second) {
        if (known_ids.count(d)) {
          t.deps.insert(d);
        } else if (warnings) {
          warnings->push_back("dropping dependency of " + r.id +
                              " on theorem outside the export: " + d);
        }
      }
    }
    lib.thms.push_back(std::move(t));
  }
  lib.reindex();
  validate_library(lib);
  return lib;
}

Library load_library(const std::string& path,
                     std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw LibraryError("cannot open library file: " + path);
  return read_library(in, path, warnings);
}

void write_library(const Library& lib, std::ostream& out) {
  out << "# library " << lib.tag << "\n";
  for (auto& c : lib.consts) {
    if (c.kind == ConstKind::TypeConstructor)
      out << "C " << c.id << " tycon " << c.theory << " " << c.arity << "\n";
    else
      out << "C " << c.id << " term " << c.theory << " " << print_type(c.type)
          << "\n";
  }
  for (auto& t : lib.thms) {
    out << "T " << t.id << " " << t.theory << " " << t.seq << " "
        << print_term(t.statement) << "\n";
    if (!t.deps.empty()) {
      out << "D " << t.id;
      for (auto& d : t.deps) out << " " << d;
      out << "\n";
    }
  }
}

void save_library(const Library& lib, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw LibraryError("cannot write library file: " + path);
  write_library(lib, out);
}

std::vector<ThmId> accessible(const Library& lib, const ThmId& t) {
  const Theorem& th = lib.theorem(t);
  std::vector<ThmId> out;
  out.reserve(th.seq);
  for (size_t i = 0; i < th.seq; ++i) out.push_back(lib.thms[i].id);
  return out;
}

const std::set<ThmId>& dep(const Library& lib, const ThmId& t) {
  return lib.theorem(t).deps;
}

size_t common_class_count(const Library& lib_a, const Library& lib_b,
                          const std::string& theory_a,
                          const std::string& theory_b) {
  auto keys_of = [](const Library& lib, const std::string& theory) {
    if (std::find(lib.theories.begin(), lib.theories.end(), theory) ==
        lib.theories.end())
      throw LibraryError("unknown theory: " + theory);
    std::set<CanonicalKey> keys;
    for (auto& t : lib.thms)
      if (t.theory == theory) keys.insert(canonical_key(t.statement));
    return keys;
  };
  auto ka = keys_of(lib_a, theory_a);
  auto kb = keys_of(lib_b, theory_b);
  size_t n = 0;
  for (auto& k : ka)
    if (kb.count(k)) ++n;
  return n;
}

}  // namespace crosshammer
