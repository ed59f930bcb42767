#include "crosshammer/matching.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace crosshammer {

namespace {

bool builtin_name(const std::string& n) {
  return is_logical_const(n) || n == "bool" || n == "->";
}

TyPtr map_type_names(const TyPtr& t,
                     const std::function<std::string(const std::string&)>& f) {
  if (t->is_var) return t;
  std::vector<TyPtr> args;
  args.reserve(t->args.size());
  for (auto& a : t->args) args.push_back(map_type_names(a, f));
  return Ty::con(f(t->name), std::move(args));
}

/// Prints a declared type with constructors abstracted and tyvars numbered by
/// first occurrence, e.g. (-> ('a list) nat) becomes "(?1 (?1 'v0) ?0)".
std::string abstract_type_string(
    const TyPtr& t, const std::function<std::string(const std::string&)>& tycon,
    std::map<std::string, std::string>& tyvars) {
  if (t->is_var) {
    auto it = tyvars.find(t->name);
    if (it == tyvars.end())
      it = tyvars.emplace(t->name, "'v" + std::to_string(tyvars.size())).first;
    return it->second;
  }
  if (t->args.empty()) return tycon(t->name);
  std::string out = "(" + tycon(t->name);
  for (auto& a : t->args) out += " " + abstract_type_string(a, tycon, tyvars);
  return out + ")";
}

struct Abstractor {
  const Library& lib;
  const MatchState& state;

  const ConstDecl* decl(const std::string& n) const {
    auto it = lib.const_index.find(n);
    return it == lib.const_index.end() ? nullptr : &lib.consts[it->second];
  }

  /// Common name for a matched constant: the internal partner's id, so the
  /// same pattern string arises from either library.
  std::string representative(const ConstId& c) const {
    if (state.int_to_ext.count(c)) return c;
    auto it = state.ext_to_int.find(c);
    if (it != state.ext_to_int.end()) return it->second;
    return "";
  }

  std::string tycon_name(const std::string& n, const ConstId& focus) const {
    if (n == focus) return "#";
    const ConstDecl* d = decl(n);
    if (!d) return n;  // builtin or foreign, keep
    std::string rep = representative(n);
    if (!rep.empty()) return rep;
    return "?" + std::to_string(d->arity);
  }

  std::string term_const_name(const std::string& n, const ConstId& focus) const {
    if (n == focus) return "#";
    const ConstDecl* d = decl(n);
    if (!d) return n;
    std::string rep = representative(n);
    if (!rep.empty()) return rep;
    std::map<std::string, std::string> tyvars;
    auto tycon = [&](const std::string& tn) { return tycon_name(tn, focus); };
    return "?" + abstract_type_string(d->type, tycon, tyvars);
  }

  TermPtr abstract(const TermPtr& t, const ConstId& focus) const {
    auto tycon = [&](const std::string& tn) { return tycon_name(tn, focus); };
    switch (t->kind) {
      case TermKind::Const:
        return Term::constant(term_const_name(t->name, focus),
                              map_type_names(t->ty, tycon));
      case TermKind::Var:
        return Term::var(t->name, map_type_names(t->ty, tycon));
      case TermKind::App:
        return Term::app(abstract(t->fn, focus), abstract(t->arg, focus));
      case TermKind::Abs:
        return Term::abs(t->name, map_type_names(t->ty, tycon),
                         abstract(t->fn, focus));
    }
    return t;
  }
};

/// Library-declared non-logical constants occurring in a statement.
std::set<ConstId> statement_consts(const Library& lib, const TermPtr& stmt) {
  std::set<std::string> names;
  collect_all_const_names(stmt, names);
  std::set<ConstId> out;
  for (auto& n : names)
    if (!builtin_name(n) && lib.const_index.count(n)) out.insert(n);
  return out;
}

std::map<ConstId, std::set<Property>> extract_core(
    const Library& lib, const MatchState& state,
    std::map<Property, PropertyStats>* table) {
  std::map<ConstId, std::set<Property>> out;
  for (auto& c : lib.consts) out[c.id];  // every constant gets an entry
  Abstractor abs{lib, state};
  for (auto& thm : lib.thms) {
    std::set<ConstId> cs = statement_consts(lib, thm.statement);
    for (auto& focus : cs) {
      Property p{canonical_key(abs.abstract(thm.statement, focus)),
                 const_tag(lib.consts[lib.const_index.at(focus)])};
      out[focus].insert(p);
      if (table) {
        PropertyStats& st = (*table)[p];
        for (auto& other : cs)
          if (other != focus) st.neighbors.insert(other);
      }
    }
  }
  return out;
}

std::string id_suffix(const ConstId& id) {
  auto pos = id.find('/');
  return pos == std::string::npos ? id : id.substr(pos + 1);
}

}  // namespace

std::string const_tag(const ConstDecl& c) {
  if (c.kind == ConstKind::TypeConstructor) return "y" + std::to_string(c.arity);
  return "t" + std::to_string(type_arity(c.type));
}

double MatchState::mu(const Property& p) const {
  auto it = table.find(p);
  if (it == table.end() || it->second.neighbors.empty()) return 0.0;
  size_t matched = 0;
  for (auto& n : it->second.neighbors)
    if (matched_constants.count(n)) ++matched;
  return double(matched) / double(it->second.neighbors.size());
}

std::map<ConstId, std::set<Property>> extract_properties(
    const Library& lib, const MatchState& state) {
  return extract_core(lib, state, nullptr);
}

double property_weight(const Property& p, const MatchState& state) {
  auto it = state.table.find(p);
  if (it == state.table.end() || it->second.freq == 0) return 0.0;
  return (1.0 + state.mu(p)) / double(it->second.freq);
}

double pair_score(const std::set<Property>& p1, const std::set<Property>& p2,
                  const MatchState& state) {
  if (p1.empty() || p2.empty()) return 0.0;
  double sum = 0;
  for (auto& p : p1)
    if (p2.count(p)) sum += property_weight(p, state);
  return sum / std::sqrt(double(p1.size()) * double(p2.size()));
}

MatchState compute_matching(const Library& internal_lib,
                            const Library& external_lib,
                            const MatchConfig& cfg) {
  MatchState state;
  auto props_a = extract_core(internal_lib, state, &state.table);
  auto props_b = extract_core(external_lib, state, &state.table);

  // Property indexing; frequencies count distinct holders over both sides.
  std::map<Property, size_t> pid_of;
  std::vector<const Property*> plist;
  std::vector<std::vector<size_t>> holders_a, holders_b;
  std::vector<std::string> ids_a, ids_b;
  std::vector<size_t> pset_size_a, pset_size_b;
  for (auto& [c, ps] : props_a) {
    size_t ci = ids_a.size();
    ids_a.push_back(c);
    pset_size_a.push_back(ps.size());
    for (auto& p : ps) {
      auto [it, fresh] = pid_of.emplace(p, plist.size());
      if (fresh) {
        plist.push_back(&it->first);
        holders_a.emplace_back();
        holders_b.emplace_back();
      }
      holders_a[it->second].push_back(ci);
    }
  }
  for (auto& [c, ps] : props_b) {
    size_t ci = ids_b.size();
    ids_b.push_back(c);
    pset_size_b.push_back(ps.size());
    for (auto& p : ps) {
      auto [it, fresh] = pid_of.emplace(p, plist.size());
      if (fresh) {
        plist.push_back(&it->first);
        holders_a.emplace_back();
        holders_b.emplace_back();
      }
      holders_b[it->second].push_back(ci);
    }
  }
  for (auto& [p, pid] : pid_of)
    state.table[p].freq = int(holders_a[pid].size() + holders_b[pid].size());

  // Candidate pairs: constants sharing at least one property. Shared tags are
  // implied by property identity.
  struct Pair {
    size_t a, b;
    double stat = 0, dyn = 0, norm = 1;
  };
  std::vector<Pair> pairs;
  std::map<std::pair<size_t, size_t>, size_t> pair_of;
  std::vector<std::vector<size_t>> pid_pairs(plist.size());
  for (auto& [p, pid] : pid_of) {
    double w = 1.0 / double(state.table.at(p).freq);
    for (size_t a : holders_a[pid])
      for (size_t b : holders_b[pid]) {
        auto [it, fresh] = pair_of.emplace(std::make_pair(a, b), pairs.size());
        if (fresh) {
          pairs.push_back({a, b, 0, 0,
                           std::sqrt(double(pset_size_a[a]) *
                                     double(pset_size_b[b]))});
        }
        pairs[it->second].stat += w;
        pid_pairs[pid].push_back(it->second);
      }
  }

  // For the dynamic part: which neighbor sets each constant belongs to.
  std::map<ConstId, std::vector<size_t>> member_of;
  for (auto& [p, st] : state.table) {
    size_t pid = pid_of.at(p);
    for (auto& n : st.neighbors) member_of[n].push_back(pid);
  }

  std::vector<bool> done_a(ids_a.size(), false), done_b(ids_b.size(), false);
  auto commit_mu = [&](const ConstId& c) {
    auto it = member_of.find(c);
    if (it == member_of.end()) return;
    for (size_t pid : it->second) {
      const PropertyStats& st = state.table.at(*plist[pid]);
      double delta = 1.0 / (double(st.neighbors.size()) * double(st.freq));
      for (size_t pi : pid_pairs[pid]) pairs[pi].dyn += delta;
    }
  };

  for (size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    double best = cfg.threshold;
    size_t best_pi = pairs.size();
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
      const Pair& pr = pairs[pi];
      if (done_a[pr.a] || done_b[pr.b]) continue;
      double score = (pr.stat + pr.dyn) / pr.norm;
      if (score <= cfg.threshold) continue;
      if (best_pi == pairs.size() || score > best ||
          (score == best &&
           std::make_pair(ids_a[pr.a], ids_b[pr.b]) <
               std::make_pair(ids_a[pairs[best_pi].a],
                              ids_b[pairs[best_pi].b]))) {
        best = score;
        best_pi = pi;
      }
    }
    if (best_pi == pairs.size()) break;
    const Pair& pr = pairs[best_pi];
    const ConstId& a = ids_a[pr.a];
    const ConstId& b = ids_b[pr.b];
    done_a[pr.a] = true;
    done_b[pr.b] = true;
    state.int_to_ext[a] = b;
    state.ext_to_int[b] = a;
    state.matched_constants.insert(a);
    state.matched_constants.insert(b);
    state.log.push_back({a, b, best, iter});
    commit_mu(a);
    commit_mu(b);
  }
  return state;
}

namespace {

Library rewrite_library(const Library& lib,
                        const std::map<ConstId, ConstId>& m) {
  Library out = lib;
  for (auto& c : out.consts) {
    auto it = m.find(c.id);
    if (it != m.end()) c.id = it->second;
    if (c.kind == ConstKind::TermConstant) c.type = map_type_consts(c.type, m);
  }
  for (auto& t : out.thms) t.statement = apply_const_map(t.statement, m);
  out.reindex();
  return out;
}

}  // namespace

MergeResult merge_namespace(const Library& internal_lib,
                            const Library& external_lib,
                            const MatchState& state) {
  std::vector<std::pair<ConstId, ConstId>> live(state.int_to_ext.begin(),
                                                state.int_to_ext.end());
  for (;;) {
    MergeResult res;
    for (auto& [i, e] : live) {
      ConstId common = "common/" + id_suffix(i);
      res.internal_map[i] = common;
      res.external_map[e] = common;
    }
    try {
      res.internal_lib = rewrite_library(internal_lib, res.internal_map);
      res.external_lib = rewrite_library(external_lib, res.external_map);
      return res;
    } catch (const TypeError&) {
      // A merged name made some statement ill-typed: drop pairs until the
      // rewrite succeeds. Dropping the last-added pair first keeps the
      // highest-scoring matches.
      if (live.empty()) throw;
      live.pop_back();
    }
  }
}

std::vector<EvolutionPoint> matching_evolution(const Library& lib_int,
                                               const Library& lib_ext,
                                               const std::string& theory,
                                               const MatchConfig& cfg) {
  if (std::find(lib_int.theories.begin(), lib_int.theories.end(), theory) ==
      lib_int.theories.end())
    throw LibraryError("matching_evolution: unknown theory " + theory);

  std::set<ConstId> theory_consts;
  for (auto& c : lib_int.consts)
    if (c.theory == theory) theory_consts.insert(c.id);

  std::vector<size_t> bounds;
  for (auto& t : lib_int.thms)
    if (t.theory == theory) bounds.push_back(t.seq);
  bounds.push_back(lib_int.thms.size());

  std::vector<EvolutionPoint> out;
  for (size_t bound : bounds) {
    Library prefix = lib_int;
    prefix.thms.resize(bound);
    prefix.reindex();

    std::set<ConstId> declared;
    for (auto& t : prefix.thms)
      for (auto& c : statement_consts(prefix, t.statement))
        if (theory_consts.count(c)) declared.insert(c);

    MatchState st = compute_matching(prefix, lib_ext, cfg);
    size_t matched = 0;
    for (auto& c : theory_consts)
      if (st.int_to_ext.count(c)) ++matched;
    out.push_back({bound, matched, declared.size()});
  }
  return out;
}

void save_matching(const MatchState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw LibraryError("cannot write " + path);
  out << std::setprecision(17);
  for (auto& m : state.log)
    out << m.internal_id << "\t" << m.external_id << "\t" << m.score << "\t"
        << m.iteration << "\n";
  if (!out) throw LibraryError("write failed: " + path);
}

MatchState load_matching(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LibraryError("cannot read " + path);
  MatchState state;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    MatchedPair m;
    if (!(ls >> m.internal_id >> m.external_id >> m.score >> m.iteration))
      throw LibraryError(path + ":" + std::to_string(lineno) +
                         ": malformed matching line");
    state.int_to_ext[m.internal_id] = m.external_id;
    state.ext_to_int[m.external_id] = m.internal_id;
    state.matched_constants.insert(m.internal_id);
    state.matched_constants.insert(m.external_id);
    state.log.push_back(std::move(m));
  }
  return state;
}

}  // namespace crosshammer
