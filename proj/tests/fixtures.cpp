#include "fixtures.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <memory>

#include "crosshammer/build.hpp"
#include "crosshammer/canon.hpp"

namespace fixtures {

using namespace crosshammer;
namespace b = crosshammer::build;

// ---------------------------------------------------------------------------
// Propositional skeletons.

namespace {

TermPtr atom_var(int i) {
  return Term::var("a" + std::to_string(i), Ty::boolean());
}

TermPtr random_prop(std::mt19937& rng, int depth, int max_atoms,
                    int& atoms_used) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5);
  switch (pick(rng)) {
    case 1:
      return b::neg(random_prop(rng, depth - 1, max_atoms, atoms_used));
    case 2:
      return b::conj(random_prop(rng, depth - 1, max_atoms, atoms_used),
                     random_prop(rng, depth - 1, max_atoms, atoms_used));
    case 3:
      return b::disj(random_prop(rng, depth - 1, max_atoms, atoms_used),
                     random_prop(rng, depth - 1, max_atoms, atoms_used));
    case 4:
      return b::imp(random_prop(rng, depth - 1, max_atoms, atoms_used),
                    random_prop(rng, depth - 1, max_atoms, atoms_used));
    case 5:
      return b::iff(random_prop(rng, depth - 1, max_atoms, atoms_used),
                    random_prop(rng, depth - 1, max_atoms, atoms_used));
    default: {
      std::uniform_int_distribution<int> a(0, max_atoms - 1);
      int i = a(rng);
      atoms_used = std::max(atoms_used, i + 1);
      return atom_var(i);
    }
  }
}

}  // namespace

PropFormula random_prop_formula(std::mt19937& rng, int max_atoms) {
  int used = 1;
  TermPtr t = random_prop(rng, 4, max_atoms, used);
  return {t, used};
}

namespace {

struct Shape {
  int kind;  // 0 leaf, 1 not, 2 and, 3 or, 4 imp, 5 iff
  std::shared_ptr<Shape> l, r;
};

void enumerate_shapes(int nodes, std::vector<std::shared_ptr<Shape>>& out) {
  if (nodes == 0) {
    out.push_back(std::make_shared<Shape>(Shape{0, nullptr, nullptr}));
    return;
  }
  std::vector<std::shared_ptr<Shape>> sub;
  enumerate_shapes(nodes - 1, sub);
  for (auto& s : sub)
    out.push_back(std::make_shared<Shape>(Shape{1, s, nullptr}));
  for (int left = 0; left <= nodes - 1; ++left) {
    std::vector<std::shared_ptr<Shape>> ls, rs;
    enumerate_shapes(left, ls);
    enumerate_shapes(nodes - 1 - left, rs);
    for (int k = 2; k <= 5; ++k)
      for (auto& a : ls)
        for (auto& c : rs)
          out.push_back(std::make_shared<Shape>(Shape{k, a, c}));
  }
}

TermPtr build_shape(const Shape& s, int& leaf, int& atoms_used) {
  switch (s.kind) {
    case 0: {
      int i = leaf++ % 6;
      atoms_used = std::max(atoms_used, i + 1);
      return atom_var(i);
    }
    case 1:
      return b::neg(build_shape(*s.l, leaf, atoms_used));
    case 2:
      return b::conj(build_shape(*s.l, leaf, atoms_used),
                     build_shape(*s.r, leaf, atoms_used));
    case 3:
      return b::disj(build_shape(*s.l, leaf, atoms_used),
                     build_shape(*s.r, leaf, atoms_used));
    case 4:
      return b::imp(build_shape(*s.l, leaf, atoms_used),
                    build_shape(*s.r, leaf, atoms_used));
    default:
      return b::iff(build_shape(*s.l, leaf, atoms_used),
                    build_shape(*s.r, leaf, atoms_used));
  }
}

}  // namespace

std::vector<PropFormula> enumerate_prop_formulas(int max_connectives) {
  std::vector<PropFormula> out;
  for (int n = 0; n <= max_connectives; ++n) {
    std::vector<std::shared_ptr<Shape>> shapes;
    enumerate_shapes(n, shapes);
    for (auto& s : shapes) {
      int leaf = 0, used = 1;
      TermPtr t = build_shape(*s, leaf, used);
      out.push_back({t, used});
    }
  }
  return out;
}

bool eval_prop(const PropFormula& f, unsigned mask) {
  std::function<bool(const TermPtr&)> go = [&](const TermPtr& t) -> bool {
    TermPtr a, bb;
    if (t->kind == TermKind::Var) return eval_atom(f, t, mask);
    if (t->kind == TermKind::App) {
      if (t->fn->kind == TermKind::Const && t->fn->name == "~")
        return !go(t->arg);
      if (t->fn->kind == TermKind::App &&
          t->fn->fn->kind == TermKind::Const) {
        const std::string& op = t->fn->fn->name;
        bool l = go(t->fn->arg), r = go(t->arg);
        if (op == "/\\") return l && r;
        if (op == "\\/") return l || r;
        if (op == "==>") return !l || r;
        if (op == "<=>") return l == r;
      }
    }
    if (t->kind == TermKind::Const) {
      if (t->name == "T") return true;
      if (t->name == "F") return false;
    }
    throw std::runtime_error("eval_prop: not a propositional skeleton");
  };
  return go(f.term);
}

bool eval_atom(const PropFormula& f, const TermPtr& atom, unsigned mask) {
  (void)f;
  if (atom->kind != TermKind::Var || atom->name.size() < 2)
    throw std::runtime_error("eval_atom: unexpected atom");
  int i = std::stoi(atom->name.substr(1));
  return (mask >> i) & 1u;
}

// ---------------------------------------------------------------------------
// Richer formulas.

namespace {

const TyPtr kTa = Ty::con("Ta");

TermPtr c_f() { return Term::constant("cf", Ty::fn(kTa, kTa)); }
TermPtr c_h() { return Term::constant("ch", Ty::fn(kTa, kTa)); }
TermPtr c_g() { return Term::constant("cg", Ty::fn(kTa, Ty::fn(kTa, kTa))); }
TermPtr c_a() { return Term::constant("ca", kTa); }
TermPtr c_b() { return Term::constant("cb", kTa); }
TermPtr c_p() { return Term::constant("cp", Ty::fn(kTa, Ty::boolean())); }
TermPtr c_q() {
  return Term::constant("cq", Ty::fn(kTa, Ty::fn(kTa, Ty::boolean())));
}

TermPtr random_value(std::mt19937& rng, int depth,
                     const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 5);
  switch (pick(rng)) {
    case 3:
      return Term::app(c_f(), random_value(rng, depth - 1, vars));
    case 4:
      return Term::app(c_h(), random_value(rng, depth - 1, vars));
    case 5:
      return Term::app(Term::app(c_g(), random_value(rng, depth - 1, vars)),
                       random_value(rng, depth - 1, vars));
    case 0:
      return std::uniform_int_distribution<int>(0, 1)(rng) ? c_a() : c_b();
    default: {
      std::uniform_int_distribution<size_t> v(0, vars.size() - 1);
      return Term::var(vars[v(rng)], kTa);
    }
  }
}

TermPtr random_atom(std::mt19937& rng, int depth, std::vector<std::string> vars) {
  std::uniform_int_distribution<int> pick(0, 7);
  int k = pick(rng);
  if (k <= 2)
    return b::eq(random_value(rng, depth, vars), random_value(rng, depth, vars));
  if (k <= 4) return Term::app(c_p(), random_value(rng, depth, vars));
  if (k <= 6)
    return Term::app(Term::app(c_q(), random_value(rng, depth, vars)),
                     random_value(rng, depth, vars));
  // opaque quantified subformula
  vars.push_back("u" + std::to_string(pick(rng)));
  return b::exists(vars.back(), kTa,
                   Term::app(c_p(), random_value(rng, depth, vars)));
}

TermPtr random_skeleton(std::mt19937& rng, int depth,
                        const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 2:
      return b::neg(random_skeleton(rng, depth - 1, vars));
    case 3:
      return b::conj(random_skeleton(rng, depth - 1, vars),
                     random_skeleton(rng, depth - 1, vars));
    case 4:
      return b::disj(random_skeleton(rng, depth - 1, vars),
                     random_skeleton(rng, depth - 1, vars));
    case 5:
      return b::imp(random_skeleton(rng, depth - 1, vars),
                    random_skeleton(rng, depth - 1, vars));
    case 6:
      return b::iff(random_skeleton(rng, depth - 1, vars),
                    random_skeleton(rng, depth - 1, vars));
    default:
      return random_atom(rng, 2, vars);
  }
}

}  // namespace

Formula random_formula(std::mt19937& rng) {
  std::vector<std::string> vars = {"x", "y", "z"};
  TermPtr body = random_skeleton(rng, 3, vars);
  // quantify a random prefix of the variable pool
  std::uniform_int_distribution<int> nq(0, 3);
  int n = nq(rng);
  for (int i = n - 1; i >= 0; --i) body = b::forall(vars[i], kTa, body);
  return {body};
}

namespace {

bool coin(std::mt19937& rng) {
  return std::uniform_int_distribution<int>(0, 1)(rng) == 1;
}

// renames a random subset of binders to globally fresh names
TermPtr rename_binders(std::mt19937& rng, const TermPtr& t, int& counter) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
      return t;
    case TermKind::App:
      return Term::app(rename_binders(rng, t->fn, counter),
                       rename_binders(rng, t->arg, counter));
    case TermKind::Abs: {
      TermPtr body = rename_binders(rng, t->fn, counter);
      if (coin(rng)) {
        std::string fresh = "rn" + std::to_string(counter++);
        body = subst_free_var(body, t->name, Term::var(fresh, t->ty));
        return Term::abs(fresh, t->ty, body);
      }
      return Term::abs(t->name, t->ty, body);
    }
  }
  return t;
}

bool match_binop(const TermPtr& t, const char* op, TermPtr& a, TermPtr& c) {
  if (t->kind != TermKind::App || t->fn->kind != TermKind::App) return false;
  if (t->fn->fn->kind != TermKind::Const || t->fn->fn->name != op) return false;
  a = t->fn->arg;
  c = t->arg;
  return true;
}

TermPtr shuffle_skeleton(std::mt19937& rng, const TermPtr& t) {
  TermPtr a, c;
  if (match_binop(t, "/\\", a, c) || match_binop(t, "\\/", a, c) ||
      match_binop(t, "<=>", a, c)) {
    const std::string& op = t->fn->fn->name;
    TermPtr l = shuffle_skeleton(rng, a), r = shuffle_skeleton(rng, c);
    if (coin(rng)) std::swap(l, r);
    return b::binop(op.c_str(), l, r);
  }
  if (match_binop(t, "==>", a, c))
    return b::imp(shuffle_skeleton(rng, a), shuffle_skeleton(rng, c));
  if (t->kind == TermKind::App && t->fn->kind == TermKind::Const &&
      t->fn->name == "~")
    return b::neg(shuffle_skeleton(rng, t->arg));
  // literal: maybe flip a top-level equality
  if (match_binop(t, "=", a, c) && coin(rng)) return b::eq(c, a);
  return t;
}

}  // namespace

TermPtr random_equiv_transform(std::mt19937& rng, const TermPtr& t) {
  // peel the universal prefix, shuffle the skeleton, re-wrap, rename binders
  std::vector<std::pair<std::string, TyPtr>> prefix;
  TermPtr cur = t;
  while (cur->kind == TermKind::App && cur->fn->kind == TermKind::Const &&
         cur->fn->name == "!" && cur->arg->kind == TermKind::Abs) {
    prefix.emplace_back(cur->arg->name, cur->arg->ty);
    cur = cur->arg->fn;
  }
  cur = shuffle_skeleton(rng, cur);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    cur = b::forall(it->first, it->second, cur);
  int counter = std::uniform_int_distribution<int>(0, 1 << 20)(rng);
  return rename_binders(rng, cur, counter);
}

namespace {

// negates the leftmost atom of the propositional skeleton
TermPtr negate_first_atom(const TermPtr& t, bool& done) {
  if (done) return t;
  TermPtr a, c;
  if (t->kind == TermKind::App && t->fn->kind == TermKind::Const &&
      t->fn->name == "~")
    return b::neg(negate_first_atom(t->arg, done));
  for (const char* op : {"/\\", "\\/", "==>", "<=>"})
    if (match_binop(t, op, a, c)) {
      TermPtr l = negate_first_atom(a, done);
      TermPtr r = negate_first_atom(c, done);
      return b::binop(op, l, r);
    }
  done = true;
  return b::neg(t);
}

}  // namespace

TermPtr perturb_formula(std::mt19937& rng, const TermPtr& t) {
  std::vector<std::pair<std::string, TyPtr>> prefix;
  TermPtr cur = t;
  while (cur->kind == TermKind::App && cur->fn->kind == TermKind::Const &&
         cur->fn->name == "!" && cur->arg->kind == TermKind::Abs) {
    prefix.emplace_back(cur->arg->name, cur->arg->ty);
    cur = cur->arg->fn;
  }
  (void)rng;
  bool done = false;
  cur = negate_first_atom(cur, done);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    cur = b::forall(it->first, it->second, cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Subterm oracle (kept independent of subterm_strings' implementation).

namespace {

std::string oracle_print(const TermPtr& t) {
  if (t->kind == TermKind::Var) return "V";
  if (t->kind == TermKind::Const) return t->name;
  if (t->kind == TermKind::Abs) return "\\V." + oracle_print(t->fn);
  std::vector<std::string> parts;
  TermPtr p = t;
  while (p->kind == TermKind::App) {
    parts.push_back(oracle_print(p->arg));
    p = p->fn;
  }
  std::string s = oracle_print(p) + "(";
  for (size_t i = parts.size(); i-- > 0;) {
    s += parts[i];
    if (i) s += ",";
  }
  return s + ")";
}

bool oracle_skeleton_const(const TermPtr& t) {
  if (t->kind != TermKind::Const) return false;
  for (const char* c : {"!", "?", "/\\", "\\/", "~", "==>", "<=>", "T", "F"})
    if (t->name == c) return true;
  return false;
}

void oracle_walk(const TermPtr& t, bool is_fn_child,
                 std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      return;
    case TermKind::Const:
      if (!oracle_skeleton_const(t)) out.insert(t->name);
      return;
    case TermKind::Abs:
      oracle_walk(t->fn, false, out);
      return;
    case TermKind::App: {
      if (!is_fn_child) {
        TermPtr head = t;
        while (head->kind == TermKind::App) head = head->fn;
        if (!oracle_skeleton_const(head)) out.insert(oracle_print(t));
      }
      oracle_walk(t->fn, true, out);
      oracle_walk(t->arg, false, out);
      return;
    }
  }
}

}  // namespace

std::set<std::string> brute_force_subterms(const TermPtr& t) {
  std::set<std::string> out;
  oracle_walk(t, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic libraries.

namespace {

struct GroupSig {
  TyPtr ty;
  TermPtr op, fn, unit;
  TermPtr pred;
};

GroupSig make_group(const std::string& tag, int g) {
  std::string p = tag + "/";
  std::string sg = std::to_string(g);
  GroupSig s;
  s.ty = Ty::con(p + "ty" + sg);
  s.op = Term::constant(p + "op" + sg, Ty::fn(s.ty, Ty::fn(s.ty, s.ty)));
  s.fn = Term::constant(p + "fn" + sg, Ty::fn(s.ty, s.ty));
  s.unit = Term::constant(p + "e" + sg, s.ty);
  s.pred = Term::constant(p + "q" + sg, Ty::fn(s.ty, Ty::boolean()));
  return s;
}

TermPtr group_value(std::mt19937& rng, const GroupSig& s, int depth,
                    const std::vector<std::string>& vars,
                    std::set<std::string>& used) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  switch (pick(rng)) {
    case 2:
      return Term::app(s.fn, group_value(rng, s, depth - 1, vars, used));
    case 3:
    case 4:
      return Term::app(Term::app(s.op, group_value(rng, s, depth - 1, vars, used)),
                       group_value(rng, s, depth - 1, vars, used));
    case 0:
      return s.unit;
    default: {
      std::uniform_int_distribution<size_t> v(0, vars.size() - 1);
      const std::string& name = vars[v(rng)];
      used.insert(name);
      return Term::var(name, s.ty);
    }
  }
}

TermPtr group_statement(std::mt19937& rng, const GroupSig& s) {
  std::vector<std::string> vars = {"x", "y", "z"};
  std::set<std::string> used;
  TermPtr body;
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0:  // equational law
    case 1:
      body = b::eq(group_value(rng, s, 2, vars, used),
                   group_value(rng, s, 2, vars, used));
      break;
    case 2:  // predicate transfer
      body = b::imp(Term::app(s.pred, group_value(rng, s, 1, vars, used)),
                    Term::app(s.pred, group_value(rng, s, 2, vars, used)));
      break;
    case 3:  // conjunction of two laws
      body = b::conj(b::eq(group_value(rng, s, 1, vars, used),
                           group_value(rng, s, 2, vars, used)),
                     Term::app(s.pred, group_value(rng, s, 1, vars, used)));
      break;
    case 4:  // predicate on a closed value
      body = Term::app(s.pred, group_value(rng, s, 2, vars, used));
      break;
    default:  // disjunctive law
      body = b::disj(Term::app(s.pred, group_value(rng, s, 1, vars, used)),
                     b::eq(group_value(rng, s, 1, vars, used),
                           group_value(rng, s, 1, vars, used)));
      break;
  }
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (used.count(*it)) body = b::forall(*it, s.ty, body);
  return body;
}

}  // namespace

Library gen_library(const std::string& tag, int groups, int thms_per_group,
                    unsigned seed) {
  std::mt19937 rng(seed);
  Library lib;
  lib.tag = tag;
  std::vector<GroupSig> sigs;
  for (int g = 0; g < groups; ++g) {
    GroupSig s = make_group(tag, g);
    sigs.push_back(s);
    std::string theory = "th" + std::to_string(g);
    lib.consts.push_back({s.ty->name, ConstKind::TypeConstructor, theory,
                          nullptr, 0});
    for (auto& c : {s.op, s.fn, s.unit, s.pred})
      lib.consts.push_back({c->name, ConstKind::TermConstant, theory, c->ty, 0});
    if (std::find(lib.theories.begin(), lib.theories.end(), theory) ==
        lib.theories.end())
      lib.theories.push_back(theory);
  }

  // round-robin across groups so theories interleave chronologically
  std::vector<std::vector<ThmId>> per_group(groups);
  size_t seq = 0;
  std::set<CanonicalKey> seen_keys;
  for (int i = 0; i < thms_per_group; ++i) {
    for (int g = 0; g < groups; ++g) {
      Theorem t;
      t.id = tag + "/t" + std::to_string(g) + "_" + std::to_string(i);
      t.theory = "th" + std::to_string(g);
      t.seq = seq++;
      // avoid accidental statement duplicates inside one library
      for (int attempt = 0; attempt < 50; ++attempt) {
        t.statement = group_statement(rng, sigs[g]);
        if (seen_keys.insert(canonical_key(t.statement)).second) break;
      }
      auto& prior = per_group[g];
      if (!prior.empty()) {
        std::uniform_int_distribution<int> nd(
            1, static_cast<int>(std::min<size_t>(4, prior.size())));
        int n = nd(rng);
        std::uniform_int_distribution<size_t> di(0, prior.size() - 1);
        for (int k = 0; k < n; ++k) t.deps.insert(prior[di(rng)]);
      }
      prior.push_back(t.id);
      lib.thms.push_back(std::move(t));
    }
  }
  lib.reindex();
  validate_library(lib);
  return lib;
}

RenameFixture make_renamed_copy(const Library& lib, const std::string& new_tag,
                                unsigned seed, double drop_fraction) {
  std::mt19937 rng(seed);
  RenameFixture fx;
  fx.original = lib;

  std::map<ConstId, ConstId> cmap;
  std::vector<size_t> perm(lib.consts.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (size_t i = 0; i < lib.consts.size(); ++i)
    cmap[lib.consts[i].id] = new_tag + "/c" + std::to_string(perm[i]);
  fx.const_truth = cmap;

  Library out;
  out.tag = new_tag;
  for (auto& c : lib.consts) {
    ConstDecl d = c;
    d.id = cmap[c.id];
    if (d.type) d.type = map_type_consts(d.type, cmap);
    out.consts.push_back(std::move(d));
  }
  out.theories = lib.theories;

  // drop a random subset, then emit a random topological order
  std::vector<const Theorem*> kept;
  for (auto& t : lib.thms) {
    if (drop_fraction > 0 &&
        std::uniform_real_distribution<double>(0, 1)(rng) < drop_fraction)
      continue;
    kept.push_back(&t);
  }
  std::set<ThmId> kept_ids;
  for (auto* t : kept) kept_ids.insert(t->id);

  std::vector<const Theorem*> pending = kept;
  std::set<ThmId> placed;
  size_t seq = 0;
  while (!pending.empty()) {
    std::vector<size_t> ready;
    for (size_t i = 0; i < pending.size(); ++i) {
      bool ok = true;
      for (auto& d : pending[i]->deps)
        if (kept_ids.count(d) && !placed.count(d)) {
          ok = false;
          break;
        }
      if (ok) ready.push_back(i);
    }
    std::uniform_int_distribution<size_t> pick(0, ready.size() - 1);
    size_t chosen = ready[pick(rng)];
    const Theorem* src = pending[chosen];
    pending.erase(pending.begin() + chosen);
    placed.insert(src->id);

    Theorem t;
    t.id = new_tag + "/r" + std::to_string(seq);
    fx.thm_truth[src->id] = t.id;
    t.theory = src->theory;
    t.seq = seq++;
    t.statement = apply_const_map(src->statement, cmap);
    out.thms.push_back(std::move(t));
  }
  // fill deps via the id map
  out.reindex();
  for (auto& t : lib.thms) {
    auto it = fx.thm_truth.find(t.id);
    if (it == fx.thm_truth.end()) continue;
    Theorem& dst = out.thms[out.thm_index.at(it->second)];
    for (auto& d : t.deps) {
      auto dit = fx.thm_truth.find(d);
      if (dit != fx.thm_truth.end()) dst.deps.insert(dit->second);
    }
  }
  validate_library(out);
  fx.renamed = std::move(out);
  return fx;
}

RenameFixture make_twin(const Library& lib, const std::string& new_tag) {
  RenameFixture fx;
  fx.original = lib;
  std::map<ConstId, ConstId> cmap;
  auto retag = [&](const std::string& id) {
    auto pos = id.find('/');
    return new_tag + "/" + (pos == std::string::npos ? id : id.substr(pos + 1));
  };
  for (auto& c : lib.consts) cmap[c.id] = retag(c.id);
  fx.const_truth = cmap;

  Library out;
  out.tag = new_tag;
  out.theories = lib.theories;
  for (auto& c : lib.consts) {
    ConstDecl d = c;
    d.id = cmap[c.id];
    if (d.type) d.type = map_type_consts(d.type, cmap);
    out.consts.push_back(std::move(d));
  }
  for (auto& t : lib.thms) {
    Theorem n;
    n.id = retag(t.id);
    fx.thm_truth[t.id] = n.id;
    n.theory = t.theory;
    n.seq = t.seq;
    n.statement = apply_const_map(t.statement, cmap);
    for (auto& d : t.deps) n.deps.insert(retag(d));
    out.thms.push_back(std::move(n));
  }
  out.reindex();
  validate_library(out);
  fx.renamed = std::move(out);
  return fx;
}

Library gen_lists_A() {
  Library lib = gen_library("lists-A", 6, 20, 42);
  // a named landmark theorem with exactly three dependencies
  size_t idx = lib.thm_index.at("lists-A/t0_10");
  Theorem& t = lib.thms[idx];
  ThmId old_id = t.id;
  t.id = "lists-A/APPEND_ASSOC";
  t.deps = {"lists-A/t0_2", "lists-A/t0_5", "lists-A/t0_7"};
  for (auto& th : lib.thms) {
    if (th.deps.erase(old_id)) th.deps.insert("lists-A/APPEND_ASSOC");
  }
  lib.reindex();
  validate_library(lib);
  return lib;
}

}  // namespace fixtures
