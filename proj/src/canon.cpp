#include "crosshammer/canon.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crosshammer {

TermPtr subst_free_var(const TermPtr& t, const std::string& name,
                       const TermPtr& repl) {
  switch (t->kind) {
    case TermKind::Const:
      return t;
    case TermKind::Var:
      return t->name == name ? repl : t;
    case TermKind::App:
      return Term::app(subst_free_var(t->fn, name, repl),
                       subst_free_var(t->arg, name, repl));
    case TermKind::Abs:
      if (t->name == name) return t;  // shadowed
      return Term::abs(t->name, t->ty, subst_free_var(t->fn, name, repl));
  }
  return t;
}

namespace {

// App(App(Const op, a), b)
bool dest_binop(const TermPtr& t, const std::string& op, TermPtr& a,
                TermPtr& b) {
  if (t->kind != TermKind::App) return false;
  const TermPtr& f = t->fn;
  if (f->kind != TermKind::App) return false;
  if (f->fn->kind != TermKind::Const || f->fn->name != op) return false;
  a = f->arg;
  b = t->arg;
  return true;
}

bool dest_unop(const TermPtr& t, const std::string& op, TermPtr& a) {
  if (t->kind != TermKind::App) return false;
  if (t->fn->kind != TermKind::Const || t->fn->name != op) return false;
  a = t->arg;
  return true;
}

bool dest_forall(const TermPtr& t, std::string& var, TyPtr& ty, TermPtr& body) {
  TermPtr f;
  if (!dest_unop(t, "!", f)) return false;
  if (f->kind != TermKind::Abs) return false;
  var = f->name;
  ty = f->ty;
  body = f->fn;
  return true;
}

struct Nnf {
  enum Kind { And, Or, Lit } kind;
  std::vector<Nnf> kids;
  Literal lit;
};

Nnf nnf(const TermPtr& t, bool positive) {
  TermPtr a, b;
  if (dest_binop(t, "/\\", a, b)) {
    Nnf n{positive ? Nnf::And : Nnf::Or, {}, {}};
    n.kids.push_back(nnf(a, positive));
    n.kids.push_back(nnf(b, positive));
    return n;
  }
  if (dest_binop(t, "\\/", a, b)) {
    Nnf n{positive ? Nnf::Or : Nnf::And, {}, {}};
    n.kids.push_back(nnf(a, positive));
    n.kids.push_back(nnf(b, positive));
    return n;
  }
  if (dest_binop(t, "==>", a, b)) {
    Nnf n{positive ? Nnf::Or : Nnf::And, {}, {}};
    n.kids.push_back(nnf(a, !positive));
    n.kids.push_back(nnf(b, positive));
    return n;
  }
  if (dest_binop(t, "<=>", a, b)) {
    // expand to the conjunction of the two implications first
    TermPtr imp = Term::constant("==>", Ty::fn(Ty::boolean(),
                                               Ty::fn(Ty::boolean(),
                                                      Ty::boolean())));
    TermPtr conj = Term::constant("/\\", Ty::fn(Ty::boolean(),
                                                Ty::fn(Ty::boolean(),
                                                       Ty::boolean())));
    TermPtr ab = Term::app(Term::app(imp, a), b);
    TermPtr ba = Term::app(Term::app(imp, b), a);
    return nnf(Term::app(Term::app(conj, ab), ba), positive);
  }
  if (dest_unop(t, "~", a)) return nnf(a, !positive);
  return Nnf{Nnf::Lit, {}, Literal{positive, t}};
}

bool lit_equal(const Literal& a, const Literal& b) {
  return a.positive == b.positive && term_equal(a.atom, b.atom);
}

Clause dedupe_clause(const Clause& c) {
  Clause out;
  for (auto& l : c) {
    bool seen = false;
    for (auto& o : out)
      if (lit_equal(l, o)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(l);
  }
  return out;
}

std::vector<Clause> cnf_of(const Nnf& n) {
  switch (n.kind) {
    case Nnf::Lit:
      return {{n.lit}};
    case Nnf::And: {
      std::vector<Clause> out;
      for (auto& k : n.kids) {
        auto cs = cnf_of(k);
        out.insert(out.end(), cs.begin(), cs.end());
      }
      return out;
    }
    case Nnf::Or: {
      std::vector<Clause> out = {{}};
      for (auto& k : n.kids) {
        auto cs = cnf_of(k);
        std::vector<Clause> next;
        for (auto& left : out)
          for (auto& right : cs) {
            Clause c = left;
            c.insert(c.end(), right.begin(), right.end());
            next.push_back(std::move(c));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

TermPtr strip_foralls(const TermPtr& t) {
  std::set<std::string> used;
  collect_free_vars(t, used);
  TermPtr cur = t;
  int counter = 0;
  std::string var;
  TyPtr ty;
  TermPtr body;
  while (dest_forall(cur, var, ty, body)) {
    std::string fresh;
    do {
      fresh = "q" + std::to_string(counter++);
    } while (used.count(fresh));
    used.insert(fresh);
    cur = subst_free_var(body, var, Term::var(fresh, ty));
  }
  return cur;
}

std::vector<Clause> to_cnf(const TermPtr& t) {
  if (!is_bool_type(type_of(t)))
    throw TypeError("to_cnf: formula must be boolean, got " +
                    print_type(type_of(t)));
  TermPtr matrix = strip_foralls(t);
  auto clauses = cnf_of(nnf(matrix, true));
  std::vector<Clause> out;
  for (auto& c : clauses) {
    Clause d = dedupe_clause(c);
    bool dup = false;
    for (auto& o : out) {
      if (o.size() != d.size()) continue;
      bool same = true;
      for (size_t i = 0; i < d.size(); ++i)
        if (!lit_equal(o[i], d[i])) {
          same = false;
          break;
        }
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical keys.
//
// Free variables are named by iterated partition refinement over their
// occurrence signatures rather than by a single numbering pass: numbering by
// first occurrence alone is not invariant under equality-side swaps once a
// swapped equality shares variables with other literals. Equality arguments
// are printed in sorted order at every stage, so orientation never depends on
// the incoming argument order.

namespace {

struct Painted {
  std::string str;
  // (variable or 'tyvar name, occurrence path) with paths relative to this node
  std::vector<std::pair<std::string, std::string>> occs;
};

using Naming = std::map<std::string, std::string>;

void paint_type(const TyPtr& ty, const Naming* ty_naming, std::string& out,
                const std::string& path,
                std::vector<std::pair<std::string, std::string>>& occs) {
  if (ty->is_var) {
    occs.emplace_back(ty->name, path);
    if (ty_naming) {
      auto it = ty_naming->find(ty->name);
      out += it != ty_naming->end() ? it->second : "'?";
    } else {
      out += "'?";
    }
    return;
  }
  if (ty->args.empty()) {
    out += ty->name;
    return;
  }
  out += "(" + ty->name;
  for (size_t i = 0; i < ty->args.size(); ++i) {
    out += " ";
    paint_type(ty->args[i], ty_naming, out, path + "." + std::to_string(i),
               occs);
  }
  out += ")";
}

bool is_eq_node(const TermPtr& t) {
  return t->kind == TermKind::App && t->fn->kind == TermKind::App &&
         t->fn->fn->kind == TermKind::Const && t->fn->fn->name == "=";
}

Painted paint(const TermPtr& t, const Naming& naming, const Naming* ty_naming) {
  Painted p;
  switch (t->kind) {
    case TermKind::Const:
      p.str = t->name;
      return p;
    case TermKind::Var: {
      auto it = naming.find(t->name);
      if (it != naming.end()) {
        p.str = it->second;
        p.occs.emplace_back(t->name, "");
      } else {
        p.str = t->name;  // canonically renamed bound variable
      }
      return p;
    }
    case TermKind::Abs: {
      Painted body = paint(t->fn, naming, ty_naming);
      std::string tystr;
      std::vector<std::pair<std::string, std::string>> tyoccs;
      paint_type(t->ty, ty_naming, tystr, "t", tyoccs);
      p.str = "(\\" + t->name + ":" + tystr + ". " + body.str + ")";
      for (auto& [n, path] : tyoccs) p.occs.emplace_back(n, path);
      for (auto& [n, path] : body.occs) p.occs.emplace_back(n, "b." + path);
      return p;
    }
    case TermKind::App: {
      if (is_eq_node(t)) {
        Painted l = paint(t->fn->arg, naming, ty_naming);
        Painted r = paint(t->arg, naming, ty_naming);
        bool tie = l.str == r.str;
        if (!tie && r.str < l.str) std::swap(l, r);
        p.str = "(= " + l.str + " " + r.str + ")";
        const char* m0 = tie ? "s." : "0.";
        const char* m1 = tie ? "s." : "1.";
        for (auto& [n, path] : l.occs) p.occs.emplace_back(n, m0 + path);
        for (auto& [n, path] : r.occs) p.occs.emplace_back(n, m1 + path);
        return p;
      }
      std::vector<TermPtr> args;
      TermPtr head = t;
      while (head->kind == TermKind::App) {
        args.push_back(head->arg);
        head = head->fn;
      }
      std::reverse(args.begin(), args.end());
      Painted h = paint(head, naming, ty_naming);
      p.str = "(" + h.str;
      for (auto& [n, path] : h.occs) p.occs.emplace_back(n, "h." + path);
      for (size_t i = 0; i < args.size(); ++i) {
        Painted a = paint(args[i], naming, ty_naming);
        p.str += " " + a.str;
        std::string pre = std::to_string(i) + ".";
        for (auto& [n, path] : a.occs) p.occs.emplace_back(n, pre + path);
      }
      p.str += ")";
      return p;
    }
  }
  return p;
}

struct KeyLiteral {
  bool positive;
  TermPtr atom;  // alpha-normalized
  size_t clause;
};

std::string lit_string(const KeyLiteral& l, const Naming& naming,
                       const Naming* ty_naming, Painted* out_painted) {
  Painted p = paint(l.atom, naming, ty_naming);
  std::string s = (l.positive ? "+" : "-") + p.str;
  if (out_painted) *out_painted = std::move(p);
  return s;
}

}  // namespace

CanonicalKey canonical_key(const TermPtr& t) {
  auto clauses = to_cnf(t);

  std::vector<KeyLiteral> lits;
  std::set<std::string> vars;
  for (size_t ci = 0; ci < clauses.size(); ++ci)
    for (auto& l : clauses[ci]) {
      KeyLiteral kl{l.positive, alpha_normalize(l.atom), ci};
      collect_free_vars(kl.atom, vars);
      lits.push_back(std::move(kl));
    }

  // Partition refinement over free-variable occurrence signatures.
  std::map<std::string, int> color;
  for (auto& v : vars) color[v] = 0;
  for (int round = 0; round < 10; ++round) {
    Naming naming;
    for (auto& [v, c] : color) naming[v] = "X" + std::to_string(c);
    std::map<std::string, std::vector<std::string>> sig;
    for (auto& v : vars) sig[v];
    for (auto& l : lits) {
      Painted p;
      std::string ls = lit_string(l, naming, nullptr, &p);
      for (auto& [name, path] : p.occs)
        if (name[0] != '\'') sig[name].push_back(ls + "@" + path);
    }
    std::vector<std::vector<std::string>> distinct;
    for (auto& [v, s] : sig) {
      std::sort(s.begin(), s.end());
      distinct.push_back(s);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    std::map<std::string, int> next;
    for (auto& v : vars) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(), sig[v]);
      next[v] = static_cast<int>(it - distinct.begin());
    }
    if (next == color) break;
    color = std::move(next);
  }

  // Final variable names: ordered by color, ties by first appearance in the
  // sorted literal sequence.
  Naming coarse;
  for (auto& [v, c] : color) coarse[v] = "X" + std::to_string(c);
  std::vector<std::pair<std::string, size_t>> order;  // (litstr, index)
  std::vector<Painted> painted(lits.size());
  for (size_t i = 0; i < lits.size(); ++i)
    order.emplace_back(lit_string(lits[i], coarse, nullptr, &painted[i]), i);
  std::sort(order.begin(), order.end());

  std::map<std::string, int> appearance;
  int app_counter = 0;
  for (auto& [s, i] : order)
    for (auto& [name, path] : painted[i].occs)
      if (name[0] != '\'' && !appearance.count(name))
        appearance[name] = app_counter++;

  std::vector<std::string> by_rank(vars.begin(), vars.end());
  std::sort(by_rank.begin(), by_rank.end(),
            [&](const std::string& a, const std::string& b) {
              if (color[a] != color[b]) return color[a] < color[b];
              return appearance[a] < appearance[b];
            });
  Naming final_naming;
  for (size_t i = 0; i < by_rank.size(); ++i)
    final_naming[by_rank[i]] = "X" + std::to_string(i);

  // Type variables: numbered by first appearance under the final term-variable
  // naming, then one re-print.
  std::vector<std::pair<std::string, size_t>> order2;
  for (size_t i = 0; i < lits.size(); ++i)
    order2.emplace_back(lit_string(lits[i], final_naming, nullptr, &painted[i]),
                        i);
  std::sort(order2.begin(), order2.end());
  Naming ty_naming;
  int ty_counter = 0;
  for (auto& [s, i] : order2)
    for (auto& [name, path] : painted[i].occs)
      if (name[0] == '\'' && !ty_naming.count(name))
        ty_naming[name] = "'T" + std::to_string(ty_counter++);

  // Assemble: sort literals within clauses, then sort clauses.
  std::vector<std::vector<std::string>> clause_strs(clauses.size());
  for (auto& l : lits)
    clause_strs[l.clause].push_back(lit_string(l, final_naming, &ty_naming,
                                               nullptr));
  std::vector<std::string> joined;
  for (auto& cs : clause_strs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::string j = "{";
    for (size_t i = 0; i < cs.size(); ++i) {
      if (i) j += " ; ";
      j += cs[i];
    }
    joined.push_back(j + "}");
  }
  std::sort(joined.begin(), joined.end());
  joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
  std::string key;
  for (size_t i = 0; i < joined.size(); ++i) {
    if (i) key += " | ";
    key += joined[i];
  }
  return key;
}

}  // namespace crosshammer
