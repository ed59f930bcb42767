#include "crosshammer/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace crosshammer {

TyPtr Ty::var(std::string n) {
  auto t = std::make_shared<Ty>();
  t->is_var = true;
  t->name = std::move(n);
  return t;
}

TyPtr Ty::con(std::string n, std::vector<TyPtr> as) {
  auto t = std::make_shared<Ty>();
  t->name = std::move(n);
  t->args = std::move(as);
  return t;
}

TyPtr Ty::fn(TyPtr dom, TyPtr cod) {
  return con("->", {std::move(dom), std::move(cod)});
}

TyPtr Ty::boolean() {
  static TyPtr b = con("bool");
  return b;
}

bool ty_equal(const TyPtr& a, const TyPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->is_var != b->is_var || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!ty_equal(a->args[i], b->args[i])) return false;
  return true;
}

std::string print_type(const TyPtr& t) {
  if (t->is_var || t->args.empty()) return t->name;
  std::string s = "(" + t->name;
  for (auto& a : t->args) s += " " + print_type(a);
  return s + ")";
}

bool is_fn_type(const TyPtr& t) {
  return !t->is_var && t->name == "->" && t->args.size() == 2;
}

bool is_bool_type(const TyPtr& t) {
  return !t->is_var && t->name == "bool" && t->args.empty();
}

int type_arity(const TyPtr& t) {
  int n = 0;
  const Ty* p = t.get();
  while (!p->is_var && p->name == "->" && p->args.size() == 2) {
    ++n;
    p = p->args[1].get();
  }
  return n;
}

TyPtr map_type_consts(const TyPtr& t, const std::map<std::string, std::string>& m) {
  if (t->is_var) return t;
  std::vector<TyPtr> as;
  as.reserve(t->args.size());
  bool changed = false;
  for (auto& a : t->args) {
    as.push_back(map_type_consts(a, m));
    changed = changed || as.back().get() != a.get();
  }
  auto it = m.find(t->name);
  if (it == m.end() && !changed) return t;
  return Ty::con(it == m.end() ? t->name : it->second, std::move(as));
}

void collect_type_names(const TyPtr& t, std::set<std::string>& cons,
                        std::set<std::string>& vars) {
  if (t->is_var) {
    vars.insert(t->name);
    return;
  }
  cons.insert(t->name);
  for (auto& a : t->args) collect_type_names(a, cons, vars);
}

// ---------------------------------------------------------------------------

TermPtr Term::constant(ConstId id, TyPtr ty) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->name = std::move(id);
  t->ty = std::move(ty);
  return t;
}

TermPtr Term::var(std::string name, TyPtr ty) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  t->ty = std::move(ty);
  return t;
}

TermPtr Term::app(TermPtr fn, TermPtr arg) {
  TyPtr fty = type_of(fn);
  if (!is_fn_type(fty))
    throw TypeError("application of non-function: " + print_term(fn));
  if (!ty_equal(fty->args[0], type_of(arg)))
    throw TypeError("argument type mismatch: expected " +
                    print_type(fty->args[0]) + ", got " +
                    print_type(type_of(arg)) + " in argument " + print_term(arg));
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  return t;
}

TermPtr Term::abs(std::string bound, TyPtr ty, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Abs;
  t->name = std::move(bound);
  t->ty = std::move(ty);
  t->fn = std::move(body);
  return t;
}

TyPtr type_of(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
      return t->ty;
    case TermKind::App: {
      TyPtr fty = type_of(t->fn);
      if (!is_fn_type(fty)) throw TypeError("ill-typed application");
      return fty->args[1];
    }
    case TermKind::Abs:
      return Ty::fn(t->ty, type_of(t->fn));
  }
  throw TypeError("corrupt term");
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Const:
    case TermKind::Var:
      return a->name == b->name && ty_equal(a->ty, b->ty);
    case TermKind::App:
      return term_equal(a->fn, b->fn) && term_equal(a->arg, b->arg);
    case TermKind::Abs:
      return a->name == b->name && ty_equal(a->ty, b->ty) &&
             term_equal(a->fn, b->fn);
  }
  return false;
}

std::string print_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var:
      return t->name;
    case TermKind::Abs:
      return "(\\" + t->name + ":" + print_type(t->ty) + ". " +
             print_term(t->fn) + ")";
    case TermKind::App: {
      // flatten the spine
      std::vector<TermPtr> args;
      TermPtr p = t;
      while (p->kind == TermKind::App) {
        args.push_back(p->arg);
        p = p->fn;
      }
      std::string s = "(" + print_term(p);
      for (auto it = args.rbegin(); it != args.rend(); ++it)
        s += " " + print_term(*it);
      return s + ")";
    }
  }
  return "?";
}

bool is_logical_const(const std::string& id) {
  static const std::set<std::string> logical = {"=",  "!",   "?",   "/\\", "\\/",
                                               "~", "==>", "<=>", "T",   "F"};
  return logical.count(id) > 0;
}

namespace {

TermPtr rename_bound(const TermPtr& t, std::map<std::string, std::string>& env,
                     int& counter, const std::set<std::string>& avoid) {
  switch (t->kind) {
    case TermKind::Const:
      return t;
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) return t;
      return Term::var(it->second, t->ty);
    }
    case TermKind::App:
      return Term::app(rename_bound(t->fn, env, counter, avoid),
                       rename_bound(t->arg, env, counter, avoid));
    case TermKind::Abs: {
      std::string fresh;
      do {
        fresh = "V" + std::to_string(counter++);
      } while (avoid.count(fresh));
      auto saved = env.find(t->name);
      std::string old_target;
      bool had = saved != env.end();
      if (had) old_target = saved->second;
      env[t->name] = fresh;
      TermPtr body = rename_bound(t->fn, env, counter, avoid);
      if (had)
        env[t->name] = old_target;
      else
        env.erase(t->name);
      return Term::abs(fresh, t->ty, body);
    }
  }
  return t;
}

}  // namespace

TermPtr alpha_normalize(const TermPtr& t) {
  std::set<std::string> free;
  collect_free_vars(t, free);
  std::map<std::string, std::string> env;
  int counter = 0;
  return rename_bound(t, env, counter, free);
}

namespace {

void check_injective(const std::map<ConstId, ConstId>& m) {
  std::set<ConstId> targets;
  for (auto& [k, v] : m)
    if (!targets.insert(v).second)
      throw TypeError("constant map is not injective on target " + v);
}

}  // namespace

TermPtr apply_const_map(const TermPtr& t, const std::map<ConstId, ConstId>& m) {
  check_injective(m);
  // the same map renames type constructors inside type annotations
  std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& u) -> TermPtr {
    switch (u->kind) {
      case TermKind::Const: {
        auto it = m.find(u->name);
        return Term::constant(it == m.end() ? u->name : it->second,
                              map_type_consts(u->ty, m));
      }
      case TermKind::Var:
        return Term::var(u->name, map_type_consts(u->ty, m));
      case TermKind::App:
        return Term::app(go(u->fn), go(u->arg));  // re-checks types
      case TermKind::Abs:
        return Term::abs(u->name, map_type_consts(u->ty, m), go(u->fn));
    }
    return u;
  };
  return go(t);
}

namespace {

std::string feature_print(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
      return "V";
    case TermKind::Const:
      return t->name;
    case TermKind::Abs:
      return "\\V." + feature_print(t->fn);
    case TermKind::App: {
      std::vector<TermPtr> args;
      TermPtr p = t;
      while (p->kind == TermKind::App) {
        args.push_back(p->arg);
        p = p->fn;
      }
      std::string s = feature_print(p) + "(";
      bool first = true;
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        if (!first) s += ",";
        first = false;
        s += feature_print(*it);
      }
      return s + ")";
    }
  }
  return "?";
}

bool is_skeleton_const(const std::string& id) {
  return is_logical_const(id) && id != "=";
}

void subterms_walk(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      return;  // bare variables carry no information
    case TermKind::Const:
      if (!is_skeleton_const(t->name)) out.insert(t->name);
      return;
    case TermKind::Abs:
      subterms_walk(t->fn, out);
      return;
    case TermKind::App: {
      std::vector<TermPtr> args;
      TermPtr p = t;
      while (p->kind == TermKind::App) {
        args.push_back(p->arg);
        p = p->fn;
      }
      bool skeleton = p->kind == TermKind::Const && is_skeleton_const(p->name);
      if (!skeleton) out.insert(feature_print(t));
      subterms_walk(p, out);
      for (auto& a : args) subterms_walk(a, out);
      return;
    }
  }
}

}  // namespace

std::set<std::string> subterm_strings(const TermPtr& t) {
  std::set<std::string> out;
  subterms_walk(t, out);
  return out;
}

void collect_free_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Const:
      return;
    case TermKind::Var:
      out.insert(t->name);
      return;
    case TermKind::App:
      collect_free_vars(t->fn, out);
      collect_free_vars(t->arg, out);
      return;
    case TermKind::Abs: {
      std::set<std::string> body;
      collect_free_vars(t->fn, body);
      body.erase(t->name);
      out.insert(body.begin(), body.end());
      return;
    }
  }
}

void collect_consts(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Const:
      out.insert(t->name);
      return;
    case TermKind::Var:
      return;
    case TermKind::App:
      collect_consts(t->fn, out);
      collect_consts(t->arg, out);
      return;
    case TermKind::Abs:
      collect_consts(t->fn, out);
      return;
  }
}

void collect_all_const_names(const TermPtr& t, std::set<std::string>& out) {
  std::set<std::string> tyvars;
  switch (t->kind) {
    case TermKind::Const:
      out.insert(t->name);
      collect_type_names(t->ty, out, tyvars);
      return;
    case TermKind::Var:
      collect_type_names(t->ty, out, tyvars);
      return;
    case TermKind::App:
      collect_all_const_names(t->fn, out);
      collect_all_const_names(t->arg, out);
      return;
    case TermKind::Abs:
      collect_type_names(t->ty, out, tyvars);
      collect_all_const_names(t->fn, out);
      return;
  }
}

}  // namespace crosshammer
