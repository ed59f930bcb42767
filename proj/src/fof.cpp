#include "crosshammer/fof.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crosshammer/build.hpp"

namespace crosshammer {

namespace {

// ---------------------------------------------------------------------------
// Preprocessing: universal closure and lambda lifting.

void free_vars_typed(const TermPtr& t, std::set<std::string>& bound,
                     std::map<std::string, TyPtr>& out) {
  switch (t->kind) {
    case TermKind::Const:
      return;
    case TermKind::Var:
      if (!bound.count(t->name)) out.emplace(t->name, t->ty);
      return;
    case TermKind::App:
      free_vars_typed(t->fn, bound, out);
      free_vars_typed(t->arg, bound, out);
      return;
    case TermKind::Abs: {
      bool fresh = bound.insert(t->name).second;
      free_vars_typed(t->fn, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

std::map<std::string, TyPtr> free_vars_typed(const TermPtr& t) {
  std::set<std::string> bound;
  std::map<std::string, TyPtr> out;
  free_vars_typed(t, bound, out);
  return out;
}

TermPtr close_universally(const TermPtr& t) {
  TermPtr out = t;
  auto fvs = free_vars_typed(t);
  for (auto it = fvs.rbegin(); it != fvs.rend(); ++it)
    out = build::forall(it->first, it->second, out);
  return out;
}

bool is_quantifier_node(const TermPtr& t) {
  return t->kind == TermKind::App && t->fn->kind == TermKind::Const &&
         (t->fn->name == "!" || t->fn->name == "?") &&
         t->arg->kind == TermKind::Abs;
}

struct Lifter {
  int counter = 0;
  std::vector<std::pair<std::string, TermPtr>> defs;  // (symbol, axiom)

  TermPtr lift(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Const:
      case TermKind::Var:
        return t;
      case TermKind::App:
        if (is_quantifier_node(t)) {
          const Term& abs = *t->arg;
          return Term::app(t->fn,
                           Term::abs(abs.name, abs.ty, lift(abs.fn)));
        }
        return Term::app(lift(t->fn), lift(t->arg));
      case TermKind::Abs: {
        TermPtr body = lift(t->fn);
        TermPtr abs = Term::abs(t->name, t->ty, body);
        auto fvs = free_vars_typed(abs);
        TyPtr ty = type_of(abs);
        for (auto it = fvs.rbegin(); it != fvs.rend(); ++it)
          ty = Ty::fn(it->second, ty);
        std::string name = "lam%" + std::to_string(counter++);
        TermPtr repl = Term::constant(name, ty);
        for (auto& [v, vty] : fvs) repl = Term::app(repl, Term::var(v, vty));
        // ! fvs x. (lam fvs x) = body
        std::string bx = t->name;
        TermPtr applied = Term::app(repl, Term::var(bx, t->ty));
        TermPtr def = build::forall(bx, t->ty, build::eq(applied, body));
        for (auto it = fvs.rbegin(); it != fvs.rend(); ++it)
          def = build::forall(it->first, it->second, def);
        defs.emplace_back(name, def);
        return repl;
      }
    }
    return t;
  }
};

// ---------------------------------------------------------------------------
// Symbol analysis over the lifted, closed formulas.

using SymKey = std::pair<std::string, std::string>;  // (const id, type string)

struct SymbolUse {
  std::set<int> arities;
  bool pred_use = false;
  bool term_use = false;
};

struct Spine {
  TermPtr head;
  std::vector<TermPtr> args;
};

Spine spine_of(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->kind == TermKind::App) {
    s.args.push_back(cur->arg);
    cur = cur->fn;
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

bool binary_connective(const std::string& n) {
  return n == "/\\" || n == "\\/" || n == "==>" || n == "<=>";
}

struct Analyzer {
  std::map<SymKey, SymbolUse>& uses;

  void record(const TermPtr& head, size_t arity, bool as_formula) {
    SymKey key{head->name, print_type(head->ty)};
    SymbolUse& u = uses[key];
    u.arities.insert(int(arity));
    (as_formula ? u.pred_use : u.term_use) = true;
  }

  void formula(const TermPtr& t) {
    Spine s = spine_of(t);
    if (s.head->kind == TermKind::Const) {
      const std::string& n = s.head->name;
      if ((n == "T" || n == "F") && s.args.empty()) return;
      if (binary_connective(n) && s.args.size() == 2) {
        formula(s.args[0]);
        formula(s.args[1]);
        return;
      }
      if (n == "~" && s.args.size() == 1) {
        formula(s.args[0]);
        return;
      }
      if ((n == "!" || n == "?") && s.args.size() == 1 &&
          s.args[0]->kind == TermKind::Abs) {
        formula(s.args[0]->fn);
        return;
      }
      if (n == "=" && s.args.size() == 2) {
        if (is_bool_type(type_of(s.args[0]))) {
          formula(s.args[0]);
          formula(s.args[1]);
        } else {
          term(s.args[0]);
          term(s.args[1]);
        }
        return;
      }
    }
    atom(t);
  }

  void atom(const TermPtr& t) {
    Spine s = spine_of(t);
    if (s.head->kind == TermKind::Abs)
      throw TranslateError("lambda left after lifting in: " + print_term(t));
    if (s.head->kind == TermKind::Const) record(s.head, s.args.size(), true);
    for (auto& a : s.args) term(a);
  }

  void term(const TermPtr& t) {
    if (is_quantifier_node(t))
      throw TranslateError("quantifier in term position: " + print_term(t));
    Spine s = spine_of(t);
    if (s.head->kind == TermKind::Abs)
      throw TranslateError("lambda left after lifting in: " + print_term(t));
    if (s.head->kind == TermKind::Const) record(s.head, s.args.size(), false);
    for (auto& a : s.args) term(a);
  }
};

// ---------------------------------------------------------------------------
// Emission.

enum class SymMode { Pred, Fun, Ap };

struct SymbolPlan {
  std::string name;
  SymMode mode = SymMode::Ap;
  int arity = 0;
};

std::string sanitize(const std::string& id) {
  std::string out;
  for (char c : id)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || !std::islower(static_cast<unsigned char>(out[0])))
    out = "c_" + out;
  return out;
}

std::string logical_fof_name(const std::string& id) {
  if (id == "=") return "c_eq";
  if (id == "/\\") return "c_and";
  if (id == "\\/") return "c_or";
  if (id == "==>") return "c_imp";
  if (id == "<=>") return "c_iff";
  if (id == "~") return "c_not";
  if (id == "!") return "c_forall";
  if (id == "?") return "c_exists";
  if (id == "T") return "c_true";
  if (id == "F") return "c_false";
  return "";
}

struct Emitter {
  const std::map<SymKey, SymbolPlan>& plan;
  std::map<std::string, std::string> scope;  // HOL var -> fof var
  int var_counter = 0;

  const SymbolPlan& plan_of(const TermPtr& head) const {
    return plan.at(SymKey{head->name, print_type(head->ty)});
  }

  std::string var_name(const std::string& hol) const { return scope.at(hol); }

  std::string formula(const TermPtr& t) {
    Spine s = spine_of(t);
    if (s.head->kind == TermKind::Const) {
      const std::string& n = s.head->name;
      if (n == "T" && s.args.empty()) return "$true";
      if (n == "F" && s.args.empty()) return "$false";
      if (binary_connective(n) && s.args.size() == 2) {
        const char* op = n == "/\\"   ? " & "
                         : n == "\\/" ? " | "
                         : n == "==>" ? " => "
                                      : " <=> ";
        return "(" + formula(s.args[0]) + op + formula(s.args[1]) + ")";
      }
      if (n == "~" && s.args.size() == 1)
        return "(~ " + formula(s.args[0]) + ")";
      if ((n == "!" || n == "?") && s.args.size() == 1 &&
          s.args[0]->kind == TermKind::Abs) {
        const Term& abs = *s.args[0];
        std::string fv = "X" + std::to_string(var_counter++);
        auto saved = scope.find(abs.name);
        std::string old = saved == scope.end() ? "" : saved->second;
        scope[abs.name] = fv;
        std::string body = formula(abs.fn);
        if (old.empty())
          scope.erase(abs.name);
        else
          scope[abs.name] = old;
        return std::string(n == "!" ? "!" : "?") + "[" + fv + "]: " + body;
      }
      if (n == "=" && s.args.size() == 2) {
        if (is_bool_type(type_of(s.args[0])))
          return "(" + formula(s.args[0]) + " <=> " + formula(s.args[1]) + ")";
        return "(" + term(s.args[0]) + " = " + term(s.args[1]) + ")";
      }
    }
    // atom
    if (s.head->kind == TermKind::Const) {
      const SymbolPlan& pl = plan_of(s.head);
      if (pl.mode == SymMode::Pred && int(s.args.size()) == pl.arity)
        return apply_direct(pl.name, s.args);
    }
    return "p(" + term(t) + ")";
  }

  std::string apply_direct(const std::string& name,
                           const std::vector<TermPtr>& args) {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += term(args[i]);
    }
    return out + ")";
  }

  std::string term(const TermPtr& t) {
    if (is_quantifier_node(t))
      throw TranslateError("quantifier in term position: " + print_term(t));
    Spine s = spine_of(t);
    std::string head;
    bool direct = false;
    if (s.head->kind == TermKind::Const) {
      const SymbolPlan& pl = plan_of(s.head);
      head = pl.name;
      if (pl.mode == SymMode::Fun && int(s.args.size()) == pl.arity)
        return apply_direct(pl.name, s.args);
      direct = false;
    } else if (s.head->kind == TermKind::Var) {
      head = var_name(s.head->name);
    } else {
      throw TranslateError("lambda left after lifting in: " + print_term(t));
    }
    (void)direct;
    std::string out = head;
    for (auto& a : s.args) out = "ap(" + out + "," + term(a) + ")";
    return out;
  }
};

std::string sanitize_axiom_name(const std::string& id,
                                std::set<std::string>& taken) {
  std::string base = sanitize(id);
  std::string name = base;
  int i = 2;
  while (!taken.insert(name).second) name = base + "_" + std::to_string(i++);
  return name;
}

// ---------------------------------------------------------------------------
// Hashing and the result cache.

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_key(const std::string& problem, const AtpConfig& cfg) {
  std::string blob = problem + "\x01" + cfg.bin;
  for (auto& a : cfg.args) blob += "\x02" + a;
  blob += "\x03" + std::to_string(cfg.timeout_sec);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(blob)));
  return buf;
}

bool load_cached(const std::string& path, AtpResult& r) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  AtpResult out;
  bool have_status = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "status") {
      std::string s;
      ls >> s;
      if (s == "Theorem")
        out.status = AtpStatus::Theorem;
      else if (s == "CounterSatisfiable")
        out.status = AtpStatus::CounterSatisfiable;
      else if (s == "Timeout")
        out.status = AtpStatus::Timeout;
      else if (s == "GaveUp")
        out.status = AtpStatus::GaveUp;
      else
        out.status = AtpStatus::Error;
      have_status = true;
    } else if (kind == "wall") {
      ls >> out.wall_seconds;
    } else if (kind == "used") {
      std::string id;
      ls >> id;
      out.used.insert(id);
    }
  }
  if (!have_status) return false;
  out.cached = true;
  r = out;
  return true;
}

void store_cached(const std::string& path, const AtpResult& r) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << "status " << atp_status_name(r.status) << "\n";
    out << "wall " << r.wall_seconds << "\n";
    for (auto& u : r.used) out << "used " << u << "\n";
  }
  ::rename(tmp.c_str(), path.c_str());  // atomic publication
}

// ---------------------------------------------------------------------------
// Subprocess driving.

struct RawRun {
  bool timed_out = false;
  bool spawn_failed = false;
  int exit_code = 0;
  std::string output;
};

RawRun run_subprocess(const std::vector<std::string>& argv, int timeout_sec) {
  RawRun raw;
  int fds[2];
  if (pipe(fds) != 0) {
    raw.spawn_failed = true;
    return raw;
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    raw.spawn_failed = true;
    return raw;
  }
  if (pid == 0) {
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    std::vector<char*> cargv;
    for (auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }
  close(fds[1]);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::seconds(timeout_sec);
  char buf[4096];
  for (;;) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      raw.timed_out = true;
      kill(pid, SIGKILL);
      left = 1000;  // drain what remains
    }
    struct pollfd pfd {fds[0], POLLIN, 0};
    int pr = poll(&pfd, 1, int(std::min<long long>(left, 1000)));
    if (pr > 0) {
      ssize_t n = read(fds[0], buf, sizeof buf);
      if (n <= 0) break;
      raw.output.append(buf, size_t(n));
    } else if (raw.timed_out) {
      break;
    }
  }
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  raw.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return raw;
}

bool identifier_token_present(const std::string& text, const std::string& id) {
  size_t pos = 0;
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while ((pos = text.find(id, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !is_ident(text[pos - 1]);
    size_t end = pos + id.size();
    bool right_ok = end >= text.size() || !is_ident(text[end]);
    if (left_ok && right_ok) return true;
    pos = end;
  }
  return false;
}

AtpResult parse_output(const FofProblem& p, const RawRun& raw) {
  AtpResult r;
  if (raw.timed_out) {
    r.status = AtpStatus::Timeout;
    return r;
  }
  if (raw.spawn_failed || raw.exit_code == 127) {
    r.status = AtpStatus::Error;
    return r;
  }
  std::string status_word;
  std::istringstream in(raw.output);
  std::string line;
  while (std::getline(in, line)) {
    size_t pos = line.find("SZS status ");
    if (pos == std::string::npos) continue;
    std::istringstream ls(line.substr(pos + 11));
    ls >> status_word;
    break;
  }
  if (status_word == "Theorem" || status_word == "Unsatisfiable")
    r.status = AtpStatus::Theorem;
  else if (status_word == "CounterSatisfiable" || status_word == "Satisfiable")
    r.status = AtpStatus::CounterSatisfiable;
  else if (status_word == "Timeout" || status_word == "ResourceOut")
    r.status = AtpStatus::Timeout;
  else if (status_word == "GaveUp" || status_word == "Unknown")
    r.status = AtpStatus::GaveUp;
  else
    r.status = AtpStatus::Error;

  if (r.status == AtpStatus::Theorem) {
    // prefer the proof object section when the prover delimits one
    std::string section = raw.output;
    size_t start = raw.output.find("SZS output start");
    if (start != std::string::npos) {
      size_t end = raw.output.find("SZS output end", start);
      section = raw.output.substr(
          start, end == std::string::npos ? std::string::npos : end - start);
    }
    for (auto& [name, thm] : p.name_map)
      if (identifier_token_present(section, name)) r.used.insert(thm);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

FofProblem translate(const TermPtr& conjecture,
                     const std::vector<std::pair<ThmId, TermPtr>>& lemmas) {
  if (!is_bool_type(type_of(conjecture)))
    throw TranslateError("conjecture is not boolean: " +
                         print_term(conjecture));

  Lifter lifter;
  std::vector<std::pair<ThmId, TermPtr>> prepared;
  for (auto& [id, stmt] : lemmas) {
    if (!is_bool_type(type_of(stmt)))
      throw TranslateError("lemma " + id + " is not boolean");
    prepared.emplace_back(id, lifter.lift(close_universally(stmt)));
  }
  TermPtr conj = lifter.lift(close_universally(conjecture));
  // defining axioms may themselves be closed formulas already
  std::vector<std::pair<std::string, TermPtr>> defs = lifter.defs;

  std::map<SymKey, SymbolUse> uses;
  Analyzer an{uses};
  for (auto& [id, stmt] : prepared) an.formula(stmt);
  for (auto& [name, def] : defs) an.formula(def);
  an.formula(conj);

  // monomorphization indices for constants used at several types
  std::map<std::string, std::vector<std::string>> types_of;
  for (auto& [key, use] : uses) types_of[key.first].push_back(key.second);

  std::map<SymKey, SymbolPlan> plan;
  std::set<std::string> taken = {"p", "ap"};
  FofProblem prob;
  for (auto& [key, use] : uses) {
    SymbolPlan pl;
    std::string base = logical_fof_name(key.first);
    if (base.empty()) base = sanitize(key.first);
    auto& tys = types_of[key.first];
    if (tys.size() > 1) {
      size_t idx = size_t(std::find(tys.begin(), tys.end(), key.second) -
                          tys.begin());
      base += "_t" + std::to_string(idx);
    }
    std::string name = base;
    int i = 2;
    while (!taken.insert(name).second) name = base + "_" + std::to_string(i++);
    pl.name = name;
    if (use.arities.size() == 1) {
      pl.arity = *use.arities.begin();
      if (use.pred_use && !use.term_use)
        pl.mode = SymMode::Pred;
      else
        pl.mode = SymMode::Fun;
      if (use.pred_use && use.term_use) pl.mode = SymMode::Fun;
    } else {
      pl.mode = SymMode::Ap;
      pl.arity = 0;
    }
    plan[key] = pl;
    prob.symbol_map[name] = key.first + " : " + key.second;
  }

  std::set<std::string> axiom_names;
  axiom_names.insert("goal");
  for (auto& [id, stmt] : prepared) {
    Emitter em{plan};
    std::string name = sanitize_axiom_name(id, axiom_names);
    prob.axioms.push_back({name, "axiom", em.formula(stmt)});
    prob.name_map[name] = id;
  }
  for (auto& [sym, def] : defs) {
    Emitter em{plan};
    std::string name = sanitize_axiom_name(sym + "_def", axiom_names);
    prob.axioms.push_back({name, "axiom", em.formula(def)});
  }
  Emitter em{plan};
  prob.conjecture = {"goal", "conjecture", em.formula(conj)};
  return prob;
}

std::string serialize(const FofProblem& p) {
  std::string out;
  for (auto& a : p.axioms)
    out += "fof(" + a.name + ", " + a.role + ", " + a.formula + ").\n";
  out += "fof(" + p.conjecture.name + ", " + p.conjecture.role + ", " +
         p.conjecture.formula + ").\n";
  return out;
}

void write_problem(const FofProblem& p, const std::string& path) {
  {
    std::ofstream out(path);
    if (!out) throw TranslateError("cannot write " + path);
    out << serialize(p);
  }
  std::ofstream map(path + ".map");
  if (!map) throw TranslateError("cannot write " + path + ".map");
  for (auto& [name, thm] : p.name_map) map << name << "\t" << thm << "\n";
}

std::string atp_status_name(AtpStatus s) {
  switch (s) {
    case AtpStatus::Theorem: return "Theorem";
    case AtpStatus::CounterSatisfiable: return "CounterSatisfiable";
    case AtpStatus::Timeout: return "Timeout";
    case AtpStatus::GaveUp: return "GaveUp";
    case AtpStatus::Error: return "Error";
  }
  return "Error";
}

AtpResult run_atp(const FofProblem& p, const AtpConfig& cfg) {
  std::string text = serialize(p);
  std::string key = cache_key(text, cfg);
  std::string cache_path;
  if (!cfg.cache_dir.empty()) {
    cache_path = cfg.cache_dir + "/" + key + ".result";
    AtpResult cached;
    if (load_cached(cache_path, cached)) return cached;
  }

  std::string problem_path =
      (cfg.cache_dir.empty() ? std::string("/tmp") : cfg.cache_dir) + "/" +
      key + ".p";
  {
    std::ofstream out(problem_path);
    if (!out) {
      AtpResult r;
      r.status = AtpStatus::Error;
      return r;
    }
    out << text;
  }

  std::vector<std::string> argv;
  argv.push_back(cfg.bin);
  argv.insert(argv.end(), cfg.args.begin(), cfg.args.end());
  argv.push_back(problem_path);

  auto t0 = std::chrono::steady_clock::now();
  RawRun raw = run_subprocess(argv, cfg.timeout_sec);
  AtpResult r = parse_output(p, raw);
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (cfg.cache_dir.empty()) ::remove(problem_path.c_str());
  if (!cache_path.empty()) store_cached(cache_path, r);
  return r;
}

AtpResult minimize(const FofProblem& p, const AtpResult& r,
                   const AtpConfig& cfg) {
  if (r.status != AtpStatus::Theorem) return r;
  FofProblem reduced;
  reduced.conjecture = p.conjecture;
  reduced.symbol_map = p.symbol_map;
  for (auto& a : p.axioms) {
    auto it = p.name_map.find(a.name);
    bool keep = it == p.name_map.end()          // lifted definitions stay
                || r.used.count(it->second) > 0;
    if (!keep) continue;
    reduced.axioms.push_back(a);
    if (it != p.name_map.end()) reduced.name_map[a.name] = it->second;
  }
  AtpResult again = run_atp(reduced, cfg);
  if (again.status != AtpStatus::Theorem) return r;
  again.wall_seconds += r.wall_seconds;
  return again;
}

}  // namespace crosshammer
