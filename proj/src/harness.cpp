#include "crosshammer/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "crosshammer/equivalence.hpp"
#include "crosshammer/scenarios.hpp"
#include "json.hpp"

namespace crosshammer {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error("config: bad boolean for " + key + ": " + v);
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  RunConfig cfg;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string val = unquote(trim(s.substr(eq + 1)));
    if (key == "internal")
      cfg.internal_path = val;
    else if (key == "external")
      cfg.external_path = val;
    else if (key == "scenarios")
      cfg.scenarios = split(val, ',');
    else if (key == "unchecked")
      cfg.unchecked = parse_bool(val, key);
    else if (key == "k")
      cfg.k = std::stoul(val);
    else if (key == "stride")
      cfg.stride = std::stoul(val);
    else if (key == "jobs")
      cfg.jobs = std::stoul(val);
    else if (key == "out")
      cfg.out_dir = val;
    else if (key == "atp_bin")
      cfg.atp.bin = val;
    else if (key == "atp_args")
      cfg.atp.args = split(val, ' ');
    else if (key == "timeout")
      cfg.atp.timeout_sec = std::stoi(val);
    else if (key == "cache_dir")
      cfg.atp.cache_dir = val;
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key " + key);
  }
  return cfg;
}

namespace {

RunRecord run_one(const RunConfig& cfg, const Library& merged_int,
                  const Library& merged_ext, const ScenarioContext& ctx,
                  const Theorem& t, const std::string& scenario) {
  RunRecord rec;
  rec.thm = t.id;
  rec.theory = t.theory;
  rec.scenario = scenario;
  rec.unchecked = cfg.unchecked;

  std::vector<ThmId> ext_eq = equiv_class(ctx.idx_ext, t.statement);
  if (!ext_eq.empty()) rec.ext_bound = merged_ext.theorem(ext_eq.front()).seq;

  Advice adv = run_scenario(ctx, scenario, t.statement);
  rec.applicable = adv.applicable;
  for (auto& l : adv.internal_lemmas) rec.internal_premises.push_back(l.id);
  for (auto& l : adv.external_lemmas) rec.external_premises.push_back(l.id);

  if (!cfg.atp.bin.empty()) {
    std::vector<std::pair<ThmId, TermPtr>> lemmas;
    for (auto& id : rec.internal_premises)
      lemmas.emplace_back(id, merged_int.theorem(id).statement);
    for (auto& id : rec.external_premises)
      lemmas.emplace_back(id, merged_ext.theorem(id).statement);
    FofProblem prob = translate(t.statement, lemmas);
    AtpResult res = run_atp(prob, cfg.atp);
    rec.atp_status = atp_status_name(res.status);
    rec.used.assign(res.used.begin(), res.used.end());
    rec.wall = res.wall_seconds;
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> simulate(const RunConfig& cfg) {
  if (cfg.scenarios.empty())
    throw std::runtime_error("simulate: no scenarios configured");
  if (cfg.stride < 1 || cfg.k < 1)
    throw std::runtime_error("simulate: stride and k must be at least 1");
  for (auto& s : cfg.scenarios)
    if (std::find(kScenarioTags.begin(), kScenarioTags.end(), s) ==
        kScenarioTags.end())
      throw std::runtime_error("simulate: unknown scenario " + s);

  Library lib_int = load_library(cfg.internal_path);
  Library lib_ext = load_library(cfg.external_path);

  std::vector<RunRecord> records;
  std::mutex mu;
  size_t n = lib_int.thms.size();
  for (size_t block = 0; block < std::max<size_t>(n, 1); block += cfg.stride) {
    if (block >= n) break;
    // matching from the accessible prefix only; the external side is complete
    Library prefix = lib_int;
    prefix.thms.resize(block);
    prefix.reindex();
    MatchState st = compute_matching(prefix, lib_ext);
    MergeResult merged = merge_namespace(lib_int, lib_ext, st);

    size_t block_end = std::min(n, block + cfg.stride);
    std::atomic<size_t> next{block};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= block_end) return;
        const Theorem& t = merged.internal_lib.thms[i];
        ScenarioContext ctx =
            make_context(merged.internal_lib, merged.external_lib, i, cfg.k,
                         cfg.unchecked);
        for (auto& scenario : cfg.scenarios) {
          RunRecord rec;
          try {
            rec = run_one(cfg, merged.internal_lib, merged.external_lib, ctx,
                          t, scenario);
          } catch (const std::exception& e) {
            rec.thm = t.id;
            rec.theory = t.theory;
            rec.scenario = scenario;
            rec.unchecked = cfg.unchecked;
            rec.atp_status = "Error";
          }
          std::lock_guard<std::mutex> lock(mu);
          records.push_back(std::move(rec));
        }
      }
    };
    size_t threads = std::max<size_t>(1, cfg.jobs);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (size_t j = 0; j < threads; ++j) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  }

  std::map<std::string, size_t> scenario_order;
  for (size_t i = 0; i < cfg.scenarios.size(); ++i)
    scenario_order[cfg.scenarios[i]] = i;
  std::stable_sort(records.begin(), records.end(),
                   [&](const RunRecord& a, const RunRecord& b) {
                     size_t sa = lib_int.thm_index.at(a.thm);
                     size_t sb = lib_int.thm_index.at(b.thm);
                     if (sa != sb) return sa < sb;
                     return scenario_order.at(a.scenario) <
                            scenario_order.at(b.scenario);
                   });
  if (!cfg.out_dir.empty())
    write_records(records, cfg.out_dir + "/records.jsonl");
  return records;
}

void write_records(const std::vector<RunRecord>& recs,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (auto& r : recs) {
    json j{{"thm", r.thm},
           {"theory", r.theory},
           {"scenario", r.scenario},
           {"applicable", r.applicable},
           {"unchecked", r.unchecked},
           {"internal_premises", r.internal_premises},
           {"external_premises", r.external_premises},
           {"atp_status", r.atp_status},
           {"used", r.used},
           {"wall", r.wall}};
    if (r.ext_bound != size_t(-1)) j["ext_bound"] = r.ext_bound;
    out << j.dump() << "\n";
  }
}

std::vector<RunRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    json j = json::parse(line);
    RunRecord r;
    r.thm = j.at("thm").get<std::string>();
    r.theory = j.at("theory").get<std::string>();
    r.scenario = j.at("scenario").get<std::string>();
    r.applicable = j.at("applicable").get<bool>();
    r.unchecked = j.at("unchecked").get<bool>();
    r.internal_premises =
        j.at("internal_premises").get<std::vector<std::string>>();
    r.external_premises =
        j.at("external_premises").get<std::vector<std::string>>();
    r.atp_status = j.at("atp_status").get<std::string>();
    r.used = j.at("used").get<std::vector<std::string>>();
    r.wall = j.at("wall").get<double>();
    if (j.count("ext_bound")) r.ext_bound = j.at("ext_bound").get<size_t>();
    out.push_back(std::move(r));
  }
  return out;
}

Report aggregate(const std::vector<RunRecord>& recs) {
  Report rep;
  std::map<std::string, size_t> row_index;
  std::set<ThmId> thms, any, any_checked;
  for (auto& r : recs) {
    thms.insert(r.thm);
    auto it = row_index.find(r.scenario);
    if (it == row_index.end()) {
      it = row_index.emplace(r.scenario, rep.rows.size()).first;
      rep.rows.push_back({r.scenario, 0, 0, 0, 0});
    }
    ScenarioRow& row = rep.rows[it->second];
    bool solved = r.atp_status == "Theorem";
    row.total += 1;
    if (solved) row.solved += 1;
    if (r.applicable) {
      row.applicable += 1;
      if (solved) row.solved_applicable += 1;
    }
    if (solved) {
      any.insert(r.thm);
      if (!r.unchecked) any_checked.insert(r.thm);
      rep.per_theory_solved[r.theory][r.scenario] += 1;
      rep.per_theory_solved[r.theory]["any"];  // ensure key exists later
    }
  }
  for (auto& r : recs) rep.per_theory_total[r.theory];
  std::map<std::string, std::set<ThmId>> theory_any;
  std::map<std::string, std::set<ThmId>> theory_thms;
  for (auto& r : recs) {
    theory_thms[r.theory].insert(r.thm);
    if (r.atp_status == "Theorem") theory_any[r.theory].insert(r.thm);
  }
  for (auto& [th, s] : theory_thms) rep.per_theory_total[th] = s.size();
  for (auto& [th, s] : theory_any) rep.per_theory_solved[th]["any"] = s.size();
  rep.total_theorems = thms.size();
  rep.any_solved = any.size();
  rep.any_checked_solved = any_checked.size();
  return rep;
}

namespace {

std::string pct(size_t num, size_t den) {
  if (den == 0) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * double(num) / double(den));
  return buf;
}

}  // namespace

std::string format_report(const Report& r) {
  std::ostringstream out;
  out << "scenario        solved  total  percent\n";
  for (auto& row : r.rows) {
    out << row.scenario;
    for (size_t i = row.scenario.size(); i < 16; ++i) out << ' ';
    out << row.solved << " / " << row.total << "  "
        << pct(row.solved, row.total);
    if (row.scenario == "ext-deps")
      out << " (" << pct(row.solved_applicable, row.applicable)
          << " of applicable)";
    out << "\n";
  }
  out << "any             " << r.any_solved << " / " << r.total_theorems
      << "  " << pct(r.any_solved, r.total_theorems) << "\n";
  out << "any-checked     " << r.any_checked_solved << " / "
      << r.total_theorems << "  "
      << pct(r.any_checked_solved, r.total_theorems) << "\n";
  out << "\nper theory (theorems solved by any scenario)\n";
  for (auto& [th, total] : r.per_theory_total) {
    size_t solved = 0;
    auto it = r.per_theory_solved.find(th);
    if (it != r.per_theory_solved.end()) {
      auto jt = it->second.find("any");
      if (jt != it->second.end()) solved = jt->second;
    }
    out << th;
    for (size_t i = th.size(); i < 16; ++i) out << ' ';
    out << solved << " / " << total << "  " << pct(solved, total) << "\n";
  }
  return out.str();
}

std::vector<TheoryPairRow> report_common_theories(const Library& lib_int,
                                                  const Library& lib_ext,
                                                  const MatchState& match,
                                                  size_t top_n) {
  MergeResult merged = merge_namespace(lib_int, lib_ext, match);
  std::map<std::string, size_t> totals_int, totals_ext;
  for (auto& t : merged.internal_lib.thms) totals_int[t.theory] += 1;
  for (auto& t : merged.external_lib.thms) totals_ext[t.theory] += 1;

  std::vector<TheoryPairRow> rows;
  for (auto& [ta, na] : totals_int)
    for (auto& [tb, nb] : totals_ext) {
      size_t common =
          common_class_count(merged.internal_lib, merged.external_lib, ta, tb);
      if (common > 0) rows.push_back({ta, tb, common, na, nb});
    }
  std::sort(rows.begin(), rows.end(),
            [](const TheoryPairRow& a, const TheoryPairRow& b) {
              if (a.common != b.common) return a.common > b.common;
              if (a.theory_int != b.theory_int)
                return a.theory_int < b.theory_int;
              return a.theory_ext < b.theory_ext;
            });
  if (rows.size() > top_n) rows.resize(top_n);
  return rows;
}

std::string format_theory_pairs(const std::vector<TheoryPairRow>& rows) {
  std::ostringstream out;
  for (auto& r : rows)
    out << r.common << "  " << r.theory_int << "(" << r.total_int << ")/"
        << r.theory_ext << "(" << r.total_ext << ")\n";
  return out.str();
}

void emit_evolution(const Library& lib_int, const Library& lib_ext,
                    const std::string& theory, std::ostream& out) {
  out << "seq,matched,declared\n";
  size_t theory_thms = 0;
  for (auto& t : lib_int.thms)
    if (t.theory == theory) ++theory_thms;
  if (theory_thms == 0) {
    // still surface unknown theories as an error
    if (std::find(lib_int.theories.begin(), lib_int.theories.end(), theory) ==
        lib_int.theories.end())
      throw LibraryError("emit_evolution: unknown theory " + theory);
    return;
  }
  for (auto& p : matching_evolution(lib_int, lib_ext, theory))
    out << p.seq << "," << p.matched_count << "," << p.declared_count << "\n";
}

std::vector<AuditViolation> audit_records(const Library& lib_int,
                                          const Library& lib_ext,
                                          const std::vector<RunRecord>& recs) {
  std::vector<AuditViolation> out;
  for (auto& r : recs) {
    if (!lib_int.has_theorem(r.thm)) {
      out.push_back({r.thm, r.scenario, "", "unknown internal theorem"});
      continue;
    }
    size_t conj_seq = lib_int.theorem(r.thm).seq;
    std::set<std::string> offered;
    for (auto& p : r.internal_premises) {
      offered.insert(p);
      if (!lib_int.has_theorem(p)) {
        out.push_back({r.thm, r.scenario, p, "unknown internal premise"});
      } else if (lib_int.theorem(p).seq >= conj_seq) {
        out.push_back({r.thm, r.scenario, p,
                       "internal premise not accessible"});
      }
    }
    for (auto& p : r.external_premises) {
      offered.insert(p);
      if (!r.unchecked) {
        out.push_back({r.thm, r.scenario, p,
                       "external premise in checked record"});
        continue;
      }
      if (!lib_ext.has_theorem(p)) {
        out.push_back({r.thm, r.scenario, p, "unknown external premise"});
      } else if (r.ext_bound != size_t(-1) &&
                 lib_ext.theorem(p).seq >= r.ext_bound) {
        out.push_back({r.thm, r.scenario, p,
                       "external premise after the conjecture's equivalent"});
      }
    }
    for (auto& u : r.used)
      if (!offered.count(u))
        out.push_back({r.thm, r.scenario, u, "used premise was never offered"});
  }
  return out;
}

}  // namespace crosshammer
