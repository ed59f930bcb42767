#include <cstdlib>
#include <fstream>
#include <sstream>

#include "crosshammer/harness.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace crosshammer;

namespace {

/// Library with a few internal twin theorems so the string-matching mock
/// prover can actually solve something via ext-deps advice.
Library solvable_library(const std::string& tag, unsigned seed) {
  Library lib = fixtures::gen_library(tag, 2, 10, seed);
  size_t seq = lib.thms.size();
  for (size_t i = 0; i < 6; ++i) {
    const Theorem& src = lib.thms[i * 3];
    lib.thms.push_back({tag + "/twin" + std::to_string(i), src.statement,
                        src.theory, seq++, {src.id}});
  }
  lib.reindex();
  return lib;
}

struct Paths {
  std::string int_path = "harness-int.lib";
  std::string ext_path = "harness-ext.lib";
  ~Paths() {
    std::remove(int_path.c_str());
    std::remove(ext_path.c_str());
  }
};

RunConfig base_cfg(const Paths& p) {
  RunConfig cfg;
  cfg.internal_path = p.int_path;
  cfg.external_path = p.ext_path;
  cfg.stride = 10;
  cfg.k = 16;
  return cfg;
}

size_t solved_count(const std::vector<RunRecord>& recs,
                    const std::string& scenario) {
  size_t n = 0;
  for (auto& r : recs)
    if (r.scenario == scenario && r.atp_status == "Theorem") ++n;
  return n;
}

}  // namespace

TEST_CASE("load_run_config parses the flat key = value format") {
  std::string path = "harness-test.toml";
  {
    std::ofstream out(path);
    out << "# comment\n"
        << "internal = \"a.lib\"\n"
        << "external = b.lib\n"
        << "scenarios = empty, ext-deps\n"
        << "unchecked = true\n"
        << "k = 64\n"
        << "stride = 5\n"
        << "jobs = 2\n"
        << "atp_bin = python3\n"
        << "atp_args = data/mock_atp.py\n"
        << "timeout = 7\n";
  }
  RunConfig cfg = load_run_config(path);
  CHECK(cfg.internal_path == "a.lib");
  CHECK(cfg.external_path == "b.lib");
  CHECK(cfg.scenarios == std::vector<std::string>{"empty", "ext-deps"});
  CHECK(cfg.unchecked);
  CHECK(cfg.k == 64);
  CHECK(cfg.stride == 5);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.atp.bin == "python3");
  CHECK(cfg.atp.timeout_sec == 7);
  {
    std::ofstream out(path);
    out << "nonsense = 1\n";
  }
  CHECK_THROWS(load_run_config(path));
  std::remove(path.c_str());
}

TEST_CASE("simulate with the empty scenario emits one record per theorem") {
  Paths p;
  Library lib = fixtures::gen_library("hsa", 1, 10, 3);
  auto twin = fixtures::make_twin(lib, "hsb");
  save_library(lib, p.int_path);
  save_library(twin.renamed, p.ext_path);
  RunConfig cfg = base_cfg(p);
  cfg.scenarios = {"empty"};
  auto recs = simulate(cfg);
  REQUIRE(recs.size() == 10);
  for (auto& r : recs) {
    CHECK(r.internal_premises.empty());
    CHECK(r.external_premises.empty());
    CHECK(r.atp_status == "Skipped");  // no prover configured
  }
}

TEST_CASE("a full run with the mock prover is sound and aggregates correctly") {
  Paths p;
  Library lib = solvable_library("hfa", 9);
  auto twin = fixtures::make_twin(lib, "hfb");
  save_library(lib, p.int_path);
  save_library(twin.renamed, p.ext_path);
  RunConfig cfg = base_cfg(p);
  cfg.scenarios = {"empty", "ext-deps"};
  cfg.atp.bin = "python3";
  cfg.atp.args = {"data/mock_atp.py"};
  cfg.atp.timeout_sec = 10;
  auto recs = simulate(cfg);
  REQUIRE(recs.size() == 2 * lib.thms.size());

  // internal twins make their originals reachable advice, which the mock
  // prover accepts as an exact formula match
  CHECK(solved_count(recs, "ext-deps") >= 6);
  CHECK(solved_count(recs, "ext-deps") >= solved_count(recs, "empty"));

  CHECK(audit_records(lib, twin.renamed, recs).empty());

  Report rep = aggregate(recs);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.total_theorems == lib.thms.size());
  std::set<ThmId> any;
  for (auto& r : recs)
    if (r.atp_status == "Theorem") any.insert(r.thm);
  CHECK(rep.any_solved == any.size());
  CHECK(rep.any_checked_solved == any.size());  // run was checked-only
  std::string text = format_report(rep);
  CHECK(text.find("ext-deps") != std::string::npos);
  CHECK(text.find("of applicable") != std::string::npos);
}

TEST_CASE("rematch stride does not change the outcome on a stable fixture") {
  Paths p;
  Library lib = solvable_library("hta", 21);
  auto twin = fixtures::make_twin(lib, "htb");
  save_library(lib, p.int_path);
  save_library(twin.renamed, p.ext_path);
  RunConfig cfg = base_cfg(p);
  cfg.scenarios = {"ext-deps"};
  cfg.atp.bin = "python3";
  cfg.atp.args = {"data/mock_atp.py"};
  // the matching saturates early, so rematch frequency stops mattering
  cfg.stride = 9;
  auto rare = simulate(cfg);
  cfg.stride = 5;
  auto often = simulate(cfg);
  REQUIRE(rare.size() == often.size());
  CHECK(solved_count(rare, "ext-deps") == solved_count(often, "ext-deps"));
  CHECK(solved_count(often, "ext-deps") >= 6);
}

TEST_CASE("records round-trip through JSON lines") {
  Paths p;
  Library lib = fixtures::gen_library("hra", 1, 8, 5);
  auto twin = fixtures::make_twin(lib, "hrb");
  save_library(lib, p.int_path);
  save_library(twin.renamed, p.ext_path);
  RunConfig cfg = base_cfg(p);
  cfg.scenarios = {"internal", "ext-deps"};
  auto recs = simulate(cfg);
  std::string path = "harness-records.jsonl";
  write_records(recs, path);
  auto back = read_records(path);
  REQUIRE(back.size() == recs.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].thm == recs[i].thm);
    CHECK(back[i].scenario == recs[i].scenario);
    CHECK(back[i].applicable == recs[i].applicable);
    CHECK(back[i].internal_premises == recs[i].internal_premises);
    CHECK(back[i].external_premises == recs[i].external_premises);
    CHECK(back[i].ext_bound == recs[i].ext_bound);
    CHECK(back[i].atp_status == recs[i].atp_status);
  }
  std::remove(path.c_str());
}

TEST_CASE("aggregate union arithmetic") {
  std::vector<RunRecord> recs;
  for (int i = 0; i < 10; ++i) {
    RunRecord a;
    a.thm = "l/t" + std::to_string(i);
    a.theory = "th";
    a.scenario = "s1";
    a.atp_status = i == 0 ? "Theorem" : "GaveUp";
    RunRecord b = a;
    b.scenario = "s2";
    b.atp_status = i == 1 ? "Theorem" : "GaveUp";
    recs.push_back(a);
    recs.push_back(b);
  }
  Report rep = aggregate(recs);
  CHECK(rep.total_theorems == 10);
  CHECK(rep.rows[0].solved == 1);
  CHECK(rep.rows[1].solved == 1);
  CHECK(rep.any_solved == 2);  // disjoint 10% + 10% = 20%

  for (auto& r : recs) r.atp_status = "Theorem";
  Report all = aggregate(recs);
  CHECK(all.any_solved == 10);
  CHECK(all.rows[0].solved == 10);
}

TEST_CASE("report_common_theories pairs each theory with its twin") {
  Library lib = fixtures::gen_library("rca", 3, 10, 13);
  auto twin = fixtures::make_twin(lib, "rcb");
  MatchState st = compute_matching(lib, twin.renamed);
  auto rows = report_common_theories(lib, twin.renamed, st, 7);
  REQUIRE(rows.size() == 3);  // group theories share nothing across groups
  for (auto& r : rows) {
    CHECK(r.theory_int == r.theory_ext);
    CHECK(r.common > 0);
    CHECK(r.total_int == 10);
    CHECK(r.total_ext == 10);
  }

  // disjoint libraries share no classes
  Library other = fixtures::gen_library("rcc", 2, 8, 99);
  MatchState none;
  CHECK(report_common_theories(lib, other, none, 7).empty());
}

TEST_CASE("emit_evolution writes a plottable CSV") {
  Library lib = fixtures::gen_library("eva", 2, 8, 17);
  auto twin = fixtures::make_twin(lib, "evb");
  std::ostringstream out;
  emit_evolution(lib, twin.renamed, "th0", out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "seq,matched,declared");
  size_t rows = 0, prev_declared = 0, last_matched = 0, last_declared = 0;
  std::string line;
  while (std::getline(in, line)) {
    size_t seq, matched, declared;
    char c1, c2;
    std::istringstream ls(line);
    REQUIRE((ls >> seq >> c1 >> matched >> c2 >> declared));
    CHECK(declared >= prev_declared);  // declarations accumulate
    prev_declared = declared;
    last_matched = matched;
    last_declared = declared;
    ++rows;
  }
  size_t theory_thms = 0;
  for (auto& t : lib.thms)
    if (t.theory == "th0") ++theory_thms;
  CHECK(rows == theory_thms + 1);
  // on twins, every constant that ever occurs ends up matched
  CHECK(last_matched == last_declared);

  std::ostringstream empty_out;
  CHECK_THROWS_AS(emit_evolution(lib, twin.renamed, "nope", empty_out),
                  LibraryError);
}

TEST_CASE("warm-cache reruns reproduce the records") {
  Paths p;
  Library lib = solvable_library("hca", 31);
  auto twin = fixtures::make_twin(lib, "hcb");
  save_library(lib, p.int_path);
  save_library(twin.renamed, p.ext_path);
  std::system("rm -rf harness-cache && mkdir -p harness-cache");
  RunConfig cfg = base_cfg(p);
  cfg.scenarios = {"ext-deps"};
  cfg.atp.bin = "python3";
  cfg.atp.args = {"data/mock_atp.py"};
  cfg.atp.cache_dir = "harness-cache";
  auto cold = simulate(cfg);
  auto warm = simulate(cfg);
  REQUIRE(cold.size() == warm.size());
  for (size_t i = 0; i < cold.size(); ++i) {
    CHECK(cold[i].thm == warm[i].thm);
    CHECK(cold[i].atp_status == warm[i].atp_status);
    CHECK(cold[i].used == warm[i].used);
    CHECK(cold[i].internal_premises == warm[i].internal_premises);
  }
  std::system("rm -rf harness-cache");
}

TEST_CASE("the audit flags tampered records") {
  Library lib = fixtures::gen_library("haa", 1, 6, 7);
  auto twin = fixtures::make_twin(lib, "hab");
  RunRecord bad;
  bad.thm = lib.thms[2].id;
  bad.theory = "th0";
  bad.scenario = "internal";
  bad.internal_premises = {lib.thms[5].id};  // later than the conjecture
  bad.used = {"haa/never-offered"};
  auto violations = audit_records(lib, twin.renamed, {bad});
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].reason == "internal premise not accessible");
  CHECK(violations[1].reason == "used premise was never offered");

  RunRecord leak;
  leak.thm = lib.thms[2].id;
  leak.theory = "th0";
  leak.scenario = "ext-pred";
  leak.unchecked = false;
  leak.external_premises = {twin.renamed.thms[0].id};
  CHECK(audit_records(lib, twin.renamed, {leak}).size() == 1);
}
