#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "crosshammer/fof.hpp"
#include "crosshammer/library.hpp"
#include "crosshammer/matching.hpp"

namespace crosshammer {

struct RunConfig {
  std::string internal_path;
  std::string external_path;
  std::vector<std::string> scenarios;
  bool unchecked = false;
  size_t k = 128;
  size_t stride = 25;  // recompute the matching every `stride` theorems
  size_t jobs = 1;
  std::string out_dir;  // when set, records.jsonl is written there
  AtpConfig atp;        // empty bin skips the prover, status "Skipped"
};

struct RunRecord {
  ThmId thm;
  std::string theory;
  std::string scenario;
  bool applicable = true;
  bool unchecked = false;
  std::vector<ThmId> internal_premises;
  std::vector<ThmId> external_premises;
  size_t ext_bound = size_t(-1);  // external seq bound in effect, if any
  std::string atp_status = "Skipped";
  std::vector<ThmId> used;
  double wall = 0;
};

/// Flat key = value configuration reader. Keys: internal, external,
/// scenarios (comma separated), unchecked, k, stride, jobs, out, atp_bin,
/// atp_args, timeout, cache_dir. Lines starting with # are comments.
RunConfig load_run_config(const std::string& path);

/// Replays the library chronologically: each theorem is treated as an open
/// conjecture against its accessible prefix, the matching is recomputed per
/// stride block from that prefix against the always-complete external
/// library, every configured scenario produces advice, and the advice goes
/// to the prover when one is configured.
std::vector<RunRecord> simulate(const RunConfig& cfg);

void write_records(const std::vector<RunRecord>& recs, const std::string& path);
std::vector<RunRecord> read_records(const std::string& path);

struct ScenarioRow {
  std::string scenario;
  size_t total = 0;
  size_t solved = 0;
  size_t applicable = 0;
  size_t solved_applicable = 0;
};

struct Report {
  std::vector<ScenarioRow> rows;        // per scenario, input order
  size_t total_theorems = 0;
  size_t any_solved = 0;                // union over all scenarios
  size_t any_checked_solved = 0;        // union over checked records only
  // theory -> scenario -> solved count, plus "any"; totals alongside
  std::map<std::string, std::map<std::string, size_t>> per_theory_solved;
  std::map<std::string, size_t> per_theory_total;
};

Report aggregate(const std::vector<RunRecord>& recs);
std::string format_report(const Report& r);

struct TheoryPairRow {
  std::string theory_int, theory_ext;
  size_t common = 0;
  size_t total_int = 0, total_ext = 0;
};

/// Theory pairs of the two libraries ranked by shared equivalence-class
/// count after namespace merge; pairs with nothing in common are dropped.
std::vector<TheoryPairRow> report_common_theories(const Library& lib_int,
                                                  const Library& lib_ext,
                                                  const MatchState& match,
                                                  size_t top_n = 7);
std::string format_theory_pairs(const std::vector<TheoryPairRow>& rows);

/// CSV of matching_evolution: header `seq,matched,declared`, one row per
/// point; a theory without theorems yields the header only.
void emit_evolution(const Library& lib_int, const Library& lib_ext,
                    const std::string& theory, std::ostream& out);

struct AuditViolation {
  ThmId thm;
  std::string scenario;
  std::string premise;
  std::string reason;
};

/// Independent premise-availability check over a finished run: internal
/// premises must predate the conjecture, external premises may only occur in
/// unchecked records and must respect the recorded external bound, and used
/// premises must have been offered.
std::vector<AuditViolation> audit_records(const Library& lib_int,
                                          const Library& lib_ext,
                                          const std::vector<RunRecord>& recs);

}  // namespace crosshammer
