#include <iostream>

#include "CLI11.hpp"
#include "crosshammer/equivalence.hpp"
#include "crosshammer/harness.hpp"
#include "crosshammer/learning.hpp"
#include "crosshammer/matching.hpp"
#include "crosshammer/scenarios.hpp"
#include "json.hpp"

using namespace crosshammer;
using nlohmann::json;

namespace {

json advice_to_json(const Advice& adv) {
  json lemmas = json::array();
  for (auto& l : adv.internal_lemmas)
    lemmas.push_back({{"id", l.id}, {"score", l.score}, {"note", l.note}});
  json ext = json::array();
  for (auto& l : adv.external_lemmas)
    ext.push_back({{"id", l.id}, {"score", l.score}, {"note", l.note}});
  return {{"scenario", adv.scenario},
          {"applicable", adv.applicable},
          {"conjecture", print_term(adv.conjecture)},
          {"internal_lemmas", lemmas},
          {"external_lemmas", ext}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-library proof knowledge sharing toolkit"};
  app.require_subcommand(1);

  // equiv
  std::string eq_lib, eq_stmt;
  CLI::App* equiv = app.add_subcommand("equiv", "equivalence class of a statement");
  equiv->add_option("--lib", eq_lib, "library file")->required();
  equiv->add_option("--stmt", eq_stmt, "statement in interchange syntax")->required();

  // match
  std::string m_int, m_ext, m_out;
  double m_threshold = 0.0;
  size_t m_max_iter = size_t(-1);
  CLI::App* match = app.add_subcommand("match", "compute a constant matching");
  match->add_option("--int", m_int, "internal library")->required();
  match->add_option("--ext", m_ext, "external library")->required();
  match->add_option("--out", m_out, "output matching TSV")->required();
  match->add_option("--threshold", m_threshold, "minimum pair score");
  match->add_option("--max-iter", m_max_iter, "iteration cap");

  // predict
  std::string p_model, p_conj;
  size_t p_k = 128;
  CLI::App* predict_cmd = app.add_subcommand("predict", "rank premises for a conjecture");
  predict_cmd->add_option("--model", p_model, "library to learn from")->required();
  predict_cmd->add_option("--conj", p_conj, "conjecture in interchange syntax")->required();
  predict_cmd->add_option("--k", p_k, "number of premises");

  // advise
  std::string a_scenario, a_int, a_ext, a_match, a_thm;
  size_t a_k = 128;
  bool a_unchecked = false;
  CLI::App* advise = app.add_subcommand("advise", "scenario advice for one theorem");
  advise->add_option("--scenario", a_scenario, "scenario tag")->required();
  advise->add_option("--int", a_int, "internal library")->required();
  advise->add_option("--ext", a_ext, "external library")->required();
  advise->add_option("--match", a_match, "matching TSV")->required();
  advise->add_option("--thm", a_thm, "internal theorem id")->required();
  advise->add_option("--k", a_k, "advice size cap");
  advise->add_flag("--unchecked", a_unchecked, "allow external lemmas");

  // simulate
  std::string s_config;
  CLI::App* sim = app.add_subcommand("simulate", "chronological reproving run");
  sim->add_option("--config", s_config, "run configuration file")->required();

  // report
  std::string r_records;
  CLI::App* report = app.add_subcommand("report", "aggregate a finished run");
  report->add_option("--records", r_records, "records.jsonl path")->required();

  // evolution
  std::string e_int, e_ext, e_theory, e_out;
  CLI::App* evo = app.add_subcommand("evolution", "matched-constant series for a theory");
  evo->add_option("--int", e_int, "internal library")->required();
  evo->add_option("--ext", e_ext, "external library")->required();
  evo->add_option("--theory", e_theory, "internal theory name")->required();
  evo->add_option("--out", e_out, "CSV output path (default stdout)");

  // common-theories
  std::string c_int, c_ext, c_match;
  size_t c_top = 7;
  CLI::App* common = app.add_subcommand("common-theories", "most similar theory pairs");
  common->add_option("--int", c_int, "internal library")->required();
  common->add_option("--ext", c_ext, "external library")->required();
  common->add_option("--match", c_match, "matching TSV (recomputed when absent)");
  common->add_option("--top", c_top, "number of pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*equiv) {
      Library lib = load_library(eq_lib);
      Signature sig = lib.signature();
      TermPtr stmt = parse_term(eq_stmt, sig);
      EquivIndex idx = build_index(lib);
      for (auto& id : equiv_class(idx, stmt)) std::cout << id << "\n";
    } else if (*match) {
      Library a = load_library(m_int);
      Library b = load_library(m_ext);
      MatchConfig cfg;
      cfg.threshold = m_threshold;
      cfg.max_iterations = m_max_iter;
      save_matching(compute_matching(a, b, cfg), m_out);
    } else if (*predict_cmd) {
      Library lib = load_library(p_model);
      Signature sig = lib.signature();
      TermPtr conj = parse_term(p_conj, sig);
      std::vector<Example> data;
      std::vector<ThmId> candidates;
      for (auto& t : lib.thms) {
        data.push_back(example_of(t));
        candidates.push_back(t.id);
      }
      Model model = train(data);
      for (auto& p : predict(model, extract_features(conj), candidates, p_k))
        std::cout << p.id << "\t" << p.score << "\n";
    } else if (*advise) {
      Library a = load_library(a_int);
      Library b = load_library(a_ext);
      MatchState st = load_matching(a_match);
      MergeResult merged = merge_namespace(a, b, st);
      const Theorem& thm = merged.internal_lib.theorem(a_thm);
      ScenarioContext ctx = make_context(merged.internal_lib,
                                         merged.external_lib, thm.seq, a_k,
                                         a_unchecked);
      Advice adv = run_scenario(ctx, a_scenario, thm.statement);
      std::cout << advice_to_json(adv).dump(2) << "\n";
    } else if (*sim) {
      RunConfig cfg = load_run_config(s_config);
      auto records = simulate(cfg);
      std::cout << format_report(aggregate(records));
      if (!cfg.out_dir.empty())
        std::cerr << "records written to " << cfg.out_dir << "/records.jsonl\n";
    } else if (*report) {
      std::cout << format_report(aggregate(read_records(r_records)));
    } else if (*evo) {
      Library a = load_library(e_int);
      Library b = load_library(e_ext);
      if (e_out.empty()) {
        emit_evolution(a, b, e_theory, std::cout);
      } else {
        std::ofstream out(e_out);
        if (!out) throw std::runtime_error("cannot write " + e_out);
        emit_evolution(a, b, e_theory, out);
      }
    } else if (*common) {
      Library a = load_library(c_int);
      Library b = load_library(c_ext);
      MatchState st =
          c_match.empty() ? compute_matching(a, b) : load_matching(c_match);
      std::cout << format_theory_pairs(report_common_theories(a, b, st, c_top));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
