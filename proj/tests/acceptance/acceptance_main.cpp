// Acceptance suite: nine end-to-end checks over the released behavior,
// one verdict line each. Exits nonzero if any gating check fails; the
// unknown-rate target in the sweep is reported but does not gate.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hksynth/brute_force.hpp"
#include "hksynth/dqdimacs.hpp"
#include "hksynth/engine.hpp"
#include "hksynth/hfn_io.hpp"
#include "hksynth/learner.hpp"
#include "hksynth/repair.hpp"
#include "hksynth/sat_oracle.hpp"
#include "hksynth/verifier.hpp"
#include "support.hpp"

using namespace hksynth;
namespace ht = hksynth::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string note;  // appended to the verdict line when nonempty
};

struct Check {
  int number;
  const char* name;
  double budget_seconds;  // 0 = untimed
  Verdict (*run)();
};

// state shared between the sweep and the checks that audit its results
struct SweepOutput {
  std::vector<std::pair<DqbfInstance, HenkinVector>> synthesized;
  std::size_t runs = 0;
  std::size_t unknown = 0;
  std::size_t contradictions = 0;
};
SweepOutput sweep;

std::string data_path(const std::string& name) {
  return std::string(HKSYNTH_DATA_DIR) + "/" + name;
}

bool expr_equiv(const ExprPtr& a, const ExprPtr& b, std::initializer_list<Var> universe) {
  return ht::equivalent(a, b, std::vector<Var>(universe));
}

std::size_t min_flips(const DqbfInstance& inst, const Counterexample& cex) {
  std::size_t ny = inst.existentials.size();
  std::size_t best = ny + 1;
  for (std::size_t mask = 0; mask < (std::size_t(1) << ny); ++mask) {
    Assignment a = cex.x_part;
    std::size_t dist = 0;
    for (std::size_t j = 0; j < ny; ++j) {
      Var y = inst.existentials[j];
      bool b = (mask >> j) & 1;
      a[y] = b;
      if (b != cex.y_prime_part.at(y)) ++dist;
    }
    if (eval_cnf(inst.matrix, a)) best = std::min(best, dist);
  }
  return best;
}

// ---- 1: the worked three-existential example, step by step ----------------

Verdict check_worked_example() {
  DqbfInstance inst = ht::example_instance();

  SampleTable table;
  table.variables = {1, 2, 3, 4, 5, 6};
  table.rows = ht::example_sample_rows();

  DepState dep = init_dependencies(inst);
  HenkinVector v;
  for (Var y : inst.existentials) v.functions[y] = candidate_hkf(inst, table, y, dep);
  find_order(inst, dep);

  if (!expr_equiv(v.functions.at(4), parse_sexpr("(not 1)"), {1}))
    return {false, "first function is not the negated guard"};
  if (!expr_equiv(v.functions.at(5), parse_sexpr("4"), {1, 2, 4}))
    return {false, "second function is not the first output"};
  if (!expr_equiv(v.functions.at(6), parse_sexpr("(or 3 (and (not 3) 2))"), {2, 3}))
    return {false, "third function mismatches the learned disjunction"};

  Verifier ver(inst);
  VerifyResult vr = ver.verify(v);
  if (vr.kind != VerifyKind::kCexFound) return {false, "no counterexample for the raw candidates"};
  Assignment expect_x{{1, true}, {2, false}, {3, false}};
  if (vr.cex.x_part != expect_x) {
    std::ostringstream what;
    what << "counterexample at x =";
    for (auto [x, b] : vr.cex.x_part) what << ' ' << x << '=' << b;
    return {false, what.str()};
  }

  std::vector<Var> cands = find_candidates(inst, vr.cex);
  if (cands.size() != 1) return {false, "candidate set is not a singleton"};
  if (min_flips(inst, vr.cex) != 1) return {false, "singleton is not provably optimal"};

  Oracle matrix_oracle;
  matrix_oracle.ensure_vars(inst.matrix.num_vars);
  matrix_oracle.add_clauses(inst.matrix.clauses);
  RepairResult rr = repair_hkf(inst, v, vr.cex, dep, matrix_oracle);
  if (rr.outcome != RepairOutcome::kProgress) return {false, "repair made no progress"};

  if (ver.verify(v).kind != VerifyKind::kVerified)
    return {false, "repaired candidates still fail verification"};
  HenkinVector done = substitute(v, dep.sequence);
  if (!check_vector(inst, done)) return {false, "substituted vector fails the oracle walk"};
  return {true, ""};
}

// ---- 2: seeded candidates on the equality chain stay stuck, soundly ------

Verdict check_equality_chain() {
  DqbfInstance inst = ht::limitation_instance();

  HenkinVector v;
  v.functions[4] = parse_sexpr("2");
  v.functions[5] = parse_sexpr("(not 2)");
  DepState dep = init_dependencies(inst);
  find_order(inst, dep);

  Verifier ver(inst);
  VerifyResult vr = ver.verify(v);
  if (vr.kind != VerifyKind::kCexFound) return {false, "seeded candidates found no counterexample"};

  Oracle matrix_oracle;
  matrix_oracle.ensure_vars(inst.matrix.num_vars);
  matrix_oracle.add_clauses(inst.matrix.clauses);
  RepairResult rr = repair_hkf(inst, v, vr.cex, dep, matrix_oracle);
  if (rr.outcome != RepairOutcome::kStuck) return {false, "repair pass did not end stuck"};

  EngineConfig cfg;
  cfg.injected_candidates[4] = parse_sexpr("2");
  cfg.injected_candidates[5] = parse_sexpr("(not 2)");
  SynthResult er = synthesize(inst, cfg);
  if (er.kind != SynthKind::kUnknown) return {false, "engine did not end unknown"};
  if (er.unknown_reason != "no repair found for 4 5")
    return {false, "diagnosis was: " + er.unknown_reason};

  if (!decide_truth(inst).is_true) return {false, "oracle disagrees that the instance is true"};
  return {true, ""};
}

// ---- 3: randomized sweep, verdicts audited against the oracle ------------

Verdict check_soundness_sweep() {
  ht::Rng rng(1234);
  sweep = SweepOutput{};
  for (int i = 0; i < 500; ++i) {
    DqbfInstance inst = ht::random_instance(rng);
    EngineConfig cfg;
    cfg.seed = 10000 + i;
    SynthResult r = synthesize(inst, cfg);
    ++sweep.runs;
    switch (r.kind) {
      case SynthKind::kSynthesized:
        if (!check_vector(inst, r.vector)) {
          ++sweep.contradictions;
        } else {
          sweep.synthesized.emplace_back(inst, r.vector);
        }
        break;
      case SynthKind::kFalse:
        if (decide_truth(inst).is_true) ++sweep.contradictions;
        break;
      case SynthKind::kUnknown:
        ++sweep.unknown;
        break;
    }
  }

  double rate = 100.0 * sweep.unknown / sweep.runs;
  std::ostringstream note;
  note << sweep.synthesized.size() << " synthesized, "
       << (sweep.runs - sweep.unknown - sweep.synthesized.size() - sweep.contradictions)
       << " false, " << sweep.unknown << " unknown (" << rate
       << "%, target < 20% non-gating), contradictions " << sweep.contradictions;
  return {sweep.contradictions == 0, note.str()};
}

// ---- 4: every synthesized function stays inside its dependency set -------

Verdict check_scope_compliance() {
  std::size_t violations = 0;
  for (const auto& [inst, v] : sweep.synthesized) {
    for (Var y : inst.existentials) {
      const auto& h = inst.deps_of(y);
      for (Var w : vars(*v.functions.at(y)))
        if (!std::binary_search(h.begin(), h.end(), w)) ++violations;
    }
  }
  // the worked example's final vector, checked the same way
  DqbfInstance inst = ht::example_instance();
  SynthResult r = synthesize(inst);
  if (r.kind != SynthKind::kSynthesized) return {false, "reference instance did not synthesize"};
  for (Var y : inst.existentials)
    for (Var w : vars(*r.vector.functions.at(y))) {
      const auto& h = inst.deps_of(y);
      if (!std::binary_search(h.begin(), h.end(), w)) ++violations;
    }
  std::ostringstream note;
  note << sweep.synthesized.size() + 1 << " vectors audited, " << violations << " violations";
  return {violations == 0, note.str()};
}

// ---- 5: exact maxsat against enumeration ---------------------------------

Verdict check_maxsat_exactness() {
  ht::Rng rng(5678);
  std::size_t deviations = 0;
  for (int i = 0; i < 200; ++i) {
    Var n = 1 + rng() % 8;
    MaxSatQuery q;
    q.num_vars = n;
    q.hard = ht::random_cnf(rng, n, rng() % 6, 3);
    std::size_t softs = 1 + rng() % 6;
    std::vector<Clause> plain;
    for (std::size_t j = 0; j < softs; ++j) {
      auto c = ht::random_cnf(rng, n, 1, 2);
      q.soft.push_back({c[0], int(j)});
      plain.push_back(c[0]);
    }
    MaxSatResult r = solve_maxsat(q);
    auto ref = ht::enum_min_cost(q.hard, plain, n);
    if (!ref) {
      if (r.status != MaxSatStatus::kHardUnsat) ++deviations;
      continue;
    }
    if (r.status != MaxSatStatus::kOk || r.falsified.size() != *ref) ++deviations;
  }
  std::ostringstream note;
  note << "200 queries, " << deviations << " deviations";
  return {deviations == 0, note.str()};
}

// ---- 6: unsat cores re-solve unsat on their own --------------------------

Verdict check_core_validity() {
  ht::Rng rng(9012);
  std::size_t checked = 0, violations = 0;
  while (checked < 200) {
    Var n = 2 + rng() % 6;
    SatQuery q;
    q.num_vars = n;
    q.clauses = ht::random_cnf(rng, n, 2 + rng() % 8, 2);
    std::set<Var> used;
    std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
    while (q.assumptions.size() < k) {
      Var v = 1 + rng() % n;
      if (!used.insert(v).second) continue;
      q.assumptions.push_back(Lit::make(v, rng() % 2 == 0));
    }
    if (check_sat(q).status != SatStatus::kUnsat) continue;
    ++checked;

    std::vector<Lit> core = failed_core(q, checked % 2 == 0);  // both modes
    for (Lit l : core)
      if (std::find(q.assumptions.begin(), q.assumptions.end(), l) == q.assumptions.end())
        ++violations;
    SatQuery reduced{q.clauses, core, n};
    if (check_sat(reduced).status != SatStatus::kUnsat) ++violations;
  }
  std::ostringstream note;
  note << "200 queries, " << violations << " violations";
  return {violations == 0, note.str()};
}

// ---- 7: learned trees reproduce determined labels ------------------------

Verdict check_learner_consistency() {
  ht::Rng rng(3456);
  std::size_t disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t nf = 1 + rng() % 5;
    std::vector<Var> features;
    for (std::size_t j = 0; j < nf; ++j) features.push_back(Var(j + 1));
    Var label = Var(nf + 1);
    ExprPtr fn = ht::random_expr(rng, features, 3);

    SampleTable t;
    t.variables = features;
    t.variables.push_back(label);
    for (std::size_t mask = 0; mask < (std::size_t(1) << nf); ++mask) {
      if (rng() % 3 == 0) continue;
      std::vector<std::uint8_t> row(nf + 1);
      Assignment a;
      for (std::size_t j = 0; j < nf; ++j) {
        row[j] = (mask >> j) & 1;
        a[features[j]] = row[j];
      }
      row[nf] = eval(*fn, a);
      t.rows.push_back(row);
    }

    DecisionTree tree = learn_tree(features, t, label);
    ExprPtr expr = tree_to_expr(tree);
    for (const auto& row : t.rows) {
      Assignment a;
      for (std::size_t j = 0; j < nf; ++j) a[features[j]] = row[j];
      if (eval(*expr, a) != bool(row[nf])) ++disagreements;
    }
  }
  std::ostringstream note;
  note << "100 tables, " << disagreements << " disagreements";
  return {disagreements == 0, note.str()};
}

// ---- 8: solver-based verification equals the exhaustive walk -------------

Verdict check_verifier_agreement() {
  ht::Rng rng(7890);
  std::size_t disagreements = 0;
  for (int i = 0; i < 200; ++i) {
    DqbfInstance inst = ht::random_instance(rng);
    HenkinVector v = ht::random_resolved_vector(rng, inst);
    Verifier ver(inst);
    bool verified = ver.verify(v).kind == VerifyKind::kVerified;
    bool walked = check_vector(inst, v);
    if (verified != walked) ++disagreements;
  }
  std::ostringstream note;
  note << "200 pairs, " << disagreements << " disagreements";
  return {disagreements == 0, note.str()};
}

// ---- 9: the command-line contract ----------------------------------------

Verdict check_cli_contract() {
  const std::string bin = HKSYNTH_BIN_PATH;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hks_acceptance";
  fs::create_directories(dir);

  auto expect_exit = [&](const std::string& cmd, int want, const char* what) -> std::string {
    ht::CmdResult r = ht::run_cmd(cmd);
    if (r.exit_code != want) {
      std::ostringstream oss;
      oss << what << ": exit " << r.exit_code << ", wanted " << want;
      return oss.str();
    }
    return "";
  };

  std::string seed_file = (dir / "chain_seed.hfn").string();
  {
    std::ofstream out(seed_file);
    out << "hfn 1 5 2\ndef 4 2\ndef 5 (not 2)\n";
  }
  std::string garbage = (dir / "garbage.dqdimacs").string();
  {
    std::ofstream out(garbage);
    out << "not a formula\n";
  }

  for (const std::string& err : {
           expect_exit(bin + " synth " + data_path("example1.dqdimacs"), 10, "synthesized exit"),
           expect_exit(bin + " synth " + data_path("bench/b07_unsat_matrix.dqdimacs"), 20,
                       "false exit"),
           expect_exit(bin + " synth " + data_path("limitation.dqdimacs") +
                           " --inject-candidates " + seed_file,
                       0, "unknown exit"),
           expect_exit(bin + " synth " + garbage, 1, "parse-error exit"),
           expect_exit(bin + " synth", 1, "usage exit"),
       })
    if (!err.empty()) return {false, err};

  // every vector the sweep produced goes through the certificate checker
  std::size_t round_trips = 0;
  for (const auto& [inst, v] : sweep.synthesized) {
    fs::path ipath = dir / "roundtrip.dqdimacs";
    fs::path fpath = dir / "roundtrip.hfn";
    {
      std::ofstream iout(ipath);
      write_dqdimacs(inst, iout);
      std::ofstream fout(fpath);
      write_henkin_vector(inst, v, fout);
    }
    ht::CmdResult r =
        ht::run_cmd(bin + " verify " + ipath.string() + " " + fpath.string());
    if (r.exit_code != 0) {
      std::ostringstream oss;
      oss << "round trip " << round_trips << " failed with exit " << r.exit_code;
      return {false, oss.str()};
    }
    ++round_trips;
  }
  std::ostringstream note;
  note << round_trips << " synthesized vectors re-verified";
  return {true, note.str()};
}

const Check kChecks[] = {
    {1, "worked example fidelity", 1.0, check_worked_example},
    {2, "equality-chain incompleteness", 1.0, check_equality_chain},
    {3, "random soundness sweep", 120.0, check_soundness_sweep},
    {4, "dependency-scope compliance", 0.0, check_scope_compliance},
    {5, "maxsat exactness", 30.0, check_maxsat_exactness},
    {6, "unsat-core validity", 0.0, check_core_validity},
    {7, "learner consistency", 0.0, check_learner_consistency},
    {8, "verifier-oracle agreement", 0.0, check_verifier_agreement},
    {9, "cli contract", 0.0, check_cli_contract},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Check& c : kChecks) {
    auto begin = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      v.pass = false;
      std::ostringstream oss;
      oss << (v.note.empty() ? "" : v.note + "; ") << "over budget (" << c.budget_seconds << "s)";
      v.note = oss.str();
    }
    std::printf("%s %d %-32s %7.2fs%s%s\n", v.pass ? "PASS" : "FAIL", c.number, c.name, secs,
                v.note.empty() ? "" : "  ", v.note.c_str());
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
