#include "hksynth/engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hksynth {

namespace {

bool past(const Deadline& d) {
  return d && std::chrono::steady_clock::now() >= *d;
}

Assignment all_false(const std::vector<Var>& xs) {
  Assignment a;
  for (Var x : xs) a[x] = false;
  return a;
}

void check_injected_table(const DqbfInstance& inst, const SampleTable& t) {
  std::vector<Var> expect;
  expect.reserve(inst.universals.size() + inst.existentials.size());
  expect.insert(expect.end(), inst.universals.begin(), inst.universals.end());
  expect.insert(expect.end(), inst.existentials.begin(), inst.existentials.end());
  std::sort(expect.begin(), expect.end());
  if (t.variables != expect)
    throw std::invalid_argument("injected samples do not cover the quantified variables");
  for (const auto& row : t.rows) {
    if (row.size() != t.variables.size())
      throw std::invalid_argument("injected sample row has the wrong width");
    Assignment a;
    for (std::size_t i = 0; i < row.size(); ++i) a[t.variables[i]] = row[i] != 0;
    if (!eval_cnf(inst.matrix, a))
      throw std::invalid_argument("injected sample row falsifies the matrix");
  }
}

/// Injected functions must fit where a learned one could have come from:
/// universals inside H_y, existentials with a dependency set contained in
/// H_y. Anything looser would leak out of scope after substitution.
void check_injected_candidate(const DqbfInstance& inst, Var y, const BoolExpr& f) {
  std::string who = "injected candidate for " + std::to_string(y);
  for (Var m : vars(f)) {
    if (m == y) throw std::invalid_argument(who + " mentions its own output");
    if (inst.is_universal(m)) {
      const auto& h = inst.deps_of(y);
      if (!std::binary_search(h.begin(), h.end(), m))
        throw std::invalid_argument(who + " reads " + std::to_string(m) +
                                    " outside its dependency set");
    } else if (inst.is_existential(m)) {
      if (!subset_of(inst.deps_of(m), inst.deps_of(y)))
        throw std::invalid_argument(who + " uses " + std::to_string(m) +
                                    " whose dependency set is not contained in its own");
    } else {
      throw std::invalid_argument(who + " mentions unquantified variable " + std::to_string(m));
    }
  }
}

}  // namespace

HenkinVector substitute(const HenkinVector& v, const std::vector<Var>& order) {
  HenkinVector out;
  out.resolved = true;
  std::map<Var, ExprPtr> expanded;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    ExprPtr f = fold_constants(replace_refs(v.functions.at(*it), expanded));
    expanded[*it] = f;
    out.functions[*it] = f;
  }
  return out;
}

SynthResult synthesize(const DqbfInstance& inst, const EngineConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();

  Deadline deadline;
  if (cfg.timeout_seconds > 0)
    deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(cfg.timeout_seconds));

  SolverStats solver_stats;
  SynthStats st;

  auto finish = [&](SynthResult r) {
    r.stats = st;
    r.stats.solver_calls = solver_stats.solver_calls;
    r.stats.maxsat_calls = solver_stats.maxsat_calls;
    r.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };
  auto unknown = [&](std::string reason) {
    SynthResult r;
    r.kind = SynthKind::kUnknown;
    r.unknown_reason = std::move(reason);
    return finish(std::move(r));
  };
  auto falsified = [&](Assignment witness) {
    SynthResult r;
    r.kind = SynthKind::kFalse;
    r.false_witness = std::move(witness);
    return finish(std::move(r));
  };

  // An empty clause settles the matrix before any solving.
  if (inst.matrix.trivially_false) return falsified(all_false(inst.universals));

  for (const auto& [y, f] : cfg.injected_candidates) {
    if (!inst.is_existential(y))
      throw std::invalid_argument("injected candidate for non-existential " + std::to_string(y));
    if (!f) throw std::invalid_argument("injected candidate for " + std::to_string(y) + " is null");
  }

  SampleTable table;
  if (cfg.injected_samples) {
    check_injected_table(inst, *cfg.injected_samples);
    table = *cfg.injected_samples;
  } else {
    SamplerOptions sopts;
    sopts.target = cfg.sample_target;
    sopts.seed = cfg.seed;
    sopts.bias_previous = cfg.bias_sampling;
    sopts.deadline = deadline;
    SampleResult sr = get_samples(inst, sopts, &solver_stats);
    if (sr.status == SampleStatus::kTimeout) return unknown("timeout while sampling");
    if (sr.status == SampleStatus::kMatrixUnsat) {
      // the sampler's solver saw no model at all; confirm on a fresh query
      SatResult ms =
          check_sat({inst.matrix.clauses, {}, inst.matrix.num_vars}, &solver_stats, deadline);
      if (ms.status == SatStatus::kTimeout) return unknown("timeout while sampling");
      assert(ms.status == SatStatus::kUnsat);
      if (ms.status != SatStatus::kUnsat) return unknown("matrix status is contradictory");
      return falsified(all_false(inst.universals));
    }
    table = std::move(sr.table);
  }
  st.sample_rows = table.rows.size();
  if (cfg.samples_out) write_sample_csv(table, *cfg.samples_out);

  LearnOptions lopts;
  if (!cfg.dump_trees_dir.empty()) {
    std::filesystem::create_directories(cfg.dump_trees_dir);
    lopts.on_tree = [dir = cfg.dump_trees_dir](Var y, const DecisionTree& t) {
      std::ofstream out(dir + "/y" + std::to_string(y) + ".txt");
      dump_tree(t, out);
    };
  }

  DepState dep = init_dependencies(inst);
  HenkinVector v;

  std::vector<Var> ys = inst.existentials;
  std::sort(ys.begin(), ys.end());
  for (Var y : ys) {
    auto injected = cfg.injected_candidates.find(y);
    if (injected != cfg.injected_candidates.end()) {
      check_injected_candidate(inst, y, *injected->second);
      v.functions[y] = injected->second;
      for (Var m : vars(*injected->second)) {
        if (!inst.is_existential(m)) continue;
        dep.dependents[m].insert(y);
        dep.dependents[m].insert(dep.dependents[y].begin(), dep.dependents[y].end());
      }
    } else {
      v.functions[y] = candidate_hkf(inst, table, y, dep, lopts);
    }
  }

  validate_vector(inst, v);
  find_order(inst, dep);

  Verifier verifier(inst, &solver_stats, deadline);
  Oracle matrix_oracle(&solver_stats, deadline);
  matrix_oracle.ensure_vars(inst.matrix.num_vars);
  matrix_oracle.add_clauses(inst.matrix.clauses);

  std::size_t stuck_streak = 0;
  std::size_t cex_streak = 0;
  std::map<Var, std::size_t> repair_counts;
  std::uint64_t resample_round = 0;

  for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
    st.iterations = iter;
    if (past(deadline)) return unknown("timeout");
    validate_vector(inst, v);  // repairs must keep candidates in scope

    VerifyResult vr = verifier.verify(v);

    if (vr.kind == VerifyKind::kUnknown) return unknown("timeout");

    if (vr.kind == VerifyKind::kVerified) {
      HenkinVector done = substitute(v, dep.sequence);
      validate_vector(inst, done);
      // the substituted functions are new terms; check them end to end
      VarAllocator fresh(inst.matrix.num_vars + 1);
      ErrorFormula ef = build_error_formula(inst, done, fresh);
      SatResult fc = check_sat({ef.clauses, {}, ef.num_vars}, &solver_stats, deadline);
      if (fc.status == SatStatus::kTimeout) return unknown("timeout");
      assert(fc.status == SatStatus::kUnsat);
      if (fc.status != SatStatus::kUnsat)
        return unknown("resolved functions failed the final check");
      SynthResult r;
      r.kind = SynthKind::kSynthesized;
      r.vector = std::move(done);
      return finish(std::move(r));
    }

    if (vr.kind == VerifyKind::kInstanceFalse) {
      std::vector<Lit> pins;
      pins.reserve(vr.false_witness.size());
      for (const auto& [x, value] : vr.false_witness) pins.push_back(Lit::make(x, !value));
      SatResult rc =
          check_sat({inst.matrix.clauses, pins, inst.matrix.num_vars}, &solver_stats, deadline);
      if (rc.status == SatStatus::kTimeout) return unknown("timeout");
      assert(rc.status == SatStatus::kUnsat);
      if (rc.status != SatStatus::kUnsat) return unknown("no-extension witness failed its recheck");
      return falsified(vr.false_witness);
    }

    // counterexample: try to absorb it
    ++cex_streak;
    RepairOptions ropts;
    ropts.trace = cfg.repair_trace;
    RepairResult rr =
        repair_hkf(inst, v, vr.cex, dep, matrix_oracle, ropts, &solver_stats, deadline);
    st.repair_probes += rr.probes;
    for (Var y : rr.modified) ++repair_counts[y];

    if (rr.outcome == RepairOutcome::kTimeout) return unknown("timeout");
    if (rr.outcome == RepairOutcome::kStuck) {
      if (++stuck_streak >= kStuckRoundsLimit) {
        std::set<Var> blocked(rr.worklist.begin(), rr.worklist.end());
        std::ostringstream msg;
        if (blocked.empty()) {
          msg << "no repair candidates for the counterexample";
        } else {
          msg << "no repair found for";
          for (Var y : blocked) msg << ' ' << y;
        }
        return unknown(msg.str());
      }
    } else {
      stuck_streak = 0;
    }

    if (!cfg.plain_loop && cex_streak >= kResampleStreak) {
      // the candidates keep missing; redraw data and relearn the quarter
      // of the existentials that needed repairing most often
      cex_streak = 0;
      SamplerOptions sopts;
      sopts.target = cfg.sample_target;
      sopts.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * ++resample_round;
      sopts.bias_previous = cfg.bias_sampling;
      sopts.deadline = deadline;
      SampleResult sr = get_samples(inst, sopts, &solver_stats);
      if (sr.status == SampleStatus::kOk && !sr.table.rows.empty()) {
        st.sample_rows += sr.table.rows.size();
        std::vector<std::pair<std::size_t, Var>> ranked;
        for (const auto& [y, n] : repair_counts)
          if (n) ranked.emplace_back(n, y);
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
          return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        std::size_t take = std::min((inst.existentials.size() + 3) / 4, ranked.size());
        for (std::size_t i = 0; i < take; ++i) {
          Var y = ranked[i].second;
          v.functions[y] = candidate_hkf(inst, sr.table, y, dep, lopts);
          repair_counts[y] = 0;
          ++st.relearned;
        }
        if (take) find_order(inst, dep);
      }
    }
  }

  return unknown("iteration budget exhausted");
}

}  // namespace hksynth
