#include "hksynth/repair.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace hksynth {

namespace {

bool past(const Deadline& d) {
  return d && std::chrono::steady_clock::now() >= *d;
}

std::vector<Var> sorted_existentials(const DqbfInstance& inst) {
  std::vector<Var> ys = inst.existentials;
  std::sort(ys.begin(), ys.end());
  return ys;
}

void log_assumptions(std::ostream& out, const std::vector<Lit>& as) {
  out << '{';
  for (std::size_t i = 0; i < as.size(); ++i) out << (i ? " " : "") << as[i].code();
  out << '}';
}

}  // namespace

std::vector<Var> find_candidates(const DqbfInstance& inst, const Counterexample& cex,
                                 SolverStats* stats, Deadline deadline) {
  MaxSatQuery q;
  q.hard = inst.matrix.clauses;
  q.num_vars = inst.matrix.num_vars;
  for (const auto& [x, value] : cex.x_part) q.hard.push_back({Lit::make(x, !value)});
  for (Var y : sorted_existentials(inst)) {
    bool out = cex.y_prime_part.at(y);
    q.soft.emplace_back(Clause{Lit::make(y, !out)}, static_cast<int>(y));
  }

  MaxSatResult r = solve_maxsat(q, stats, deadline);
  if (r.status == MaxSatStatus::kTimeout) return {};
  if (r.status == MaxSatStatus::kHardUnsat)
    throw std::logic_error("find_candidates: counterexample X has no matrix extension");

  std::vector<Var> out;
  out.reserve(r.falsified.size());
  for (int tag : r.falsified) out.push_back(static_cast<Var>(tag));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Var> compute_hat_y(const DqbfInstance& inst, const DepState& dep, Var y_k) {
  const std::vector<Var>& h_k = inst.deps_of(y_k);
  std::size_t k_pos = dep.index.at(y_k);

  std::vector<Var> out;
  for (Var y : inst.existentials) {
    if (y == y_k || !subset_of(inst.deps_of(y), h_k)) continue;
    if (dep.index.at(y) > k_pos) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Lit> build_g_assumptions(const DqbfInstance& inst, const Assignment& working,
                                     Var y_k, const std::vector<Var>& hat_y) {
  std::vector<Lit> as;
  as.reserve(inst.deps_of(y_k).size() + hat_y.size() + 1);
  for (Var x : inst.deps_of(y_k)) as.push_back(Lit::make(x, !working.at(x)));
  for (Var y : hat_y) as.push_back(Lit::make(y, !working.at(y)));
  as.push_back(Lit::make(y_k, !working.at(y_k)));
  return as;
}

ExprPtr repair_candidate(const ExprPtr& f_k, const std::vector<Lit>& core, Var y_k,
                         bool y_prime_value) {
  std::vector<ExprPtr> parts;
  parts.reserve(core.size());
  for (Lit l : core) {
    if (l.var() == y_k) continue;
    ExprPtr ref = BoolExpr::var_ref(l.var());
    parts.push_back(l.negated() ? BoolExpr::negate(std::move(ref)) : std::move(ref));
  }
  if (parts.empty()) return nullptr;

  ExprPtr beta = BoolExpr::conj(std::move(parts));
  if (y_prime_value) return BoolExpr::conj({f_k, BoolExpr::negate(std::move(beta))});
  return BoolExpr::disj({f_k, std::move(beta)});
}

RepairResult repair_hkf(const DqbfInstance& inst, HenkinVector& v, const Counterexample& cex,
                        DepState& dep, Oracle& matrix_oracle, const RepairOptions& opts,
                        SolverStats* stats, Deadline deadline) {
  RepairResult res;

  // Working point for the whole pass: the counterexample's X together with
  // the candidate outputs, both fixed at entry. Rewrites flip a function's
  // value at this point but the pins for later probes stay as captured.
  Assignment working = cex.x_part;
  for (const auto& [y, value] : cex.y_prime_part) working[y] = value;

  std::vector<Var> initial = find_candidates(inst, cex, stats, deadline);
  if (initial.empty())
    return {past(deadline) ? RepairOutcome::kTimeout : RepairOutcome::kStuck, {}, {}, 0};

  std::deque<Var> queue(initial.begin(), initial.end());
  std::set<Var> queued(initial.begin(), initial.end());
  res.worklist = initial;

  std::size_t budget = opts.probe_budget ? opts.probe_budget : 4 * inst.existentials.size();

  if (opts.trace) {
    *opts.trace << "repair: candidates";
    for (Var y : initial) *opts.trace << ' ' << y;
    *opts.trace << ", budget " << budget << '\n';
  }

  while (!queue.empty() && res.probes < budget) {
    if (past(deadline)) {
      res.outcome = RepairOutcome::kTimeout;
      return res;
    }

    Var y_k = queue.front();
    queue.pop_front();
    queued.erase(y_k);

    std::vector<Var> hat_y = compute_hat_y(inst, dep, y_k);
    std::vector<Lit> as = build_g_assumptions(inst, working, y_k, hat_y);

    SatResult probe = matrix_oracle.check(as);
    ++res.probes;

    if (opts.trace) {
      *opts.trace << "probe " << y_k << " assume ";
      log_assumptions(*opts.trace, as);
    }

    if (probe.status == SatStatus::kTimeout) {
      if (opts.trace) *opts.trace << " -> timeout\n";
      res.outcome = RepairOutcome::kTimeout;
      return res;
    }

    if (probe.status == SatStatus::kUnsat) {
      // The pinned neighbourhood cannot keep y_k at its current output, so
      // the output at this point is wrong; the unsat core says which part
      // of the neighbourhood forces the flip.
      std::vector<Lit> core = matrix_oracle.failed_core(as, opts.shrink_cores);
      bool out = working.at(y_k);
      ExprPtr repaired = repair_candidate(v.functions.at(y_k), core, y_k, out);
      if (opts.trace) {
        *opts.trace << " -> unsat, core ";
        log_assumptions(*opts.trace, core);
      }
      if (!repaired) {
        // Core reduced to the y_k pin alone: the matrix forces the
        // opposite output regardless of the neighbourhood.
        repaired = BoolExpr::constant(!out);
      }
      v.functions[y_k] = repaired;
      res.modified.insert(y_k);

      // Fresh mentions of other existentials change who may ever depend
      // on whom; mirror the bookkeeping done after learning.
      for (Var m : vars(*repaired)) {
        if (!inst.is_existential(m) || m == y_k) continue;
        dep.dependents[m].insert(y_k);
        dep.dependents[m].insert(dep.dependents[y_k].begin(), dep.dependents[y_k].end());
      }

      if (opts.trace) *opts.trace << ", f_" << y_k << " := " << to_sexpr(*repaired) << '\n';
      continue;
    }

    // Satisfiable: y_k can keep its output if some pinned-free existential
    // moves away from its candidate output. Queue the movers instead.
    std::set<Var> pinned(hat_y.begin(), hat_y.end());
    pinned.insert(y_k);
    std::vector<Var> movers;
    for (Var y : sorted_existentials(inst)) {
      if (pinned.count(y) || queued.count(y)) continue;
      if (probe.model.at(y) != working.at(y)) movers.push_back(y);
    }
    for (Var y : movers) {
      queue.push_back(y);
      queued.insert(y);
      res.worklist.push_back(y);
    }
    if (opts.trace) {
      *opts.trace << " -> sat, enqueue";
      if (movers.empty()) *opts.trace << " nothing";
      for (Var y : movers) *opts.trace << ' ' << y;
      *opts.trace << '\n';
    }
  }

  for (Var y : res.modified) v.functions[y] = fold_constants(v.functions.at(y));

  res.outcome = res.modified.empty() ? RepairOutcome::kStuck : RepairOutcome::kProgress;
  if (opts.trace) {
    *opts.trace << "repair: " << (res.outcome == RepairOutcome::kProgress ? "progress" : "stuck")
                << ", " << res.probes << " probes\n";
  }
  return res;
}

}  // namespace hksynth
