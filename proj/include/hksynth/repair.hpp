#pragma once

#include <iosfwd>
#include <set>

#include "hksynth/learner.hpp"
#include "hksynth/verifier.hpp"

namespace hksynth {

/// Existentials whose outputs must change to absorb the counterexample:
/// the soft-falsified variables of an exact MaxSAT over the matrix pinned
/// to the counterexample's X, with one soft unit per existential holding
/// it at its candidate output. Ascending id. Empty only if the candidate
/// outputs already model the matrix, which contradicts the counterexample
/// invariant; callers treat that defensively.
std::vector<Var> find_candidates(const DqbfInstance& inst, const Counterexample& cex,
                                 SolverStats* stats = nullptr, Deadline deadline = {});

/// Variables whose values a repair of y_k may constrain on: existentials
/// with H_j subseteq H_k sitting at a strictly higher order index.
std::vector<Var> compute_hat_y(const DqbfInstance& inst, const DepState& dep, Var y_k);

/// Assumptions of the local repair query for y_k: the matrix stays as
/// clauses; H_k, hat-Y and y_k itself are pinned to the working values
/// (X from the counterexample, existentials at their candidate outputs).
/// Unit pinning via assumptions makes an unsat core directly usable as a
/// repair constraint.
std::vector<Lit> build_g_assumptions(const DqbfInstance& inst, const Assignment& working,
                                     Var y_k, const std::vector<Var>& hat_y);

/// Strengthen or weaken one candidate from an unsat core of its repair
/// query. The y_k literal is dropped from the core; the remaining literals
/// conjoin to beta. Output true but wrong -> f and not(beta); output false
/// but wrong -> f or beta. Returns nullptr when beta would be empty (the
/// core held only the y_k literal); such a core means the matrix forces
/// the opposite output outright and the caller flips to a constant.
ExprPtr repair_candidate(const ExprPtr& f_k, const std::vector<Lit>& core, Var y_k,
                         bool y_prime_value);

enum class RepairOutcome { kProgress, kStuck, kTimeout };

struct RepairResult {
  RepairOutcome outcome{};
  std::set<Var> modified;
  std::vector<Var> worklist;  // everything that entered the queue
  std::size_t probes = 0;
};

struct RepairOptions {
  std::size_t probe_budget = 0;  // 0 = 4 * |Y|
  bool shrink_cores = true;
  std::ostream* trace = nullptr;
};

/// One repair pass over a counterexample: walk the candidate list from
/// find_candidates, probe each variable's local query against the shared
/// matrix oracle, rewrite candidates on unsat probes, extend the list on
/// sat probes with the existentials the model moved. Progress means at
/// least one candidate changed syntactically; modified functions are
/// constant-folded before returning. A rewrite can add mentions of other
/// existentials, so dep.dependents is kept in sync the same way learning
/// does it.
RepairResult repair_hkf(const DqbfInstance& inst, HenkinVector& v, const Counterexample& cex,
                        DepState& dep, Oracle& matrix_oracle, const RepairOptions& opts = {},
                        SolverStats* stats = nullptr, Deadline deadline = {});

}  // namespace hksynth
