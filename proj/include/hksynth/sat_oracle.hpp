#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hksynth/solver.hpp"
#include "hksynth/types.hpp"

namespace hksynth {

enum class SatStatus { kSat, kUnsat, kTimeout };

struct SatQuery {
  std::vector<Clause> clauses;
  std::vector<Lit> assumptions;
  Var num_vars = 0;  // 0 = infer from the literals
};

struct SatResult {
  SatStatus status{};
  Assignment model;                     // total over 1..num_vars when kSat
  std::vector<Lit> failed_assumptions;  // subset of assumptions when kUnsat
};

/// Shared counters threaded through everything that talks to a solver.
struct SolverStats {
  std::uint64_t solver_calls = 0;
  std::uint64_t maxsat_calls = 0;
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Incremental decision oracle: build up a clause set once, query it under
/// varying assumption lists. SAT models are re-evaluated against every
/// clause after each call (debug builds).
class Oracle {
 public:
  explicit Oracle(SolverStats* stats = nullptr, Deadline deadline = {});

  void ensure_vars(Var n) { solver_.ensure_var(n); }
  void add_clause(const Clause& c);
  void add_clauses(const std::vector<Clause>& cs);

  SatResult check(const std::vector<Lit>& assumptions = {});

  /// pre: check(assumptions) is kUnsat. Returns a subset of the assumptions
  /// that keeps the query unsatisfiable; with shrink, literals are dropped
  /// one at a time (single pass) while unsatisfiability persists.
  /// Throws std::logic_error when the query is satisfiable.
  std::vector<Lit> failed_core(const std::vector<Lit>& assumptions, bool shrink = true);

  void set_deadline(Deadline d) { deadline_ = d; solver_.set_deadline(d); }

 private:
  Solver solver_;
  std::vector<Clause> stored_;  // for the debug model re-check
  SolverStats* stats_;
  Deadline deadline_;
};

/// One-shot forms used by tests and simple callers.
SatResult check_sat(const SatQuery& q, SolverStats* stats = nullptr, Deadline deadline = {});
std::vector<Lit> failed_core(const SatQuery& q, bool shrink = true, SolverStats* stats = nullptr);

struct MaxSatQuery {
  std::vector<Clause> hard;
  std::vector<std::pair<Clause, int>> soft;  // clause + caller tag
  Var num_vars = 0;                          // 0 = infer
};

enum class MaxSatStatus { kOk, kHardUnsat, kTimeout };

struct MaxSatResult {
  MaxSatStatus status{};
  Assignment model;            // optimal assignment over the query variables
  std::vector<int> falsified;  // tags of soft clauses false in the optimum
};

/// Exact partial MaxSAT: relax each soft clause with a fresh variable and
/// walk the cost downward with a sequential-counter at-most-k bound until
/// the bound becomes unsatisfiable. Any cost-optimal model may be returned;
/// the run is deterministic.
MaxSatResult solve_maxsat(const MaxSatQuery& q, SolverStats* stats = nullptr,
                          Deadline deadline = {});

/// Sinz sequential-counter encoding of "at most k of lits are true".
/// k >= lits.size() yields no clauses; k == 0 yields unit negations.
std::vector<Clause> encode_at_most_k(const std::vector<Lit>& lits, unsigned k,
                                     VarAllocator& fresh);

}  // namespace hksynth
