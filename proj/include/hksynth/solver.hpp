#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hksynth/types.hpp"

namespace hksynth {

enum class SolveStatus { kSat, kUnsat, kUndef };

/// Minisat-style CDCL: two-watched-literal propagation, 1UIP learning,
/// activity-based decisions with phase saving, assumption solving with
/// failed-assumption extraction. Deterministic for a fixed call sequence
/// and seed. Sized for the small queries this project generates; learnt
/// clauses are kept for the lifetime of the solver.
class Solver {
 public:
  Solver();

  void ensure_var(Var v);
  Var num_vars() const { return static_cast<Var>(n_vars_); }

  /// False once the database is unsatisfiable at level 0.
  bool ok() const { return ok_; }

  /// Normalizes (dedupe, tautology drop, level-0 simplification).
  /// Returns ok().
  bool add_clause(Clause c);

  SolveStatus solve(const std::vector<Lit>& assumptions = {});

  /// Valid after kSat; total over all created variables.
  bool model_value(Var v) const;

  /// Valid after kUnsat: a subset of the assumptions that already forces
  /// unsatisfiability together with the clause database. Empty when the
  /// clauses alone are unsatisfiable.
  const std::vector<Lit>& failed_assumptions() const { return failed_; }

  /// Default branching polarity for a variable (also resets saved phase).
  void set_polarity(Var v, bool value);

  /// Perturb decision order and polarities; used by the sampler to spread
  /// enumeration across the model space.
  void randomize(std::uint64_t seed);

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { deadline_ = d; }

  std::uint64_t conflicts() const { return stat_conflicts_; }
  std::uint64_t propagations() const { return stat_propagations_; }

 private:
  // literals are indexed internally as 2*(var-1)+sign
  using ILit = std::uint32_t;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;

  static ILit ilit(Lit l) { return 2 * (l.var() - 1) + (l.negated() ? 1 : 0); }
  static Lit elit(ILit i) { return Lit::make(i / 2 + 1, i & 1); }
  static ILit inot(ILit i) { return i ^ 1; }
  static std::size_t ivar(ILit i) { return i / 2; }

  // -1 false, 0 unassigned, +1 true (for the underlying variable)
  int value_var(std::size_t v) const { return assigns_[v]; }
  int value_lit(ILit l) const {
    int a = assigns_[ivar(l)];
    return (l & 1) ? -a : a;
  }

  struct Watch {
    std::uint32_t cref;
    ILit blocker;
  };

  void attach(std::uint32_t cref);
  std::uint32_t propagate();
  void enqueue(ILit l, std::uint32_t reason);
  void new_decision_level() { trail_lim_.push_back(trail_.size()); }
  std::size_t decision_level() const { return trail_lim_.size(); }
  void cancel_until(std::size_t level);
  void analyze(std::uint32_t confl, std::vector<ILit>& learnt, std::size_t& bt_level);
  void analyze_final(Lit a);
  ILit pick_branch();
  void bump(std::size_t v);
  void decay() { var_inc_ /= 0.95; }
  bool deadline_passed() const;

  bool ok_ = true;
  std::size_t n_vars_ = 0;
  std::vector<std::vector<ILit>> clauses_;  // arena; index = cref
  std::vector<std::vector<Watch>> watches_;  // indexed by ILit that became true
  std::vector<int8_t> assigns_;
  std::vector<std::size_t> levels_;
  std::vector<std::uint32_t> reasons_;
  std::vector<ILit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<std::uint8_t> phase_;  // saved polarity per variable
  std::vector<std::uint8_t> seen_;   // scratch for analyze

  std::vector<int8_t> model_;
  std::vector<Lit> failed_;

  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint64_t stat_conflicts_ = 0;
  std::uint64_t stat_propagations_ = 0;
};

}  // namespace hksynth
