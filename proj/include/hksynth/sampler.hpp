#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hksynth/dqbf.hpp"
#include "hksynth/sat_oracle.hpp"

namespace hksynth {

/// Training data for the function learner: one column per quantified
/// variable (ascending id), one row per distinct matrix model.
struct SampleTable {
  std::vector<Var> variables;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t col(Var v) const;  // throws std::invalid_argument if absent
  bool has_var(Var v) const;
};

enum class SampleStatus {
  kOk,
  kMatrixUnsat,  // the matrix has no model at all
  kTimeout       // deadline hit before the first model
};

struct SampleResult {
  SampleStatus status{};
  SampleTable table;
};

struct SamplerOptions {
  std::size_t target = 0;  // 0 = min(10000, 50 * (|X| + |Y|))
  std::uint64_t seed = 1;
  /// Bias existential polarities toward the previous row with p = 0.9.
  bool bias_previous = false;
  Deadline deadline{};
};

/// Repeated SAT enumeration with per-round randomized branching polarity
/// and a blocking clause per found model. Rows are distinct by
/// construction and each is checked against the matrix on insertion.
/// Stops at the target, at full enumeration, or at the deadline
/// (keeping whatever was collected).
SampleResult get_samples(const DqbfInstance& inst, const SamplerOptions& opts,
                         SolverStats* stats = nullptr);

/// CSV: header of variable ids, then 0/1 rows.
void write_sample_csv(const SampleTable& t, std::ostream& out);

}  // namespace hksynth
