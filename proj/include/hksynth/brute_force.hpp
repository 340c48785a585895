#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hksynth/dqbf.hpp"

namespace hksynth {

/// One exhaustive function table: 2^|inputs| output bits in lexicographic
/// input order, inputs[0] being the most significant position.
struct FunctionTable {
  Var y = 0;
  std::vector<Var> inputs;  // sorted dependency set
  std::vector<std::uint8_t> bits;
};

ExprPtr table_to_expr(const FunctionTable& t);

struct BruteOptions {
  std::size_t max_universal_bits = 20;  // check_vector walks 2^|X| points
  std::size_t max_table_bits = 24;      // truth decision: sum of 2^|H_i|
  std::size_t max_universals = 16;      // truth decision X cap
};

/// Ground-truth certificate check by walking every universal assignment:
/// true iff the matrix holds at each point under the computed outputs.
/// The vector must be resolved and cover every existential. `failing`
/// (optional) receives the first falsifying universal assignment, in
/// counting order with the lowest id as the least significant bit.
/// Throws std::invalid_argument beyond the cap or on a malformed vector.
bool check_vector(const DqbfInstance& inst, const HenkinVector& v, Assignment* failing = nullptr,
                  const BruteOptions& opts = {});

struct DecideResult {
  bool is_true = false;
  std::vector<FunctionTable> witness;  // complete tables when is_true
};

/// Decides instance truth: is there any choice of function tables making
/// the matrix hold at every universal point? Backtracking search over
/// table cells, filled lazily as the universal assignments are walked;
/// a cell is only ever branched on at the first point that reads it.
/// Throws std::invalid_argument beyond the caps.
DecideResult decide_truth(const DqbfInstance& inst, const BruteOptions& opts = {});

/// Same decision by trying every table combination as one bit-vector
/// counter, first witnessing combination wins. Hopeless beyond a dozen
/// table bits; tests use it to cross-check decide_truth.
DecideResult decide_truth_by_counter(const DqbfInstance& inst, const BruteOptions& opts = {});

}  // namespace hksynth
