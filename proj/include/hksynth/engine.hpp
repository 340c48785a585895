#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hksynth/learner.hpp"
#include "hksynth/repair.hpp"
#include "hksynth/sampler.hpp"
#include "hksynth/verifier.hpp"

namespace hksynth {

/// refinement rounds that may end stuck back to back before giving up
inline constexpr std::size_t kStuckRoundsLimit = 3;

/// counterexamples in a row before the engine redraws samples and
/// relearns the most-repaired candidates (skipped in the plain loop)
inline constexpr std::size_t kResampleStreak = 32;

struct EngineConfig {
  std::uint64_t seed = 1;
  std::size_t sample_target = 0;      // 0 = sampler default
  double timeout_seconds = 0;         // 0 = unlimited
  std::size_t max_iterations = 1000;  // verify-repair rounds

  /// keep to the plain refinement loop: never redraw samples or relearn
  bool plain_loop = false;

  bool bias_sampling = false;

  /// hooks for tests and debugging
  std::optional<SampleTable> injected_samples;  // use instead of sampling
  std::map<Var, ExprPtr> injected_candidates;   // seed these, learn the rest

  std::string dump_trees_dir;           // one learned-tree file per variable
  std::ostream* samples_out = nullptr;  // sample table CSV
  std::ostream* repair_trace = nullptr;
};

struct SynthStats {
  std::size_t iterations = 0;
  std::size_t sample_rows = 0;
  std::uint64_t solver_calls = 0;
  std::uint64_t maxsat_calls = 0;
  std::size_t repair_probes = 0;
  std::size_t relearned = 0;
  double seconds = 0;
};

enum class SynthKind { kSynthesized, kFalse, kUnknown };

struct SynthResult {
  SynthKind kind{};
  HenkinVector vector;         // kSynthesized: resolved and scope-checked
  Assignment false_witness;    // kFalse: universal point with no extension
  std::string unknown_reason;  // kUnknown
  SynthStats stats;
};

/// End-to-end synthesis: sample the matrix, learn a candidate per
/// existential, then verify and repair until the vector checks out, a
/// universal assignment with no extension turns up, or a budget runs out.
/// Both terminal claims are re-checked on fresh queries before being
/// reported. Deterministic for a fixed seed.
SynthResult synthesize(const DqbfInstance& inst, const EngineConfig& cfg = {});

/// Expand existential references: walking the order back to front, each
/// function's references are replaced by the already-expanded functions
/// behind it. Result is resolved and constant-folded.
HenkinVector substitute(const HenkinVector& v, const std::vector<Var>& order);

}  // namespace hksynth
