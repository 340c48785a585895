#pragma once

// Shared helpers for the test suites: randomized generators and tiny
// reference implementations kept independent of the library code they
// check. Everything here enumerates; keep the sizes small.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hksynth/boolexpr.hpp"
#include "hksynth/dqbf.hpp"
#include "hksynth/types.hpp"

namespace hksynth::testing {

using Rng = std::mt19937_64;

// ---- reference decisions by full enumeration ----

/// first model in counting order, or nullopt; vars 1..num_vars
std::optional<Assignment> enum_sat(const std::vector<Clause>& clauses, Var num_vars);

/// minimum number of falsified soft clauses over all models of hard;
/// nullopt when hard has no model
std::optional<std::size_t> enum_min_cost(const std::vector<Clause>& hard,
                                         const std::vector<Clause>& soft, Var num_vars);

/// agreement on every assignment of `universe` (other vars fixed false)
bool equivalent(const ExprPtr& a, const ExprPtr& b, const std::vector<Var>& universe);

// ---- random structures ----

ExprPtr random_expr(Rng& rng, const std::vector<Var>& vars, int depth);

std::vector<Clause> random_cnf(Rng& rng, Var num_vars, std::size_t clauses, std::size_t width);

struct InstanceParams {
  Var max_universals = 4;
  Var max_existentials = 3;
  std::size_t max_deps = 3;
  std::size_t max_clauses = 8;
  std::size_t max_clause_width = 3;
};

/// universals 1..nx, existentials nx+1..nx+ny (ny >= 1), random dependency
/// sets, random non-tautological clauses over the quantified variables
DqbfInstance random_instance(Rng& rng, const InstanceParams& p = {});

/// one function per existential, built over its own dependency set only
HenkinVector random_resolved_vector(Rng& rng, const DqbfInstance& inst, int depth = 2);

// ---- canonical instances used across suites ----

/// the three-existential worked instance (nested dependency sets)
DqbfInstance example_instance();

/// the equality chain over incomparable dependency sets
DqbfInstance limitation_instance();

/// the Figure-style sample rows for example_instance: three rows over
/// (x1,x2,x3,y1,y2,y3) = vars 1..6
std::vector<std::vector<std::uint8_t>> example_sample_rows();

// ---- process helpers for the CLI suite ----

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CmdResult run_cmd(const std::string& command);

}  // namespace hksynth::testing
