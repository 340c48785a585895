#pragma once

#include <map>

#include "hksynth/dqbf.hpp"
#include "hksynth/sat_oracle.hpp"

namespace hksynth {

/// A failing point of a candidate vector: an X-assignment, a genuine
/// Y-extension of it (a matrix model), and the candidate outputs Y'.
/// Invariants: x_part + y_part satisfies the matrix, x_part + y_prime_part
/// falsifies it, and y_prime_part agrees with evaluating the candidates.
struct Counterexample {
  Assignment x_part;
  Assignment y_part;
  Assignment y_prime_part;
};

/// CNF of the check "some matrix clause fails under X,Y' while Y' equals
/// the candidate outputs". Unsatisfiable exactly when the candidates solve
/// the instance.
struct ErrorFormula {
  std::vector<Clause> clauses;
  std::map<Var, Var> y_prime;  // existential -> primed copy
  Var num_vars = 0;
};

ErrorFormula build_error_formula(const DqbfInstance& inst, const HenkinVector& v,
                                 VarAllocator& fresh);

enum class VerifyKind { kVerified, kCexFound, kInstanceFalse, kUnknown };

struct VerifyResult {
  VerifyKind kind{};
  Counterexample cex;        // kCexFound
  Assignment false_witness;  // kInstanceFalse: X with no Y-extension
};

/// Checks candidates against the instance. Keeps one incremental oracle
/// for the extension query (the matrix under X assumptions) across calls;
/// the error formula changes with the candidates and gets a fresh oracle
/// per call.
class Verifier {
 public:
  explicit Verifier(const DqbfInstance& inst, SolverStats* stats = nullptr,
                    Deadline deadline = {});

  VerifyResult verify(const HenkinVector& v);

 private:
  const DqbfInstance& inst_;
  SolverStats* stats_;
  Deadline deadline_;
  Oracle extension_;  // matrix clauses, queried under X assumptions
};

}  // namespace hksynth
