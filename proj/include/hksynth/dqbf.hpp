#pragma once

#include <map>
#include <set>
#include <vector>

#include "hksynth/boolexpr.hpp"
#include "hksynth/types.hpp"

namespace hksynth {

/// A dependency-quantified formula: universal block X, existential block Y,
/// one dependency set H_i subseteq X per existential, CNF matrix.
struct DqbfInstance {
  std::vector<Var> universals;    // declaration order
  std::vector<Var> existentials;  // declaration order
  std::map<Var, std::vector<Var>> deps;  // y -> sorted H_y
  CnfFormula matrix;

  bool is_universal(Var v) const;
  bool is_existential(Var v) const;
  const std::vector<Var>& deps_of(Var y) const;

  /// Throws std::invalid_argument on a broken invariant: overlap between
  /// blocks, a dependency set mentioning a non-universal, an unquantified
  /// matrix variable, or an id above num_vars.
  void validate() const;
};

/// a sorted-subset test used for dependency-set comparisons
bool subset_of(const std::vector<Var>& a, const std::vector<Var>& b);

/// One candidate or final function per existential. While unresolved,
/// functions may reference other existentials (never their own output);
/// once resolved every f_y mentions only variables from H_y.
struct HenkinVector {
  std::map<Var, ExprPtr> functions;
  bool resolved = false;
};

/// Mention relation y -> existentials referenced by f_y (restricted to Y).
std::map<Var, std::set<Var>> mention_graph(const DqbfInstance& inst, const HenkinVector& v);

/// True iff the mention relation has no cycle.
bool mentions_acyclic(const DqbfInstance& inst, const HenkinVector& v);

/// Scope check: resolved vectors stay inside H_y, unresolved ones inside
/// H_y plus the other existentials. Throws std::invalid_argument otherwise.
void validate_vector(const DqbfInstance& inst, const HenkinVector& v);

}  // namespace hksynth
