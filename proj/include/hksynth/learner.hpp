#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "hksynth/dqbf.hpp"
#include "hksynth/sampler.hpp"

namespace hksynth {

/// Bookkeeping of "who depends on whom" among the existentials.
/// dependents[y] is the set of existentials whose functions (may) depend
/// on y; an entry y' in dependents[y] bars y' from ever appearing in the
/// feature set of y, which keeps the mention relation acyclic.
struct DepState {
  std::map<Var, std::set<Var>> dependents;

  /// linearization: position in `sequence` is the order index; a variable
  /// may only mention variables with a strictly higher index
  std::vector<Var> sequence;
  std::map<Var, std::size_t> index;

  bool has_order() const { return !sequence.empty() || dependents.empty(); }
};

/// Seeds dependents from the dependency-set lattice: whenever H_j is a
/// strict subset of H_i, y_i lands in dependents[y_j].
DepState init_dependencies(const DqbfInstance& inst);

/// Features usable when learning y: H_y plus every other existential y_j
/// with H_j subseteq H_y that is not already a dependent of y. Ascending id.
std::vector<Var> feature_set(const DqbfInstance& inst, const DepState& dep, Var y);

struct TreeNode {
  // leaf: label in {0,1}; inner: split variable with 0/1 branches
  int label = -1;
  Var split = 0;
  std::unique_ptr<TreeNode> zero, one;
  bool is_leaf() const { return label >= 0; }
};

struct DecisionTree {
  std::unique_ptr<TreeNode> root;
};

struct LearnOptions {
  /// 0 = pick automatically: unbounded up to 16 features, otherwise 8.
  std::size_t max_depth = 0;

  /// observer for each tree candidate_hkf learns (tree dumps etc.)
  std::function<void(Var, const DecisionTree&)> on_tree;
};

/// Greedy binary CART on 0/1 data, Gini impurity. Splits while a node is
/// impure, within depth, and some feature still varies inside the node;
/// ties between features go to the higher id (which reproduces the
/// reference traces). Leaf ties label 0.
DecisionTree learn_tree(const std::vector<Var>& features, const SampleTable& table, Var label,
                        const LearnOptions& opts = {});

/// Disjunction over all root-to-leaf paths that end in label 1.
ExprPtr tree_to_expr(const DecisionTree& t);

/// Learn a candidate for y from the samples and record the new
/// dependencies: every existential y_k mentioned by the result gets
/// y and dependents[y] merged into dependents[y_k].
ExprPtr candidate_hkf(const DqbfInstance& inst, const SampleTable& table, Var y, DepState& dep,
                      const LearnOptions& opts = {});

/// Fills dep.sequence/index with a linearization where y_i in
/// dependents[y_j] puts y_j at a strictly higher index than y_i; ties
/// break toward the smaller id. Throws std::logic_error on a cycle.
const std::vector<Var>& find_order(const DqbfInstance& inst, DepState& dep);

void dump_tree(const DecisionTree& t, std::ostream& out);

}  // namespace hksynth
