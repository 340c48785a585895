#include "hksynth/learner.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hksynth {

DepState init_dependencies(const DqbfInstance& inst) {
  DepState dep;
  for (Var y : inst.existentials) dep.dependents[y];
  for (Var yi : inst.existentials)
    for (Var yj : inst.existentials) {
      if (yi == yj) continue;
      const auto& hi = inst.deps_of(yi);
      const auto& hj = inst.deps_of(yj);
      if (hj.size() < hi.size() && subset_of(hj, hi)) dep.dependents[yj].insert(yi);
    }
  return dep;
}

std::vector<Var> feature_set(const DqbfInstance& inst, const DepState& dep, Var y) {
  std::vector<Var> feats = inst.deps_of(y);
  const auto& barred = dep.dependents.at(y);
  for (Var yj : inst.existentials) {
    if (yj == y || barred.count(yj)) continue;
    if (subset_of(inst.deps_of(yj), inst.deps_of(y))) feats.push_back(yj);
  }
  std::sort(feats.begin(), feats.end());
  return feats;
}

namespace {

double gini(std::size_t ones, std::size_t total) {
  if (total == 0) return 0.0;
  double p1 = double(ones) / double(total);
  double p0 = 1.0 - p1;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
  const SampleTable& table;
  std::vector<std::size_t> feat_cols;  // aligned with feats
  std::vector<Var> feats;
  std::size_t label_col;
  std::size_t max_depth;

  std::unique_ptr<TreeNode> build(std::vector<std::size_t> rows, std::vector<char> used,
                                  std::size_t depth) {
    std::size_t ones = 0;
    for (std::size_t r : rows) ones += table.rows[r][label_col];

    auto leaf = [&](int lbl) {
      auto n = std::make_unique<TreeNode>();
      n->label = lbl;
      return n;
    };
    if (ones == rows.size() && !rows.empty()) return leaf(1);
    if (ones == 0) return leaf(0);  // also covers the empty-table case
    if (depth >= max_depth) return leaf(majority(ones, rows.size()));

    // best split: smallest weighted Gini, ties to the higher feature id
    std::size_t best = SIZE_MAX;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t f = feats.size(); f-- > 0;) {
      if (used[f]) continue;
      std::size_t c0 = 0, c1 = 0, o0 = 0, o1 = 0;
      for (std::size_t r : rows) {
        if (table.rows[r][feat_cols[f]]) {
          ++c1;
          o1 += table.rows[r][label_col];
        } else {
          ++c0;
          o0 += table.rows[r][label_col];
        }
      }
      if (c0 == 0 || c1 == 0) continue;  // constant inside this node
      double score =
          (double(c0) * gini(o0, c0) + double(c1) * gini(o1, c1)) / double(rows.size());
      if (score < best_score) {
        best_score = score;
        best = f;
      }
    }
    if (best == SIZE_MAX) return leaf(majority(ones, rows.size()));

    std::vector<std::size_t> zero_rows, one_rows;
    for (std::size_t r : rows)
      (table.rows[r][feat_cols[best]] ? one_rows : zero_rows).push_back(r);
    used[best] = 1;

    auto n = std::make_unique<TreeNode>();
    n->split = feats[best];
    n->zero = build(std::move(zero_rows), used, depth + 1);
    n->one = build(std::move(one_rows), std::move(used), depth + 1);
    return n;
  }

  static int majority(std::size_t ones, std::size_t total) {
    return ones * 2 > total ? 1 : 0;  // exact tie goes to 0
  }
};

}  // namespace

DecisionTree learn_tree(const std::vector<Var>& features, const SampleTable& table, Var label,
                        const LearnOptions& opts) {
  std::size_t max_depth = opts.max_depth;
  if (max_depth == 0) max_depth = features.size() <= 16 ? SIZE_MAX : 8;

  TreeBuilder b{table, {}, features, table.col(label), max_depth};
  for (Var f : features) b.feat_cols.push_back(table.col(f));

  std::vector<std::size_t> all(table.rows.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  DecisionTree t;
  t.root = b.build(std::move(all), std::vector<char>(features.size(), 0), 0);
  return t;
}

namespace {

void paths_to_one(const TreeNode& n, std::vector<ExprPtr>& prefix, std::vector<ExprPtr>& out) {
  if (n.is_leaf()) {
    if (n.label == 1) out.push_back(BoolExpr::conj(prefix));
    return;
  }
  prefix.push_back(BoolExpr::negate(BoolExpr::var_ref(n.split)));
  paths_to_one(*n.zero, prefix, out);
  prefix.back() = BoolExpr::var_ref(n.split);
  paths_to_one(*n.one, prefix, out);
  prefix.pop_back();
}

}  // namespace

ExprPtr tree_to_expr(const DecisionTree& t) {
  std::vector<ExprPtr> prefix, paths;
  paths_to_one(*t.root, prefix, paths);
  return BoolExpr::disj(std::move(paths));
}

ExprPtr candidate_hkf(const DqbfInstance& inst, const SampleTable& table, Var y, DepState& dep,
                      const LearnOptions& opts) {
  auto feats = feature_set(inst, dep, y);
  DecisionTree t = learn_tree(feats, table, y, opts);
  if (opts.on_tree) opts.on_tree(y, t);
  ExprPtr f = tree_to_expr(t);
  for (Var v : vars(*f)) {
    if (!inst.is_existential(v)) continue;
    auto& dk = dep.dependents[v];
    dk.insert(y);
    const auto& dy = dep.dependents[y];
    dk.insert(dy.begin(), dy.end());
  }
  return f;
}

const std::vector<Var>& find_order(const DqbfInstance& inst, DepState& dep) {
  // Kahn over edges "a before b" for a in dependents[b]; min-id first
  std::map<Var, std::size_t> indegree;
  std::map<Var, std::vector<Var>> successors;  // a -> bs with a in dependents[b]
  for (Var y : inst.existentials) indegree[y] = 0;
  for (const auto& [b, as] : dep.dependents)
    for (Var a : as) {
      if (!indegree.count(a)) continue;  // ignore ids outside this instance
      ++indegree[b];
      successors[a].push_back(b);
    }

  std::set<Var> ready;
  for (const auto& [y, d] : indegree)
    if (d == 0) ready.insert(y);

  dep.sequence.clear();
  dep.index.clear();
  while (!ready.empty()) {
    Var y = *ready.begin();
    ready.erase(ready.begin());
    dep.index[y] = dep.sequence.size();
    dep.sequence.push_back(y);
    for (Var b : successors[y])
      if (--indegree[b] == 0) ready.insert(b);
  }
  if (dep.sequence.size() != inst.existentials.size())
    throw std::logic_error("dependency bookkeeping contains a cycle");
  return dep.sequence;
}

namespace {

void dump_node(const TreeNode& n, std::ostream& out, std::string indent) {
  if (n.is_leaf()) {
    out << indent << "leaf " << n.label << "\n";
    return;
  }
  out << indent << "split " << n.split << "\n";
  out << indent << "0:\n";
  dump_node(*n.zero, out, indent + "  ");
  out << indent << "1:\n";
  dump_node(*n.one, out, indent + "  ");
}

}  // namespace

void dump_tree(const DecisionTree& t, std::ostream& out) { dump_node(*t.root, out, ""); }

}  // namespace hksynth
