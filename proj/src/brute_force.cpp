#include "hksynth/brute_force.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

namespace hksynth {

namespace {

bool eval_dense(const CnfFormula& f, const std::vector<std::uint8_t>& val) {
  if (f.trivially_false) return false;
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (Lit l : c) {
      if ((val[l.var()] != 0) != l.negated()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::vector<Var> sorted(std::vector<Var> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}

// lexicographic cell index, inputs[0] most significant
std::size_t cell_index(const std::vector<Var>& inputs, const std::vector<std::uint8_t>& val) {
  std::size_t idx = 0;
  for (Var in : inputs) idx = (idx << 1) | (val[in] != 0 ? 1u : 0u);
  return idx;
}

void check_decide_caps(const DqbfInstance& inst, const BruteOptions& opts) {
  if (inst.universals.size() > opts.max_universals)
    throw std::invalid_argument("too many universals for the truth decision");
  std::size_t bits = 0;
  for (Var y : inst.existentials) {
    std::size_t h = inst.deps_of(y).size();
    if (h > 20 || (bits += std::size_t{1} << h) > opts.max_table_bits)
      throw std::invalid_argument("function tables too large to enumerate");
  }
}

std::vector<FunctionTable> collect_witness(const DqbfInstance& inst, const std::vector<Var>& ys,
                                           const std::vector<std::vector<std::int8_t>>& tables) {
  std::vector<FunctionTable> w;
  w.reserve(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    FunctionTable t;
    t.y = ys[i];
    t.inputs = inst.deps_of(ys[i]);
    t.bits.reserve(tables[i].size());
    for (std::int8_t b : tables[i]) {
      assert(b >= 0);
      t.bits.push_back(static_cast<std::uint8_t>(b));
    }
    w.push_back(std::move(t));
  }
  return w;
}

}  // namespace

ExprPtr table_to_expr(const FunctionTable& t) {
  assert(t.bits.size() == std::size_t{1} << t.inputs.size());
  std::vector<ExprPtr> minterms;
  for (std::size_t idx = 0; idx < t.bits.size(); ++idx) {
    if (!t.bits[idx]) continue;
    std::vector<ExprPtr> lits;
    lits.reserve(t.inputs.size());
    for (std::size_t j = 0; j < t.inputs.size(); ++j) {
      bool one = (idx >> (t.inputs.size() - 1 - j)) & 1;
      ExprPtr r = BoolExpr::var_ref(t.inputs[j]);
      lits.push_back(one ? std::move(r) : BoolExpr::negate(std::move(r)));
    }
    minterms.push_back(BoolExpr::conj(std::move(lits)));
  }
  return BoolExpr::disj(std::move(minterms));
}

bool check_vector(const DqbfInstance& inst, const HenkinVector& v, Assignment* failing,
                  const BruteOptions& opts) {
  inst.validate();
  if (!v.resolved) throw std::invalid_argument("certificate check needs a resolved vector");
  for (Var y : inst.existentials)
    if (!v.functions.count(y))
      throw std::invalid_argument("vector has no function for " + std::to_string(y));
  validate_vector(inst, v);
  if (inst.universals.size() > opts.max_universal_bits)
    throw std::invalid_argument("too many universals for exhaustive checking");

  std::vector<Var> xs = sorted(inst.universals);
  std::vector<std::uint8_t> val(inst.matrix.num_vars + 1, 0);

  for (std::size_t k = 0; k < std::size_t{1} << xs.size(); ++k) {
    for (std::size_t j = 0; j < xs.size(); ++j) val[xs[j]] = (k >> j) & 1;
    for (Var y : inst.existentials) val[y] = eval(*v.functions.at(y), val) ? 1 : 0;
    if (!eval_dense(inst.matrix, val)) {
      if (failing) {
        failing->clear();
        for (Var x : xs) (*failing)[x] = val[x] != 0;
      }
      return false;
    }
  }
  return true;
}

DecideResult decide_truth(const DqbfInstance& inst, const BruteOptions& opts) {
  inst.validate();
  check_decide_caps(inst, opts);
  if (inst.matrix.trivially_false) return {};

  std::vector<Var> xs = sorted(inst.universals);
  std::vector<Var> ys = sorted(inst.existentials);
  std::vector<std::vector<std::int8_t>> tables;
  for (Var y : ys)
    tables.emplace_back(std::size_t{1} << inst.deps_of(y).size(), std::int8_t{-1});
  std::vector<std::uint8_t> val(inst.matrix.num_vars + 1, 0);

  const std::size_t points = std::size_t{1} << xs.size();

  // Depth-first over universal points, kept iterative to stay off the call
  // stack. A frame holds the table cells first read at its point; those
  // are the only choices this level owns, everything else is forced.
  struct Frame {
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;  // (y index, cell)
    std::vector<std::size_t> cell;                                // per y index
    std::size_t next_mask = 0;
  };
  std::vector<Frame> stack;
  stack.reserve(points);

  std::size_t k = 0;
  while (k < points) {
    if (stack.size() == k) {
      Frame fr;
      for (std::size_t j = 0; j < xs.size(); ++j) val[xs[j]] = (k >> j) & 1;
      fr.cell.resize(ys.size());
      for (std::size_t i = 0; i < ys.size(); ++i) {
        fr.cell[i] = cell_index(inst.deps_of(ys[i]), val);
        if (tables[i][fr.cell[i]] < 0) fr.free_cells.emplace_back(i, fr.cell[i]);
      }
      stack.push_back(std::move(fr));
    }

    Frame& fr = stack[k];
    if (fr.next_mask == std::size_t{1} << fr.free_cells.size()) {
      for (const auto& [i, c] : fr.free_cells) tables[i][c] = -1;
      stack.pop_back();
      if (k == 0) return {};
      --k;
      continue;
    }

    std::size_t mask = fr.next_mask++;
    for (std::size_t j = 0; j < xs.size(); ++j) val[xs[j]] = (k >> j) & 1;
    for (std::size_t b = 0; b < fr.free_cells.size(); ++b)
      tables[fr.free_cells[b].first][fr.free_cells[b].second] =
          static_cast<std::int8_t>((mask >> b) & 1);
    for (std::size_t i = 0; i < ys.size(); ++i)
      val[ys[i]] = static_cast<std::uint8_t>(tables[i][fr.cell[i]]);
    if (eval_dense(inst.matrix, val)) ++k;
  }

  return {true, collect_witness(inst, ys, tables)};
}

DecideResult decide_truth_by_counter(const DqbfInstance& inst, const BruteOptions& opts) {
  inst.validate();
  check_decide_caps(inst, opts);
  if (inst.matrix.trivially_false) return {};

  std::vector<Var> xs = sorted(inst.universals);
  std::vector<Var> ys = sorted(inst.existentials);

  std::vector<std::size_t> offset;
  std::size_t total_bits = 0;
  for (Var y : ys) {
    offset.push_back(total_bits);
    total_bits += std::size_t{1} << inst.deps_of(y).size();
  }

  std::vector<std::uint8_t> val(inst.matrix.num_vars + 1, 0);
  for (std::uint64_t counter = 0; counter < std::uint64_t{1} << total_bits; ++counter) {
    bool all_ok = true;
    for (std::size_t k = 0; all_ok && k < std::size_t{1} << xs.size(); ++k) {
      for (std::size_t j = 0; j < xs.size(); ++j) val[xs[j]] = (k >> j) & 1;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        std::size_t c = cell_index(inst.deps_of(ys[i]), val);
        val[ys[i]] = (counter >> (offset[i] + c)) & 1;
      }
      all_ok = eval_dense(inst.matrix, val);
    }
    if (!all_ok) continue;

    std::vector<std::vector<std::int8_t>> tables;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      std::vector<std::int8_t> t(std::size_t{1} << inst.deps_of(ys[i]).size());
      for (std::size_t c = 0; c < t.size(); ++c)
        t[c] = static_cast<std::int8_t>((counter >> (offset[i] + c)) & 1);
      tables.push_back(std::move(t));
    }
    return {true, collect_witness(inst, ys, tables)};
  }
  return {};
}

}  // namespace hksynth
