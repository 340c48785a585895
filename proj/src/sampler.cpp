#include "hksynth/sampler.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

namespace hksynth {

std::size_t SampleTable::col(Var v) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), v);
  if (it == variables.end() || *it != v)
    throw std::invalid_argument("sample table has no column for variable " + std::to_string(v));
  return static_cast<std::size_t>(it - variables.begin());
}

bool SampleTable::has_var(Var v) const {
  return std::binary_search(variables.begin(), variables.end(), v);
}

SampleResult get_samples(const DqbfInstance& inst, const SamplerOptions& opts,
                         SolverStats* stats) {
  SampleResult res;
  res.table.variables.reserve(inst.universals.size() + inst.existentials.size());
  for (Var x : inst.universals) res.table.variables.push_back(x);
  for (Var y : inst.existentials) res.table.variables.push_back(y);
  std::sort(res.table.variables.begin(), res.table.variables.end());

  std::size_t target = opts.target;
  if (target == 0)
    target = std::min<std::size_t>(10000, 50 * res.table.variables.size());
  if (target == 0) target = 1;  // degenerate instance with no variables

  Solver solver;
  solver.ensure_var(inst.matrix.num_vars);
  solver.set_deadline(opts.deadline);
  bool ok = !inst.matrix.trivially_false;
  for (const Clause& c : inst.matrix.clauses)
    if (!solver.add_clause(c)) {
      ok = false;
      break;
    }
  if (!ok) {
    res.status = SampleStatus::kMatrixUnsat;
    return res;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  while (res.table.rows.size() < target) {
    solver.randomize(rng());
    if (opts.bias_previous && !res.table.rows.empty()) {
      const auto& prev = res.table.rows.back();
      for (Var y : inst.existentials)
        if (coin(rng) < 0.9) solver.set_polarity(y, prev[res.table.col(y)] != 0);
    }
    if (stats) ++stats->solver_calls;
    SolveStatus st = solver.solve();
    if (st == SolveStatus::kUndef) {
      res.status = res.table.rows.empty() ? SampleStatus::kTimeout : SampleStatus::kOk;
      return res;
    }
    if (st == SolveStatus::kUnsat) {
      // enumeration exhausted every model
      res.status = res.table.rows.empty() ? SampleStatus::kMatrixUnsat : SampleStatus::kOk;
      return res;
    }
    std::vector<std::uint8_t> row(res.table.variables.size());
    Clause block;
    Assignment checked;
    for (std::size_t i = 0; i < res.table.variables.size(); ++i) {
      Var v = res.table.variables[i];
      bool val = solver.model_value(v);
      row[i] = val ? 1 : 0;
      checked[v] = val;
      block.push_back(Lit::make(v, val));  // negation of the model
    }
    assert(eval_cnf(inst.matrix, checked));
    res.table.rows.push_back(std::move(row));
    if (block.empty()) break;  // no quantified variables: a single empty row
    if (!solver.add_clause(block)) {
      res.status = SampleStatus::kOk;
      return res;
    }
  }
  res.status = SampleStatus::kOk;
  return res;
}

void write_sample_csv(const SampleTable& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.variables.size(); ++i)
    out << (i ? "," : "") << t.variables[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << unsigned(row[i]);
    out << "\n";
  }
}

}  // namespace hksynth
