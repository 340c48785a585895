#include "hksynth/sat_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace hksynth {

Oracle::Oracle(SolverStats* stats, Deadline deadline) : stats_(stats), deadline_(deadline) {
  solver_.set_deadline(deadline);
}

void Oracle::add_clause(const Clause& c) {
#ifndef NDEBUG
  stored_.push_back(c);
#endif
  solver_.add_clause(c);
}

void Oracle::add_clauses(const std::vector<Clause>& cs) {
  for (const Clause& c : cs) add_clause(c);
}

SatResult Oracle::check(const std::vector<Lit>& assumptions) {
  if (stats_) ++stats_->solver_calls;
  SatResult r;
  switch (solver_.solve(assumptions)) {
    case SolveStatus::kUndef:
      r.status = SatStatus::kTimeout;
      return r;
    case SolveStatus::kUnsat:
      r.status = SatStatus::kUnsat;
      r.failed_assumptions = solver_.failed_assumptions();
      return r;
    case SolveStatus::kSat:
      break;
  }
  r.status = SatStatus::kSat;
  for (Var v = 1; v <= solver_.num_vars(); ++v) r.model[v] = solver_.model_value(v);
#ifndef NDEBUG
  for (const Clause& c : stored_) {
    Clause n = c;
    if (!normalize_clause(n)) continue;
    assert(eval_clause(n, r.model));
  }
  for (Lit a : assumptions) assert(r.model.at(a.var()) == !a.negated());
#endif
  return r;
}

std::vector<Lit> Oracle::failed_core(const std::vector<Lit>& assumptions, bool shrink) {
  SatResult first = check(assumptions);
  if (first.status == SatStatus::kSat)
    throw std::logic_error("failed_core: query is satisfiable");
  if (first.status == SatStatus::kTimeout)
    throw std::logic_error("failed_core: solver hit its deadline");

  // keep assumption order for determinism
  auto ordered = [&](const std::vector<Lit>& subset) {
    std::vector<Lit> out;
    for (Lit a : assumptions)
      if (std::find(subset.begin(), subset.end(), a) != subset.end() &&
          std::find(out.begin(), out.end(), a) == out.end())
        out.push_back(a);
    return out;
  };

  std::vector<Lit> core = ordered(first.failed_assumptions);
  if (!shrink) return core;

  for (std::size_t i = 0; i < core.size();) {
    std::vector<Lit> trial = core;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    SatResult r = check(trial);
    if (r.status == SatStatus::kUnsat) {
      core = ordered(r.failed_assumptions);
      // the solver may have dropped more than the tested literal; restart
      // the scan from the current position
      if (i >= core.size()) break;
    } else {
      ++i;
    }
  }

  SatResult confirm = check(core);
  if (confirm.status != SatStatus::kUnsat)
    throw std::logic_error("failed_core: shrunken core lost unsatisfiability");
  return core;
}

static Var infer_num_vars(const std::vector<Clause>& clauses, const std::vector<Lit>& assumptions,
                          Var declared) {
  Var n = declared;
  for (const Clause& c : clauses)
    for (Lit l : c) n = std::max(n, l.var());
  for (Lit l : assumptions) n = std::max(n, l.var());
  return n;
}

SatResult check_sat(const SatQuery& q, SolverStats* stats, Deadline deadline) {
  Oracle o(stats, deadline);
  o.ensure_vars(infer_num_vars(q.clauses, q.assumptions, q.num_vars));
  o.add_clauses(q.clauses);
  return o.check(q.assumptions);
}

std::vector<Lit> failed_core(const SatQuery& q, bool shrink, SolverStats* stats) {
  Oracle o(stats);
  o.ensure_vars(infer_num_vars(q.clauses, q.assumptions, q.num_vars));
  o.add_clauses(q.clauses);
  return o.failed_core(q.assumptions, shrink);
}

std::vector<Clause> encode_at_most_k(const std::vector<Lit>& lits, unsigned k,
                                     VarAllocator& fresh) {
  std::vector<Clause> out;
  const std::size_t n = lits.size();
  if (k >= n) return out;
  if (k == 0) {
    for (Lit l : lits) out.push_back({~l});
    return out;
  }
  // s[i][j]: among lits[0..i] at least j+1 are true (i in 0..n-2, j in 0..k-1)
  std::vector<std::vector<Lit>> s(n - 1, std::vector<Lit>(k));
  for (auto& row : s)
    for (auto& l : row) l = Lit::make(fresh.fresh(), false);

  out.push_back({~lits[0], s[0][0]});
  for (unsigned j = 1; j < k; ++j) out.push_back({~s[0][j]});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.push_back({~lits[i], s[i][0]});
    out.push_back({~s[i - 1][0], s[i][0]});
    for (unsigned j = 1; j < k; ++j) {
      out.push_back({~lits[i], ~s[i - 1][j - 1], s[i][j]});
      out.push_back({~s[i - 1][j], s[i][j]});
    }
    out.push_back({~lits[i], ~s[i - 1][k - 1]});
  }
  out.push_back({~lits[n - 1], ~s[n - 2][k - 1]});
  return out;
}

MaxSatResult solve_maxsat(const MaxSatQuery& q, SolverStats* stats, Deadline deadline) {
  if (stats) ++stats->maxsat_calls;
  MaxSatResult res;

  std::vector<Lit> none;
  Var base = q.num_vars;
  for (const auto& [c, tag] : q.soft) base = infer_num_vars({c}, none, base);
  base = infer_num_vars(q.hard, none, base);

  auto restrict_to_query = [&](const Assignment& m) {
    Assignment out;
    for (Var v = 1; v <= base; ++v) {
      auto it = m.find(v);
      if (it != m.end()) out[v] = it->second;
    }
    return out;
  };
  auto count_falsified = [&](const Assignment& m, std::vector<int>* tags) {
    std::size_t cost = 0;
    for (const auto& [c, tag] : q.soft) {
      Clause n = c;
      if (!normalize_clause(n)) continue;  // tautological soft is never falsified
      if (!eval_clause(n, m)) {
        ++cost;
        if (tags) tags->push_back(tag);
      }
    }
    return cost;
  };

  {
    SatResult hard_only = check_sat({q.hard, {}, base}, stats, deadline);
    if (hard_only.status == SatStatus::kTimeout) {
      res.status = MaxSatStatus::kTimeout;
      return res;
    }
    if (hard_only.status == SatStatus::kUnsat) {
      res.status = MaxSatStatus::kHardUnsat;
      return res;
    }
    res.model = restrict_to_query(hard_only.model);
  }

  std::size_t best_cost = count_falsified(res.model, nullptr);
  while (best_cost > 0) {
    unsigned k = static_cast<unsigned>(best_cost - 1);
    VarAllocator fresh(base + 1);
    std::vector<Clause> clauses = q.hard;
    std::vector<Lit> relax;
    for (const auto& [c, tag] : q.soft) {
      Lit r = Lit::make(fresh.fresh(), false);
      relax.push_back(r);
      Clause rc = c;
      rc.push_back(r);
      clauses.push_back(std::move(rc));
    }
    auto counter = encode_at_most_k(relax, k, fresh);
    clauses.insert(clauses.end(), counter.begin(), counter.end());

    SatResult r = check_sat({std::move(clauses), {}, fresh.next() - 1}, stats, deadline);
    if (r.status == SatStatus::kTimeout) {
      res.status = MaxSatStatus::kTimeout;
      return res;
    }
    if (r.status == SatStatus::kUnsat) break;  // best_cost is optimal
    res.model = restrict_to_query(r.model);
    std::size_t c = count_falsified(res.model, nullptr);
    assert(c <= k);
    best_cost = c;
  }

  res.status = MaxSatStatus::kOk;
  count_falsified(res.model, &res.falsified);
  return res;
}

}  // namespace hksynth
