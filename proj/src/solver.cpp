#include "hksynth/solver.hpp"

#include <algorithm>

namespace hksynth {

Solver::Solver() = default;

void Solver::ensure_var(Var v) {
  while (n_vars_ < v) {
    assigns_.push_back(0);
    levels_.push_back(0);
    reasons_.push_back(kNoReason);
    activity_.push_back(0.0);
    phase_.push_back(0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    ++n_vars_;
  }
}

void Solver::set_polarity(Var v, bool value) {
  ensure_var(v);
  phase_[v - 1] = value ? 1 : 0;
}

void Solver::randomize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t v = 0; v < n_vars_; ++v) {
    activity_[v] = u(rng);
    phase_[v] = static_cast<std::uint8_t>(rng() & 1);
  }
  var_inc_ = 1.0;
}

void Solver::attach(std::uint32_t cref) {
  const auto& c = clauses_[cref];
  assert(c.size() >= 2);
  watches_[inot(c[0])].push_back({cref, c[1]});
  watches_[inot(c[1])].push_back({cref, c[0]});
}

void Solver::enqueue(ILit l, std::uint32_t reason) {
  assert(value_lit(l) == 0);
  std::size_t v = ivar(l);
  assigns_[v] = (l & 1) ? -1 : 1;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  phase_[v] = (l & 1) ? 0 : 1;
  trail_.push_back(l);
}

bool Solver::add_clause(Clause c) {
  assert(decision_level() == 0);
  if (!ok_) return false;
  for (Lit l : c) ensure_var(l.var());
  if (!normalize_clause(c)) return true;  // tautology, drop

  std::vector<ILit> lits;
  lits.reserve(c.size());
  for (Lit l : c) {
    ILit il = ilit(l);
    int v = value_lit(il);
    if (v == 1) return true;  // already satisfied at the top level
    if (v == 0) lits.push_back(il);
  }
  if (lits.empty()) {
    ok_ = false;
    return false;
  }
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  std::uint32_t cref = static_cast<std::uint32_t>(clauses_.size());
  clauses_.push_back(std::move(lits));
  attach(cref);
  return true;
}

std::uint32_t Solver::propagate() {
  while (qhead_ < trail_.size()) {
    ILit p = trail_[qhead_++];
    ++stat_propagations_;
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watch w = ws[i++];
      if (value_lit(w.blocker) == 1) {
        ws[j++] = w;
        continue;
      }
      auto& c = clauses_[w.cref];
      ILit false_lit = inot(p);
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      assert(c[1] == false_lit);
      if (value_lit(c[0]) == 1) {
        ws[j++] = {w.cref, c[0]};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value_lit(c[k]) != -1) {
          std::swap(c[1], c[k]);
          watches_[inot(c[1])].push_back({w.cref, c[0]});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, c[0]};
      if (value_lit(c[0]) == -1) {
        // conflict; keep the remaining watches intact
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(c[0], w.cref);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::cancel_until(std::size_t level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
    std::size_t v = ivar(trail_[i]);
    assigns_[v] = 0;
    reasons_[v] = kNoReason;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

void Solver::bump(std::size_t v) {
  if ((activity_[v] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Solver::analyze(std::uint32_t confl, std::vector<ILit>& learnt, std::size_t& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  std::size_t path = 0;
  ILit p = UINT32_MAX;
  std::size_t idx = trail_.size();
  std::uint32_t reason = confl;
  do {
    assert(reason != kNoReason);
    const auto& c = clauses_[reason];
    for (std::size_t k = (p == UINT32_MAX ? 0 : 1); k < c.size(); ++k) {
      std::size_t v = ivar(c[k]);
      if (!seen_[v] && levels_[v] > 0) {
        seen_[v] = 1;
        bump(v);
        if (levels_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(c[k]);
      }
    }
    while (!seen_[ivar(trail_[--idx])]) {
    }
    p = trail_[idx];
    reason = reasons_[ivar(p)];
    seen_[ivar(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = inot(p);

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (levels_[ivar(learnt[i])] > levels_[ivar(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = levels_[ivar(learnt[1])];
  }
  for (ILit l : learnt) seen_[ivar(l)] = 0;
}

// a: the assumption whose value came out false; collects the involved
// assumption subset into failed_.
void Solver::analyze_final(Lit a) {
  failed_.clear();
  failed_.push_back(a);
  if (decision_level() == 0) return;
  ILit na = inot(ilit(a));  // true somewhere on the trail
  seen_[ivar(na)] = 1;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
    std::size_t v = ivar(trail_[i]);
    if (!seen_[v]) continue;
    if (reasons_[v] == kNoReason) {
      assert(levels_[v] > 0);
      failed_.push_back(elit(trail_[i]));
    } else {
      const auto& c = clauses_[reasons_[v]];
      for (std::size_t k = 1; k < c.size(); ++k)
        if (levels_[ivar(c[k])] > 0) seen_[ivar(c[k])] = 1;
    }
    seen_[v] = 0;
  }
  seen_[ivar(na)] = 0;
}

bool Solver::deadline_passed() const {
  return deadline_ && std::chrono::steady_clock::now() > *deadline_;
}

Solver::ILit Solver::pick_branch() {
  std::size_t best = SIZE_MAX;
  for (std::size_t v = 0; v < n_vars_; ++v)
    if (assigns_[v] == 0 && (best == SIZE_MAX || activity_[v] > activity_[best])) best = v;
  if (best == SIZE_MAX) return UINT32_MAX;
  return static_cast<ILit>(2 * best + (phase_[best] ? 0 : 1));
}

SolveStatus Solver::solve(const std::vector<Lit>& assumptions) {
  model_.clear();
  failed_.clear();
  if (!ok_) return SolveStatus::kUnsat;
  for (Lit a : assumptions) ensure_var(a.var());
  assert(decision_level() == 0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return SolveStatus::kUnsat;
  }
  if (deadline_passed()) return SolveStatus::kUndef;

  std::uint64_t conflicts_here = 0;
  std::uint64_t next_restart = 100;
  std::vector<ILit> learnt;

  for (;;) {
    std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++stat_conflicts_;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return SolveStatus::kUnsat;
      }
      std::size_t bt;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        std::uint32_t cref = static_cast<std::uint32_t>(clauses_.size());
        clauses_.push_back(learnt);
        attach(cref);
        enqueue(learnt[0], cref);
      }
      decay();
      if ((conflicts_here & 63) == 0 && deadline_passed()) {
        cancel_until(0);
        return SolveStatus::kUndef;
      }
      if (conflicts_here >= next_restart) {
        next_restart *= 2;
        cancel_until(0);
      }
    } else {
      ILit next = UINT32_MAX;
      while (decision_level() < assumptions.size()) {
        Lit p = assumptions[decision_level()];
        int v = value_lit(ilit(p));
        if (v == 1) {
          new_decision_level();  // already satisfied; placeholder level
        } else if (v == -1) {
          analyze_final(p);
          cancel_until(0);
          return SolveStatus::kUnsat;
        } else {
          next = ilit(p);
          break;
        }
      }
      if (next == UINT32_MAX) {
        next = pick_branch();
        if (next == UINT32_MAX) {
          model_.assign(assigns_.begin(), assigns_.end());
          cancel_until(0);
          return SolveStatus::kSat;
        }
      }
      new_decision_level();
      enqueue(next, kNoReason);
    }
  }
}

bool Solver::model_value(Var v) const {
  assert(v >= 1 && v <= model_.size());
  return model_[v - 1] == 1;
}

}  // namespace hksynth
