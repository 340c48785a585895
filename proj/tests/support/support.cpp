#include "support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>
#include <stdexcept>

namespace hksynth::testing {

namespace {

bool clause_true(const Clause& c, const std::vector<std::uint8_t>& val) {
  for (Lit l : c)
    if ((val[l.var()] != 0) != l.negated()) return true;
  return false;
}

Assignment to_assignment(const std::vector<std::uint8_t>& val, Var num_vars) {
  Assignment a;
  for (Var v = 1; v <= num_vars; ++v) a[v] = val[v] != 0;
  return a;
}

}  // namespace

std::optional<Assignment> enum_sat(const std::vector<Clause>& clauses, Var num_vars) {
  assert(num_vars <= 20);
  std::vector<std::uint8_t> val(num_vars + 1, 0);
  for (std::size_t mask = 0; mask < std::size_t{1} << num_vars; ++mask) {
    for (Var v = 1; v <= num_vars; ++v) val[v] = (mask >> (v - 1)) & 1;
    bool ok = true;
    for (const Clause& c : clauses)
      if (!clause_true(c, val)) {
        ok = false;
        break;
      }
    if (ok) return to_assignment(val, num_vars);
  }
  return std::nullopt;
}

std::optional<std::size_t> enum_min_cost(const std::vector<Clause>& hard,
                                         const std::vector<Clause>& soft, Var num_vars) {
  assert(num_vars <= 20);
  std::optional<std::size_t> best;
  std::vector<std::uint8_t> val(num_vars + 1, 0);
  for (std::size_t mask = 0; mask < std::size_t{1} << num_vars; ++mask) {
    for (Var v = 1; v <= num_vars; ++v) val[v] = (mask >> (v - 1)) & 1;
    bool ok = true;
    for (const Clause& c : hard)
      if (!clause_true(c, val)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::size_t cost = 0;
    for (const Clause& c : soft)
      if (!clause_true(c, val)) ++cost;
    if (!best || cost < *best) best = cost;
  }
  return best;
}

bool equivalent(const ExprPtr& a, const ExprPtr& b, const std::vector<Var>& universe) {
  assert(universe.size() <= 20);
  Var top = 0;
  for (Var v : universe) top = std::max(top, v);
  std::vector<std::uint8_t> val(top + 1, 0);
  for (std::size_t mask = 0; mask < std::size_t{1} << universe.size(); ++mask) {
    for (std::size_t i = 0; i < universe.size(); ++i) val[universe[i]] = (mask >> i) & 1;
    if (eval(*a, val) != eval(*b, val)) return false;
  }
  return true;
}

ExprPtr random_expr(Rng& rng, const std::vector<Var>& vars, int depth) {
  auto leaf = [&]() -> ExprPtr {
    if (vars.empty() || rng() % 8 == 0) return BoolExpr::constant(rng() % 2 == 0);
    return BoolExpr::var_ref(vars[rng() % vars.size()]);
  };
  if (depth <= 0) return leaf();
  switch (rng() % 4) {
    case 0: return leaf();
    case 1: return BoolExpr::negate(random_expr(rng, vars, depth - 1));
    default: {
      bool wants_and = rng() % 2 == 0;
      std::vector<ExprPtr> cs;
      std::size_t n = 2 + rng() % 2;
      cs.reserve(n);
      for (std::size_t i = 0; i < n; ++i) cs.push_back(random_expr(rng, vars, depth - 1));
      return wants_and ? BoolExpr::conj(std::move(cs)) : BoolExpr::disj(std::move(cs));
    }
  }
}

std::vector<Clause> random_cnf(Rng& rng, Var num_vars, std::size_t clauses, std::size_t width) {
  std::vector<Clause> out;
  std::vector<Var> pool;
  for (Var v = 1; v <= num_vars; ++v) pool.push_back(v);
  for (std::size_t i = 0; i < clauses; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t w = 1 + rng() % width;
    w = std::min(w, pool.size());
    Clause c;
    for (std::size_t k = 0; k < w; ++k) c.push_back(Lit::make(pool[k], rng() % 2 == 0));
    normalize_clause(c);
    out.push_back(std::move(c));
  }
  return out;
}

DqbfInstance random_instance(Rng& rng, const InstanceParams& p) {
  DqbfInstance inst;
  Var nx = static_cast<Var>(rng() % (p.max_universals + 1));
  Var ny = static_cast<Var>(1 + rng() % p.max_existentials);
  for (Var v = 1; v <= nx; ++v) inst.universals.push_back(v);
  for (Var v = nx + 1; v <= nx + ny; ++v) inst.existentials.push_back(v);

  std::vector<Var> xs = inst.universals;
  for (Var y : inst.existentials) {
    std::shuffle(xs.begin(), xs.end(), rng);
    std::size_t k = xs.empty() ? 0 : rng() % (std::min(p.max_deps, xs.size()) + 1);
    std::vector<Var> h(xs.begin(), xs.begin() + k);
    std::sort(h.begin(), h.end());
    inst.deps[y] = std::move(h);
  }

  inst.matrix.num_vars = nx + ny;
  std::size_t m = 1 + rng() % p.max_clauses;
  std::vector<Var> pool;
  for (Var v = 1; v <= nx + ny; ++v) pool.push_back(v);
  for (std::size_t i = 0; i < m; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t w = 1 + rng() % p.max_clause_width;
    w = std::min(w, pool.size());
    Clause c;
    for (std::size_t k = 0; k < w; ++k) c.push_back(Lit::make(pool[k], rng() % 2 == 0));
    normalize_clause(c);
    inst.matrix.clauses.push_back(std::move(c));
  }
  inst.validate();
  return inst;
}

HenkinVector random_resolved_vector(Rng& rng, const DqbfInstance& inst, int depth) {
  HenkinVector v;
  v.resolved = true;
  for (Var y : inst.existentials) v.functions[y] = random_expr(rng, inst.deps_of(y), depth);
  return v;
}

DqbfInstance example_instance() {
  DqbfInstance inst;
  inst.universals = {1, 2, 3};
  inst.existentials = {4, 5, 6};
  inst.deps = {{4, {1}}, {5, {1, 2}}, {6, {2, 3}}};
  inst.matrix.num_vars = 6;
  auto add = [&](std::vector<int> lits) {
    Clause c;
    for (int l : lits) c.push_back(Lit(l));
    normalize_clause(c);
    inst.matrix.clauses.push_back(std::move(c));
  };
  add({1, 4});
  add({-5, 4, -2});
  add({-4, 5});
  add({2, 5});
  add({-6, 2, 3});
  add({-2, 6});
  add({-3, 6});
  inst.validate();
  return inst;
}

DqbfInstance limitation_instance() {
  DqbfInstance inst;
  inst.universals = {1, 2, 3};
  inst.existentials = {4, 5};
  inst.deps = {{4, {1, 2}}, {5, {2, 3}}};
  inst.matrix.num_vars = 5;
  inst.matrix.clauses = {{Lit(-4), Lit(5)}, {Lit(4), Lit(-5)}};
  for (Clause& c : inst.matrix.clauses) normalize_clause(c);
  inst.validate();
  return inst;
}

std::vector<std::vector<std::uint8_t>> example_sample_rows() {
  return {
      {0, 0, 0, 1, 1, 0},
      {0, 0, 1, 1, 1, 1},
      {1, 1, 0, 0, 0, 1},
  };
}

CmdResult run_cmd(const std::string& command) {
  CmdResult res;
  std::string wrapped = command + " 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
  int status = pclose(pipe);
  if (status < 0) throw std::runtime_error("pclose failed for: " + command);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace hksynth::testing
