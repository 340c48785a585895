#include "hksynth/dqbf.hpp"

#include <algorithm>
#include <stdexcept>

namespace hksynth {

bool DqbfInstance::is_universal(Var v) const {
  return std::find(universals.begin(), universals.end(), v) != universals.end();
}

bool DqbfInstance::is_existential(Var v) const { return deps.count(v) != 0; }

const std::vector<Var>& DqbfInstance::deps_of(Var y) const {
  auto it = deps.find(y);
  if (it == deps.end())
    throw std::invalid_argument("variable " + std::to_string(y) + " is not existential");
  return it->second;
}

bool subset_of(const std::vector<Var>& a, const std::vector<Var>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void DqbfInstance::validate() const {
  std::set<Var> seen;
  for (Var x : universals) {
    if (x < 1 || x > matrix.num_vars)
      throw std::invalid_argument("universal id " + std::to_string(x) + " out of range");
    if (!seen.insert(x).second)
      throw std::invalid_argument("variable " + std::to_string(x) + " quantified twice");
  }
  for (Var y : existentials) {
    if (y < 1 || y > matrix.num_vars)
      throw std::invalid_argument("existential id " + std::to_string(y) + " out of range");
    if (!seen.insert(y).second)
      throw std::invalid_argument("variable " + std::to_string(y) + " quantified twice");
    auto it = deps.find(y);
    if (it == deps.end())
      throw std::invalid_argument("existential " + std::to_string(y) + " has no dependency set");
    if (!std::is_sorted(it->second.begin(), it->second.end()))
      throw std::invalid_argument("dependency set of " + std::to_string(y) + " is not sorted");
    for (Var x : it->second)
      if (!is_universal(x))
        throw std::invalid_argument("dependency of " + std::to_string(y) + " on non-universal " +
                                    std::to_string(x));
  }
  if (deps.size() != existentials.size())
    throw std::invalid_argument("dependency map does not match the existential block");
  for (const Clause& c : matrix.clauses)
    for (Lit l : c) {
      if (l.var() > matrix.num_vars)
        throw std::invalid_argument("matrix variable " + std::to_string(l.var()) +
                                    " above declared maximum");
      if (!seen.count(l.var()))
        throw std::invalid_argument("matrix variable " + std::to_string(l.var()) +
                                    " is not quantified");
    }
}

std::map<Var, std::set<Var>> mention_graph(const DqbfInstance& inst, const HenkinVector& v) {
  std::map<Var, std::set<Var>> g;
  for (Var y : inst.existentials) {
    std::set<Var> used;
    auto it = v.functions.find(y);
    if (it != v.functions.end())
      for (Var w : vars(*it->second))
        if (inst.is_existential(w)) used.insert(w);
    g[y] = std::move(used);
  }
  return g;
}

bool mentions_acyclic(const DqbfInstance& inst, const HenkinVector& v) {
  auto g = mention_graph(inst, v);
  std::map<Var, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<std::pair<Var, std::set<Var>::const_iterator>> stack;
  for (Var root : inst.existentials) {
    if (state[root]) continue;
    state[root] = 1;
    stack.push_back({root, g[root].begin()});
    while (!stack.empty()) {
      auto& [y, it] = stack.back();
      if (it == g[y].end()) {
        state[y] = 2;
        stack.pop_back();
        continue;
      }
      Var next = *it++;
      if (state[next] == 1) return false;
      if (state[next] == 0) {
        state[next] = 1;
        stack.push_back({next, g[next].begin()});
      }
    }
  }
  return true;
}

void validate_vector(const DqbfInstance& inst, const HenkinVector& v) {
  for (Var y : inst.existentials) {
    auto it = v.functions.find(y);
    if (it == v.functions.end())
      throw std::invalid_argument("no function for existential " + std::to_string(y));
    for (Var w : vars(*it->second)) {
      bool in_deps =
          std::binary_search(inst.deps_of(y).begin(), inst.deps_of(y).end(), w);
      if (in_deps) continue;
      if (v.resolved)
        throw std::invalid_argument("resolved function for " + std::to_string(y) +
                                    " mentions " + std::to_string(w) +
                                    " outside its dependency set");
      if (w == y || !inst.is_existential(w))
        throw std::invalid_argument("function for " + std::to_string(y) +
                                    " mentions out-of-scope variable " + std::to_string(w));
    }
  }
  if (!v.resolved && !mentions_acyclic(inst, v))
    throw std::invalid_argument("candidate functions mention each other cyclically");
}

}  // namespace hksynth
