#include "hksynth/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace hksynth {

bool normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
    return a.var() != b.var() ? a.var() < b.var() : a.code() < b.code();
  });
  Clause out;
  out.reserve(c.size());
  for (Lit l : c) {
    if (!out.empty() && out.back() == l) continue;
    if (!out.empty() && out.back().var() == l.var()) return false;  // v and ~v
    out.push_back(l);
  }
  c = std::move(out);
  return true;
}

bool eval_clause(const Clause& c, const Assignment& a) {
  for (Lit l : c) {
    bool v;
    try {
      v = a.at(l.var());
    } catch (const std::out_of_range&) {
      throw std::out_of_range("eval_clause: variable " + std::to_string(l.var()) +
                              " is unassigned");
    }
    if (v != l.negated()) return true;
  }
  return false;
}

bool eval_cnf(const CnfFormula& f, const Assignment& a) {
  if (f.trivially_false) return false;
  for (const Clause& c : f.clauses)
    if (!eval_clause(c, a)) return false;
  return true;
}

std::string to_string(Lit l) { return std::to_string(l.code()); }

std::string to_string(const Clause& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " ";
    s += to_string(c[i]);
  }
  return s + ")";
}

}  // namespace hksynth
