#include "hksynth/dqdimacs.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hksynth {

namespace {

struct ParserState {
  DqbfInstance inst;
  std::set<Var> quantified;
  bool header_seen = false;

  void quantify(Var v, std::size_t line) {
    if (v > inst.matrix.num_vars)
      throw ParseError(line, "variable " + std::to_string(v) + " above the declared maximum");
    if (!quantified.insert(v).second)
      throw ParseError(line, "variable " + std::to_string(v) + " quantified twice");
  }
};

std::vector<long long> parse_zero_terminated(std::istringstream& ss, std::size_t line) {
  std::vector<long long> nums;
  long long n;
  bool terminated = false;
  while (ss >> n) {
    if (n == 0) {
      terminated = true;
      break;
    }
    nums.push_back(n);
  }
  if (!terminated) {
    if (ss.fail() && !ss.eof()) throw ParseError(line, "expected an integer");
    throw ParseError(line, "missing terminating 0");
  }
  std::string rest;
  if (ss >> rest) throw ParseError(line, "trailing tokens after terminating 0");
  return nums;
}

}  // namespace

DqbfInstance parse_dqdimacs(std::istream& in) {
  ParserState st;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ss(raw);
    std::string head;
    if (!(ss >> head)) continue;  // blank line
    if (head == "c") continue;

    if (head == "p") {
      if (st.header_seen) throw ParseError(line, "duplicate problem line");
      std::string fmt;
      long long nv = -1, nc = -1;
      if (!(ss >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        throw ParseError(line, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      std::string rest;
      if (ss >> rest) throw ParseError(line, "trailing tokens on problem line");
      st.inst.matrix.num_vars = static_cast<Var>(nv);
      (void)nc;  // the declared clause count is advisory
      st.header_seen = true;
      continue;
    }
    if (!st.header_seen) throw ParseError(line, "expected the problem line before '" + head + "'");

    if (head == "a" || head == "e") {
      auto nums = parse_zero_terminated(ss, line);
      for (long long n : nums) {
        if (n < 0) throw ParseError(line, "negative variable in quantifier line");
        Var v = static_cast<Var>(n);
        st.quantify(v, line);
        if (head == "a") {
          st.inst.universals.push_back(v);
        } else {
          st.inst.existentials.push_back(v);
          st.inst.deps[v] = st.inst.universals;  // everything universal so far
          std::sort(st.inst.deps[v].begin(), st.inst.deps[v].end());
        }
      }
      continue;
    }

    if (head == "d") {
      auto nums = parse_zero_terminated(ss, line);
      if (nums.empty()) throw ParseError(line, "d-line without a variable");
      for (long long n : nums)
        if (n < 0) throw ParseError(line, "negative variable in d-line");
      Var y = static_cast<Var>(nums[0]);
      st.quantify(y, line);
      std::vector<Var> h;
      for (std::size_t i = 1; i < nums.size(); ++i) {
        Var x = static_cast<Var>(nums[i]);
        if (std::find(st.inst.universals.begin(), st.inst.universals.end(), x) ==
            st.inst.universals.end())
          throw ParseError(line, "dependency on " + std::to_string(x) +
                                     ", which is not a declared universal");
        h.push_back(x);
      }
      std::sort(h.begin(), h.end());
      h.erase(std::unique(h.begin(), h.end()), h.end());
      st.inst.existentials.push_back(y);
      st.inst.deps[y] = std::move(h);
      continue;
    }

    // clause line; the head token is its first literal
    std::istringstream full(raw);
    auto nums = parse_zero_terminated(full, line);
    Clause c;
    for (long long n : nums) {
      if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
        throw ParseError(line, "literal out of range");
      Lit l(static_cast<int>(n));
      if (l.var() > st.inst.matrix.num_vars)
        throw ParseError(line, "literal over variable " + std::to_string(l.var()) +
                                   " above the declared maximum");
      if (!st.quantified.count(l.var()))
        throw ParseError(line, "matrix variable " + std::to_string(l.var()) +
                                   " is not quantified");
      c.push_back(l);
    }
    if (c.empty()) {
      st.inst.matrix.trivially_false = true;
      continue;
    }
    if (normalize_clause(c)) st.inst.matrix.clauses.push_back(std::move(c));
  }
  if (!st.header_seen) throw ParseError(line ? line : 1, "missing problem line");
  st.inst.validate();
  return st.inst;
}

DqbfInstance parse_dqdimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_dqdimacs(in);
}

void write_dqdimacs(const DqbfInstance& inst, std::ostream& out) {
  out << "p cnf " << inst.matrix.num_vars << " "
      << (inst.matrix.clauses.size() + (inst.matrix.trivially_false ? 1 : 0)) << "\n";
  if (!inst.universals.empty()) {
    out << "a";
    for (Var x : inst.universals) out << " " << x;
    out << " 0\n";
  }
  for (Var y : inst.existentials) {
    out << "d " << y;
    for (Var x : inst.deps_of(y)) out << " " << x;
    out << " 0\n";
  }
  for (const Clause& c : inst.matrix.clauses) {
    for (Lit l : c) out << l.code() << " ";
    out << "0\n";
  }
  if (inst.matrix.trivially_false) out << "0\n";
}

}  // namespace hksynth
