#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

namespace hksynth {

/// Variables are positive integers, matching DIMACS numbering.
using Var = std::uint32_t;

/// A literal is a signed DIMACS integer; 0 is reserved and invalid.
class Lit {
 public:
  Lit() = default;
  explicit Lit(int code) : code_(code) { assert(code != 0); }

  static Lit make(Var v, bool negated) {
    return Lit(negated ? -static_cast<int>(v) : static_cast<int>(v));
  }

  Var var() const { return static_cast<Var>(code_ < 0 ? -code_ : code_); }
  bool negated() const { return code_ < 0; }
  int code() const { return code_; }

  Lit operator~() const { return Lit(-code_); }

  bool operator==(const Lit&) const = default;
  auto operator<=>(const Lit&) const = default;

 private:
  int code_ = 0;
};

using Clause = std::vector<Lit>;

/// Sorts by variable id, merges duplicate literals.
/// Returns false if the clause is tautological (contains v and ~v);
/// such clauses are meant to be dropped by the caller.
bool normalize_clause(Clause& c);

/// Plain CNF: clauses over variables 1..num_vars.
/// trivially_false records that an empty clause was seen during construction.
struct CnfFormula {
  Var num_vars = 0;
  std::vector<Clause> clauses;
  bool trivially_false = false;
};

/// Total or partial truth assignment.
using Assignment = std::map<Var, bool>;

/// Evaluate under a (possibly partial) assignment; every clause variable
/// must be assigned or std::out_of_range is thrown.
bool eval_clause(const Clause& c, const Assignment& a);
bool eval_cnf(const CnfFormula& f, const Assignment& a);

/// Hands out fresh variable ids above everything allocated so far.
class VarAllocator {
 public:
  explicit VarAllocator(Var first_free) : next_(first_free) { assert(first_free >= 1); }
  Var fresh() { return next_++; }
  Var next() const { return next_; }

 private:
  Var next_;
};

std::string to_string(Lit l);
std::string to_string(const Clause& c);

}  // namespace hksynth
