#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hksynth/dqbf.hpp"

namespace hksynth {

/// Function-vector exchange format, version 1:
///
///   hfn 1 <num-vars> <num-existentials>
///   def <y-id> <sexpr>        one line per existential, ascending id
///
/// where sexpr is the boolexpr s-expression grammar. Deterministic output:
/// identical vectors print byte-identically.
void write_henkin_vector(const DqbfInstance& inst, const HenkinVector& v, std::ostream& out);

/// Convenience: vector as a string document.
std::string henkin_vector_to_string(const DqbfInstance& inst, const HenkinVector& v);

struct HfnDocument {
  Var num_vars = 0;
  std::vector<std::pair<Var, ExprPtr>> defs;  // in file order
};

/// Throws ParseError (via std::runtime_error) with a line number on
/// malformed input.
HfnDocument read_henkin_vector(std::istream& in);
HfnDocument read_henkin_vector_file(const std::string& path);

}  // namespace hksynth
