#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hksynth/dqbf.hpp"

namespace hksynth {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// DQDIMACS reader.
///
///   c <comment>
///   p cnf <vars> <clauses>
///   a <x...> 0                universal block
///   e <y...> 0                existentials depending on all universals so far
///   d <y> <x...> 0            existential with an explicit dependency set
///   <lit...> 0                clause
///
/// Clauses are normalized on the way in: duplicate literals merged,
/// tautologies dropped, an empty clause recorded as trivially_false.
/// Variables declared in the header but never quantified may not occur in
/// the matrix.
DqbfInstance parse_dqdimacs(std::istream& in);
DqbfInstance parse_dqdimacs_file(const std::string& path);

/// Canonical form: one a-line, one d-line per existential, then the matrix.
/// Re-parsing yields a structurally identical instance.
void write_dqdimacs(const DqbfInstance& inst, std::ostream& out);

}  // namespace hksynth
