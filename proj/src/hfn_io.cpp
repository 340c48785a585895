#include "hksynth/hfn_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hksynth/dqdimacs.hpp"

namespace hksynth {

void write_henkin_vector(const DqbfInstance& inst, const HenkinVector& v, std::ostream& out) {
  if (!v.resolved)
    throw std::invalid_argument("write_henkin_vector: vector is not resolved");
  std::vector<Var> ys = inst.existentials;
  std::sort(ys.begin(), ys.end());
  out << "hfn 1 " << inst.matrix.num_vars << " " << ys.size() << "\n";
  for (Var y : ys) {
    auto it = v.functions.find(y);
    if (it == v.functions.end())
      throw std::invalid_argument("write_henkin_vector: no function for existential " +
                                  std::to_string(y));
    out << "def " << y << " " << to_sexpr(*it->second) << "\n";
  }
}

std::string henkin_vector_to_string(const DqbfInstance& inst, const HenkinVector& v) {
  std::ostringstream os;
  write_henkin_vector(inst, v, os);
  return os.str();
}

HfnDocument read_henkin_vector(std::istream& in) {
  HfnDocument doc;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  long long declared_defs = -1;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ss(raw);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "c") continue;
    if (!header_seen) {
      long long version = -1, nv = -1, nd = -1;
      if (head != "hfn" || !(ss >> version >> nv >> nd) || nv < 0 || nd < 0)
        throw ParseError(line, "expected header 'hfn 1 <vars> <existentials>'");
      if (version != 1)
        throw ParseError(line, "unsupported hfn version " + std::to_string(version));
      doc.num_vars = static_cast<Var>(nv);
      declared_defs = nd;
      header_seen = true;
      continue;
    }
    if (head != "def") throw ParseError(line, "expected a def line, got '" + head + "'");
    long long y = -1;
    if (!(ss >> y) || y < 1) throw ParseError(line, "def needs a positive variable id");
    std::string rest;
    std::getline(ss, rest);
    try {
      doc.defs.emplace_back(static_cast<Var>(y), parse_sexpr(rest));
    } catch (const std::runtime_error& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!header_seen) throw ParseError(line ? line : 1, "missing hfn header");
  if (declared_defs >= 0 && static_cast<std::size_t>(declared_defs) != doc.defs.size())
    throw ParseError(line, "header declared " + std::to_string(declared_defs) +
                               " definitions, found " + std::to_string(doc.defs.size()));
  return doc;
}

HfnDocument read_henkin_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_henkin_vector(in);
}

}  // namespace hksynth
