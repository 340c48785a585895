#include <sstream>

#include "doctest.h"
#include "hksynth/dqdimacs.hpp"
#include "hksynth/hfn_io.hpp"
#include "support.hpp"

using namespace hksynth;
namespace ht = hksynth::testing;

TEST_SUITE("formats") {

TEST_CASE("reads the bundled three-existential instance") {
  DqbfInstance inst = parse_dqdimacs_file(std::string(HKSYNTH_DATA_DIR) + "/example1.dqdimacs");
  CHECK(inst.universals == std::vector<Var>{1, 2, 3});
  CHECK(inst.existentials == std::vector<Var>{4, 5, 6});
  CHECK(inst.deps_of(4) == std::vector<Var>{1});
  CHECK(inst.deps_of(5) == std::vector<Var>{1, 2});
  CHECK(inst.deps_of(6) == std::vector<Var>{2, 3});
  CHECK(inst.matrix.num_vars == 6);
  REQUIRE(inst.matrix.clauses.size() == 7);
  CHECK(inst.matrix.clauses[0] == Clause{Lit(1), Lit(4)});
  CHECK(inst.matrix.clauses[1] == Clause{Lit(-2), Lit(4), Lit(-5)});
  CHECK_FALSE(inst.matrix.trivially_false);
  CHECK_NOTHROW(inst.validate());
}

TEST_CASE("e lines depend on every universal declared so far") {
  std::istringstream in(
      "p cnf 5 1\n"
      "a 1 0\n"
      "e 4 0\n"
      "a 2 3 0\n"
      "e 5 0\n"
      "4 5 0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  CHECK(inst.universals == std::vector<Var>{1, 2, 3});
  CHECK(inst.deps_of(4) == std::vector<Var>{1});
  CHECK(inst.deps_of(5) == std::vector<Var>{1, 2, 3});
}

TEST_CASE("d lines sort their dependency sets") {
  std::istringstream in(
      "p cnf 4 1\n"
      "a 1 2 3 0\n"
      "d 4 3 1 0\n"
      "4 0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  CHECK(inst.deps_of(4) == std::vector<Var>{1, 3});
}

TEST_CASE("clause normalization happens on input") {
  std::istringstream in(
      "p cnf 3 3\n"
      "a 1 0\n"
      "d 2 1 0\n"
      "d 3 1 0\n"
      "2 1 2 0\n"
      "1 -1 3 0\n"
      "0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  REQUIRE(inst.matrix.clauses.size() == 1);  // tautology dropped, empty recorded
  CHECK(inst.matrix.clauses[0] == Clause{Lit(1), Lit(2)});
  CHECK(inst.matrix.trivially_false);
}

TEST_CASE("parse errors carry the offending line number") {
  auto expect_error = [](const std::string& text, std::size_t line) {
    std::istringstream in(text);
    try {
      parse_dqdimacs(in);
      FAIL_CHECK("no error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  };
  expect_error("p cnf 2 1\na 1 0\nd 2 1 0\n2 3 0\n", 4);      // out-of-range var
  expect_error("a 1 0\n", 1);                                  // quantifier before header
  expect_error("p cnf 2 1\np cnf 2 1\n", 2);                   // duplicate header
  expect_error("p cnf 2 1\na 1 0\nd 1 1 0\n", 3);              // requantified var
  expect_error("p cnf 2 1\na 1 0\nd 2 1\n", 3);                // missing terminator
  expect_error("p cnf 2 1\na 1 0\nd 2 2 0\n1 0\n", 3);         // dep on an existential
  expect_error("p cnf 2 1\na 1 0\nd 2 1 0\nbogus 0\n", 4);     // junk token
}

TEST_CASE("the declared clause count is advisory") {
  std::istringstream in("p cnf 2 9\na 1 0\nd 2 1 0\n1 2 0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  CHECK(inst.matrix.clauses.size() == 1);
}

TEST_CASE("writer output reparses to the same instance") {
  ht::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    DqbfInstance inst = ht::random_instance(rng);
    std::ostringstream out;
    write_dqdimacs(inst, out);
    std::istringstream back(out.str());
    DqbfInstance again = parse_dqdimacs(back);
    CHECK(again.universals == inst.universals);
    CHECK(again.existentials == inst.existentials);
    CHECK(again.deps == inst.deps);
    CHECK(again.matrix.clauses == inst.matrix.clauses);
    CHECK(again.matrix.trivially_false == inst.matrix.trivially_false);
  }
}

TEST_CASE("function vector round trip is byte-stable") {
  DqbfInstance inst = ht::example_instance();
  HenkinVector v;
  v.resolved = true;
  v.functions[4] = parse_sexpr("(not 1)");
  v.functions[5] = parse_sexpr("(or (not 1) (not 2))");
  v.functions[6] = parse_sexpr("(or 3 (and (not 3) 2))");

  std::string doc = henkin_vector_to_string(inst, v);
  std::istringstream in(doc);
  HfnDocument parsed = read_henkin_vector(in);
  CHECK(parsed.num_vars == 6);
  REQUIRE(parsed.defs.size() == 3);
  CHECK(parsed.defs[0].first == 4);
  CHECK(structurally_equal(*parsed.defs[1].second, *v.functions[5]));

  HenkinVector v2;
  v2.resolved = true;
  for (auto& [y, e] : parsed.defs) v2.functions[y] = e;
  CHECK(henkin_vector_to_string(inst, v2) == doc);
}

TEST_CASE("function vector reader rejects malformed documents") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_henkin_vector(in), std::runtime_error);
  };
  bad("");
  bad("hfn 2 6 1\ndef 4 true\n");             // unknown version
  bad("hfn 1 6 2\ndef 4 true\n");             // fewer defs than promised
  bad("hfn 1 6 1\ndef 4 (and 1\n");           // broken expression
  bad("hfn 1 6 1\ndef 4 true\ndef 4 true\n"); // duplicate definition
  bad("hfn 1 6 1\nxyz 4 true\n");             // unknown directive
}

}  // TEST_SUITE
