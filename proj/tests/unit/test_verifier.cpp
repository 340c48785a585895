#include <sstream>

#include "doctest.h"
#include "hksynth/dqdimacs.hpp"
#include "hksynth/verifier.hpp"
#include "support.hpp"

using namespace hksynth;
namespace ht = hksynth::testing;

namespace {

HenkinVector pre_repair_vector() {
  // what the learner produces from the reference rows
  HenkinVector v;
  v.functions[4] = parse_sexpr("(not 1)");
  v.functions[5] = parse_sexpr("4");
  v.functions[6] = parse_sexpr("(or (and (not 3) 2) 3)");
  return v;
}

HenkinVector final_vector() {
  HenkinVector v;
  v.resolved = true;
  v.functions[4] = parse_sexpr("(not 1)");
  v.functions[5] = parse_sexpr("(or (not 1) (not 2))");
  v.functions[6] = parse_sexpr("(or (and (not 3) 2) 3)");
  return v;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("accepts the repaired reference vector") {
  DqbfInstance inst = ht::example_instance();
  Verifier ver(inst);
  VerifyResult r = ver.verify(final_vector());
  CHECK(r.kind == VerifyKind::kVerified);
}

TEST_CASE("finds the reference counterexample for the unrepaired vector") {
  DqbfInstance inst = ht::example_instance();
  Verifier ver(inst);
  VerifyResult r = ver.verify(pre_repair_vector());
  REQUIRE(r.kind == VerifyKind::kCexFound);

  const Counterexample& cex = r.cex;
  // only x = (1,0,*) fails this vector
  CHECK(cex.x_part.at(1) == true);
  CHECK(cex.x_part.at(2) == false);

  // Y' agrees with evaluating the candidates bottom-up
  Assignment env = cex.x_part;
  env[4] = eval(*pre_repair_vector().functions[4], env);
  env[5] = eval(*pre_repair_vector().functions[5], env);
  env[6] = eval(*pre_repair_vector().functions[6], env);
  for (Var y : {4, 5, 6}) CHECK(cex.y_prime_part.at(y) == env[y]);

  // X + Y' falsifies the matrix, X + Y satisfies it
  Assignment bad = cex.x_part;
  for (auto [v, b] : cex.y_prime_part) bad[v] = b;
  CHECK_FALSE(eval_cnf(inst.matrix, bad));
  Assignment good = cex.x_part;
  for (auto [v, b] : cex.y_part) good[v] = b;
  CHECK(eval_cnf(inst.matrix, good));
}

TEST_CASE("counterexample invariants hold on random instances") {
  ht::Rng rng(501);
  int cex_seen = 0, verified_seen = 0;
  for (int i = 0; i < 400 && (cex_seen < 40 || verified_seen < 40); ++i) {
    DqbfInstance inst = ht::random_instance(rng);
    if (inst.matrix.trivially_false) continue;
    HenkinVector v = ht::random_resolved_vector(rng, inst);
    Verifier ver(inst);
    VerifyResult r = ver.verify(v);
    if (r.kind == VerifyKind::kCexFound) {
      ++cex_seen;
      Assignment all = r.cex.x_part;
      for (auto [y, b] : r.cex.y_part) all[y] = b;
      CHECK(eval_cnf(inst.matrix, all));
      Assignment primed = r.cex.x_part;
      for (auto [y, b] : r.cex.y_prime_part) primed[y] = b;
      CHECK_FALSE(eval_cnf(inst.matrix, primed));
      for (Var y : inst.existentials) {
        Assignment scope = r.cex.x_part;
        CHECK(r.cex.y_prime_part.at(y) == eval(*v.functions.at(y), scope));
      }
    } else if (r.kind == VerifyKind::kVerified) {
      ++verified_seen;
      // spot-check: no universal point both extends and fails
      std::size_t nx = inst.universals.size();
      for (std::size_t mask = 0; mask < (std::size_t(1) << nx); ++mask) {
        Assignment a;
        for (std::size_t j = 0; j < nx; ++j) a[inst.universals[j]] = (mask >> j) & 1;
        for (Var y : inst.existentials) a[y] = eval(*v.functions.at(y), a);
        bool outputs_ok = eval_cnf(inst.matrix, a);
        if (!outputs_ok) {
          // then no Y-extension may exist either
          std::vector<Clause> pinned = inst.matrix.clauses;
          for (Var x : inst.universals) pinned.push_back({Lit::make(x, !a.at(x))});
          CHECK_FALSE(ht::enum_sat(pinned, inst.matrix.num_vars).has_value());
        }
      }
    }
  }
  CHECK(cex_seen >= 10);
  CHECK(verified_seen >= 10);
}

TEST_CASE("a universal point with no extension yields a false witness") {
  // matrix forces y = x1 and y = not x1 in turn; x1=1 kills both
  std::istringstream in("p cnf 2 2\na 1 0\nd 2 1 0\n-1 -2 0\n-1 2 0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  HenkinVector v;
  v.resolved = true;
  v.functions[2] = BoolExpr::constant(false);
  Verifier ver(inst);
  VerifyResult r = ver.verify(v);
  REQUIRE(r.kind == VerifyKind::kInstanceFalse);
  CHECK(r.false_witness.at(1) == true);
  std::vector<Clause> pinned = inst.matrix.clauses;
  pinned.push_back({Lit(1)});
  CHECK_FALSE(ht::enum_sat(pinned, 2).has_value());
}

TEST_CASE("a trivially false matrix verifies no vector") {
  std::istringstream in("p cnf 2 1\na 1 0\nd 2 1 0\n0\n");
  DqbfInstance inst = parse_dqdimacs(in);
  HenkinVector v;
  v.resolved = true;
  v.functions[2] = BoolExpr::constant(true);
  Verifier ver(inst);
  VerifyResult r = ver.verify(v);
  CHECK(r.kind == VerifyKind::kInstanceFalse);
}

TEST_CASE("a clause-free matrix verifies anything") {
  DqbfInstance inst;
  inst.universals = {1};
  inst.existentials = {2};
  inst.deps[2] = {1};
  inst.matrix.num_vars = 2;
  HenkinVector v;
  v.resolved = true;
  v.functions[2] = parse_sexpr("1");
  Verifier ver(inst);
  CHECK(ver.verify(v).kind == VerifyKind::kVerified);
}

TEST_CASE("error formula models are exactly the failing points") {
  ht::Rng rng(502);
  for (int i = 0; i < 60; ++i) {
    DqbfInstance inst = ht::random_instance(rng);
    if (inst.matrix.trivially_false) continue;
    HenkinVector v = ht::random_resolved_vector(rng, inst);
    VarAllocator fresh(inst.matrix.num_vars + 1);
    ErrorFormula ef = build_error_formula(inst, v, fresh);

    std::size_t nx = inst.universals.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << nx); ++mask) {
      Assignment a;
      for (std::size_t j = 0; j < nx; ++j) a[inst.universals[j]] = (mask >> j) & 1;
      for (Var y : inst.existentials) a[y] = eval(*v.functions.at(y), a);
      bool fails = !eval_cnf(inst.matrix, a);

      // too many auxiliaries to enumerate; the solver is checked elsewhere
      SatQuery q;
      q.num_vars = ef.num_vars;
      q.clauses = ef.clauses;
      for (Var x : inst.universals) q.clauses.push_back({Lit::make(x, !a.at(x))});
      CHECK((check_sat(q).status == SatStatus::kSat) == fails);
    }
  }
}

TEST_CASE("verification is deterministic") {
  DqbfInstance inst = ht::example_instance();
  auto run = [&] {
    Verifier ver(inst);
    VerifyResult r = ver.verify(pre_repair_vector());
    REQUIRE(r.kind == VerifyKind::kCexFound);
    return std::make_pair(r.cex.x_part, r.cex.y_prime_part);
  };
  CHECK(run() == run());
}

}  // TEST_SUITE
