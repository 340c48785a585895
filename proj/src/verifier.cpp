#include "hksynth/verifier.hpp"

namespace hksynth {

ErrorFormula build_error_formula(const DqbfInstance& inst, const HenkinVector& v,
                                 VarAllocator& fresh) {
  validate_vector(inst, v);
  ErrorFormula e;
  std::map<Var, Var> to_prime;
  for (Var y : inst.existentials) to_prime[y] = fresh.fresh();
  e.y_prime = to_prime;

  // selector per clause: p_j forces clause j (with Y renamed to Y') false;
  // some p_j must hold. A trivially false matrix needs no selector at all,
  // and a clause-free matrix yields the empty disjunction, making the
  // whole formula unsatisfiable.
  Clause some_failed;
  for (const Clause& c : inst.matrix.clauses) {
    Var p = fresh.fresh();
    Lit pl = Lit::make(p, false);
    some_failed.push_back(pl);
    for (Lit l : c) {
      auto it = to_prime.find(l.var());
      Lit lp = it == to_prime.end() ? l : Lit::make(it->second, l.negated());
      e.clauses.push_back({~pl, ~lp});
    }
  }
  if (!inst.matrix.trivially_false) e.clauses.push_back(std::move(some_failed));

  // Y' <-> candidate outputs, candidate Y-references redirected to Y'
  for (Var y : inst.existentials) {
    ExprPtr f = replace_vars(v.functions.at(y), to_prime);
    auto defs = to_cnf_defs(*f, to_prime.at(y), fresh);
    e.clauses.insert(e.clauses.end(), defs.begin(), defs.end());
  }
  e.num_vars = fresh.next() - 1;
  return e;
}

Verifier::Verifier(const DqbfInstance& inst, SolverStats* stats, Deadline deadline)
    : inst_(inst), stats_(stats), deadline_(deadline), extension_(stats, deadline) {
  extension_.ensure_vars(inst.matrix.num_vars);
  if (inst.matrix.trivially_false) extension_.add_clause({});
  extension_.add_clauses(inst.matrix.clauses);
}

VerifyResult Verifier::verify(const HenkinVector& v) {
  VerifyResult out;
  VarAllocator fresh(inst_.matrix.num_vars + 1);
  ErrorFormula e = build_error_formula(inst_, v, fresh);

  Oracle error_oracle(stats_, deadline_);
  error_oracle.ensure_vars(e.num_vars);
  error_oracle.add_clauses(e.clauses);

  SatResult er = error_oracle.check();
  if (er.status == SatStatus::kTimeout) {
    out.kind = VerifyKind::kUnknown;
    return out;
  }
  if (er.status == SatStatus::kUnsat) {
    out.kind = VerifyKind::kVerified;
    return out;
  }

  Assignment delta_x, delta_yp;
  for (Var x : inst_.universals) delta_x[x] = er.model.at(x);
  for (Var y : inst_.existentials) delta_yp[y] = er.model.at(e.y_prime.at(y));

  std::vector<Lit> x_assumptions;
  for (Var x : inst_.universals) x_assumptions.push_back(Lit::make(x, !delta_x[x]));
  SatResult ext = extension_.check(x_assumptions);
  if (ext.status == SatStatus::kTimeout) {
    out.kind = VerifyKind::kUnknown;
    return out;
  }
  if (ext.status == SatStatus::kUnsat) {
    out.kind = VerifyKind::kInstanceFalse;
    out.false_witness = delta_x;
    return out;
  }

  out.kind = VerifyKind::kCexFound;
  out.cex.x_part = delta_x;
  for (Var y : inst_.existentials) out.cex.y_part[y] = ext.model.at(y);
  out.cex.y_prime_part = delta_yp;

#ifndef NDEBUG
  {
    Assignment genuine = out.cex.x_part;
    genuine.insert(out.cex.y_part.begin(), out.cex.y_part.end());
    assert(eval_cnf(inst_.matrix, genuine));
    Assignment failing = out.cex.x_part;
    failing.insert(out.cex.y_prime_part.begin(), out.cex.y_prime_part.end());
    assert(!eval_cnf(inst_.matrix, failing));
    for (Var y : inst_.existentials)
      assert(out.cex.y_prime_part.at(y) == eval(*v.functions.at(y), failing));
  }
#endif
  return out;
}

}  // namespace hksynth
