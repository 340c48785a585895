#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hksynth/types.hpp"

namespace hksynth {

class BoolExpr;
using ExprPtr = std::shared_ptr<const BoolExpr>;

/// Immutable boolean expression tree with shared subterms.
/// And/Or are n-ary; the factory functions collapse empty and single-child
/// connectives (and() of nothing is true, or() of nothing is false) but do
/// no other rewriting, so built structure is preserved for printing.
class BoolExpr {
 public:
  enum class Kind { kTrue, kFalse, kVar, kNot, kAnd, kOr };

  Kind kind() const { return kind_; }
  Var var() const {
    assert(kind_ == Kind::kVar);
    return var_;
  }
  const std::vector<ExprPtr>& children() const { return children_; }
  const ExprPtr& child() const {
    assert(children_.size() == 1);
    return children_[0];
  }

  static ExprPtr constant(bool v);
  static ExprPtr var_ref(Var v);
  static ExprPtr negate(ExprPtr e);
  static ExprPtr conj(std::vector<ExprPtr> cs);
  static ExprPtr disj(std::vector<ExprPtr> cs);

  // Use the factories; public only for make_shared.
  BoolExpr(Kind k, Var v, std::vector<ExprPtr> cs)
      : kind_(k), var_(v), children_(std::move(cs)) {}

 private:
  Kind kind_;
  Var var_ = 0;
  std::vector<ExprPtr> children_;
};

bool eval(const BoolExpr& e, const Assignment& a);

/// Dense variant for enumeration loops: values[v] in {0,1}, indexed by id.
bool eval(const BoolExpr& e, const std::vector<std::uint8_t>& values);

std::set<Var> vars(const BoolExpr& e);

bool structurally_equal(const BoolExpr& a, const BoolExpr& b);

/// Constant folding only: and/or units and dominators, double negation,
/// single-child collapse. No idempotence or absorption.
ExprPtr fold_constants(const ExprPtr& e);

/// Rename variables (identity for ids absent from the map).
ExprPtr replace_vars(const ExprPtr& e, const std::map<Var, Var>& renaming);

/// Substitute whole expressions for variables (identity for absent ids).
ExprPtr replace_refs(const ExprPtr& e, const std::map<Var, ExprPtr>& defs);

/// S-expression form: true | false | <id> | (not s) | (and s+) | (or s+)
std::string to_sexpr(const BoolExpr& e);

/// Inverse of to_sexpr; throws std::runtime_error on malformed input.
ExprPtr parse_sexpr(const std::string& text);

/// Definitional clauses asserting output <-> e; auxiliary variables come
/// from the allocator. Constants at the top level become unit clauses.
std::vector<Clause> to_cnf_defs(const BoolExpr& e, Var output, VarAllocator& fresh);

}  // namespace hksynth
