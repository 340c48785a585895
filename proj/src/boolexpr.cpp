#include "hksynth/boolexpr.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hksynth {

using Kind = BoolExpr::Kind;

ExprPtr BoolExpr::constant(bool v) {
  static const ExprPtr kTrueExpr = std::make_shared<BoolExpr>(Kind::kTrue, 0, std::vector<ExprPtr>{});
  static const ExprPtr kFalseExpr = std::make_shared<BoolExpr>(Kind::kFalse, 0, std::vector<ExprPtr>{});
  return v ? kTrueExpr : kFalseExpr;
}

ExprPtr BoolExpr::var_ref(Var v) {
  assert(v >= 1);
  return std::make_shared<BoolExpr>(Kind::kVar, v, std::vector<ExprPtr>{});
}

ExprPtr BoolExpr::negate(ExprPtr e) {
  switch (e->kind()) {
    case Kind::kTrue: return constant(false);
    case Kind::kFalse: return constant(true);
    case Kind::kNot: return e->child();
    default: return std::make_shared<BoolExpr>(Kind::kNot, 0, std::vector<ExprPtr>{std::move(e)});
  }
}

ExprPtr BoolExpr::conj(std::vector<ExprPtr> cs) {
  if (cs.empty()) return constant(true);
  if (cs.size() == 1) return cs[0];
  return std::make_shared<BoolExpr>(Kind::kAnd, 0, std::move(cs));
}

ExprPtr BoolExpr::disj(std::vector<ExprPtr> cs) {
  if (cs.empty()) return constant(false);
  if (cs.size() == 1) return cs[0];
  return std::make_shared<BoolExpr>(Kind::kOr, 0, std::move(cs));
}

bool eval(const BoolExpr& e, const Assignment& a) {
  switch (e.kind()) {
    case Kind::kTrue: return true;
    case Kind::kFalse: return false;
    case Kind::kVar: {
      auto it = a.find(e.var());
      if (it == a.end())
        throw std::out_of_range("eval: variable " + std::to_string(e.var()) + " is unassigned");
      return it->second;
    }
    case Kind::kNot: return !eval(*e.child(), a);
    case Kind::kAnd:
      for (const auto& c : e.children())
        if (!eval(*c, a)) return false;
      return true;
    case Kind::kOr:
      for (const auto& c : e.children())
        if (eval(*c, a)) return true;
      return false;
  }
  std::abort();
}

bool eval(const BoolExpr& e, const std::vector<std::uint8_t>& values) {
  switch (e.kind()) {
    case Kind::kTrue: return true;
    case Kind::kFalse: return false;
    case Kind::kVar:
      assert(e.var() < values.size());
      return values[e.var()] != 0;
    case Kind::kNot: return !eval(*e.child(), values);
    case Kind::kAnd:
      for (const auto& c : e.children())
        if (!eval(*c, values)) return false;
      return true;
    case Kind::kOr:
      for (const auto& c : e.children())
        if (eval(*c, values)) return true;
      return false;
  }
  std::abort();
}

static void collect_vars(const BoolExpr& e, std::set<Var>& out) {
  if (e.kind() == Kind::kVar) {
    out.insert(e.var());
    return;
  }
  for (const auto& c : e.children()) collect_vars(*c, out);
}

std::set<Var> vars(const BoolExpr& e) {
  std::set<Var> out;
  collect_vars(e, out);
  return out;
}

bool structurally_equal(const BoolExpr& a, const BoolExpr& b) {
  if (&a == &b) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Kind::kVar) return a.var() == b.var();
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!structurally_equal(*a.children()[i], *b.children()[i])) return false;
  return true;
}

ExprPtr fold_constants(const ExprPtr& e) {
  switch (e->kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
    case Kind::kVar:
      return e;
    case Kind::kNot:
      return BoolExpr::negate(fold_constants(e->child()));
    case Kind::kAnd: {
      std::vector<ExprPtr> kept;
      for (const auto& c : e->children()) {
        ExprPtr f = fold_constants(c);
        if (f->kind() == Kind::kFalse) return BoolExpr::constant(false);
        if (f->kind() == Kind::kTrue) continue;
        kept.push_back(std::move(f));
      }
      return BoolExpr::conj(std::move(kept));
    }
    case Kind::kOr: {
      std::vector<ExprPtr> kept;
      for (const auto& c : e->children()) {
        ExprPtr f = fold_constants(c);
        if (f->kind() == Kind::kTrue) return BoolExpr::constant(true);
        if (f->kind() == Kind::kFalse) continue;
        kept.push_back(std::move(f));
      }
      return BoolExpr::disj(std::move(kept));
    }
  }
  std::abort();
}

ExprPtr replace_vars(const ExprPtr& e, const std::map<Var, Var>& renaming) {
  switch (e->kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
      return e;
    case Kind::kVar: {
      auto it = renaming.find(e->var());
      return it == renaming.end() ? e : BoolExpr::var_ref(it->second);
    }
    case Kind::kNot:
      return BoolExpr::negate(replace_vars(e->child(), renaming));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<ExprPtr> cs;
      cs.reserve(e->children().size());
      for (const auto& c : e->children()) cs.push_back(replace_vars(c, renaming));
      return e->kind() == Kind::kAnd ? BoolExpr::conj(std::move(cs))
                                     : BoolExpr::disj(std::move(cs));
    }
  }
  std::abort();
}

ExprPtr replace_refs(const ExprPtr& e, const std::map<Var, ExprPtr>& defs) {
  switch (e->kind()) {
    case Kind::kTrue:
    case Kind::kFalse:
      return e;
    case Kind::kVar: {
      auto it = defs.find(e->var());
      return it == defs.end() ? e : it->second;
    }
    case Kind::kNot:
      return BoolExpr::negate(replace_refs(e->child(), defs));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<ExprPtr> cs;
      cs.reserve(e->children().size());
      for (const auto& c : e->children()) cs.push_back(replace_refs(c, defs));
      return e->kind() == Kind::kAnd ? BoolExpr::conj(std::move(cs))
                                     : BoolExpr::disj(std::move(cs));
    }
  }
  std::abort();
}

static void print_sexpr(const BoolExpr& e, std::ostream& os) {
  switch (e.kind()) {
    case Kind::kTrue: os << "true"; return;
    case Kind::kFalse: os << "false"; return;
    case Kind::kVar: os << e.var(); return;
    case Kind::kNot:
      os << "(not ";
      print_sexpr(*e.child(), os);
      os << ")";
      return;
    case Kind::kAnd:
    case Kind::kOr:
      os << (e.kind() == Kind::kAnd ? "(and" : "(or");
      for (const auto& c : e.children()) {
        os << " ";
        print_sexpr(*c, os);
      }
      os << ")";
      return;
  }
  std::abort();
}

std::string to_sexpr(const BoolExpr& e) {
  std::ostringstream os;
  print_sexpr(e, os);
  return os.str();
}

namespace {

struct SexprParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("sexpr parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (start == pos) fail("expected a token");
    return text.substr(start, pos - start);
  }

  ExprPtr parse() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      std::string op = token();
      std::vector<ExprPtr> args;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) fail("missing ')'");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        args.push_back(parse());
      }
      if (op == "not") {
        if (args.size() != 1) fail("not takes exactly one argument");
        return BoolExpr::negate(args[0]);
      }
      if (op == "and") {
        if (args.empty()) fail("and needs at least one argument");
        return BoolExpr::conj(std::move(args));
      }
      if (op == "or") {
        if (args.empty()) fail("or needs at least one argument");
        return BoolExpr::disj(std::move(args));
      }
      fail("unknown operator '" + op + "'");
    }
    std::string t = token();
    if (t == "true") return BoolExpr::constant(true);
    if (t == "false") return BoolExpr::constant(false);
    for (char ch : t)
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail("expected a variable id, got '" + t + "'");
    unsigned long v = std::stoul(t);
    if (v == 0) fail("variable ids start at 1");
    return BoolExpr::var_ref(static_cast<Var>(v));
  }
};

}  // namespace

ExprPtr parse_sexpr(const std::string& text) {
  SexprParser p{text};
  ExprPtr e = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

namespace {

// Returns a literal equivalent to the subexpression, emitting definitional
// clauses for gates into out.
Lit encode_lit(const BoolExpr& e, VarAllocator& fresh, std::vector<Clause>& out, Lit* const_true) {
  switch (e.kind()) {
    case Kind::kTrue:
    case Kind::kFalse: {
      if (const_true->code() == 0) {
        Var t = fresh.fresh();
        *const_true = Lit::make(t, false);
        out.push_back({*const_true});
      }
      return e.kind() == Kind::kTrue ? *const_true : ~*const_true;
    }
    case Kind::kVar:
      return Lit::make(e.var(), false);
    case Kind::kNot:
      return ~encode_lit(*e.child(), fresh, out, const_true);
    case Kind::kAnd:
    case Kind::kOr: {
      Var g = fresh.fresh();
      Lit gl = Lit::make(g, false);
      std::vector<Lit> kids;
      kids.reserve(e.children().size());
      for (const auto& c : e.children()) kids.push_back(encode_lit(*c, fresh, out, const_true));
      if (e.kind() == Kind::kAnd) {
        Clause long_clause{gl};
        for (Lit k : kids) {
          out.push_back({~gl, k});
          long_clause.push_back(~k);
        }
        out.push_back(std::move(long_clause));
      } else {
        Clause long_clause{~gl};
        for (Lit k : kids) {
          out.push_back({gl, ~k});
          long_clause.push_back(k);
        }
        out.push_back(std::move(long_clause));
      }
      return gl;
    }
  }
  std::abort();
}

}  // namespace

std::vector<Clause> to_cnf_defs(const BoolExpr& e, Var output, VarAllocator& fresh) {
  std::vector<Clause> out;
  Lit ol = Lit::make(output, false);
  switch (e.kind()) {
    case Kind::kTrue:
      out.push_back({ol});
      return out;
    case Kind::kFalse:
      out.push_back({~ol});
      return out;
    case Kind::kAnd:
    case Kind::kOr: {
      Lit const_true{};
      std::vector<Lit> kids;
      kids.reserve(e.children().size());
      for (const auto& c : e.children()) kids.push_back(encode_lit(*c, fresh, out, &const_true));
      if (e.kind() == Kind::kAnd) {
        Clause long_clause{ol};
        for (Lit k : kids) {
          out.push_back({~ol, k});
          long_clause.push_back(~k);
        }
        out.push_back(std::move(long_clause));
      } else {
        Clause long_clause{~ol};
        for (Lit k : kids) {
          out.push_back({ol, ~k});
          long_clause.push_back(k);
        }
        out.push_back(std::move(long_clause));
      }
      return out;
    }
    case Kind::kVar:
    case Kind::kNot: {
      Lit const_true{};
      Lit el = encode_lit(e, fresh, out, &const_true);
      out.push_back({~ol, el});
      out.push_back({ol, ~el});
      return out;
    }
  }
  std::abort();
}

}  // namespace hksynth
