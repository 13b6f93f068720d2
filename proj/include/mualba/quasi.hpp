#pragma once

// Quasi-inequality systems: the state rewritten by the calculus.  A system is
// a set of quasi-inequalities read conjunctively; each member has a pure
// consequent and existentially introduced fresh names in its antecedent.

#include <string>
#include <vector>

#include "mualba/algebra.hpp"
#include "mualba/formula.hpp"
#include "mualba/printer.hpp"

namespace mualba {

struct QuasiInequality {
  std::vector<VarKey> exists_vars;      // nominals/co-nominals introduced by rules
  std::vector<Inequality> antecedent;   // multiset, order preserved for traces
  Inequality consequent;                // pure from creation onward
};

enum class Mode { Tame, Proper, Auto };

struct QuasiSystem {
  std::vector<QuasiInequality> members;
  int fresh_nominal = 0;   // counter for $j1, $j2, ...
  int fresh_conominal = 0; // counter for #n1, #n2, ...
  Mode mode = Mode::Auto;

  std::string next_nominal() { return "j" + std::to_string(++fresh_nominal); }
  std::string next_conominal() { return "n" + std::to_string(++fresh_conominal); }
};

inline bool is_pure(const QuasiInequality& q) {
  for (const auto& iq : q.antecedent)
    if (!is_pure(iq)) return false;
  return is_pure(q.consequent);
}

inline bool is_pure(const QuasiSystem& s) {
  for (const auto& m : s.members)
    if (!is_pure(m)) return false;
  return true;
}

inline std::set<std::string> propvars_of(const QuasiInequality& q) {
  std::set<std::string> out;
  for (const auto& iq : q.antecedent) {
    auto p = free_propvars(iq);
    out.insert(p.begin(), p.end());
  }
  auto p = free_propvars(q.consequent);
  out.insert(p.begin(), p.end());
  return out;
}

// --- canonical fresh-name renaming ------------------------------------------
//
// Freshness is the only requirement on introduced names, so systems are
// compared modulo a renaming of nominals and co-nominals computed by first
// use: members in order, consequent last, formulas left to right.

namespace detail {

inline void collect_names(const Formula& f, std::vector<VarKey>& order,
                          std::set<VarKey>& seen) {
  if (f->conn == Conn::Nom || f->conn == Conn::CoNom) {
    VarKey k{f->conn, f->name};
    if (seen.insert(k).second) order.push_back(k);
    return;
  }
  if (f->left) collect_names(f->left, order, seen);
  if (f->right) collect_names(f->right, order, seen);
}

}  // namespace detail

inline QuasiSystem canonical_renaming(const QuasiSystem& s) {
  std::vector<VarKey> order;
  std::set<VarKey> seen;
  for (const auto& m : s.members) {
    for (const auto& iq : m.antecedent) {
      detail::collect_names(iq.lhs, order, seen);
      detail::collect_names(iq.rhs, order, seen);
    }
    detail::collect_names(m.consequent.lhs, order, seen);
    detail::collect_names(m.consequent.rhs, order, seen);
  }
  Substitution ren;
  int nj = 0, nn = 0;
  for (const auto& k : order) {
    if (k.sort == Conn::Nom) ren[k] = nominal("j" + std::to_string(++nj));
    else ren[k] = conominal("n" + std::to_string(++nn));
  }
  QuasiSystem out = s;
  for (auto& m : out.members) {
    for (auto& k : m.exists_vars) {
      Formula r = ren.count(k) ? ren[k] : nullptr;
      if (r) k = VarKey{r->conn, r->name};
    }
    for (auto& iq : m.antecedent) iq = {substitute(iq.lhs, ren), substitute(iq.rhs, ren)};
    m.consequent = {substitute(m.consequent.lhs, ren), substitute(m.consequent.rhs, ren)};
  }
  return out;
}

inline bool equal(const QuasiInequality& a, const QuasiInequality& b) {
  if (a.antecedent.size() != b.antecedent.size()) return false;
  for (size_t i = 0; i < a.antecedent.size(); ++i)
    if (!equal(a.antecedent[i], b.antecedent[i])) return false;
  return equal(a.consequent, b.consequent);
}

inline bool equal(const QuasiSystem& a, const QuasiSystem& b) {
  if (a.members.size() != b.members.size()) return false;
  for (size_t i = 0; i < a.members.size(); ++i)
    if (!equal(a.members[i], b.members[i])) return false;
  return true;
}

inline bool equal_mod_renaming(const QuasiSystem& a, const QuasiSystem& b) {
  return equal(canonical_renaming(a), canonical_renaming(b));
}

// --- text form ---------------------------------------------------------------

inline std::string print_quasi(const QuasiInequality& q) {
  std::string out = "[";
  if (!q.exists_vars.empty()) {
    out += "E";
    for (const auto& v : q.exists_vars)
      out += std::string(" ") + (v.sort == Conn::Nom ? "$" : "#") + v.name;
    out += ": ";
  }
  for (size_t i = 0; i < q.antecedent.size(); ++i) {
    if (i) out += " & ";
    out += print_inequality(q.antecedent[i]);
  }
  if (q.antecedent.empty()) out += "T";
  out += " => " + print_inequality(q.consequent) + "]";
  return out;
}

inline std::string print_system(const QuasiSystem& s) {
  std::string out;
  for (size_t i = 0; i < s.members.size(); ++i) {
    if (i) out += "\n";
    out += print_quasi(s.members[i]);
  }
  return out;
}

// --- validity of quasi-systems -----------------------------------------------
//
// A member is valid when every assignment of its names (propositional
// variables over A, nominals over J-inf, co-nominals over M-inf) that makes
// the whole antecedent true also makes the consequent true.  The existential
// names of the approximation rules sit inside the antecedent, so they are
// checked by the same universal enumeration: (exists v . ant) => cons is
// forall v . (ant => cons) because the consequent never mentions them.

inline ValidityReport check_quasi_member(const FiniteAlgebra& A, const QuasiInequality& q) {
  ValidityReport rep;
  std::set<VarKey> vars;
  auto add = [&](const Inequality& iq) {
    for (const auto& v : free_vars(iq))
      if (v.sort != Conn::Fix) vars.insert(v);
  };
  for (const auto& iq : q.antecedent) add(iq);
  add(q.consequent);
  detail::for_each_assignment(A, vars, [&](const Assignment& asg) {
    bool ant = true;
    for (const auto& iq : q.antecedent)
      if (!holds(A, iq, asg)) { ant = false; break; }
    if (ant && !holds(A, q.consequent, asg)) {
      rep.valid = false;
      rep.countermodel = asg;
      return false;
    }
    return true;
  });
  return rep;
}

inline ValidityReport check_quasi_system(const FiniteAlgebra& A, const QuasiSystem& s) {
  for (size_t i = 0; i < s.members.size(); ++i) {
    ValidityReport rep = check_quasi_member(A, s.members[i]);
    if (!rep.valid) {
      rep.member = (int)i;
      return rep;
    }
  }
  return {};
}

}  // namespace mualba
