#pragma once

// Finite perfect distributive lattices with operators.  Every finite
// distributive lattice is perfect and equals its own canonical extension, so
// mu and mu* coincide here and admissible validity is plain validity.  This
// module is the brute-force semantic oracle behind the rewrite calculus.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mualba/formula.hpp"
#include "mualba/printer.hpp"

namespace mualba {

struct AlgebraError : std::runtime_error {
  std::string kind;                 // NotALattice, NotDistributive, ...
  std::vector<std::string> detail;  // offending elements
  AlgebraError(std::string k, std::vector<std::string> d, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)), detail(std::move(d)) {}
};

struct UnboundVariable : std::runtime_error {
  explicit UnboundVariable(const std::string& v)
      : std::runtime_error("unbound variable " + v) {}
};

class FiniteAlgebra {
 public:
  // `leq_pairs` is closed reflexively and transitively; box/dia are given as
  // full tables indexed by element name.
  FiniteAlgebra(std::vector<std::string> names,
                const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                const std::map<std::string, std::string>& box_table,
                const std::map<std::string, std::string>& dia_table)
      : names_(std::move(names)), n_(names_.size()) {
    for (size_t i = 0; i < n_; ++i) {
      if (index_.count(names_[i]))
        throw AlgebraError("DuplicateElement", {names_[i]}, "element listed twice");
      index_[names_[i]] = (int)i;
    }
    leq_.assign(n_, std::vector<char>(n_, 0));
    for (size_t i = 0; i < n_; ++i) leq_[i][i] = 1;
    for (const auto& [a, b] : leq_pairs) leq_[at(a)][at(b)] = 1;
    // transitive closure
    for (size_t k = 0; k < n_; ++k)
      for (size_t i = 0; i < n_; ++i)
        if (leq_[i][k])
          for (size_t j = 0; j < n_; ++j)
            if (leq_[k][j]) leq_[i][j] = 1;
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < i; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw AlgebraError("NotALattice", {names_[i], names_[j]},
                             "order is not antisymmetric");
    build_lattice();
    box_.resize(n_);
    dia_.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      box_[i] = at(box_table.at(names_[i]));
      dia_[i] = at(dia_table.at(names_[i]));
    }
    validate_operators();
    build_derived();
  }

  size_t size() const { return n_; }
  const std::string& name(int a) const { return names_[a]; }
  int at(const std::string& nm) const {
    auto it = index_.find(nm);
    if (it == index_.end())
      throw AlgebraError("UnknownElement", {nm}, "element not declared");
    return it->second;
  }

  bool leq(int a, int b) const { return leq_[a][b]; }
  int meet(int a, int b) const { return meet_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  int bot() const { return bot_; }
  int top() const { return top_; }
  int box(int a) const { return box_[a]; }
  int dia(int a) const { return dia_[a]; }
  int black_box(int a) const { return bbox_[a]; }
  int black_dia(int a) const { return bdia_[a]; }
  int heyting_imp(int a, int b) const { return imp_[a][b]; }
  int co_imp(int a, int b) const { return coimp_[a][b]; }

  const std::vector<int>& join_irreducibles() const { return jirr_; }
  const std::vector<int>& meet_irreducibles() const { return mirr_; }

  // kappa(x) = join of everything not above x; defined on join-irreducibles.
  int kappa(int x) const { return kappa_[x]; }
  int kappa_inv(int m) const { return kappa_inv_[m]; }

  int join_all(const std::vector<int>& xs) const {
    int r = bot_;
    for (int x : xs) r = join(r, x);
    return r;
  }
  int meet_all(const std::vector<int>& xs) const {
    int r = top_;
    for (int x : xs) r = meet(r, x);
    return r;
  }

 private:
  std::vector<std::string> names_;
  size_t n_;
  std::map<std::string, int> index_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<int>> meet_, join_, imp_, coimp_;
  std::vector<int> box_, dia_, bbox_, bdia_, kappa_, kappa_inv_;
  std::vector<int> jirr_, mirr_;
  int bot_ = -1, top_ = -1;

  void build_lattice() {
    meet_.assign(n_, std::vector<int>(n_, -1));
    join_.assign(n_, std::vector<int>(n_, -1));
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b) {
        int glb = -1, lub = -1;
        for (size_t c = 0; c < n_; ++c) {
          if (leq_[c][a] && leq_[c][b] && (glb < 0 || leq_[glb][c])) glb = (int)c;
          if (leq_[a][c] && leq_[b][c] && (lub < 0 || leq_[c][lub])) lub = (int)c;
        }
        // the candidates must actually bound every common bound
        if (glb >= 0)
          for (size_t c = 0; c < n_; ++c)
            if (leq_[c][a] && leq_[c][b] && !leq_[c][glb]) glb = -1;
        if (lub >= 0)
          for (size_t c = 0; c < n_; ++c)
            if (leq_[a][c] && leq_[b][c] && !leq_[lub][c]) lub = -1;
        if (glb < 0 || lub < 0)
          throw AlgebraError("NotALattice", {names_[a], names_[b]},
                             "meet or join missing");
        meet_[a][b] = glb;
        join_[a][b] = lub;
      }
    for (size_t a = 0; a < n_; ++a) {
      if (bot_ < 0 || leq_[a][bot_]) bot_ = (int)a;
      if (top_ < 0 || leq_[top_][a]) top_ = (int)a;
    }
    for (size_t a = 0; a < n_; ++a)
      if (!leq_[bot_][a] || !leq_[a][top_])
        throw AlgebraError("NotALattice", {names_[a]}, "no bounds");
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b)
        for (size_t c = 0; c < n_; ++c)
          if (meet_[a][join_[b][c]] != join_[meet_[a][b]][meet_[a][c]])
            throw AlgebraError("NotDistributive", {names_[a], names_[b], names_[c]},
                               "a /\\ (b \\/ c) != (a /\\ b) \\/ (a /\\ c)");
  }

  void validate_operators() {
    if (box_[top_] != top_)
      throw AlgebraError("BoxNotMeetPreserving", {}, "box(T) != T");
    if (dia_[bot_] != bot_)
      throw AlgebraError("DiaNotJoinPreserving", {}, "dia(F) != F");
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b) {
        if (box_[meet_[a][b]] != meet_[box_[a]][box_[b]])
          throw AlgebraError("BoxNotMeetPreserving", {names_[a], names_[b]},
                             "box(a /\\ b) != box(a) /\\ box(b)");
        if (dia_[join_[a][b]] != join_[dia_[a]][dia_[b]])
          throw AlgebraError("DiaNotJoinPreserving", {names_[a], names_[b]},
                             "dia(a \\/ b) != dia(a) \\/ dia(b)");
      }
  }

  void build_derived() {
    // residuals: a -> b is the largest c with a /\ c <= b; a - b the least c
    // with a <= b \/ c.  Both exist in a finite distributive lattice.
    imp_.assign(n_, std::vector<int>(n_, -1));
    coimp_.assign(n_, std::vector<int>(n_, -1));
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b) {
        int r = bot_, s = top_;
        for (size_t c = 0; c < n_; ++c) {
          if (leq_[meet_[a][c]][b]) r = join_[r][c];
          if (leq_[a][join_[b][c]]) s = meet_[s][c];
        }
        imp_[a][b] = r;
        coimp_[a][b] = s;
      }
    // adjoints of box and dia
    bdia_.resize(n_);
    bbox_.resize(n_);
    for (size_t a = 0; a < n_; ++a) {
      int d = top_, bx = bot_;
      for (size_t b = 0; b < n_; ++b) {
        if (leq_[a][box_[b]]) d = meet_[d][(int)b];
        if (leq_[dia_[b]][a]) bx = join_[bx][(int)b];
      }
      bdia_[a] = d;
      bbox_[a] = bx;
    }
    // join-irreducibles: exactly one lower cover (and not bot); assert they
    // are join-prime, which must hold in a distributive lattice.
    for (size_t a = 0; a < n_; ++a) {
      if ((int)a != bot_) {
        std::vector<int> below;
        for (size_t b = 0; b < n_; ++b)
          if (b != a && leq_[b][a]) below.push_back((int)b);
        int covers = 0;
        for (int b : below) {
          bool cover = true;
          for (int c : below)
            if (c != b && leq_[b][c]) { cover = false; break; }
          if (cover) ++covers;
        }
        if (covers == 1) jirr_.push_back((int)a);
      }
      if ((int)a != top_) {
        std::vector<int> above;
        for (size_t b = 0; b < n_; ++b)
          if (b != a && leq_[a][b]) above.push_back((int)b);
        int upcovers = 0;
        for (int b : above) {
          bool cover = true;
          for (int c : above)
            if (c != b && leq_[c][b]) { cover = false; break; }
          if (cover) ++upcovers;
        }
        if (upcovers == 1) mirr_.push_back((int)a);
      }
    }
    for (int j : jirr_)
      for (size_t a = 0; a < n_; ++a)
        for (size_t b = 0; b < n_; ++b)
          if (leq_[j][join_[a][b]] && !leq_[j][a] && !leq_[j][b])
            throw AlgebraError("NotJoinPrime", {names_[j], names_[a], names_[b]},
                               "join-irreducible is not join-prime");
    // perfectness: every element is the join of the irreducibles below it
    // and the meet of those above it.
    for (size_t a = 0; a < n_; ++a) {
      int jn = bot_, mt = top_;
      for (int j : jirr_) if (leq_[j][a]) jn = join_[jn][j];
      for (int m : mirr_) if (leq_[a][m]) mt = meet_[mt][m];
      if (jn != (int)a || mt != (int)a)
        throw AlgebraError("NotPerfect", {names_[a]}, "irreducibles not dense");
    }
    kappa_.assign(n_, -1);
    kappa_inv_.assign(n_, -1);
    for (int x : jirr_) {
      int k = bot_;
      for (size_t c = 0; c < n_; ++c)
        if (!leq_[x][c]) k = join_[k][(int)c];
      kappa_[x] = k;
      bool is_mirr = false;
      for (int m : mirr_) is_mirr |= (m == k);
      if (!is_mirr)
        throw AlgebraError("KappaNotMeetIrreducible", {names_[x]}, "kappa misses M-inf");
      kappa_inv_[k] = x;
    }
    if (jirr_.size() != mirr_.size())
      throw AlgebraError("KappaNotIso", {}, "|J-inf| != |M-inf|");
  }
};

// --- assignments and evaluation ---------------------------------------------

struct Assignment {
  std::map<std::string, int> prop;   // propositional and placeholder variables
  std::map<std::string, int> nom;    // into J-inf
  std::map<std::string, int> conom;  // into M-inf
};

inline int eval_rec(const FiniteAlgebra& A, const Formula& f, const Assignment& v,
                    std::map<std::string, std::vector<int>>& fix) {
  switch (f->conn) {
    case Conn::Bot: return A.bot();
    case Conn::Top: return A.top();
    case Conn::Prop: case Conn::Place: {
      auto it = v.prop.find(f->name);
      if (it == v.prop.end()) throw UnboundVariable(f->name);
      return it->second;
    }
    case Conn::Nom: {
      auto it = v.nom.find(f->name);
      if (it == v.nom.end()) throw UnboundVariable("$" + f->name);
      return it->second;
    }
    case Conn::CoNom: {
      auto it = v.conom.find(f->name);
      if (it == v.conom.end()) throw UnboundVariable("#" + f->name);
      return it->second;
    }
    case Conn::Fix: {
      auto it = fix.find(f->name);
      if (it == fix.end() || it->second.empty()) throw UnboundVariable(f->name);
      return it->second.back();
    }
    case Conn::And: return A.meet(eval_rec(A, f->left, v, fix), eval_rec(A, f->right, v, fix));
    case Conn::Or: return A.join(eval_rec(A, f->left, v, fix), eval_rec(A, f->right, v, fix));
    case Conn::Imp: return A.heyting_imp(eval_rec(A, f->left, v, fix), eval_rec(A, f->right, v, fix));
    case Conn::CoImp: return A.co_imp(eval_rec(A, f->left, v, fix), eval_rec(A, f->right, v, fix));
    case Conn::Box: return A.box(eval_rec(A, f->left, v, fix));
    case Conn::Dia: return A.dia(eval_rec(A, f->left, v, fix));
    case Conn::BBox: return A.black_box(eval_rec(A, f->left, v, fix));
    case Conn::BDia: return A.black_dia(eval_rec(A, f->left, v, fix));
    case Conn::Mu: case Conn::MuStar: case Conn::Nu: case Conn::NuStar: {
      bool least = f->conn == Conn::Mu || f->conn == Conn::MuStar;
      auto body = [&](int a) {
        fix[f->name].push_back(a);
        int r = eval_rec(A, f->left, v, fix);
        fix[f->name].pop_back();
        return r;
      };
      // Kleene iteration from the relevant bound ...
      int it = least ? A.bot() : A.top();
      for (size_t k = 0; k <= A.size(); ++k) {
        int nx = body(it);
        if (nx == it) break;
        it = nx;
      }
      // ... must agree with the (pre/post) fixed point formula; both are
      // computed and compared, as the two interpretations of the binder.
      int extremal = least ? A.top() : A.bot();
      for (int a = 0; a < (int)A.size(); ++a) {
        int ba = body(a);
        if (least && A.leq(ba, a)) extremal = A.meet(extremal, a);
        if (!least && A.leq(a, ba)) extremal = A.join(extremal, a);
      }
      if (extremal != it)
        throw std::logic_error("fixed point disagreement: Kleene vs extremal");
      return it;
    }
  }
  throw std::logic_error("eval: unreachable");
}

inline int eval(const FiniteAlgebra& A, const Formula& f, const Assignment& v) {
  std::map<std::string, std::vector<int>> fix;
  return eval_rec(A, f, v, fix);
}

inline bool holds(const FiniteAlgebra& A, const Inequality& iq, const Assignment& v) {
  return A.leq(eval(A, iq.lhs, v), eval(A, iq.rhs, v));
}

// --- exhaustive validity checking -------------------------------------------

struct ValidityReport {
  bool valid = true;
  std::optional<Assignment> countermodel;
  int member = -1;  // index of the failing quasi-inequality, when applicable
};

namespace detail {

// Enumerates assignments for the given variables in canonical order:
// variables sorted by (sort, name), domains in element order.  Returns false
// from the callback to stop early.
template <typename F>
bool for_each_assignment(const FiniteAlgebra& A, const std::set<VarKey>& vars, F&& fn) {
  std::vector<VarKey> vs(vars.begin(), vars.end());
  std::vector<const std::vector<int>*> domains;
  std::vector<int> all;
  for (int i = 0; i < (int)A.size(); ++i) all.push_back(i);
  for (const auto& v : vs) {
    if (v.sort == Conn::Nom) domains.push_back(&A.join_irreducibles());
    else if (v.sort == Conn::CoNom) domains.push_back(&A.meet_irreducibles());
    else domains.push_back(nullptr);  // props and placeholders range over A
  }
  std::vector<size_t> idx(vs.size(), 0);
  while (true) {
    Assignment asg;
    for (size_t i = 0; i < vs.size(); ++i) {
      const std::vector<int>& dom = domains[i] ? *domains[i] : all;
      int val = dom[idx[i]];
      if (vs[i].sort == Conn::Nom) asg.nom[vs[i].name] = val;
      else if (vs[i].sort == Conn::CoNom) asg.conom[vs[i].name] = val;
      else asg.prop[vs[i].name] = val;
    }
    if (!fn(asg)) return false;
    size_t i = 0;
    for (; i < vs.size(); ++i) {
      const std::vector<int>& dom = domains[i] ? *domains[i] : all;
      if (++idx[i] < dom.size()) break;
      idx[i] = 0;
    }
    if (i == vs.size()) return true;
  }
}

}  // namespace detail

inline ValidityReport check_inequality(const FiniteAlgebra& A, const Inequality& iq) {
  ValidityReport rep;
  std::set<VarKey> vars;
  for (const auto& v : free_vars(iq))
    if (v.sort != Conn::Fix) vars.insert(v);
  detail::for_each_assignment(A, vars, [&](const Assignment& asg) {
    if (!holds(A, iq, asg)) {
      rep.valid = false;
      rep.countermodel = asg;
      return false;
    }
    return true;
  });
  return rep;
}

}  // namespace mualba
