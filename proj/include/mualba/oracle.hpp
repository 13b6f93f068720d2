#pragma once

// Brute-force oracles and random generators: random valid algebras (built on
// downset lattices of small posets, with operators derived from maps on the
// irreducibles so validity holds by construction), random formulas and
// inequalities, the rule-soundness harness, the Ackermann-lemma oracle and
// the complete-preservation check for inner-formula certificates.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mualba/engine.hpp"
#include "mualba/inner.hpp"
#include "mualba/rules.hpp"

namespace mualba {

// Deterministic splitmix64; distributions are hand-rolled so output is
// identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  bool chance(int num, int den) { return below(den) < (std::uint64_t)num; }

 private:
  std::uint64_t state_;
};

// --- algebra generation ---------------------------------------------------------

namespace gen {

// Downsets of a poset on k points form a distributive lattice (ordered by
// inclusion).  `leq[i][j]` means point i is below point j.
struct Poset {
  int k = 0;
  std::vector<std::vector<char>> leq;
};

inline Poset random_poset(Rng& rng, int k) {
  Poset p;
  p.k = k;
  p.leq.assign(k, std::vector<char>(k, 0));
  for (int i = 0; i < k; ++i) p.leq[i][i] = 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (rng.chance(1, 3)) p.leq[i][j] = 1;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (p.leq[b][a])
        for (int c = 0; c < k; ++c)
          if (p.leq[a][c]) p.leq[b][c] = 1;
  return p;
}

inline bool is_downset(const Poset& p, unsigned s) {
  for (int i = 0; i < p.k; ++i)
    if (s >> i & 1)
      for (int j = 0; j < p.k; ++j)
        if (p.leq[j][i] && !(s >> j & 1)) return false;
  return true;
}

// Builds the downset lattice of `p`; dia is induced by `g` on the principal
// downsets (join-irreducibles) and box by `h` on the co-principal upsets
// (meet-irreducibles), which makes them join- and meet-preserving by
// construction.  g and h map each poset point to a downset index.
inline FiniteAlgebra downset_algebra(const Poset& p,
                                     const std::function<unsigned(int)>& g,
                                     const std::function<unsigned(int)>& h) {
  std::vector<unsigned> elems;
  for (unsigned s = 0; s < (1u << p.k); ++s)
    if (is_downset(p, s)) elems.push_back(s);
  auto name_of = [&](unsigned s) {
    std::string nm = "e";
    for (int i = 0; i < p.k; ++i) nm += (s >> i & 1) ? '1' : '0';
    return nm;
  };
  std::vector<std::string> names;
  for (unsigned s : elems) names.push_back(name_of(s));
  std::vector<std::pair<std::string, std::string>> leq;
  for (unsigned a : elems)
    for (unsigned b : elems)
      if ((a & b) == a) leq.emplace_back(name_of(a), name_of(b));
  auto down = [&](int pt) {
    unsigned s = 0;
    for (int j = 0; j < p.k; ++j)
      if (p.leq[j][pt]) s |= 1u << j;
    return s;
  };
  auto not_up = [&](int pt) {  // complement of the principal upset
    unsigned s = 0;
    for (int j = 0; j < p.k; ++j)
      if (!p.leq[pt][j]) s |= 1u << j;
    return s;
  };
  std::map<std::string, std::string> bx, di;
  for (unsigned a : elems) {
    unsigned d = 0;                       // join over g of irreducibles below a
    unsigned b = (1u << p.k) - 1;         // meet over h of irreducibles above a
    unsigned full = 0;
    for (int i = 0; i < p.k; ++i) full |= 1u << i;
    b = full;
    for (int pt = 0; pt < p.k; ++pt) {
      if ((down(pt) & a) == down(pt)) d |= g(pt);
      if ((a & not_up(pt)) == a) b &= h(pt);
    }
    di[name_of(a)] = name_of(d);
    bx[name_of(a)] = name_of(b);
  }
  return FiniteAlgebra(std::move(names), leq, bx, di);
}

inline FiniteAlgebra chain(int n, const std::vector<int>& box_map,
                           const std::vector<int>& dia_map) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> leq;
  for (int i = 0; i + 1 < n; ++i) leq.emplace_back(names[i], names[i + 1]);
  std::map<std::string, std::string> bx, di;
  for (int i = 0; i < n; ++i) {
    bx[names[i]] = names[box_map[i]];
    di[names[i]] = names[dia_map[i]];
  }
  return FiniteAlgebra(std::move(names), leq, bx, di);
}

}  // namespace gen

inline FiniteAlgebra random_algebra(Rng& rng, int max_points = 3) {
  int k = 1 + (int)rng.below(max_points);
  gen::Poset p = gen::random_poset(rng, k);
  std::vector<unsigned> elems;
  for (unsigned s = 0; s < (1u << k); ++s)
    if (gen::is_downset(p, s)) elems.push_back(s);
  std::vector<unsigned> gv(k), hv(k);
  for (int i = 0; i < k; ++i) {
    gv[i] = elems[rng.below(elems.size())];
    hv[i] = elems[rng.below(elems.size())];
  }
  return gen::downset_algebra(p, [&](int i) { return gv[i]; },
                              [&](int i) { return hv[i]; });
}

// A fixed battery of small algebras covering chains, the diamond, a grid and
// the 8-element cube, with identity and non-identity operators.
inline std::vector<FiniteAlgebra> algebra_battery() {
  using namespace gen;
  std::vector<FiniteAlgebra> out;
  out.push_back(chain(2, {0, 1}, {0, 1}));
  out.push_back(chain(3, {0, 1, 2}, {0, 1, 2}));
  out.push_back(chain(3, {0, 2, 2}, {0, 0, 1}));
  out.push_back(chain(4, {0, 1, 2, 3}, {0, 1, 2, 3}));
  out.push_back(chain(4, {1, 2, 3, 3}, {0, 0, 1, 3}));
  Poset anti2{2, {{1, 0}, {0, 1}}};
  // diamond with identity operators: g/h send each point to its own cone
  out.push_back(downset_algebra(anti2, [](int i) { return 1u << i; },
                                [&](int i) { return 3u & ~(1u << i); }));
  // diamond with box/dia moved one step
  out.push_back(downset_algebra(anti2, [](int i) { return i == 0 ? 1u : 3u; },
                                [](int i) { return i == 0 ? 1u : 3u; }));
  Poset grid;
  grid.k = 3;
  grid.leq.assign(3, std::vector<char>(3, 0));
  for (int i = 0; i < 3; ++i) grid.leq[i][i] = 1;
  grid.leq[0][1] = 1;  // p0 < p1, p2 incomparable: downsets form a 2x3 grid
  out.push_back(downset_algebra(grid, [](int i) { return 1u << i; },
                                [&grid](int i) {
                                  unsigned s = 0;
                                  for (int j = 0; j < 3; ++j)
                                    if (!grid.leq[i][j]) s |= 1u << j;
                                  return s;
                                }));
  Poset anti3{3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  out.push_back(downset_algebra(anti3, [](int i) { return 1u << i; },
                                [](int i) { return 7u & ~(1u << i); }));
  // cube with a constant-ish box and a collapsing dia
  out.push_back(downset_algebra(anti3, [](int) { return 7u; }, [](int) { return 7u; }));
  return out;
}

// --- random formulas -------------------------------------------------------------

struct FormulaGenOptions {
  std::vector<std::string> vars{"p", "q"};
  int max_depth = 4;
  bool binders = true;
};

namespace detail {

inline Formula random_formula_rec(Rng& rng, const FormulaGenOptions& o, int depth,
                                  std::vector<std::pair<std::string, bool>>& fix_scope,
                                  int& next_fix) {
  auto leaf = [&]() -> Formula {
    std::vector<Formula> opts{top(), bot()};
    for (const auto& v : o.vars) opts.push_back(prop(v));
    for (const auto& [x, positive] : fix_scope)
      if (positive) opts.push_back(fixvar(x));
    return opts[rng.below(opts.size())];
  };
  if (depth <= 0) return leaf();
  int roll = (int)rng.below(100);
  if (roll < 20) return leaf();
  if (roll < 45) {
    Formula c = random_formula_rec(rng, o, depth - 1, fix_scope, next_fix);
    return rng.chance(1, 2) ? box(c) : dia(c);
  }
  if (roll < 85 || !o.binders) {
    int which = (int)rng.below(4);
    bool flips_left = which == 2, flips_right = which == 3;
    for (auto& [x, positive] : fix_scope)
      if (flips_left) positive = !positive;
    Formula a = random_formula_rec(rng, o, depth - 1, fix_scope, next_fix);
    for (auto& [x, positive] : fix_scope)
      positive = flips_left == flips_right ? positive : !positive;
    Formula b = random_formula_rec(rng, o, depth - 1, fix_scope, next_fix);
    for (auto& [x, positive] : fix_scope)
      if (flips_right) positive = !positive;
    switch (which) {
      case 0: return f_and(a, b);
      case 1: return f_or(a, b);
      case 2: return imp(a, b);
      default: return coimp(a, b);
    }
  }
  std::string x = "X" + std::to_string(++next_fix);
  fix_scope.emplace_back(x, true);
  Formula body = random_formula_rec(rng, o, depth - 1, fix_scope, next_fix);
  fix_scope.pop_back();
  return rng.chance(1, 2) ? mu(x, body) : nu(x, body);
}

}  // namespace detail

inline Formula random_formula(Rng& rng, const FormulaGenOptions& o = {}) {
  std::vector<std::pair<std::string, bool>> scope;
  int next_fix = 0;
  return detail::random_formula_rec(rng, o, 1 + (int)rng.below(o.max_depth), scope,
                                    next_fix);
}

inline Inequality random_inequality(Rng& rng, const FormulaGenOptions& o = {}) {
  return {random_formula(rng, o), random_formula(rng, o)};
}

// --- applicable rule enumeration -------------------------------------------------

inline std::vector<StepSpec> enumerate_applicable(const QuasiSystem& sys) {
  std::vector<StepSpec> out;
  for (int mi = 0; mi < (int)sys.members.size(); ++mi) {
    const auto& m = sys.members[mi];
    for (int qi = 0; qi < (int)m.antecedent.size(); ++qi) {
      const Inequality& iq = m.antecedent[qi];
      if (is_pure(iq)) continue;
      auto add = [&](RuleName r, bool keep_left = true) {
        StepSpec sp{r, mi, qi};
        sp.keep_left = keep_left;
        out.push_back(sp);
      };
      if (iq.lhs->conn == Conn::Or) add(RuleName::SplitOrLA);
      if (iq.rhs->conn == Conn::And) add(RuleName::SplitAndRA);
      if (iq.lhs->conn == Conn::Dia) add(RuleName::AdjDiaLA);
      if (iq.rhs->conn == Conn::Box) add(RuleName::AdjBoxRA);
      if (iq.lhs->conn == Conn::CoImp) add(RuleName::ResMinusLR);
      if (iq.rhs->conn == Conn::Imp) add(RuleName::ResImpRR);
      if (iq.lhs->conn == Conn::And) { add(RuleName::ResAndLR, true); add(RuleName::ResAndLR, false); }
      if (iq.rhs->conn == Conn::Or) { add(RuleName::ResOrRR, true); add(RuleName::ResOrRR, false); }
      if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::Dia) add(RuleName::ApprDia);
      if (iq.lhs->conn == Conn::Box && iq.rhs->conn == Conn::CoNom) add(RuleName::ApprBox);
      if (iq.lhs->conn == Conn::Imp && iq.rhs->conn == Conn::CoNom) add(RuleName::ApprImp);
      if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::CoImp) add(RuleName::ApprMinus);
      if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::MuStar) {
        try {
          auto c = recognize_inner(iq.rhs->left, InnerKind::DiaIF);
          if (c.hole_count() > 0) add(RuleName::FpMu);
        } catch (const NotInner&) {}
      }
      if (iq.lhs->conn == Conn::NuStar && iq.rhs->conn == Conn::CoNom) {
        try {
          auto c = recognize_inner(iq.lhs->left, InnerKind::BoxIF);
          if (c.hole_count() > 0) add(RuleName::FpNu);
        } catch (const NotInner&) {}
      }
    }
    for (const auto& v : propvars_of(m)) {
      for (RuleName r : {RuleName::AckermannRight, RuleName::AckermannLeft}) {
        StepSpec sp{r, mi, 0};
        sp.var = v;
        try {
          apply_step(sys, sp);
          out.push_back(sp);
        } catch (const SideConditionViolated&) {
        } catch (const ShapeMismatch&) {}
      }
    }
  }
  return out;
}

// --- rule soundness harness -------------------------------------------------------

struct SoundnessViolation {
  Inequality input;
  StepSpec step;
  std::string rule;
  std::string algebra;      // index in the battery used
  QuasiSystem before, after;
};

struct SoundnessReport {
  int applications = 0;
  int walks = 0;
  std::map<std::string, int> per_rule;
  std::vector<SoundnessViolation> violations;
};

struct SoundnessConfig {
  std::uint64_t seed = 1;
  int algebra_count = 50;
  int min_applications = 200;
  int max_walk_steps = 10;
  int algebras_per_check = 3;
  FormulaGenOptions formulas{{"p", "q"}, 3, true};
  RuleOptions rule_options;
};

// Runs random applicable rules on random inputs and checks that each step
// preserves validity (both directions) on algebras from a random battery.
inline SoundnessReport run_soundness(const SoundnessConfig& cfg,
                                     const std::vector<FiniteAlgebra>* fixed = nullptr) {
  Rng rng(cfg.seed);
  std::vector<FiniteAlgebra> algebras;
  if (fixed) algebras = *fixed;
  while ((int)algebras.size() < cfg.algebra_count) algebras.push_back(random_algebra(rng));
  SoundnessReport rep;
  int next_algebra = 0;
  while (rep.applications < cfg.min_applications) {
    ++rep.walks;
    Inequality input = random_inequality(rng, cfg.formulas);
    QuasiSystem sys;
    for (const auto& piq : preprocess(input)) first_approximation(sys, star(piq));
    for (int step = 0; step < cfg.max_walk_steps; ++step) {
      auto apps = enumerate_applicable(sys);
      if (apps.empty()) break;
      StepSpec sp = apps[rng.below(apps.size())];
      QuasiSystem after;
      try {
        after = apply_step(sys, sp, nullptr, cfg.rule_options);
      } catch (const std::runtime_error&) {
        break;
      }
      ++rep.applications;
      ++rep.per_rule[rule_name(sp.rule)];
      for (int k = 0; k < cfg.algebras_per_check; ++k) {
        const FiniteAlgebra& A = algebras[next_algebra];
        next_algebra = (next_algebra + 1) % (int)algebras.size();
        bool pre = check_quasi_system(A, sys).valid;
        bool post = check_quasi_system(A, after).valid;
        if (pre != post) {
          rep.violations.push_back({input, sp, rule_name(sp.rule),
                                    "battery[" + std::to_string(next_algebra) + "]", sys,
                                    after});
          break;
        }
      }
      if (!rep.violations.empty()) return rep;
      sys = std::move(after);
      if (is_pure(sys)) break;
    }
  }
  return rep;
}

// Shrinks a failing input by replacing subformulas with constants while the
// violation (same seed, same rule options) persists.
namespace detail {

inline void subformula_paths(const Formula& f, std::vector<int>& path,
                             std::vector<std::vector<int>>& out) {
  out.push_back(path);
  if (f->left) {
    path.push_back(0);
    subformula_paths(f->left, path, out);
    path.pop_back();
  }
  if (f->right) {
    path.push_back(1);
    subformula_paths(f->right, path, out);
    path.pop_back();
  }
}

inline Formula replace_at(const Formula& f, const std::vector<int>& path, size_t i,
                          const Formula& with) {
  if (i == path.size()) return with;
  Formula l = f->left, r = f->right;
  if (path[i] == 0) l = replace_at(f->left, path, i + 1, with);
  else r = replace_at(f->right, path, i + 1, with);
  return mk(f->conn, f->name, l, r);
}

}  // namespace detail

inline Inequality shrink_counterexample(
    const Inequality& failing, const std::function<bool(const Inequality&)>& still_fails) {
  Inequality cur = failing;
  bool progress = true;
  while (progress) {
    progress = false;
    for (bool left_side : {true, false}) {
      const Formula& side = left_side ? cur.lhs : cur.rhs;
      std::vector<std::vector<int>> paths;
      std::vector<int> p;
      detail::subformula_paths(side, p, paths);
      for (const auto& path : paths) {
        if (path.empty() && conn_is_leaf(side->conn)) continue;
        for (const Formula& c : {top(), bot()}) {
          Formula repl = detail::replace_at(side, path, 0, c);
          Inequality cand = left_side ? Inequality{repl, cur.rhs}
                                      : Inequality{cur.lhs, repl};
          if (equal(cand, cur)) continue;
          bool ok = false;
          try {
            ok = still_fails(cand);
          } catch (const std::exception&) {
            ok = false;
          }
          if (ok) {
            cur = cand;
            progress = true;
            break;
          }
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  return cur;
}

// --- Ackermann lemma oracle --------------------------------------------------------

struct AckermannTriple {
  Formula alpha, beta, gamma;  // see the right/lefthanded lemma statements
  bool right;                  // (RA) orientation when true
};

namespace detail {

// Grammar-directed generation of syntactically closed/open formulas where
// every occurrence of `p` has the required polarity.
inline Formula random_shaped(Rng& rng, bool closed, Polarity sign, int depth,
                             bool allow_p, Polarity p_sign,
                             const std::vector<std::string>& others) {
  auto leaf = [&]() -> Formula {
    std::vector<Formula> opts{top(), bot()};
    for (const auto& q : others) opts.push_back(prop(q));
    if (allow_p && sign == p_sign) opts.push_back(prop("p"));
    opts.push_back(closed ? nominal("i0") : conominal("m0"));
    return opts[rng.below(opts.size())];
  };
  if (depth <= 0) return leaf();
  switch (rng.below(8)) {
    case 0: case 1:
      return leaf();
    case 2: {
      Formula a = random_shaped(rng, closed, sign, depth - 1, allow_p, p_sign, others);
      Formula b = random_shaped(rng, closed, sign, depth - 1, allow_p, p_sign, others);
      return rng.chance(1, 2) ? f_and(a, b) : f_or(a, b);
    }
    case 3: {
      Formula a = random_shaped(rng, closed, sign, depth - 1, allow_p, p_sign, others);
      return rng.chance(1, 2) ? box(a) : dia(a);
    }
    case 4:  // the adjoint admitted on this side
      return closed
          ? bdia(random_shaped(rng, true, sign, depth - 1, allow_p, p_sign, others))
          : bbox(random_shaped(rng, false, sign, depth - 1, allow_p, p_sign, others));
    case 5: {  // implication family: one side swaps grammar and sign
      Formula a = random_shaped(rng, !closed, flip(sign), depth - 1, allow_p, p_sign, others);
      Formula b = random_shaped(rng, closed, sign, depth - 1, allow_p, p_sign, others);
      return rng.chance(1, 2) ? imp(a, b) : coimp(b, a);
    }
    case 6: {  // binder admitted on this side (body without the bound variable)
      Formula body = random_shaped(rng, closed, sign, depth - 1, allow_p, p_sign, others);
      return closed ? mustar("Z", body) : nustar("Z", body);
    }
    default:
      return leaf();
  }
}

}  // namespace detail

inline AckermannTriple random_ackermann_triple(Rng& rng, bool right, int depth = 2) {
  std::vector<std::string> others{"q"};
  AckermannTriple t;
  t.right = right;
  if (right) {
    t.alpha = detail::random_shaped(rng, true, Polarity::Positive, depth, false, {}, others);
    t.beta = detail::random_shaped(rng, true, Polarity::Positive, depth, true,
                                   Polarity::Positive, others);
    t.gamma = detail::random_shaped(rng, false, Polarity::Positive, depth, true,
                                    Polarity::Negative, others);
  } else {
    t.alpha = detail::random_shaped(rng, false, Polarity::Positive, depth, false, {}, others);
    t.beta = detail::random_shaped(rng, true, Polarity::Positive, depth, true,
                                   Polarity::Negative, others);
    t.gamma = detail::random_shaped(rng, false, Polarity::Positive, depth, true,
                                    Polarity::Positive, others);
  }
  return t;
}

// Exhaustively checks the Ackermann equivalence for one triple on one
// algebra:  (exists a: alpha <= a and beta(a) <= gamma(a))  iff
// beta(alpha) <= gamma(alpha)   -- (RA); dually with a <= alpha for (LA).
inline bool check_ackermann_triple(const FiniteAlgebra& A, const AckermannTriple& t) {
  std::set<VarKey> vars;
  for (const Formula* f : {&t.alpha, &t.beta, &t.gamma})
    for (const auto& v : free_vars(*f))
      if (v.sort != Conn::Fix && !(v.sort == Conn::Prop && v.name == "p")) vars.insert(v);
  bool all_ok = true;
  detail::for_each_assignment(A, vars, [&](const Assignment& base) {
    int va = eval(A, t.alpha, base);
    bool lhs = false;
    for (int a = 0; a < (int)A.size() && !lhs; ++a) {
      bool bound_ok = t.right ? A.leq(va, a) : A.leq(a, va);
      if (!bound_ok) continue;
      Assignment w = base;
      w.prop["p"] = a;
      if (t.right) lhs = A.leq(eval(A, t.beta, w), eval(A, t.gamma, w));
      else lhs = A.leq(eval(A, t.beta, w), eval(A, t.gamma, w));
    }
    Assignment w = base;
    w.prop["p"] = va;
    bool rhs = A.leq(eval(A, t.beta, w), eval(A, t.gamma, w));
    if (lhs != rhs) {
      all_ok = false;
      return false;
    }
    return true;
  });
  return all_ok;
}

// --- complete preservation of inner certificates ------------------------------------

// For a DiaIF certificate the template's term function must be completely
// join-preserving as a map from the tau-power of A (including the empty
// join); BoxIF dually.  Checked by enumerating all argument tuples.
inline bool check_certificate_preservation(const FiniteAlgebra& A,
                                           const InnerFormulaCertificate& cert) {
  size_t k = cert.slots.size();
  std::vector<int> idx(k, 0);
  bool dia_kind = cert.kind == InnerKind::DiaIF;
  auto value = [&](const std::vector<int>& tuple) {
    Assignment asg;
    for (size_t i = 0; i < k; ++i) asg.prop[cert.slots[i].name] = tuple[i];
    return eval(A, cert.templ, asg);
  };
  // irreducibles of the tau-power: one active coordinate, the rest at the
  // tau-relative bottom (top for the dual check)
  struct ProdIrr { size_t coord; int val; };
  std::vector<ProdIrr> irr;
  for (size_t i = 0; i < k; ++i) {
    bool one = cert.slots[i].tau_one;
    const auto& pool = dia_kind == one ? A.join_irreducibles() : A.meet_irreducibles();
    for (int e : pool) irr.push_back({i, e});
  }
  auto fill = [&](const ProdIrr& ji) {
    std::vector<int> t(k);
    for (size_t i = 0; i < k; ++i) {
      bool one = cert.slots[i].tau_one;
      if (i == ji.coord) t[i] = ji.val;
      else if (dia_kind) t[i] = one ? A.bot() : A.top();  // bot^tau
      else t[i] = one ? A.top() : A.bot();                // top^tau
    }
    return t;
  };
  // enumerate all tuples
  std::vector<int> tuple(k, 0);
  while (true) {
    int direct = value(tuple);
    int agg = dia_kind ? A.bot() : A.top();
    for (const auto& ji : irr) {
      // is the irreducible below (above) the tuple in the tau order?
      bool le = true;
      auto t = fill(ji);
      for (size_t i = 0; i < k && le; ++i) {
        bool one = cert.slots[i].tau_one;
        bool cmp = one ? A.leq(t[i], tuple[i]) : A.leq(tuple[i], t[i]);
        if (!dia_kind) cmp = one ? A.leq(tuple[i], t[i]) : A.leq(t[i], tuple[i]);
        le = cmp;
      }
      if (!le) continue;
      agg = dia_kind ? A.join(agg, value(t)) : A.meet(agg, value(t));
    }
    if (direct != agg) return false;
    size_t i = 0;
    for (; i < k; ++i) {
      if (++tuple[i] < (int)A.size()) break;
      tuple[i] = 0;
    }
    if (i == k) break;
  }
  return true;
}

}  // namespace mualba
