#pragma once

// The rewrite rules: preprocessing, first approximation, residuation,
// adjunction, the ordinary and fixed point approximation rules, and the two
// Ackermann rules.  Every step is described by a StepSpec; applying a step
// to a system is deterministic, so a recorded trace replays exactly.

#include <string>
#include <vector>

#include "mualba/inner.hpp"
#include "mualba/quasi.hpp"
#include "mualba/shape.hpp"

namespace mualba {

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& what)
      : std::runtime_error("rule premise does not match: " + what) {}
};

struct SideConditionViolated : std::runtime_error {
  std::string condition;
  std::string where;
  SideConditionViolated(std::string cond, std::string wh)
      : std::runtime_error("Ackermann side condition violated (" + cond + ") at " + wh),
        condition(std::move(cond)), where(std::move(wh)) {}
};

struct NotApplicable : std::runtime_error {
  explicit NotApplicable(const std::string& why)
      : std::runtime_error("fixed point approximation not applicable: " + why) {}
};

// --- preprocessing ------------------------------------------------------------

namespace detail {

// One pass of sign-directed distribution; returns the rewritten formula or
// nullptr when nothing fired.  Positive diamonds and conjunctions distribute
// over positive disjunctions; negative boxes and disjunctions over negative
// conjunctions.
inline Formula distribute_once(const Formula& f, Polarity sign) {
  bool pos = sign == Polarity::Positive;
  if (pos && f->conn == Conn::Dia && f->left->conn == Conn::Or)
    return f_or(dia(f->left->left), dia(f->left->right));
  if (!pos && f->conn == Conn::Box && f->left->conn == Conn::And)
    return f_and(box(f->left->left), box(f->left->right));
  if (pos && f->conn == Conn::And) {
    if (f->left->conn == Conn::Or)
      return f_or(f_and(f->left->left, f->right), f_and(f->left->right, f->right));
    if (f->right->conn == Conn::Or)
      return f_or(f_and(f->left, f->right->left), f_and(f->left, f->right->right));
  }
  if (!pos && f->conn == Conn::Or) {
    if (f->left->conn == Conn::And)
      return f_and(f_or(f->left->left, f->right), f_or(f->left->right, f->right));
    if (f->right->conn == Conn::And)
      return f_and(f_or(f->left, f->right->left), f_or(f->left, f->right->right));
  }
  // recurse leftmost-outermost
  Polarity ls = sign, rs = sign;
  if (f->conn == Conn::Imp) ls = flip(sign);
  if (f->conn == Conn::CoImp) rs = flip(sign);
  if (f->left)
    if (Formula l = distribute_once(f->left, ls))
      return mk(f->conn, f->name, l, f->right);
  if (f->right)
    if (Formula r = distribute_once(f->right, rs))
      return mk(f->conn, f->name, f->left, r);
  return nullptr;
}

inline Formula distribute(Formula f, Polarity sign) {
  // Terminates: each step pulls a disjunction (conjunction) past a
  // join-(meet-)preserving connective; fuel guards against regressions.
  for (int fuel = 1 << 20; fuel > 0; --fuel) {
    Formula g = distribute_once(f, sign);
    if (!g) return f;
    f = g;
  }
  throw std::logic_error("preprocessing distribution did not terminate");
}

// all-positive / all-negative occurrence tests
inline bool all_occurrences(const Formula& f, const std::string& p, Polarity want) {
  for (Polarity pol : polarity_of_occurrences(f, {Conn::Prop, p}))
    if (pol != want) return false;
  return true;
}

}  // namespace detail

// Exhaustive preprocessing: distribution, the splitting rules (vLA)/(^RA) at
// the top, and the monotone variable elimination rules (T)/(F).
inline std::vector<Inequality> preprocess(const Inequality& input) {
  std::vector<Inequality> work{input};
  bool changed = true;
  while (changed) {
    changed = false;
    // distribution inside both trees
    for (auto& iq : work) {
      Formula l = detail::distribute(iq.lhs, Polarity::Positive);
      Formula r = detail::distribute(iq.rhs, Polarity::Negative);
      if (l.get() != iq.lhs.get() || r.get() != iq.rhs.get()) {
        iq = {l, r};
        changed = true;
      }
    }
    // top-level splits
    std::vector<Inequality> next;
    for (const auto& iq : work) {
      if (iq.lhs->conn == Conn::Or) {
        next.push_back({iq.lhs->left, iq.rhs});
        next.push_back({iq.lhs->right, iq.rhs});
        changed = true;
      } else if (iq.rhs->conn == Conn::And) {
        next.push_back({iq.lhs, iq.rhs->left});
        next.push_back({iq.lhs, iq.rhs->right});
        changed = true;
      } else {
        next.push_back(iq);
      }
    }
    work = std::move(next);
    // monotone variable elimination
    for (auto& iq : work) {
      for (const auto& p : free_propvars(iq)) {
        bool lhs_neg = detail::all_occurrences(iq.lhs, p, Polarity::Negative);
        bool lhs_pos = detail::all_occurrences(iq.lhs, p, Polarity::Positive);
        bool rhs_neg = detail::all_occurrences(iq.rhs, p, Polarity::Negative);
        bool rhs_pos = detail::all_occurrences(iq.rhs, p, Polarity::Positive);
        Substitution s;
        if (lhs_neg && rhs_pos) s[{Conn::Prop, p}] = bot();
        else if (lhs_pos && rhs_neg) s[{Conn::Prop, p}] = top();
        if (!s.empty()) {
          iq = {substitute(iq.lhs, s), substitute(iq.rhs, s)};
          changed = true;
        }
      }
    }
  }
  return work;
}

// --- first approximation -------------------------------------------------------

inline void first_approximation(QuasiSystem& sys, const Inequality& starred) {
  QuasiInequality q;
  Formula i0 = nominal(sys.next_nominal());
  Formula m0 = conominal(sys.next_conominal());
  q.antecedent.push_back({i0, starred.lhs});
  q.antecedent.push_back({starred.rhs, m0});
  q.consequent = {i0, m0};
  sys.members.push_back(std::move(q));
}

inline QuasiSystem first_approximation(const Inequality& starred, Mode mode = Mode::Auto) {
  QuasiSystem sys;
  sys.mode = mode;
  first_approximation(sys, starred);
  return sys;
}

// --- rule steps ----------------------------------------------------------------

enum class RuleName {
  SplitOrLA, SplitAndRA,              // adjunction splits
  AdjDiaLA, AdjBoxRA,                 // modal adjunctions
  ResMinusLR, ResImpRR, ResAndLR, ResOrRR,  // residuations
  ApprBox, ApprDia, ApprImp, ApprMinus,     // ordinary approximation
  FpMu, FpNu,                         // fixed point approximation
  AckermannRight, AckermannLeft,
};

inline const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::SplitOrLA: return "(vLA)";
    case RuleName::SplitAndRA: return "(^RA)";
    case RuleName::AdjDiaLA: return "(<>LA)";
    case RuleName::AdjBoxRA: return "([]RA)";
    case RuleName::ResMinusLR: return "(-LR)";
    case RuleName::ResImpRR: return "(->RR)";
    case RuleName::ResAndLR: return "(^LR)";
    case RuleName::ResOrRR: return "(vRR)";
    case RuleName::ApprBox: return "([]Appr)";
    case RuleName::ApprDia: return "(<>Appr)";
    case RuleName::ApprImp: return "(->Appr)";
    case RuleName::ApprMinus: return "(-Appr)";
    case RuleName::FpMu: return "(mu-A-R)";
    case RuleName::FpNu: return "(nu-A-R)";
    case RuleName::AckermannRight: return "(RA)";
    case RuleName::AckermannLeft: return "(LA)";
  }
  return "?";
}

struct StepSpec {
  RuleName rule;
  int member = 0;
  int ineq = 0;          // index into the member's antecedent
  bool keep_left = true; // side selection for (^LR) and (vRR)
  std::string var;       // Ackermann variable
};

struct RuleOptions {
  bool skip_ackermann_side_checks = false;  // test fixture only
};

// Step outcome, recorded in traces.
struct RuleApplication {
  StepSpec spec;
  std::vector<int> produced_members;        // member indexes after the step
  std::vector<VarKey> fresh;                // names introduced
  std::optional<InnerFormulaCertificate> certificate;
};

namespace detail {

inline const Inequality& target_of(const QuasiSystem& s, const StepSpec& sp) {
  if (sp.member < 0 || sp.member >= (int)s.members.size())
    throw ShapeMismatch("no such member");
  const auto& ante = s.members[sp.member].antecedent;
  if (sp.ineq < 0 || sp.ineq >= (int)ante.size())
    throw ShapeMismatch("no such inequality");
  return ante[sp.ineq];
}

inline void replace_ineq(QuasiInequality& m, int at, std::vector<Inequality> with) {
  m.antecedent.erase(m.antecedent.begin() + at);
  m.antecedent.insert(m.antecedent.begin() + at, with.begin(), with.end());
}

inline bool positive_in(const Formula& f, const std::string& p) {
  return all_occurrences(f, p, Polarity::Positive);
}
inline bool negative_in(const Formula& f, const std::string& p) {
  return all_occurrences(f, p, Polarity::Negative);
}
inline bool mentions(const Formula& f, const std::string& p) {
  return !polarity_of_occurrences(f, {Conn::Prop, p}).empty();
}

}  // namespace detail

// Applies one step; returns the new system and fills `out` when non-null.
inline QuasiSystem apply_step(const QuasiSystem& sys, const StepSpec& sp,
                              RuleApplication* out = nullptr,
                              const RuleOptions& opts = {}) {
  const Inequality iq = detail::target_of(sys, sp);  // validates the target
  QuasiSystem next = sys;
  QuasiInequality& m = next.members[sp.member];
  RuleApplication app;
  app.spec = sp;

  auto single = [&](Inequality r) { detail::replace_ineq(m, sp.ineq, {std::move(r)}); };
  auto pair_ = [&](Inequality a, Inequality b) {
    detail::replace_ineq(m, sp.ineq, {std::move(a), std::move(b)});
  };
  auto fresh_nom = [&]() {
    Formula j = nominal(next.next_nominal());
    m.exists_vars.push_back({Conn::Nom, j->name});
    app.fresh.push_back({Conn::Nom, j->name});
    return j;
  };
  auto fresh_conom = [&]() {
    Formula n = conominal(next.next_conominal());
    m.exists_vars.push_back({Conn::CoNom, n->name});
    app.fresh.push_back({Conn::CoNom, n->name});
    return n;
  };

  switch (sp.rule) {
    case RuleName::SplitOrLA:
      if (iq.lhs->conn != Conn::Or) throw ShapeMismatch("(vLA) wants a disjunction on the left");
      pair_({iq.lhs->left, iq.rhs}, {iq.lhs->right, iq.rhs});
      break;
    case RuleName::SplitAndRA:
      if (iq.rhs->conn != Conn::And) throw ShapeMismatch("(^RA) wants a conjunction on the right");
      pair_({iq.lhs, iq.rhs->left}, {iq.lhs, iq.rhs->right});
      break;
    case RuleName::AdjDiaLA:
      if (iq.lhs->conn != Conn::Dia) throw ShapeMismatch("(<>LA) wants <> on the left");
      single({iq.lhs->left, bbox(iq.rhs)});
      break;
    case RuleName::AdjBoxRA:
      if (iq.rhs->conn != Conn::Box) throw ShapeMismatch("([]RA) wants [] on the right");
      single({bdia(iq.lhs), iq.rhs->left});
      break;
    case RuleName::ResMinusLR:
      if (iq.lhs->conn != Conn::CoImp) throw ShapeMismatch("(-LR) wants -< on the left");
      single({iq.lhs->left, f_or(iq.lhs->right, iq.rhs)});
      break;
    case RuleName::ResImpRR:
      if (iq.rhs->conn != Conn::Imp) throw ShapeMismatch("(->RR) wants -> on the right");
      single({f_and(iq.lhs, iq.rhs->left), iq.rhs->right});
      break;
    case RuleName::ResAndLR: {
      if (iq.lhs->conn != Conn::And) throw ShapeMismatch("(^LR) wants & on the left");
      Formula keep = sp.keep_left ? iq.lhs->left : iq.lhs->right;
      Formula move = sp.keep_left ? iq.lhs->right : iq.lhs->left;
      single({keep, imp(move, iq.rhs)});
      break;
    }
    case RuleName::ResOrRR: {
      if (iq.rhs->conn != Conn::Or) throw ShapeMismatch("(vRR) wants | on the right");
      Formula keep = sp.keep_left ? iq.rhs->left : iq.rhs->right;
      Formula sub = sp.keep_left ? iq.rhs->right : iq.rhs->left;
      single({coimp(iq.lhs, sub), keep});
      break;
    }
    case RuleName::ApprDia: {
      if (iq.lhs->conn != Conn::Nom || iq.rhs->conn != Conn::Dia)
        throw ShapeMismatch("(<>Appr) wants nominal <= <>psi");
      Formula j = fresh_nom();
      pair_({iq.lhs, dia(j)}, {j, iq.rhs->left});
      break;
    }
    case RuleName::ApprBox: {
      if (iq.lhs->conn != Conn::Box || iq.rhs->conn != Conn::CoNom)
        throw ShapeMismatch("([]Appr) wants []psi <= co-nominal");
      Formula n = fresh_conom();
      pair_({box(n), iq.rhs}, {iq.lhs->left, n});
      break;
    }
    case RuleName::ApprImp: {
      if (iq.lhs->conn != Conn::Imp || iq.rhs->conn != Conn::CoNom)
        throw ShapeMismatch("(->Appr) wants chi->phi <= co-nominal");
      Formula j = fresh_nom();
      Formula n = fresh_conom();
      detail::replace_ineq(m, sp.ineq,
                           {{imp(j, n), iq.rhs}, {j, iq.lhs->left}, {iq.lhs->right, n}});
      break;
    }
    case RuleName::ApprMinus: {
      if (iq.lhs->conn != Conn::Nom || iq.rhs->conn != Conn::CoImp)
        throw ShapeMismatch("(-Appr) wants nominal <= chi -< phi");
      Formula j = fresh_nom();
      Formula n = fresh_conom();
      detail::replace_ineq(m, sp.ineq,
                           {{iq.lhs, coimp(j, n)}, {j, iq.rhs->left}, {iq.rhs->right, n}});
      break;
    }
    case RuleName::FpMu: case RuleName::FpNu: {
      bool mu_side = sp.rule == RuleName::FpMu;
      if (mu_side && (iq.lhs->conn != Conn::Nom || iq.rhs->conn != Conn::MuStar))
        throw ShapeMismatch("(mu-A-R) wants nominal <= mu* X.psi");
      if (!mu_side && (iq.lhs->conn != Conn::NuStar || iq.rhs->conn != Conn::CoNom))
        throw ShapeMismatch("(nu-A-R) wants nu* X.phi <= co-nominal");
      const Formula& binderf = mu_side ? iq.rhs : iq.lhs;
      InnerFormulaCertificate cert =
          recognize_inner(binderf->left, mu_side ? InnerKind::DiaIF : InnerKind::BoxIF);
      for (const auto& s : cert.slots)
        if (s.is_fix && !s.tau_one)
          throw NotApplicable("fixed point variable at the dual order type");
      size_t holes = cert.hole_count();
      if (holes == 0) throw NotApplicable("no extractable subterms");
      app.certificate = cert;
      // Distribute the disjunction of the produced pairs over the member.
      std::vector<QuasiInequality> produced;
      for (size_t h = 0; h < cert.slots.size(); ++h) {
        if (cert.slots[h].is_fix) continue;
        QuasiInequality qm = next.members[sp.member];
        // fresh name for this disjunct
        bool tau1 = cert.slots[h].tau_one;
        Formula name;
        if (mu_side ? tau1 : !tau1) {
          name = nominal(next.next_nominal());
          qm.exists_vars.push_back({Conn::Nom, name->name});
          app.fresh.push_back({Conn::Nom, name->name});
        } else {
          name = conominal(next.next_conominal());
          qm.exists_vars.push_back({Conn::CoNom, name->name});
          app.fresh.push_back({Conn::CoNom, name->name});
        }
        Substitution subst;
        for (size_t k = 0; k < cert.slots.size(); ++k) {
          const auto& slot = cert.slots[k];
          Formula repl;
          if (slot.is_fix) repl = slot.binding;
          else if (k == h) repl = name;
          else if (mu_side) repl = slot.tau_one ? bot() : top();   // bot^tau
          else repl = slot.tau_one ? top() : bot();                // top^tau
          subst[{Conn::Place, slot.name}] = repl;
        }
        Formula inst = mk(binderf->conn, binderf->name, substitute(cert.templ, subst));
        Inequality pure_iq = mu_side ? Inequality{iq.lhs, inst} : Inequality{inst, iq.rhs};
        // side inequality j^tau <=^tau phi_i (resp. psi_i <=^tau n^tau)
        Inequality side;
        if (mu_side) side = tau1 ? Inequality{name, cert.slots[h].binding}
                                 : Inequality{cert.slots[h].binding, name};
        else side = tau1 ? Inequality{cert.slots[h].binding, name}
                         : Inequality{name, cert.slots[h].binding};
        detail::replace_ineq(qm, sp.ineq, {pure_iq, side});
        produced.push_back(std::move(qm));
      }
      next.members.erase(next.members.begin() + sp.member);
      next.members.insert(next.members.begin() + sp.member, produced.begin(),
                          produced.end());
      for (size_t k = 0; k < produced.size(); ++k)
        app.produced_members.push_back(sp.member + (int)k);
      if (out) *out = std::move(app);
      return next;
    }
    case RuleName::AckermannRight: case RuleName::AckermannLeft: {
      bool right = sp.rule == RuleName::AckermannRight;
      const std::string& p = sp.var;
      std::vector<int> alphas;
      std::vector<int> contexts;  // inequalities mentioning p, substituted into
      for (int i = 0; i < (int)m.antecedent.size(); ++i) {
        const Inequality& a = m.antecedent[i];
        bool solved_form = right
            ? (a.rhs->conn == Conn::Prop && a.rhs->name == p && !detail::mentions(a.lhs, p))
            : (a.lhs->conn == Conn::Prop && a.lhs->name == p && !detail::mentions(a.rhs, p));
        if (solved_form) { alphas.push_back(i); continue; }
        if (detail::mentions(a.lhs, p) || detail::mentions(a.rhs, p)) contexts.push_back(i);
      }
      if (detail::mentions(m.consequent.lhs, p) || detail::mentions(m.consequent.rhs, p))
        throw SideConditionViolated("consequent must be p-free", print_inequality(m.consequent));
      if (!opts.skip_ackermann_side_checks) {
        for (int i : alphas) {
          const Formula& a = right ? m.antecedent[i].lhs : m.antecedent[i].rhs;
          SyntacticShape sh = syntactic_shape(a);
          if (right && !sh.closed)
            throw SideConditionViolated("alpha must be syntactically closed",
                                        print_formula(a));
          if (!right && !sh.open)
            throw SideConditionViolated("alpha must be syntactically open", print_formula(a));
        }
        for (int i : contexts) {
          const Inequality& c = m.antecedent[i];
          // (RA): beta <= gamma with beta closed positive in p, gamma open
          // negative in p; (LA): gamma <= beta with gamma closed negative in
          // p, beta open positive in p.
          bool lhs_ok = right ? detail::positive_in(c.lhs, p) : detail::negative_in(c.lhs, p);
          bool rhs_ok = right ? detail::negative_in(c.rhs, p) : detail::positive_in(c.rhs, p);
          if (!lhs_ok || !rhs_ok)
            throw SideConditionViolated("polarity of p", print_inequality(c));
          if (!syntactic_shape(c.lhs).closed)
            throw SideConditionViolated("left side must be syntactically closed",
                                        print_formula(c.lhs));
          if (!syntactic_shape(c.rhs).open)
            throw SideConditionViolated("right side must be syntactically open",
                                        print_formula(c.rhs));
        }
      }
      Formula bound;  // join (RA) or meet (LA) of the collected alphas
      for (int i : alphas) {
        const Formula& a = right ? m.antecedent[i].lhs : m.antecedent[i].rhs;
        if (!bound) bound = a;
        else bound = right ? f_or(bound, a) : f_and(bound, a);
      }
      if (!bound) bound = right ? bot() : top();
      Substitution s{{VarKey{Conn::Prop, p}, bound}};
      std::vector<Inequality> ante;
      for (int i = 0; i < (int)m.antecedent.size(); ++i) {
        if (std::find(alphas.begin(), alphas.end(), i) != alphas.end()) continue;
        const Inequality& c = m.antecedent[i];
        ante.push_back({substitute(c.lhs, s), substitute(c.rhs, s)});
      }
      m.antecedent = std::move(ante);
      break;
    }
  }
  app.produced_members.push_back(sp.member);
  if (out) *out = std::move(app);
  return next;
}

// Replays a trace from an initial system; the result must equal the recorded
// final system bit for bit.
inline QuasiSystem replay(QuasiSystem sys, const std::vector<StepSpec>& steps,
                          const RuleOptions& opts = {}) {
  for (const auto& sp : steps) sys = apply_step(sys, sp, nullptr, opts);
  return sys;
}

}  // namespace mualba
