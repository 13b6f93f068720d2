#pragma once

// Run strategy.  The pipeline is: preprocess, star the binders, first
// approximation per resulting inequality, then rule application with the
// precedence
//
//   splitting > ordinary approximation > fixed point approximation
//            > residuation/adjunction toward displayed form > Ackermann
//
// (leftmost target first within a class), and finally variable elimination
// in the dependency order, smallest first.  A run succeeds when no
// propositional variable is left anywhere in the system.
//
// Residuation and adjunction steps are driven by the critical variable
// occurrences of the chosen order type: inside an antecedent inequality
// lhs <= rhs these are the occurrences critical in the signed trees -lhs and
// +rhs, and each step peels one connective off the path to such an
// occurrence until the variable is displayed on its own side.

#include <set>
#include <string>
#include <vector>

#include "mualba/classify.hpp"
#include "mualba/rules.hpp"

namespace mualba {

enum class RunStatus { Success, Stuck };
enum class RunKind { TameRun, ProperRun, Mixed };

struct RunResult {
  RunStatus status = RunStatus::Stuck;
  Mode mode = Mode::Auto;
  RunKind run_kind = RunKind::TameRun;
  Level class_level = Level::None;
  OrderType epsilon;
  DependencyOrder omega;
  std::vector<Inequality> preprocessed;  // after starring
  QuasiSystem initial;                   // after first approximation
  QuasiSystem final_system;
  std::vector<RuleApplication> trace;
  std::string stuck_reason;
};

namespace detail {

struct Occurrence {
  bool in_lhs;
  std::vector<int> path;
  std::string var;
  Polarity sign;
};

inline void occurrences_rec(const Formula& f, Polarity sign, std::vector<int>& path,
                            bool in_lhs, std::vector<Occurrence>& out) {
  if (f->conn == Conn::Prop) {
    out.push_back({in_lhs, path, f->name, sign});
    return;
  }
  Polarity ls = sign, rs = sign;
  if (f->conn == Conn::Imp) ls = flip(sign);
  if (f->conn == Conn::CoImp) rs = flip(sign);
  if (f->left) {
    path.push_back(0);
    occurrences_rec(f->left, ls, path, in_lhs, out);
    path.pop_back();
  }
  if (f->right) {
    path.push_back(1);
    occurrences_rec(f->right, rs, path, in_lhs, out);
    path.pop_back();
  }
}

// Critical occurrences of an antecedent inequality, with whole-side
// occurrences excluded (those are either already displayed or not critical).
inline std::vector<Occurrence> peel_targets(const Inequality& iq, const OrderType& eps) {
  std::vector<Occurrence> all, out;
  std::vector<int> path;
  occurrences_rec(iq.lhs, Polarity::Negative, path, true, all);
  occurrences_rec(iq.rhs, Polarity::Positive, path, false, all);
  for (auto& o : all)
    if (!o.path.empty() && eps.critical(o.var, o.sign)) out.push_back(o);
  return out;
}

// The rule that peels one connective toward the given occurrence, or nullopt
// when the connective has no display rule (the branch is not PIA-shaped).
inline std::optional<StepSpec> peel_rule(const Inequality& iq, const Occurrence& o,
                                         int member, int ineq) {
  StepSpec sp;
  sp.member = member;
  sp.ineq = ineq;
  bool left_step = o.path[0] == 0;
  if (o.in_lhs) {
    switch (iq.lhs->conn) {
      case Conn::Dia: sp.rule = RuleName::AdjDiaLA; return sp;
      case Conn::Or: sp.rule = RuleName::SplitOrLA; return sp;
      case Conn::And: sp.rule = RuleName::ResAndLR; sp.keep_left = left_step; return sp;
      case Conn::CoImp: sp.rule = RuleName::ResMinusLR; return sp;
      default: return std::nullopt;
    }
  }
  switch (iq.rhs->conn) {
    case Conn::Box: sp.rule = RuleName::AdjBoxRA; return sp;
    case Conn::And: sp.rule = RuleName::SplitAndRA; return sp;
    case Conn::Or: sp.rule = RuleName::ResOrRR; sp.keep_left = left_step; return sp;
    case Conn::Imp: sp.rule = RuleName::ResImpRR; return sp;
    default: return std::nullopt;
  }
}

inline void first_occurrence_order(const Formula& f, std::vector<std::string>& order,
                                   std::set<std::string>& seen) {
  if (f->conn == Conn::Prop) {
    if (seen.insert(f->name).second) order.push_back(f->name);
    return;
  }
  if (f->left) first_occurrence_order(f->left, order, seen);
  if (f->right) first_occurrence_order(f->right, order, seen);
}

inline int count_binders(const Formula& f) {
  int n = conn_is_binder(f->conn) ? 1 : 0;
  if (f->left) n += count_binders(f->left);
  if (f->right) n += count_binders(f->right);
  return n;
}

}  // namespace detail

inline RunResult run(const Inequality& input, Mode mode);

namespace detail {

inline RunResult run_one_mode(const Inequality& input, Mode mode,
                              const Classification& cls) {
  RunResult r;
  r.mode = mode;
  r.class_level = cls.level;
  if (!cls.witnesses.empty()) {
    r.epsilon = cls.witnesses.front().epsilon;
    r.omega = cls.witnesses.front().omega;
  } else {
    for (const auto& p : free_propvars(input)) r.epsilon.solve_positive[p] = true;
  }

  // elimination tie-break order: first occurrence in the input
  std::vector<std::string> var_order;
  std::set<std::string> seen;
  first_occurrence_order(input.lhs, var_order, seen);
  first_occurrence_order(input.rhs, var_order, seen);

  for (const auto& iq : preprocess(input)) r.preprocessed.push_back(star(iq));
  QuasiSystem sys;
  sys.mode = mode;
  for (const auto& iq : r.preprocessed) first_approximation(sys, iq);
  r.initial = sys;

  std::set<std::string> unusable;  // printed targets that failed fp or peel
  auto blocked = [&](const Inequality& iq) { return unusable.count(print_inequality(iq)); };

  int fp_applications = 0;
  for (int fuel = 1 << 16; fuel > 0; --fuel) {
    std::optional<StepSpec> action;

    // 1. splitting
    for (int mi = 0; mi < (int)sys.members.size() && !action; ++mi)
      for (int qi = 0; qi < (int)sys.members[mi].antecedent.size() && !action; ++qi) {
        const Inequality& iq = sys.members[mi].antecedent[qi];
        if (is_pure(iq)) continue;
        if (iq.lhs->conn == Conn::Or)
          action = StepSpec{RuleName::SplitOrLA, mi, qi};
        else if (iq.rhs->conn == Conn::And)
          action = StepSpec{RuleName::SplitAndRA, mi, qi};
      }
    // 2. ordinary approximation (the outer skeleton)
    for (int mi = 0; mi < (int)sys.members.size() && !action; ++mi)
      for (int qi = 0; qi < (int)sys.members[mi].antecedent.size() && !action; ++qi) {
        const Inequality& iq = sys.members[mi].antecedent[qi];
        if (is_pure(iq)) continue;
        if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::Dia)
          action = StepSpec{RuleName::ApprDia, mi, qi};
        else if (iq.lhs->conn == Conn::Box && iq.rhs->conn == Conn::CoNom)
          action = StepSpec{RuleName::ApprBox, mi, qi};
        else if (iq.lhs->conn == Conn::Imp && iq.rhs->conn == Conn::CoNom)
          action = StepSpec{RuleName::ApprImp, mi, qi};
        else if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::CoImp)
          action = StepSpec{RuleName::ApprMinus, mi, qi};
      }
    // 3. fixed point approximation (proper runs only)
    if (mode == Mode::Proper)
      for (int mi = 0; mi < (int)sys.members.size() && !action; ++mi)
        for (int qi = 0; qi < (int)sys.members[mi].antecedent.size() && !action; ++qi) {
          const Inequality& iq = sys.members[mi].antecedent[qi];
          if (is_pure(iq) || blocked(iq)) continue;
          if (iq.lhs->conn == Conn::Nom && iq.rhs->conn == Conn::MuStar)
            action = StepSpec{RuleName::FpMu, mi, qi};
          else if (iq.lhs->conn == Conn::NuStar && iq.rhs->conn == Conn::CoNom)
            action = StepSpec{RuleName::FpNu, mi, qi};
        }
    // 4. residuation / adjunction toward displayed form
    for (int mi = 0; mi < (int)sys.members.size() && !action; ++mi)
      for (int qi = 0; qi < (int)sys.members[mi].antecedent.size() && !action; ++qi) {
        const Inequality& iq = sys.members[mi].antecedent[qi];
        if (is_pure(iq) || blocked(iq)) continue;
        auto targets = peel_targets(iq, r.epsilon);
        if (targets.empty()) continue;
        auto sp = peel_rule(iq, targets.front(), mi, qi);
        if (sp) action = *sp;
        else unusable.insert(print_inequality(iq));
      }
    // 5. Ackermann elimination, smallest variable in the dependency order first
    if (!action) {
      for (int mi = 0; mi < (int)sys.members.size() && !action; ++mi) {
        auto vars = propvars_of(sys.members[mi]);
        if (vars.empty()) continue;
        std::vector<std::string> rem;
        for (const auto& v : var_order) if (vars.count(v)) rem.push_back(v);
        for (const auto& v : vars)
          if (std::find(rem.begin(), rem.end(), v) == rem.end()) rem.push_back(v);
        // topological order w.r.t. Omega, stable on ties
        std::vector<std::string> order;
        while (!rem.empty()) {
          size_t pick = 0;
          for (size_t i = 0; i < rem.size(); ++i) {
            bool has_pred = false;
            for (const auto& w : rem)
              if (w != rem[i] && r.omega.pairs.count({w, rem[i]})) { has_pred = true; break; }
            if (!has_pred) { pick = i; break; }
          }
          order.push_back(rem[pick]);
          rem.erase(rem.begin() + pick);
        }
        for (const auto& v : order) {
          auto it = r.epsilon.solve_positive.find(v);
          bool solve_pos = it == r.epsilon.solve_positive.end() ? true : it->second;
          StepSpec sp{solve_pos ? RuleName::AckermannRight : RuleName::AckermannLeft,
                      mi, 0};
          sp.var = v;
          try {
            RuleApplication app;
            QuasiSystem out = apply_step(sys, sp, &app);
            sys = std::move(out);
            r.trace.push_back(std::move(app));
            action = sp;  // mark progress; step already applied
            break;
          } catch (const SideConditionViolated& e) {
            if (r.stuck_reason.empty()) r.stuck_reason = e.what();
          }
        }
        if (action) break;
      }
      if (action) { action.reset(); continue; }  // ackermann applied in-place
    }

    if (!action) break;
    try {
      RuleApplication app;
      QuasiSystem out = apply_step(sys, *action, &app);
      if (action->rule == RuleName::FpMu || action->rule == RuleName::FpNu)
        ++fp_applications;
      sys = std::move(out);
      r.trace.push_back(std::move(app));
    } catch (const NotInner& e) {
      unusable.insert(print_inequality(detail::target_of(sys, *action)));
      if (r.stuck_reason.empty())
        r.stuck_reason = std::string("no inner-formula certificate: ") + e.what();
    } catch (const NotApplicable& e) {
      unusable.insert(print_inequality(detail::target_of(sys, *action)));
      if (r.stuck_reason.empty()) r.stuck_reason = e.what();
    }
  }

  r.final_system = sys;
  r.status = is_pure(sys) ? RunStatus::Success : RunStatus::Stuck;
  if (r.status == RunStatus::Success) r.stuck_reason.clear();
  else if (r.stuck_reason.empty())
    r.stuck_reason = "no applicable rule eliminates the remaining variables";

  int binders = 0;
  for (const auto& iq : r.preprocessed)
    binders += count_binders(iq.lhs) + count_binders(iq.rhs);
  if (fp_applications == 0) r.run_kind = RunKind::TameRun;
  else if (fp_applications == binders) r.run_kind = RunKind::ProperRun;
  else r.run_kind = RunKind::Mixed;
  return r;
}

}  // namespace detail

inline RunResult run(const Inequality& input, Mode mode) {
  if (!in_l1(input))
    throw std::invalid_argument("run requires an L1 inequality");
  Classification cls = classify(input);
  if (mode == Mode::Auto) {
    RunResult tame = detail::run_one_mode(input, Mode::Tame, cls);
    if (tame.status == RunStatus::Success) {
      tame.mode = Mode::Auto;
      return tame;
    }
    RunResult proper = detail::run_one_mode(input, Mode::Proper, cls);
    proper.mode = Mode::Auto;
    return proper;
  }
  return detail::run_one_mode(input, mode, cls);
}

// Trace invariant: every inequality in every antecedent is either pure or has
// a syntactically almost closed left side and almost open right side;
// binder-free non-pure inequalities are fully closed/open.
inline bool antecedents_well_shaped(const QuasiSystem& sys, std::string* why = nullptr) {
  for (const auto& m : sys.members)
    for (const auto& iq : m.antecedent) {
      if (is_pure(iq)) continue;
      SyntacticShape l = syntactic_shape(iq.lhs), r = syntactic_shape(iq.rhs);
      bool binder_free = !contains_conn(iq.lhs, conn_is_binder) &&
                         !contains_conn(iq.rhs, conn_is_binder);
      bool ok = binder_free ? (l.closed && r.open) : (l.almost_closed && r.almost_open);
      if (!ok) {
        if (why) *why = print_inequality(iq);
        return false;
      }
    }
  return true;
}

}  // namespace mualba
