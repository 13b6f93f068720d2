#pragma once

// Good-branch decomposition and the syntactic class hierarchy
// recursive > inductive > restricted / tame inductive.
//
// A critical branch is good when it splits, from the root, into outer
// skeleton (P3), inner skeleton (P2) and PIA (P1) segments subject to GB1-GB3.
// Segment borders are not unique; the decomposition greedily maximises P3 and
// then P2, backtracking over shorter choices before giving up.

#include <optional>
#include <string>
#include <vector>

#include "mualba/signed_tree.hpp"

namespace mualba {

struct BranchDecomposition {
  Branch branch;
  std::vector<std::string> p3, p2, p1;  // node labels, root side first
  bool nb_pia = false;                  // P1 contains no fixed point binders
  bool nl = false;                      // NL holds for this split
  bool omega_conf = false;              // constraints below are consistent
  // Omega constraints generated by SRR nodes on P1: (var in side formula,
  // leaf var) meaning the first must be solved before the second.
  std::vector<std::pair<std::string, std::string>> omega_constraints;
};

struct NotGood {
  std::string node;   // label of the first violating node
  std::string reason;
};

enum DecomposeRequire : unsigned {
  kRequireGood = 0,
  kRequireNL = 1u << 0,        // NL on SLR nodes of P2
  kRequireNoOmega = 1u << 1,   // SRR side formulas on P1 contain no variables
};

namespace detail {

struct BranchNode {
  const SignedTree* tree;
  int continue_child;            // child index the branch goes through
};

inline std::vector<BranchNode> branch_nodes(const SignedTree& t, const Branch& b) {
  std::vector<BranchNode> out;
  const SignedTree* cur = &t;
  for (int step : b.path) {
    out.push_back({cur, step});
    cur = &cur->children[step];
  }
  return out;
}

inline const SignedTree* sibling_of(const BranchNode& n) {
  if (n.tree->children.size() != 2) return nullptr;
  return &n.tree->children[1 - n.continue_child];
}

}  // namespace detail

// Decomposes one branch; `require` adds the NL or empty-Omega demands to the
// backtracking search.  Returns the decomposition or the first violation.
inline std::optional<BranchDecomposition> decompose_branch(
    const SignedTree& tree, const Branch& branch, const OrderType& eps,
    unsigned require, NotGood* why = nullptr) {
  auto nodes = detail::branch_nodes(tree, branch);
  size_t len = nodes.size();

  auto role_ok = [&](size_t i, unsigned mask) { return (nodes[i].tree->node_class & mask) != 0; };

  size_t a_max = 0;
  while (a_max < len && role_ok(a_max, kOuterMask)) ++a_max;

  NotGood first{len ? node_label(*nodes[0].tree) : "", "no admissible segmentation"};
  bool have_first = false;

  for (size_t a = a_max + 1; a-- > 0;) {
    size_t b_max = a;
    while (b_max < len && role_ok(b_max, kInnerMask)) ++b_max;
    for (size_t b = b_max + 1; b-- > a;) {
      // P1 = [b, len): every node must carry a PIA role.
      bool ok = true;
      NotGood local;
      for (size_t i = b; i < len && ok; ++i)
        if (!role_ok(i, kPiaMask)) {
          ok = false;
          local = {node_label(*nodes[i].tree), "node admits no PIA role"};
        }
      // GB1: the uppermost P1 node corresponds to a sentence.
      if (ok && b < len && !is_sentence(nodes[b].tree->formula)) {
        ok = false;
        local = {node_label(*nodes[b].tree), "uppermost PIA formula is not a sentence"};
      }
      // GB2 on SRR nodes of P1, GB3 on SLR nodes of P2: the side subtree is a
      // sentence agreeing with the dual order type (no critical leaves).
      std::vector<std::pair<std::string, std::string>> constraints;
      bool nl_holds = true;
      if (ok) {
        for (size_t i = b; i < len && ok; ++i) {
          if (!(nodes[i].tree->node_class & kPiaSRR)) continue;
          const SignedTree* side = detail::sibling_of(nodes[i]);
          if (!side) continue;
          if (!is_sentence(side->formula)) {
            ok = false;
            local = {node_label(*nodes[i].tree), "SRR side formula is not a sentence"};
            break;
          }
          if (has_critical_leaf(*side, eps)) {
            ok = false;
            local = {node_label(*nodes[i].tree), "SRR side formula has a critical leaf"};
            break;
          }
          auto side_vars = free_propvars(side->formula);
          if ((require & kRequireNoOmega) && !side_vars.empty()) {
            ok = false;
            local = {node_label(*nodes[i].tree), "SRR side formula mentions variables"};
            break;
          }
          for (const auto& v : side_vars) constraints.emplace_back(v, branch.var);
        }
        for (size_t i = a; i < b && ok; ++i) {
          if (!(nodes[i].tree->node_class & kInnerSLR)) continue;
          const SignedTree* side = detail::sibling_of(nodes[i]);
          if (!side) continue;
          if (!is_sentence(side->formula)) {
            ok = false;
            local = {node_label(*nodes[i].tree), "SLR side formula is not a sentence"};
            break;
          }
          if (has_critical_leaf(*side, eps)) {
            ok = false;
            local = {node_label(*nodes[i].tree), "SLR side formula has a critical leaf"};
            break;
          }
          if (has_live_branch(*side)) {
            nl_holds = false;
            if (require & kRequireNL) {
              ok = false;
              local = {node_label(*nodes[i].tree), "SLR side formula has a live branch"};
              break;
            }
          }
        }
      }
      if (!ok) {
        if (!have_first) { first = local; have_first = true; }
        continue;
      }
      BranchDecomposition d;
      d.branch = branch;
      for (size_t i = 0; i < a; ++i) d.p3.push_back(node_label(*nodes[i].tree));
      for (size_t i = a; i < b; ++i) d.p2.push_back(node_label(*nodes[i].tree));
      for (size_t i = b; i < len; ++i) d.p1.push_back(node_label(*nodes[i].tree));
      d.nb_pia = true;
      for (size_t i = b; i < len; ++i)
        if (nodes[i].tree->node_class & kPiaBinder) d.nb_pia = false;
      d.nl = nl_holds;
      d.omega_constraints = std::move(constraints);
      d.omega_conf = true;  // consistency is judged at the witness level
      return d;
    }
  }
  if (why) *why = first;
  return std::nullopt;
}

// --- dependency orders --------------------------------------------------------

// Strict partial order on variables represented by its set of pairs.
struct DependencyOrder {
  std::set<std::pair<std::string, std::string>> pairs;
};

// Least strict partial order containing the constraints, or nullopt when the
// constraint graph has a cycle (including self-loops).
inline std::optional<DependencyOrder> close_constraints(
    const std::vector<std::pair<std::string, std::string>>& constraints) {
  DependencyOrder om;
  om.pairs.insert(constraints.begin(), constraints.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : om.pairs)
      for (const auto& [c, d] : om.pairs)
        if (b == c && !om.pairs.count({a, d})) add.emplace_back(a, d);
    for (auto& p : add) grew |= om.pairs.insert(p).second;
  }
  for (const auto& [a, b] : om.pairs)
    if (a == b) return std::nullopt;
  return om;
}

// --- classification ------------------------------------------------------------

enum class Level { None, Recursive, Inductive, RestrictedInductive, TameInductive };

inline const char* level_name(Level l) {
  switch (l) {
    case Level::None: return "None";
    case Level::Recursive: return "Recursive";
    case Level::Inductive: return "Inductive";
    case Level::RestrictedInductive: return "RestrictedInductive";
    case Level::TameInductive: return "TameInductive";
  }
  return "?";
}

struct TaggedBranch {
  bool in_lhs;  // which generation tree the branch lives in (+lhs or -rhs)
  BranchDecomposition decomposition;
};

struct Witness {
  OrderType epsilon;
  DependencyOrder omega;
  std::vector<TaggedBranch> branches;
};

struct Classification {
  Level level = Level::None;
  std::vector<Witness> witnesses;
};

namespace detail {

inline void binder_paths(const SignedTree& t, std::vector<int>& path,
                         std::vector<std::pair<std::vector<int>, unsigned>>& out) {
  if (conn_is_binder(t.formula->conn)) out.emplace_back(path, t.node_class);
  for (size_t i = 0; i < t.children.size(); ++i) {
    path.push_back((int)i);
    binder_paths(t.children[i], path, out);
    path.pop_back();
  }
}

inline bool is_prefix(const std::vector<int>& pre, const std::vector<int>& full) {
  if (pre.size() > full.size()) return false;
  for (size_t i = 0; i < pre.size(); ++i)
    if (pre[i] != full[i]) return false;
  return true;
}

// Decomposes every critical branch of both trees under `require`; returns the
// tagged decompositions or nullopt as soon as one branch is not good.
inline std::optional<std::vector<TaggedBranch>> decompose_all(
    const SignedTree& lhs, const SignedTree& rhs, const OrderType& eps, unsigned require) {
  std::vector<TaggedBranch> out;
  for (bool in_lhs : {true, false}) {
    const SignedTree& t = in_lhs ? lhs : rhs;
    for (const auto& br : critical_branches(t, eps)) {
      auto d = decompose_branch(t, br, eps, require);
      if (!d) return std::nullopt;
      out.push_back({in_lhs, std::move(*d)});
    }
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> all_constraints(
    const std::vector<TaggedBranch>& branches) {
  std::vector<std::pair<std::string, std::string>> cs;
  for (const auto& b : branches)
    cs.insert(cs.end(), b.decomposition.omega_constraints.begin(),
              b.decomposition.omega_constraints.end());
  return cs;
}

}  // namespace detail

inline Classification classify(const Inequality& ineq) {
  if (!in_l1(ineq))
    throw std::invalid_argument("classification requires an L1 inequality "
                                "(no starred binders, nominals or placeholders)");
  SignedTree lhs = signed_tree(ineq.lhs, Polarity::Positive);
  SignedTree rhs = signed_tree(ineq.rhs, Polarity::Negative);

  std::set<std::string> var_set = free_propvars(ineq);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  size_t n = vars.size();

  std::vector<std::pair<std::vector<int>, unsigned>> binders_lhs, binders_rhs;
  std::vector<int> tmp;
  detail::binder_paths(lhs, tmp, binders_lhs);
  detail::binder_paths(rhs, tmp, binders_rhs);
  bool binders_all_pia_signed = true;  // only +nu / -mu nodes present
  for (const auto& [p, roles] : binders_lhs)
    binders_all_pia_signed &= (roles & kPiaBinder) != 0;
  for (const auto& [p, roles] : binders_rhs)
    binders_all_pia_signed &= (roles & kPiaBinder) != 0;

  Classification out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    OrderType eps;
    for (size_t i = 0; i < n; ++i) eps.solve_positive[vars[i]] = !((mask >> i) & 1);

    auto basic = detail::decompose_all(lhs, rhs, eps, kRequireGood);
    if (!basic) continue;
    Level lvl = Level::Recursive;
    Witness w{eps, {}, *basic};

    auto omega = close_constraints(detail::all_constraints(*basic));
    if (omega) {
      lvl = Level::Inductive;
      w.omega = *omega;
    }

    // Which binders lie on critical branches?
    auto on_critical = [&](bool in_lhs, const std::vector<int>& bp) {
      const SignedTree& t = in_lhs ? lhs : rhs;
      for (const auto& br : critical_branches(t, eps))
        if (detail::is_prefix(bp, br.path)) return true;
      return false;
    };
    bool every_binder_critical = true, no_binder_critical = true;
    for (const auto& [p, roles] : binders_lhs)
      (on_critical(true, p) ? no_binder_critical : every_binder_critical) = false;
    for (const auto& [p, roles] : binders_rhs)
      (on_critical(false, p) ? no_binder_critical : every_binder_critical) = false;

    if (omega) {
      // restricted: NB-PIA and NL on every critical branch, binders covered
      bool nb_pia = true;
      for (const auto& b : *basic) nb_pia &= b.decomposition.nb_pia;
      if (nb_pia && every_binder_critical) {
        auto with_nl = detail::decompose_all(lhs, rhs, eps, kRequireNL);
        if (with_nl) {
          auto omega_nl = close_constraints(detail::all_constraints(*with_nl));
          if (omega_nl) {
            lvl = Level::RestrictedInductive;
            w.omega = *omega_nl;
            w.branches = *with_nl;
          }
        }
      }
      // tame: empty Omega achievable, no binder on a critical branch, and
      // only +nu / -mu binder nodes anywhere
      if (no_binder_critical && binders_all_pia_signed) {
        auto tame = detail::decompose_all(lhs, rhs, eps, kRequireNoOmega);
        if (tame) {
          lvl = Level::TameInductive;
          w.omega = {};
          w.branches = *tame;
        }
      }
    }

    if (lvl > out.level) {
      out.level = lvl;
      out.witnesses.clear();
    }
    if (lvl == out.level && lvl != Level::None) out.witnesses.push_back(std::move(w));
  }
  return out;
}

}  // namespace mualba
