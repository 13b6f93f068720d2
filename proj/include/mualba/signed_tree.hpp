#pragma once

// Signed generation trees.  Every node carries the sign induced by the root
// sign (implication flips its left child, co-implication its right child)
// together with the set of admissible skeleton/PIA roles of the signed
// connective.  The roles follow the node classification table: for this
// signature
//
//   outer skeleton:  Delta-adjoints  +/\ +\/ -/\ -\/
//                    SLR             +<> -[] +-< -->
//   inner skeleton:  binders         +mu -nu
//                    SLA             +<> -[] +\/ -/\
//                    SLR             +/\ -\/ +-< -->
//   PIA:             binders         +nu -mu
//                    SRA             +[] -<> +/\ -\/
//                    SRR             +\/ -/\ +-> ---
//
// Starred binders classify like their plain counterparts; the black
// connectives have no role (they never occur in classifiable input).

#include <string>
#include <vector>

#include "mualba/formula.hpp"
#include "mualba/printer.hpp"

namespace mualba {

enum NodeRole : unsigned {
  kRoleNone = 0,
  kOuterDelta = 1u << 0,
  kOuterSLR = 1u << 1,
  kInnerBinder = 1u << 2,
  kInnerSLA = 1u << 3,
  kInnerSLR = 1u << 4,
  kPiaBinder = 1u << 5,
  kPiaSRA = 1u << 6,
  kPiaSRR = 1u << 7,
};

constexpr unsigned kOuterMask = kOuterDelta | kOuterSLR;
constexpr unsigned kInnerMask = kInnerBinder | kInnerSLA | kInnerSLR;
constexpr unsigned kPiaMask = kPiaBinder | kPiaSRA | kPiaSRR;

inline unsigned node_roles(Conn c, Polarity sign) {
  bool pos = sign == Polarity::Positive;
  switch (c) {
    case Conn::And:
      return pos ? (kOuterDelta | kInnerSLR | kPiaSRA)
                 : (kOuterDelta | kInnerSLA | kPiaSRR);
    case Conn::Or:
      return pos ? (kOuterDelta | kInnerSLA | kPiaSRR)
                 : (kOuterDelta | kInnerSLR | kPiaSRA);
    case Conn::Dia:
      return pos ? (kOuterSLR | kInnerSLA) : kPiaSRA;
    case Conn::Box:
      return pos ? kPiaSRA : (kOuterSLR | kInnerSLA);
    case Conn::CoImp:
      return pos ? (kOuterSLR | kInnerSLR) : kPiaSRR;
    case Conn::Imp:
      return pos ? kPiaSRR : (kOuterSLR | kInnerSLR);
    case Conn::Mu: case Conn::MuStar:
      return pos ? kInnerBinder : kPiaBinder;
    case Conn::Nu: case Conn::NuStar:
      return pos ? kPiaBinder : kInnerBinder;
    default:
      return kRoleNone;
  }
}

struct SignedTree {
  Formula formula;            // subformula rooted here
  Polarity sign;
  unsigned node_class;        // admissible roles of (connective, sign)
  std::vector<SignedTree> children;
};

inline SignedTree signed_tree(const Formula& f, Polarity root_sign) {
  SignedTree t{f, root_sign, node_roles(f->conn, root_sign), {}};
  switch (f->conn) {
    case Conn::Imp:
      t.children.push_back(signed_tree(f->left, flip(root_sign)));
      t.children.push_back(signed_tree(f->right, root_sign));
      break;
    case Conn::CoImp:
      t.children.push_back(signed_tree(f->left, root_sign));
      t.children.push_back(signed_tree(f->right, flip(root_sign)));
      break;
    default:
      if (f->left) t.children.push_back(signed_tree(f->left, root_sign));
      if (f->right) t.children.push_back(signed_tree(f->right, root_sign));
  }
  return t;
}

inline std::string node_label(const SignedTree& t) {
  std::string s = t.sign == Polarity::Positive ? "+" : "-";
  switch (t.formula->conn) {
    case Conn::And: return s + "&";
    case Conn::Or: return s + "|";
    case Conn::Imp: return s + "->";
    case Conn::CoImp: return s + "-<";
    case Conn::Box: return s + "[]";
    case Conn::Dia: return s + "<>";
    case Conn::BBox: return s + "[b]";
    case Conn::BDia: return s + "<b>";
    case Conn::Mu: return s + "mu";
    case Conn::Nu: return s + "nu";
    case Conn::MuStar: return s + "mu*";
    case Conn::NuStar: return s + "nu*";
    case Conn::Bot: return s + "F";
    case Conn::Top: return s + "T";
    default: return s + print_formula(t.formula);
  }
}

// A branch is the path of child indices from the root to a leaf.
struct Branch {
  std::vector<int> path;
  std::string var;   // leaf variable name (propositional)
  Polarity sign;     // sign of the leaf
};

// Order types: 1 means the variable is solved for positively, d (dual) that
// it is solved for negatively.
struct OrderType {
  std::map<std::string, bool> solve_positive;  // true = 1, false = d

  bool critical(const std::string& var, Polarity leaf_sign) const {
    auto it = solve_positive.find(var);
    if (it == solve_positive.end()) return false;
    return it->second ? leaf_sign == Polarity::Positive : leaf_sign == Polarity::Negative;
  }
};

inline const SignedTree& subtree_at(const SignedTree& t, const std::vector<int>& path,
                                    size_t depth) {
  const SignedTree* cur = &t;
  for (size_t i = 0; i < depth; ++i) cur = &cur->children[path[i]];
  return *cur;
}

namespace detail {

inline void collect_leaves(const SignedTree& t, std::vector<int>& path,
                           std::vector<Branch>& out) {
  if (t.formula->conn == Conn::Prop) {
    out.push_back({path, t.formula->name, t.sign});
    return;
  }
  for (size_t i = 0; i < t.children.size(); ++i) {
    path.push_back((int)i);
    collect_leaves(t.children[i], path, out);
    path.pop_back();
  }
}

}  // namespace detail

// All branches ending in a propositional variable (the live branches).
inline std::vector<Branch> live_branches(const SignedTree& t) {
  std::vector<Branch> out;
  std::vector<int> path;
  detail::collect_leaves(t, path, out);
  return out;
}

inline std::vector<Branch> critical_branches(const SignedTree& t, const OrderType& eps) {
  std::vector<Branch> out;
  for (auto& b : live_branches(t))
    if (eps.critical(b.var, b.sign)) out.push_back(b);
  return out;
}

// True when the signed subtree contains an epsilon-critical propositional
// leaf; used by the GB2/GB3 side conditions on the non-branch subtrees.
inline bool has_critical_leaf(const SignedTree& t, const OrderType& eps) {
  if (t.formula->conn == Conn::Prop) return eps.critical(t.formula->name, t.sign);
  for (const auto& c : t.children)
    if (has_critical_leaf(c, eps)) return true;
  return false;
}

inline bool has_live_branch(const SignedTree& t) {
  if (t.formula->conn == Conn::Prop) return true;
  for (const auto& c : t.children)
    if (has_live_branch(c)) return true;
  return false;
}

}  // namespace mualba
