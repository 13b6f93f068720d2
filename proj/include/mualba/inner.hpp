#pragma once

// Inner formulas: the syntactic certificates licensing the fixed point
// approximation rules.  A tau-diamond inner formula denotes a completely
// join-preserving term function (tau-box dually, meet-preserving); the two
// grammars are mutually recursive and swap, with the order type dualised, at
// the antecedent of an implication and the subtrahend of a co-implication.
//
// Recognition decomposes a concrete formula maximally: recursion follows the
// grammar as long as a production matches, and every maximal non-matching
// subterm is cut out as a fresh placeholder slot x1, x2, ...  Free fixed
// point variables become slots bound to themselves; a cut containing a fixed
// point variable in scope is impossible and recognition fails there.
// Parameter positions (the pi of the grammar) must be constant sentences;
// they stay inline in the template and are recorded as z1, z2, ...

#include <string>
#include <vector>

#include "mualba/formula.hpp"
#include "mualba/printer.hpp"

namespace mualba {

enum class InnerKind { BoxIF, DiaIF };

inline InnerKind dual(InnerKind k) {
  return k == InnerKind::BoxIF ? InnerKind::DiaIF : InnerKind::BoxIF;
}

struct InnerSlot {
  std::string name;      // placeholder name in the template (x1, x2, ...)
  bool is_fix;           // slot stands for a fixed point variable
  bool tau_one;          // order type entry: true = 1, false = dual
  Formula binding;       // extracted subformula, or the fixed point variable
};

struct InnerFormulaCertificate {
  InnerKind kind = InnerKind::DiaIF;
  Formula templ;                                        // over the slot placeholders
  std::vector<InnerSlot> slots;                         // in order of first occurrence
  std::vector<std::pair<std::string, Formula>> params;  // constant parameter sentences

  size_t hole_count() const {
    size_t n = 0;
    for (const auto& s : slots) n += !s.is_fix;
    return n;
  }
};

struct NotInner : std::runtime_error {
  std::string at;
  NotInner(const std::string& where, const std::string& why)
      : std::runtime_error("not an inner formula at " + where + ": " + why), at(where) {}
};

namespace detail {

class InnerRecognizer {
 public:
  InnerRecognizer(InnerKind root_kind) : root_(root_kind) {}

  InnerFormulaCertificate run(const Formula& f) {
    cert_.kind = root_;
    cert_.templ = rec(f, 0);
    return std::move(cert_);
  }

 private:
  InnerKind root_;
  InnerFormulaCertificate cert_;
  std::map<std::string, std::vector<int>> bound_;  // template binders -> parity stack

  InnerKind kind_at(int parity) const { return parity % 2 == 0 ? root_ : dual(root_); }

  // pi positions: constant sentences not mentioning anything in scope
  static bool is_param(const Formula& f) { return is_constant_sentence(f); }

  bool cut_possible(const Formula& f) const {
    for (const auto& v : free_vars(f))
      if (v.sort == Conn::Fix) return false;  // in scope or stray, either way no
    return true;
  }

  Formula cut(const Formula& f, int parity) {
    if (!cut_possible(f))
      throw NotInner(print_formula(f),
                     "subterm mentions a fixed point variable in scope");
    std::string nm = "x" + std::to_string(cert_.slots.size() + 1);
    cert_.slots.push_back({nm, false, parity % 2 == 0, f});
    return placevar(nm);
  }

  Formula param(const Formula& f) {
    std::string nm = "z" + std::to_string(cert_.params.size() + 1);
    cert_.params.emplace_back(nm, f);
    return f;  // parameters stay inline
  }

  Formula fix_occurrence(const Formula& f, int parity) {
    auto it = bound_.find(f->name);
    if (it != bound_.end() && !it->second.empty()) {
      if (it->second.back() % 2 != parity % 2)
        throw NotInner(f->name, "bound variable used at the dual order type");
      return f;  // binder-introduced variables stay as themselves
    }
    for (auto& s : cert_.slots)
      if (s.is_fix && s.binding->name == f->name) {
        if (s.tau_one != (parity % 2 == 0))
          throw NotInner(f->name, "variable occurs at both order types");
        return placevar(s.name);
      }
    std::string nm = "x" + std::to_string(cert_.slots.size() + 1);
    cert_.slots.push_back({nm, true, parity % 2 == 0, f});
    return placevar(nm);
  }

  Formula rec(const Formula& f, int parity) {
    if (f->conn == Conn::Place)
      throw NotInner(print_formula(f), "input already contains placeholders");
    if (f->conn == Conn::Fix) return fix_occurrence(f, parity);
    if (kind_at(parity) == InnerKind::DiaIF) {
      switch (f->conn) {
        case Conn::Dia:
          return dia(rec(f->left, parity));
        case Conn::Or:
          return f_or(rec(f->left, parity), rec(f->right, parity));
        case Conn::Mu: case Conn::MuStar: {
          bound_[f->name].push_back(parity);
          Formula body = rec(f->left, parity);
          bound_[f->name].pop_back();
          return mk(f->conn, f->name, body);
        }
        case Conn::CoImp:
          if (is_param(f->right)) return coimp(rec(f->left, parity), param(f->right));
          if (is_param(f->left)) return coimp(param(f->left), rec(f->right, parity + 1));
          return cut(f, parity);
        case Conn::And:
          if (is_param(f->left)) return f_and(param(f->left), rec(f->right, parity));
          if (is_param(f->right)) return f_and(rec(f->left, parity), param(f->right));
          return cut(f, parity);
        default:
          return cut(f, parity);
      }
    }
    switch (f->conn) {
      case Conn::Box:
        return box(rec(f->left, parity));
      case Conn::And:
        return f_and(rec(f->left, parity), rec(f->right, parity));
      case Conn::Nu: case Conn::NuStar: {
        bound_[f->name].push_back(parity);
        Formula body = rec(f->left, parity);
        bound_[f->name].pop_back();
        return mk(f->conn, f->name, body);
      }
      case Conn::Imp:
        if (is_param(f->left)) return imp(param(f->left), rec(f->right, parity));
        if (is_param(f->right)) return imp(rec(f->left, parity + 1), param(f->right));
        return cut(f, parity);
      case Conn::Or:
        if (is_param(f->left)) return f_or(param(f->left), rec(f->right, parity));
        if (is_param(f->right)) return f_or(rec(f->left, parity), param(f->right));
        return cut(f, parity);
      default:
        return cut(f, parity);
    }
  }
};

}  // namespace detail

// Recognize f as an inner formula of the requested kind.  Free fixed point
// variables of f are treated as the binder-scoped tuple: they become slots.
inline InnerFormulaCertificate recognize_inner(const Formula& f, InnerKind kind) {
  detail::InnerRecognizer r(kind);
  // A whole-formula cut is the degenerate base decomposition psi = x1; it is
  // legal whenever f mentions no fixed point variable in scope.
  return r.run(f);
}

// The concrete formula the certificate stands for: template with every slot
// replaced by its binding.
inline Formula certificate_expansion(const InnerFormulaCertificate& c) {
  Substitution s;
  for (const auto& slot : c.slots) s[{Conn::Place, slot.name}] = slot.binding;
  return substitute(c.templ, s);
}

}  // namespace mualba
