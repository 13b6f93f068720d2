#pragma once

// Formula AST for the mu-calculus over modal bi-Heyting algebras, with the
// extended sorts (nominals, co-nominals, placeholders) and both plain and
// starred fixed point binders.  Values are immutable and shared; all
// operations below are pure.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mualba {

enum class Conn : std::uint8_t {
  Bot, Top,
  Prop, Fix, Place, Nom, CoNom,      // leaves with a name
  And, Or, Imp, CoImp,               // binary; CoImp is co-implication "-<"
  Box, Dia, BBox, BDia,              // unary; BBox = [b], BDia = <b>
  Mu, Nu, MuStar, NuStar             // binders
};

inline bool conn_is_named_leaf(Conn c) {
  return c == Conn::Prop || c == Conn::Fix || c == Conn::Place ||
         c == Conn::Nom || c == Conn::CoNom;
}
inline bool conn_is_leaf(Conn c) {
  return c == Conn::Bot || c == Conn::Top || conn_is_named_leaf(c);
}
inline bool conn_is_binary(Conn c) {
  return c == Conn::And || c == Conn::Or || c == Conn::Imp || c == Conn::CoImp;
}
inline bool conn_is_unary(Conn c) {
  return c == Conn::Box || c == Conn::Dia || c == Conn::BBox || c == Conn::BDia;
}
inline bool conn_is_binder(Conn c) {
  return c == Conn::Mu || c == Conn::Nu || c == Conn::MuStar || c == Conn::NuStar;
}
inline bool conn_is_star_binder(Conn c) {
  return c == Conn::MuStar || c == Conn::NuStar;
}

enum class Polarity : std::uint8_t { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Conn conn;
  std::string name;            // leaf variable name, or the bound variable of a binder
  Formula left, right;         // unary and binders use `left` only

  FormulaNode(Conn c, std::string n, Formula l, Formula r)
      : conn(c), name(std::move(n)), left(std::move(l)), right(std::move(r)) {}
};

// A variable is identified by its sort together with its name; the five
// namespaces are disjoint.
struct VarKey {
  Conn sort;          // Prop, Fix, Place, Nom or CoNom
  std::string name;
  bool operator<(const VarKey& o) const {
    return sort != o.sort ? sort < o.sort : name < o.name;
  }
  bool operator==(const VarKey& o) const { return sort == o.sort && name == o.name; }
};

struct PolarityError : std::runtime_error {
  std::string var;
  explicit PolarityError(const std::string& v)
      : std::runtime_error("bound fixed point variable " + v +
                           " has a negative occurrence"),
        var(v) {}
};

struct MixedBinders : std::runtime_error {
  MixedBinders() : std::runtime_error("formula mixes starred and unstarred binders") {}
};

// --- constructors -----------------------------------------------------------

inline Formula mk(Conn c, std::string n = {}, Formula l = nullptr, Formula r = nullptr) {
  return std::make_shared<FormulaNode>(c, std::move(n), std::move(l), std::move(r));
}

inline Formula bot() { static const Formula f = mk(Conn::Bot); return f; }
inline Formula top() { static const Formula f = mk(Conn::Top); return f; }
inline Formula prop(std::string n) { return mk(Conn::Prop, std::move(n)); }
inline Formula fixvar(std::string n) { return mk(Conn::Fix, std::move(n)); }
inline Formula placevar(std::string n) { return mk(Conn::Place, std::move(n)); }
inline Formula nominal(std::string n) { return mk(Conn::Nom, std::move(n)); }
inline Formula conominal(std::string n) { return mk(Conn::CoNom, std::move(n)); }

inline Formula f_and(Formula a, Formula b) { return mk(Conn::And, {}, std::move(a), std::move(b)); }
inline Formula f_or(Formula a, Formula b) { return mk(Conn::Or, {}, std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return mk(Conn::Imp, {}, std::move(a), std::move(b)); }
inline Formula coimp(Formula a, Formula b) { return mk(Conn::CoImp, {}, std::move(a), std::move(b)); }
inline Formula box(Formula a) { return mk(Conn::Box, {}, std::move(a)); }
inline Formula dia(Formula a) { return mk(Conn::Dia, {}, std::move(a)); }
inline Formula bbox(Formula a) { return mk(Conn::BBox, {}, std::move(a)); }
inline Formula bdia(Formula a) { return mk(Conn::BDia, {}, std::move(a)); }

// Polarities of the free occurrences of one variable, in left-to-right order.
inline void polarity_occurrences_rec(const Formula& f, const VarKey& v, Polarity sign,
                                     std::vector<Polarity>& out) {
  switch (f->conn) {
    case Conn::Bot: case Conn::Top:
      return;
    case Conn::Prop: case Conn::Fix: case Conn::Place: case Conn::Nom: case Conn::CoNom:
      if (f->conn == v.sort && f->name == v.name) out.push_back(sign);
      return;
    case Conn::Imp:
      polarity_occurrences_rec(f->left, v, flip(sign), out);
      polarity_occurrences_rec(f->right, v, sign, out);
      return;
    case Conn::CoImp:
      polarity_occurrences_rec(f->left, v, sign, out);
      polarity_occurrences_rec(f->right, v, flip(sign), out);
      return;
    case Conn::And: case Conn::Or:
      polarity_occurrences_rec(f->left, v, sign, out);
      polarity_occurrences_rec(f->right, v, sign, out);
      return;
    case Conn::Box: case Conn::Dia: case Conn::BBox: case Conn::BDia:
      polarity_occurrences_rec(f->left, v, sign, out);
      return;
    case Conn::Mu: case Conn::Nu: case Conn::MuStar: case Conn::NuStar:
      if (v.sort == Conn::Fix && f->name == v.name) return;  // shadowed
      polarity_occurrences_rec(f->left, v, sign, out);
      return;
  }
}

inline std::vector<Polarity> polarity_of_occurrences(const Formula& f, const VarKey& v) {
  std::vector<Polarity> out;
  polarity_occurrences_rec(f, v, Polarity::Positive, out);
  return out;
}

// Binder constructors check that the bound variable only occurs positively.
inline Formula binder(Conn c, const std::string& var, Formula body) {
  for (Polarity p : polarity_of_occurrences(body, VarKey{Conn::Fix, var}))
    if (p == Polarity::Negative) throw PolarityError(var);
  return mk(c, var, std::move(body));
}
inline Formula mu(const std::string& v, Formula b) { return binder(Conn::Mu, v, std::move(b)); }
inline Formula nu(const std::string& v, Formula b) { return binder(Conn::Nu, v, std::move(b)); }
inline Formula mustar(const std::string& v, Formula b) { return binder(Conn::MuStar, v, std::move(b)); }
inline Formula nustar(const std::string& v, Formula b) { return binder(Conn::NuStar, v, std::move(b)); }

// --- structural equality ----------------------------------------------------

inline bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->conn != b->conn || a->name != b->name) return false;
  if (bool(a->left) != bool(b->left) || bool(a->right) != bool(b->right)) return false;
  if (a->left && !equal(a->left, b->left)) return false;
  if (a->right && !equal(a->right, b->right)) return false;
  return true;
}

// --- variable queries -------------------------------------------------------

inline void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                          std::set<VarKey>& out) {
  switch (f->conn) {
    case Conn::Bot: case Conn::Top:
      return;
    case Conn::Fix:
      if (!bound.count(f->name)) out.insert({Conn::Fix, f->name});
      return;
    case Conn::Prop: case Conn::Place: case Conn::Nom: case Conn::CoNom:
      out.insert({f->conn, f->name});
      return;
    default:
      if (conn_is_binder(f->conn)) {
        bool fresh = bound.insert(f->name).second;
        free_vars_rec(f->left, bound, out);
        if (fresh) bound.erase(f->name);
        return;
      }
      if (f->left) free_vars_rec(f->left, bound, out);
      if (f->right) free_vars_rec(f->right, bound, out);
  }
}

inline std::set<VarKey> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<VarKey> out;
  free_vars_rec(f, bound, out);
  return out;
}

inline bool occurs_free(const Formula& f, const VarKey& v) {
  auto fv = free_vars(f);
  return fv.count(v) != 0;
}

inline std::set<std::string> free_propvars(const Formula& f) {
  std::set<std::string> out;
  for (const auto& v : free_vars(f))
    if (v.sort == Conn::Prop) out.insert(v.name);
  return out;
}

inline bool contains_propvar(const Formula& f) { return !free_propvars(f).empty(); }

// A sentence has no free fixed point variables; a constant sentence in
// addition has no propositional or placeholder variables.
inline bool is_sentence(const Formula& f) {
  for (const auto& v : free_vars(f))
    if (v.sort == Conn::Fix) return false;
  return true;
}
inline bool is_constant_sentence(const Formula& f) {
  for (const auto& v : free_vars(f))
    if (v.sort == Conn::Fix || v.sort == Conn::Prop || v.sort == Conn::Place) return false;
  return true;
}

inline bool contains_conn(const Formula& f, bool (*pred)(Conn)) {
  if (pred(f->conn)) return true;
  if (f->left && contains_conn(f->left, pred)) return true;
  if (f->right && contains_conn(f->right, pred)) return true;
  return false;
}

// --- substitution -----------------------------------------------------------

using Substitution = std::map<VarKey, Formula>;

// Smallest primed variant of `base` avoiding everything in `avoid`.
inline std::string fresh_variant(const std::string& base, const std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    std::string cand = base + "'" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

inline Formula substitute_rec(const Formula& f, const Substitution& s) {
  switch (f->conn) {
    case Conn::Bot: case Conn::Top:
      return f;
    case Conn::Prop: case Conn::Fix: case Conn::Place: case Conn::Nom: case Conn::CoNom: {
      auto it = s.find({f->conn, f->name});
      return it == s.end() ? f : it->second;
    }
    default:
      if (conn_is_binder(f->conn)) {
        // Drop any binding for the bound variable itself, and rename the
        // bound variable if some replacement would capture it.
        Substitution inner;
        bool capture = false;
        std::set<std::string> avoid;
        for (const auto& [k, repl] : s) {
          if (k.sort == Conn::Fix && k.name == f->name) continue;
          if (!occurs_free(f->left, k)) continue;
          inner.emplace(k, repl);
          for (const auto& fv : free_vars(repl))
            if (fv.sort == Conn::Fix) {
              avoid.insert(fv.name);
              if (fv.name == f->name) capture = true;
            }
        }
        if (inner.empty()) return f;
        std::string var = f->name;
        Formula body = f->left;
        if (capture) {
          for (const auto& fv : free_vars(body))
            if (fv.sort == Conn::Fix) avoid.insert(fv.name);
          var = fresh_variant(f->name, avoid);
          Substitution rename{{VarKey{Conn::Fix, f->name}, fixvar(var)}};
          body = substitute_rec(body, rename);
        }
        return mk(f->conn, var, substitute_rec(body, inner));
      }
      if (conn_is_unary(f->conn)) return mk(f->conn, {}, substitute_rec(f->left, s));
      return mk(f->conn, {}, substitute_rec(f->left, s), substitute_rec(f->right, s));
  }
}

inline Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  return substitute_rec(f, s);
}

// --- star transformation ----------------------------------------------------

inline Formula map_binders(const Formula& f, Conn mu_from, Conn mu_to, Conn nu_from, Conn nu_to) {
  Conn c = f->conn;
  if (c == mu_from) c = mu_to;
  else if (c == nu_from) c = nu_to;
  if (conn_is_leaf(f->conn)) return f;
  Formula l = f->left ? map_binders(f->left, mu_from, mu_to, nu_from, nu_to) : nullptr;
  Formula r = f->right ? map_binders(f->right, mu_from, mu_to, nu_from, nu_to) : nullptr;
  if (c == f->conn && l.get() == f->left.get() && r.get() == f->right.get()) return f;
  return mk(c, f->name, std::move(l), std::move(r));
}

inline bool has_plain_binders(const Formula& f) {
  return contains_conn(f, +[](Conn c) { return c == Conn::Mu || c == Conn::Nu; });
}
inline bool has_star_binders(const Formula& f) {
  return contains_conn(f, conn_is_star_binder);
}

inline Formula star(const Formula& f) {
  if (has_plain_binders(f) && has_star_binders(f)) throw MixedBinders();
  return map_binders(f, Conn::Mu, Conn::MuStar, Conn::Nu, Conn::NuStar);
}

inline Formula unstar(const Formula& f) {
  if (has_plain_binders(f) && has_star_binders(f)) throw MixedBinders();
  return map_binders(f, Conn::MuStar, Conn::Mu, Conn::NuStar, Conn::Nu);
}

// --- language classification ------------------------------------------------

enum class LanguageTag { L, Lplus, L1, L1plus, L2, L2plus, Lstar, LstarPlus };

// Least language of the lattice containing the formula.  Formulas mixing
// plain and starred binders do not live in any of the layers; they are
// reported as L*(+) since the engine treats stars as the ambient case.
inline LanguageTag language_of(const Formula& f) {
  bool plus = contains_conn(f, +[](Conn c) {
    return c == Conn::Nom || c == Conn::CoNom || c == Conn::BBox || c == Conn::BDia ||
           c == Conn::Place;
  });
  bool star_b = has_star_binders(f);
  bool plain_b = has_plain_binders(f);
  if (star_b) return plus ? LanguageTag::LstarPlus : LanguageTag::Lstar;
  if (plain_b) return plus ? LanguageTag::L1plus : LanguageTag::L1;
  return plus ? LanguageTag::Lplus : LanguageTag::L;
}

inline bool in_l1(const Formula& f) {
  LanguageTag t = language_of(f);
  return t == LanguageTag::L || t == LanguageTag::L1;
}

// --- inequalities -----------------------------------------------------------

struct Inequality {
  Formula lhs, rhs;
};

inline bool equal(const Inequality& a, const Inequality& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

inline std::set<VarKey> free_vars(const Inequality& iq) {
  auto out = free_vars(iq.lhs);
  auto r = free_vars(iq.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

inline std::set<std::string> free_propvars(const Inequality& iq) {
  std::set<std::string> out = free_propvars(iq.lhs);
  auto r = free_propvars(iq.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

inline bool is_pure(const Formula& f) {
  for (const auto& v : free_vars(f))
    if (v.sort == Conn::Prop || v.sort == Conn::Place) return false;
  return true;
}
inline bool is_pure(const Inequality& iq) { return is_pure(iq.lhs) && is_pure(iq.rhs); }

inline bool in_l1(const Inequality& iq) { return in_l1(iq.lhs) && in_l1(iq.rhs); }

inline Inequality star(const Inequality& iq) { return {star(iq.lhs), star(iq.rhs)}; }

}  // namespace mualba
