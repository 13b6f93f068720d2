#pragma once

// Syntactically open and closed formulas, and their "almost" variants, by the
// defining mutual recursion.  Open and closed differ only in which special
// items they admit:
//
//   closed:  nominals and <b> only positive, co-nominals and [b] only
//            negative, mu binders positive, nu binders negative
//   open:    the dual
//   almost:  as above but with no constraint on the binders
//
// Fixed point and placeholder variables are neutral (they belong to both
// grammars); unstarred binders classify like their starred forms.

#include "mualba/formula.hpp"

namespace mualba {

struct SyntacticShape {
  bool closed = false;
  bool open = false;
  bool almost_closed = false;
  bool almost_open = false;
};

inline SyntacticShape syntactic_shape(const Formula& f) {
  SyntacticShape s;
  switch (f->conn) {
    case Conn::Bot: case Conn::Top: case Conn::Prop: case Conn::Fix: case Conn::Place:
      return {true, true, true, true};
    case Conn::Nom:
      return {true, false, true, false};
    case Conn::CoNom:
      return {false, true, false, true};
    case Conn::And: case Conn::Or: {
      SyntacticShape l = syntactic_shape(f->left), r = syntactic_shape(f->right);
      return {l.closed && r.closed, l.open && r.open,
              l.almost_closed && r.almost_closed, l.almost_open && r.almost_open};
    }
    case Conn::Imp: {
      // open antecedent side pairs with a closed body and vice versa
      SyntacticShape l = syntactic_shape(f->left), r = syntactic_shape(f->right);
      return {l.open && r.closed, l.closed && r.open,
              l.almost_open && r.almost_closed, l.almost_closed && r.almost_open};
    }
    case Conn::CoImp: {
      SyntacticShape l = syntactic_shape(f->left), r = syntactic_shape(f->right);
      return {l.closed && r.open, l.open && r.closed,
              l.almost_closed && r.almost_open, l.almost_open && r.almost_closed};
    }
    case Conn::Box: case Conn::Dia: {
      SyntacticShape c = syntactic_shape(f->left);
      return {c.closed, c.open, c.almost_closed, c.almost_open};
    }
    case Conn::BDia: {
      SyntacticShape c = syntactic_shape(f->left);
      return {c.closed, false, c.almost_closed, false};
    }
    case Conn::BBox: {
      SyntacticShape c = syntactic_shape(f->left);
      return {false, c.open, false, c.almost_open};
    }
    case Conn::Mu: case Conn::MuStar: {
      SyntacticShape c = syntactic_shape(f->left);
      return {c.closed, false, c.almost_closed, c.almost_open};
    }
    case Conn::Nu: case Conn::NuStar: {
      SyntacticShape c = syntactic_shape(f->left);
      return {false, c.open, c.almost_closed, c.almost_open};
    }
  }
  return s;
}

inline bool syntactically_closed(const Formula& f) { return syntactic_shape(f).closed; }
inline bool syntactically_open(const Formula& f) { return syntactic_shape(f).open; }

// Sign-scan characterization, used as an independent cross-check in tests.
namespace detail {

inline void shape_scan(const Formula& f, Polarity sign, bool& nom_pos, bool& nom_neg,
                       bool& conom_pos, bool& conom_neg, bool& bdia_pos, bool& bdia_neg,
                       bool& bbox_pos, bool& bbox_neg, bool& mu_pos, bool& mu_neg,
                       bool& nu_pos, bool& nu_neg) {
  bool pos = sign == Polarity::Positive;
  switch (f->conn) {
    case Conn::Nom: (pos ? nom_pos : nom_neg) = true; return;
    case Conn::CoNom: (pos ? conom_pos : conom_neg) = true; return;
    case Conn::BDia: (pos ? bdia_pos : bdia_neg) = true; break;
    case Conn::BBox: (pos ? bbox_pos : bbox_neg) = true; break;
    case Conn::Mu: case Conn::MuStar: (pos ? mu_pos : mu_neg) = true; break;
    case Conn::Nu: case Conn::NuStar: (pos ? nu_pos : nu_neg) = true; break;
    default: break;
  }
  if (f->conn == Conn::Imp) {
    shape_scan(f->left, flip(sign), nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos,
               bdia_neg, bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
    shape_scan(f->right, sign, nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos,
               bdia_neg, bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
    return;
  }
  if (f->conn == Conn::CoImp) {
    shape_scan(f->left, sign, nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos,
               bdia_neg, bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
    shape_scan(f->right, flip(sign), nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos,
               bdia_neg, bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
    return;
  }
  if (f->left)
    shape_scan(f->left, sign, nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos, bdia_neg,
               bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
  if (f->right)
    shape_scan(f->right, sign, nom_pos, nom_neg, conom_pos, conom_neg, bdia_pos, bdia_neg,
               bbox_pos, bbox_neg, mu_pos, mu_neg, nu_pos, nu_neg);
}

}  // namespace detail

inline SyntacticShape syntactic_shape_by_polarity(const Formula& f) {
  bool nom_p = false, nom_n = false, con_p = false, con_n = false, bd_p = false,
       bd_n = false, bb_p = false, bb_n = false, mu_p = false, mu_n = false,
       nu_p = false, nu_n = false;
  detail::shape_scan(f, Polarity::Positive, nom_p, nom_n, con_p, con_n, bd_p, bd_n, bb_p,
                     bb_n, mu_p, mu_n, nu_p, nu_n);
  SyntacticShape s;
  s.almost_closed = !nom_n && !bd_n && !con_p && !bb_p;
  s.almost_open = !nom_p && !bd_p && !con_n && !bb_n;
  s.closed = s.almost_closed && !mu_n && !nu_p;
  s.open = s.almost_open && !mu_p && !nu_n;
  return s;
}

}  // namespace mualba
