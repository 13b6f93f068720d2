#pragma once

// Concrete syntax printer.  Inverse of the parser: parse(print(f)) is
// structurally equal to f.

#include <string>

#include "mualba/formula.hpp"

namespace mualba {

// Precedence levels, weakest first: binders, -> -<, |, &, unary, atoms.
inline int precedence(Conn c) {
  switch (c) {
    case Conn::Mu: case Conn::Nu: case Conn::MuStar: case Conn::NuStar: return 0;
    case Conn::Imp: case Conn::CoImp: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    case Conn::Box: case Conn::Dia: case Conn::BBox: case Conn::BDia: return 4;
    default: return 5;
  }
}

inline void print_rec(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f->conn);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f->conn) {
    case Conn::Bot: out += 'F'; break;
    case Conn::Top: out += 'T'; break;
    case Conn::Prop: out += f->name; break;
    case Conn::Fix: out += f->name; break;
    case Conn::Place: out += '?'; out += f->name; break;
    case Conn::Nom: out += '$'; out += f->name; break;
    case Conn::CoNom: out += '#'; out += f->name; break;
    case Conn::And:
      print_rec(f->left, 3, out); out += " & "; print_rec(f->right, 4, out); break;
    case Conn::Or:
      print_rec(f->left, 2, out); out += " | "; print_rec(f->right, 3, out); break;
    case Conn::Imp:
      print_rec(f->left, 2, out); out += " -> "; print_rec(f->right, 1, out); break;
    case Conn::CoImp:
      print_rec(f->left, 2, out); out += " -< "; print_rec(f->right, 1, out); break;
    case Conn::Box: out += "[]"; print_rec(f->left, 4, out); break;
    case Conn::Dia: out += "<>"; print_rec(f->left, 4, out); break;
    case Conn::BBox: out += "[b]"; print_rec(f->left, 4, out); break;
    case Conn::BDia: out += "<b>"; print_rec(f->left, 4, out); break;
    case Conn::Mu: case Conn::Nu: case Conn::MuStar: case Conn::NuStar: {
      out += (f->conn == Conn::Mu ? "mu " : f->conn == Conn::Nu ? "nu " :
              f->conn == Conn::MuStar ? "mu* " : "nu* ");
      out += f->name;
      out += ".(";
      print_rec(f->left, 0, out);
      out += ')';
      break;
    }
  }
  if (parens) out += ')';
}

inline std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

inline std::string print_inequality(const Inequality& iq) {
  return print_formula(iq.lhs) + " <= " + print_formula(iq.rhs);
}

}  // namespace mualba
