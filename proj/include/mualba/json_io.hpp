#pragma once

// JSON serialization: formula trees ({"op": ..., "args": [...]}), algebra
// files, classifications, certificates and run traces.

#include <fstream>
#include <string>

#include <json.hpp>

#include "mualba/classify.hpp"
#include "mualba/engine.hpp"
#include "mualba/inner.hpp"

namespace mualba {

using json = nlohmann::json;

inline const char* op_name(Conn c) {
  switch (c) {
    case Conn::Bot: return "bot";
    case Conn::Top: return "top";
    case Conn::Prop: return "prop";
    case Conn::Fix: return "fixvar";
    case Conn::Place: return "placeholder";
    case Conn::Nom: return "nominal";
    case Conn::CoNom: return "conominal";
    case Conn::And: return "and";
    case Conn::Or: return "or";
    case Conn::Imp: return "imp";
    case Conn::CoImp: return "coimp";
    case Conn::Box: return "box";
    case Conn::Dia: return "dia";
    case Conn::BBox: return "bbox";
    case Conn::BDia: return "bdia";
    case Conn::Mu: return "mu";
    case Conn::Nu: return "nu";
    case Conn::MuStar: return "mustar";
    case Conn::NuStar: return "nustar";
  }
  return "?";
}

inline json to_json(const Formula& f) {
  json j;
  j["op"] = op_name(f->conn);
  if (conn_is_named_leaf(f->conn)) j["name"] = f->name;
  if (conn_is_binder(f->conn)) j["var"] = f->name;
  if (f->left || f->right) {
    json args = json::array();
    if (f->left) args.push_back(to_json(f->left));
    if (f->right) args.push_back(to_json(f->right));
    j["args"] = std::move(args);
  }
  return j;
}

inline json to_json(const Inequality& iq) {
  return json{{"lhs", to_json(iq.lhs)}, {"rhs", to_json(iq.rhs)}, {"text", print_inequality(iq)}};
}

inline json to_json(const OrderType& eps) {
  json j = json::object();
  for (const auto& [v, pos] : eps.solve_positive) j[v] = pos ? "1" : "d";
  return j;
}

inline json to_json(const BranchDecomposition& d) {
  json flags{{"nb_pia", d.nb_pia}, {"nl", d.nl}, {"omega_conf", d.omega_conf}};
  return json{{"path", d.branch.path},
              {"var", d.branch.var},
              {"sign", d.branch.sign == Polarity::Positive ? "+" : "-"},
              {"p1", d.p1}, {"p2", d.p2}, {"p3", d.p3},
              {"flags", flags}};
}

inline json to_json(const Classification& c) {
  json ws = json::array();
  for (const auto& w : c.witnesses) {
    json omega = json::array();
    for (const auto& [a, b] : w.omega.pairs) omega.push_back(json::array({a, b}));
    json branches = json::array();
    for (const auto& tb : w.branches) {
      json b = to_json(tb.decomposition);
      b["tree"] = tb.in_lhs ? "lhs" : "rhs";
      branches.push_back(std::move(b));
    }
    ws.push_back(json{{"epsilon", to_json(w.epsilon)}, {"omega", omega},
                      {"branches", branches}});
  }
  return json{{"level", level_name(c.level)}, {"witnesses", ws}};
}

inline json to_json(const InnerFormulaCertificate& c) {
  json slots = json::array();
  for (const auto& s : c.slots)
    slots.push_back(json{{"name", s.name},
                         {"kind", s.is_fix ? "fixvar" : "placeholder"},
                         {"tau", s.tau_one ? "1" : "d"},
                         {"binding", print_formula(s.binding)}});
  json params = json::object();
  for (const auto& [z, f] : c.params) params[z] = print_formula(f);
  return json{{"kind", c.kind == InnerKind::DiaIF ? "DiaIF" : "BoxIF"},
              {"template", print_formula(c.templ)},
              {"slots", slots},
              {"params", params}};
}

inline json to_json(const QuasiInequality& q) {
  json ante = json::array();
  for (const auto& iq : q.antecedent) ante.push_back(print_inequality(iq));
  json ex = json::array();
  for (const auto& v : q.exists_vars)
    ex.push_back((v.sort == Conn::Nom ? "$" : "#") + v.name);
  return json{{"exists", ex}, {"antecedent", ante},
              {"consequent", print_inequality(q.consequent)}};
}

inline json to_json(const QuasiSystem& s) {
  json ms = json::array();
  for (const auto& m : s.members) ms.push_back(to_json(m));
  return json{{"members", ms}};
}

inline json to_json(const RuleApplication& a) {
  json j{{"rule", rule_name(a.spec.rule)},
         {"target", json{{"member", a.spec.member}, {"ineq", a.spec.ineq}}}};
  if (a.spec.rule == RuleName::ResAndLR || a.spec.rule == RuleName::ResOrRR)
    j["keep_left"] = a.spec.keep_left;
  if (!a.spec.var.empty()) j["var"] = a.spec.var;
  if (!a.fresh.empty()) {
    json fr = json::array();
    for (const auto& v : a.fresh) fr.push_back((v.sort == Conn::Nom ? "$" : "#") + v.name);
    j["fresh"] = fr;
  }
  if (a.certificate) j["certificate"] = to_json(*a.certificate);
  j["result_members"] = a.produced_members;
  return j;
}

inline const char* mode_name(Mode m) {
  return m == Mode::Tame ? "tame" : m == Mode::Proper ? "proper" : "auto";
}

inline json to_json(const RunResult& r, const Inequality& input) {
  json steps = json::array();
  for (const auto& a : r.trace) steps.push_back(to_json(a));
  json prep = json::array();
  for (const auto& iq : r.preprocessed) prep.push_back(print_inequality(iq));
  json j{{"input", print_inequality(input)},
         {"mode", mode_name(r.mode)},
         {"status", r.status == RunStatus::Success ? "Success" : "Stuck"},
         {"run_kind", r.run_kind == RunKind::TameRun ? "TameRun"
                      : r.run_kind == RunKind::ProperRun ? "ProperRun" : "Mixed"},
         {"class", level_name(r.class_level)},
         {"epsilon", to_json(r.epsilon)},
         {"preprocessed", prep},
         {"steps", steps},
         {"pure_system", to_json(r.final_system)}};
  if (!r.stuck_reason.empty()) j["stuck_reason"] = r.stuck_reason;
  return j;
}

// --- algebra files -------------------------------------------------------------
//
//   { "elements": ["0", "a", "1"],
//     "leq": [["0","a"], ["a","1"]],          (closure is taken)
//     "box": {"0":"0", "a":"a", "1":"1"},
//     "dia": {"0":"0", "a":"a", "1":"1"} }

inline FiniteAlgebra algebra_from_json(const json& j) {
  std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> leq;
  for (const auto& pair : j.at("leq"))
    leq.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  std::map<std::string, std::string> bx, di;
  for (auto it = j.at("box").begin(); it != j.at("box").end(); ++it)
    bx[it.key()] = it.value().get<std::string>();
  for (auto it = j.at("dia").begin(); it != j.at("dia").end(); ++it)
    di[it.key()] = it.value().get<std::string>();
  return FiniteAlgebra(std::move(elements), leq, bx, di);
}

inline FiniteAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("FileError", {path}, "cannot open algebra file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw AlgebraError("FileError", {path}, e.what());
  }
  return algebra_from_json(j);
}

inline json to_json(const Assignment& a, const FiniteAlgebra& A) {
  json j = json::object();
  for (const auto& [v, e] : a.prop) j[v] = A.name(e);
  for (const auto& [v, e] : a.nom) j["$" + v] = A.name(e);
  for (const auto& [v, e] : a.conom) j["#" + v] = A.name(e);
  return j;
}

}  // namespace mualba
