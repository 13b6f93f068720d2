// mualba: command line front end for the mu*-ALBA engine.
//
//   mualba classify  "<ineq>"             syntactic classification
//   mualba run       "<ineq>"             rewrite to a pure quasi-system
//   mualba verify    "<ineq>" --algebra F validity equivalence on finite algebras
//   mualba oracle-test                    randomized rule soundness harness
//   mualba goldens                        built-in end-to-end checks
//   mualba dump-algebras DIR              write the built-in algebra battery
//
// Exit codes: 0 success, 1 negative result (stuck run, invalid, class None),
// 2 input error, 3 internal invariant breach.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "mualba/mualba.hpp"

namespace {

using namespace mualba;

bool use_color() {
  const char* env = std::getenv("MUSTAR_ALBA_COLOR");
  if (env && std::string(env) == "0") return false;
  return isatty(fileno(stdout));
}

std::string paint(const std::string& s, const char* code) {
  if (!use_color()) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}
std::string green(const std::string& s) { return paint(s, "32"); }
std::string red(const std::string& s) { return paint(s, "31"); }

Inequality parse_input(const std::string& text) { return parse_inequality(text); }

Mode parse_mode(const std::string& m) {
  if (m == "tame") return Mode::Tame;
  if (m == "proper") return Mode::Proper;
  if (m == "auto") return Mode::Auto;
  throw CLI::ValidationError("--mode must be tame, proper or auto");
}

int cmd_classify(const std::string& input, bool as_json) {
  Inequality iq = parse_input(input);
  Classification c = classify(iq);
  if (as_json) {
    std::cout << to_json(c).dump(2) << "\n";
  } else {
    std::cout << "class: " << level_name(c.level) << "\n";
    for (const auto& w : c.witnesses) {
      std::cout << "  witness eps{";
      bool first = true;
      for (const auto& [v, pos] : w.epsilon.solve_positive) {
        std::cout << (first ? "" : ", ") << v << "=" << (pos ? "1" : "d");
        first = false;
      }
      std::cout << "}";
      if (!w.omega.pairs.empty()) {
        std::cout << " omega{";
        first = true;
        for (const auto& [a, b] : w.omega.pairs) {
          std::cout << (first ? "" : ", ") << a << "<" << b;
          first = false;
        }
        std::cout << "}";
      }
      std::cout << "\n";
      for (const auto& tb : w.branches) {
        const auto& d = tb.decomposition;
        std::cout << "    " << (tb.in_lhs ? "+lhs" : "-rhs") << " branch to "
                  << (d.branch.sign == Polarity::Positive ? "+" : "-") << d.branch.var
                  << ": P3=[";
        for (size_t i = 0; i < d.p3.size(); ++i) std::cout << (i ? " " : "") << d.p3[i];
        std::cout << "] P2=[";
        for (size_t i = 0; i < d.p2.size(); ++i) std::cout << (i ? " " : "") << d.p2[i];
        std::cout << "] P1=[";
        for (size_t i = 0; i < d.p1.size(); ++i) std::cout << (i ? " " : "") << d.p1[i];
        std::cout << "]\n";
      }
    }
  }
  return c.level == Level::None ? 1 : 0;
}

int cmd_run(const std::string& input, const std::string& mode, const std::string& trace_path,
            bool as_json) {
  Inequality iq = parse_input(input);
  RunResult r = run(iq, parse_mode(mode));
  // replay determinism is an engine invariant; breach is exit 3
  std::vector<StepSpec> steps;
  for (const auto& a : r.trace) steps.push_back(a.spec);
  QuasiSystem replayed = replay(r.initial, steps);
  if (print_system(replayed) != print_system(r.final_system)) {
    std::cerr << "internal error: trace replay diverged\n";
    return 3;
  }
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    out << to_json(r, iq).dump(2) << "\n";
  }
  if (as_json) {
    std::cout << to_json(r, iq).dump(2) << "\n";
  } else {
    std::cout << "mode: " << mode_name(r.mode) << "\n";
    std::cout << "class: " << level_name(r.class_level) << "\n";
    std::cout << "preprocessed:\n";
    for (const auto& p : r.preprocessed) std::cout << "  " << print_inequality(p) << "\n";
    std::cout << "steps:\n";
    for (const auto& a : r.trace) {
      std::cout << "  " << rule_name(a.spec.rule) << " on member " << a.spec.member
                << " ineq " << a.spec.ineq;
      if (!a.spec.var.empty()) std::cout << " var " << a.spec.var;
      std::cout << "\n";
    }
    if (r.status == RunStatus::Success) {
      std::cout << green("success") << " ("
                << (r.run_kind == RunKind::TameRun ? "tame run"
                    : r.run_kind == RunKind::ProperRun ? "proper run" : "mixed run")
                << ")\npure system:\n" << print_system(r.final_system) << "\n";
    } else {
      std::cout << red("stuck") << ": " << r.stuck_reason << "\nstate:\n"
                << print_system(r.final_system) << "\n";
    }
  }
  return r.status == RunStatus::Success ? 0 : 1;
}

int cmd_verify(const std::string& input, const std::vector<std::string>& algebra_paths,
               const std::string& mode, bool as_json) {
  Inequality iq = parse_input(input);
  RunResult r = run(iq, parse_mode(mode));
  if (r.status != RunStatus::Success) {
    std::cerr << "run is stuck, nothing to verify: " << r.stuck_reason << "\n";
    return 1;
  }
  std::vector<FiniteAlgebra> algebras;
  std::vector<std::string> names;
  if (algebra_paths.empty()) {
    algebras = algebra_battery();
    for (size_t i = 0; i < algebras.size(); ++i)
      names.push_back("battery[" + std::to_string(i) + "]");
  } else {
    for (const auto& p : algebra_paths) {
      algebras.push_back(load_algebra(p));
      names.push_back(p);
    }
  }
  bool all_equal = true;
  json out = json::array();
  for (size_t i = 0; i < algebras.size(); ++i) {
    bool in_valid = check_inequality(algebras[i], iq).valid;
    bool out_valid = check_quasi_system(algebras[i], r.final_system).valid;
    bool eq = in_valid == out_valid;
    all_equal &= eq;
    if (as_json) {
      out.push_back(json{{"algebra", names[i]}, {"input_valid", in_valid},
                         {"pure_valid", out_valid}, {"equivalent", eq}});
    } else {
      std::cout << names[i] << ": input " << (in_valid ? "valid" : "invalid")
                << ", pure output " << (out_valid ? "valid" : "invalid") << " "
                << (eq ? green("equivalent") : red("NOT EQUIVALENT")) << "\n";
    }
  }
  if (as_json)
    std::cout << json{{"algebras", out}, {"equivalent", all_equal}}.dump(2) << "\n";
  else
    std::cout << (all_equal ? green("all algebras agree")
                            : red("validity equivalence broken")) << "\n";
  return all_equal ? 0 : 3;
}

int cmd_oracle_test(std::uint64_t seed, int algebra_count, int applications,
                    int max_points, bool as_json) {
  SoundnessConfig cfg;
  cfg.seed = seed;
  cfg.algebra_count = algebra_count;
  cfg.min_applications = applications;
  auto rep = run_soundness(cfg);
  (void)max_points;
  if (as_json) {
    json per_rule = json::object();
    for (const auto& [r, n] : rep.per_rule) per_rule[r] = n;
    std::cout << json{{"applications", rep.applications},
                      {"walks", rep.walks},
                      {"violations", rep.violations.size()},
                      {"per_rule", per_rule}}.dump(2)
              << "\n";
  } else {
    std::cout << rep.applications << " rule applications over " << rep.walks
              << " runs, " << rep.violations.size() << " violations\n";
    for (const auto& [r, n] : rep.per_rule) std::cout << "  " << r << ": " << n << "\n";
  }
  if (!rep.violations.empty()) {
    const auto& v = rep.violations.front();
    auto still_fails = [&](const Inequality& cand) {
      SoundnessConfig c2 = cfg;
      QuasiSystem sys;
      for (const auto& piq : preprocess(cand)) first_approximation(sys, star(piq));
      for (const auto& A : algebra_battery()) {
        try {
          QuasiSystem after = apply_step(sys, v.step, nullptr, c2.rule_options);
          if (check_quasi_system(A, sys).valid != check_quasi_system(A, after).valid)
            return true;
        } catch (const std::exception&) {
          return false;
        }
      }
      return false;
    };
    Inequality minimal = shrink_counterexample(v.input, still_fails);
    std::cerr << "counterexample (minimized): " << print_inequality(minimal)
              << " under " << v.rule << "\n";
    return 3;
  }
  std::cout << green("0 violations") << "\n";
  return 0;
}

struct GoldenCheck {
  std::string name;
  bool ok;
};

int cmd_goldens(const std::string& suite) {
  std::vector<GoldenCheck> checks;
  auto add = [&](const std::string& n, bool ok) { checks.push_back({n, ok}); };

  const std::string restr =
      "<>mu X.(<>X | []([]<>q | p)) <= nu Y.(([]((q -> F) & (p -> F)) -> F) & []Y)";
  const std::string tame = "<>([]F | p) & []q <= mu Y.(<>(p & q) & []Y)";
  const std::string rec =
      "(mu X.(p | <>X)) & (mu X.(q | <>X)) <= mu X.((p & mu Y.(q | <>Y)) | <>X)";

  if (suite == "all" || suite == "classify") {
    auto c1 = classify(parse_inequality(restr));
    add("classify restricted", c1.level == Level::RestrictedInductive &&
                                   c1.witnesses.size() == 1);
    auto c2 = classify(parse_inequality(tame));
    add("classify tame", c2.level == Level::TameInductive && c2.witnesses.size() == 1);
    auto c3 = classify(parse_inequality(rec));
    add("classify inductive-only", c3.level == Level::Inductive);
  }
  if (suite == "all" || suite == "run") {
    RunResult r1 = run(parse_inequality(restr), Mode::Proper);
    QuasiSystem expect1;
    {
      QuasiInequality q;
      q.antecedent.push_back(parse_inequality("$i <= <>$j"));
      q.antecedent.push_back(parse_inequality("$j <= mu* X.(<>X | $k)"));
      q.antecedent.push_back(parse_inequality("nu* Y.(($l -> F) & []Y) <= #m"));
      q.antecedent.push_back(
          parse_inequality("<b>$l <= (<b>$k -< []<>(<b>$l -> F)) -> F"));
      q.consequent = parse_inequality("$i <= #m");
      expect1.members.push_back(q);
    }
    add("proper run on restricted matches",
        r1.status == RunStatus::Success && r1.run_kind == RunKind::ProperRun &&
            equal_mod_renaming(r1.final_system, expect1));
    auto prep = preprocess(parse_inequality(tame));
    add("tame preprocessing",
        prep.size() == 2 &&
            equal(prep[0], parse_inequality("<>[]F & []q <= mu Y.(<>(F & q) & []Y)")) &&
            equal(prep[1], parse_inequality("<>p & []q <= mu Y.(<>(p & q) & []Y)")));
    RunResult r2 = run(parse_inequality("<>p & []q <= mu Y.(<>(p & q) & []Y)"), Mode::Tame);
    QuasiSystem expect2;
    {
      QuasiInequality q;
      q.antecedent.push_back(parse_inequality("$i <= <>$j"));
      q.antecedent.push_back(parse_inequality("mu* Y.(<>($j & <b>$i) & []Y) <= #m"));
      q.consequent = parse_inequality("$i <= #m");
      expect2.members.push_back(q);
    }
    add("tame run matches",
        r2.status == RunStatus::Success && r2.run_kind == RunKind::TameRun &&
            equal_mod_renaming(r2.final_system, expect2));
    RunResult r3 = run(parse_inequality(rec), Mode::Tame);
    add("recursive example stuck under tame", r3.status == RunStatus::Stuck);
  }

  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.ok ? green("PASS") : red("FAIL")) << " " << c.name << "\n";
    all &= c.ok;
  }
  return all ? 0 : 1;
}

int cmd_dump_algebras(const std::string& dir) {
  auto battery = algebra_battery();
  for (size_t i = 0; i < battery.size(); ++i) {
    const auto& A = battery[i];
    json j;
    j["elements"] = json::array();
    for (size_t e = 0; e < A.size(); ++e) j["elements"].push_back(A.name((int)e));
    j["leq"] = json::array();
    for (size_t a = 0; a < A.size(); ++a)
      for (size_t b = 0; b < A.size(); ++b)
        if (a != b && A.leq((int)a, (int)b))
          j["leq"].push_back(json::array({A.name((int)a), A.name((int)b)}));
    j["box"] = json::object();
    j["dia"] = json::object();
    for (size_t e = 0; e < A.size(); ++e) {
      j["box"][A.name((int)e)] = A.name(A.box((int)e));
      j["dia"][A.name((int)e)] = A.name(A.dia((int)e));
    }
    char nm[32];
    std::snprintf(nm, sizeof nm, "a%02zu.json", i + 1);
    std::ofstream out(dir + "/" + nm);
    out << j.dump(2) << "\n";
  }
  std::cout << "wrote " << battery.size() << " algebra files to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mu*-ALBA: variable elimination for intuitionistic modal mu-inequalities"};
  app.require_subcommand(1);

  std::string input, mode = "auto", trace_path, suite = "all", dump_dir;
  std::vector<std::string> algebra_paths;
  bool as_json = false;
  std::uint64_t seed = 1;
  int algebra_count = 50, applications = 200, max_algebra_size = 8;

  auto* classify_cmd = app.add_subcommand("classify", "syntactic classification");
  classify_cmd->add_option("input", input, "inequality text")->required();
  classify_cmd->add_flag("--json", as_json, "JSON output");

  auto* run_cmd = app.add_subcommand("run", "execute the rewrite calculus");
  run_cmd->add_option("input", input)->required();
  run_cmd->add_option("--mode", mode, "tame|proper|auto");
  run_cmd->add_option("--trace", trace_path, "write the JSON trace here");
  run_cmd->add_flag("--json", as_json);

  auto* verify_cmd = app.add_subcommand("verify", "check validity equivalence on algebras");
  verify_cmd->add_option("input", input)->required();
  verify_cmd->add_option("--algebra", algebra_paths, "algebra file (repeatable)");
  verify_cmd->add_option("--mode", mode);
  verify_cmd->add_flag("--json", as_json);

  auto* oracle_cmd = app.add_subcommand("oracle-test", "randomized soundness harness");
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--algebras", algebra_count, "number of random algebras");
  oracle_cmd->add_option("--applications", applications, "rule applications to check");
  oracle_cmd->add_option("--max-algebra-size", max_algebra_size);
  oracle_cmd->add_flag("--json", as_json);

  auto* goldens_cmd = app.add_subcommand("goldens", "built-in end-to-end checks");
  goldens_cmd->add_option("suite", suite, "all|classify|run");

  auto* dump_cmd = app.add_subcommand("dump-algebras", "write the built-in battery");
  dump_cmd->add_option("dir", dump_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return cmd_classify(input, as_json);
    if (*run_cmd) return cmd_run(input, mode, trace_path, as_json);
    if (*verify_cmd) return cmd_verify(input, algebra_paths, mode, as_json);
    if (*oracle_cmd)
      return cmd_oracle_test(seed, algebra_count, applications, max_algebra_size, as_json);
    if (*goldens_cmd) return cmd_goldens(suite);
    if (*dump_cmd) return cmd_dump_algebras(dump_dir);
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PolarityError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    json detail{{"kind", e.kind}, {"detail", e.detail}};
    std::cerr << e.what() << "\n" << detail.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
