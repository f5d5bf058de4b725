// Command-line front end: audit game specs, solve them into transition
// graphs, cross-check against the exhaustive search, simulate walks, and
// generate random audited instances.
//
// Exit codes, uniform across subcommands:
//   0 success, 1 semantic refusal or violation, 2 input error,
//   3 resource/cap exceeded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supergame/generator.hpp"
#include "supergame/io.hpp"
#include "supergame/oracle.hpp"
#include "supergame/simulator.hpp"
#include "supergame/solver.hpp"

namespace {

using namespace supergame;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

std::optional<StageGame> load_or_complain(const std::string& path) {
  try {
    return load_game(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void print_violations(const AuditResult& result) {
  for (const auto& v : result.violations)
    std::cout << "violation [" << v.property << "]: " << v.inequality << "\n";
}

void print_graph(const TransitionGraph& graph) {
  for (StateIndex j = 0; j <= graph.n; ++j)
    std::cout << "[" << j << "] -> [" << graph.lead[j] << "]\n";
}

void print_equilibria(const EquilibriumReport& report) {
  std::cout << "equilibria:\n";
  for (const Equilibrium& eq : report.equilibria) {
    std::cout << "  [" << eq.state << "] " << to_string(eq.kind);
    if (eq.coop_payoff) std::cout << " cooperate=" << *eq.coop_payoff;
    if (eq.defect_payoff) std::cout << " defect=" << *eq.defect_payoff;
    std::cout << "\n";
  }
}

int cmd_audit(const std::string& path) {
  auto game = load_or_complain(path);
  if (!game) return kExitInput;
  AuditResult lnc = check_locally_noncooperative(*game);
  AuditResult mono = check_monotone_decreasing(*game);
  print_violations(lnc);
  print_violations(mono);
  std::cout << "locally non-cooperative: " << (lnc.passed ? "pass" : "FAIL") << "\n";
  std::cout << "monotone decreasing: " << (mono.passed ? "pass" : "FAIL") << "\n";
  return (lnc.passed && mono.passed) ? kExitOk : kExitViolation;
}

int cmd_solve(const std::string& path, const std::string& dot_path, const std::string& json_path) {
  auto game = load_or_complain(path);
  if (!game) return kExitInput;
  TransitionGraph graph;
  try {
    graph = solve(*game);
  } catch (const PropertyViolation& e) {
    print_violations(e.audit);
    std::cout << "refusing to solve: structural audits failed\n";
    return kExitViolation;
  }
  EquilibriumReport report = equilibria(*game, graph);
  print_graph(graph);
  print_equilibria(report);
  try {
    if (!dot_path.empty()) write_file(dot_path, to_dot(*game, graph));
    if (!json_path.empty())
      write_file(json_path, solve_report_to_json(*game, graph, report).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

void print_theorems(const TheoremResults& results) {
  for (const auto& [name, check] : results) {
    std::cout << "check " << name << ": " << (check.passed ? "pass" : "FAIL");
    if (!check.passed) std::cout << " (" << check.witness << ")";
    std::cout << "\n";
  }
}

int cmd_check(const std::string& path, int max_n, const std::string& graph_path) {
  auto game = load_or_complain(path);
  if (!game) return kExitInput;
  if (game->players() > max_n) {
    std::cerr << "error: " << game->players() << " players exceeds the --max-n cap of " << max_n
              << "\n";
    return kExitResource;
  }

  try {
    if (!graph_path.empty()) {
      // Planted-fault mode: validate a supplied graph instead of searching.
      std::ifstream in(graph_path);
      if (!in) {
        std::cerr << "error: cannot open graph file: " << graph_path << "\n";
        return kExitInput;
      }
      TransitionGraph graph;
      try {
        graph = graph_from_json(json::parse(in));
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
      }
      bool ok = true;
      if (auto witness = inconsistency_witness(*game, graph)) {
        std::cout << "inconsistent: " << *witness << "\n";
        ok = false;
      } else {
        std::cout << "graph is consistent with the game\n";
      }
      TheoremResults theorems = verify_theorems(*game, graph);
      print_theorems(theorems);
      return (ok && all_theorems_pass(theorems)) ? kExitOk : kExitViolation;
    }

    AuditResult lnc = check_locally_noncooperative(*game);
    AuditResult mono = check_monotone_decreasing(*game);
    if (!lnc.passed || !mono.passed) {
      // Outside the audited class there is no uniqueness guarantee; report
      // every consistent reading verbatim.
      print_violations(lnc);
      print_violations(mono);
      auto graphs = enumerate_consistent_graphs(*game);
      std::cout << "game fails the structural audits; exhaustive search found " << graphs.size()
                << " consistent graph(s)\n";
      for (const auto& g : graphs) {
        std::cout << "  lead:";
        for (StateIndex s : g.lead) std::cout << " " << s;
        std::cout << "\n";
      }
      return kExitViolation;
    }

    ConsistencyReport report = cross_check(*game);
    std::cout << "consistent graphs: " << report.consistent_graphs.size() << "\n";
    std::cout << "unique: " << (report.unique ? "yes" : "no") << "\n";
    if (report.matches_solver)
      std::cout << "matches solver: " << (*report.matches_solver ? "yes" : "no") << "\n";
    print_theorems(report.theorem_results);
    bool ok = report.unique && report.matches_solver.value_or(false) &&
              all_theorems_pass(report.theorem_results);
    return ok ? kExitOk : kExitViolation;
  } catch (const SearchTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}

int cmd_simulate(const std::string& path, const std::string& initial_bits, int rounds,
                 std::uint64_t seed, const std::string& trace_path) {
  auto game = load_or_complain(path);
  if (!game) return kExitInput;

  Profile initial;
  try {
    initial = parse_profile(initial_bits);
    if (static_cast<int>(initial.strategies.size()) != game->players())
      throw InvalidProfile("profile length " + std::to_string(initial.strategies.size()) +
                           " does not match " + std::to_string(game->players()) + " players");
  } catch (const InvalidProfile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  TransitionGraph graph;
  try {
    graph = solve(*game);
  } catch (const PropertyViolation& e) {
    print_violations(e.audit);
    std::cout << "refusing to simulate: structural audits failed\n";
    return kExitViolation;
  }

  Trace trace = run(*game, graph, initial, rounds, seed);
  ConvergenceCheck conv = empirical_limit_mean(*game, trace, rounds);

  std::cout << "initial state: [" << initial.state() << "]\n";
  if (trace.absorbed_at) {
    std::cout << "absorbed at round: " << *trace.absorbed_at << "\n";
    std::cout << "absorbed state: [" << trace.rounds[*trace.absorbed_at].state << "]\n";
  } else {
    std::cout << "not absorbed within the horizon\n";
  }
  for (int agent = 0; agent < game->players(); ++agent)
    std::cout << "agent " << agent << ": mean " << conv.per_agent_running_mean[agent] << " target "
              << conv.target[agent] << " deviation "
              << abs(conv.per_agent_running_mean[agent] - conv.target[agent]) << "\n";
  std::cout << "max deviation: " << conv.max_deviation << "\n";

  if (!trace_path.empty()) {
    try {
      write_file(trace_path, trace_to_jsonl(trace));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInput;
    }
  }
  return kExitOk;
}

int cmd_generate(int n, int count, std::uint64_t seed, const std::string& out_dir,
                 bool do_cross_check, const std::string& low, const std::string& high,
                 const std::string& resolution) {
  GeneratorConfig config;
  config.n = n;
  try {
    config.low = parse_rational(low);
    config.resolution = parse_rational(resolution);
    config.high = high.empty() ? config.low + Rational(2 * n + 2) : parse_rational(high);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory: " << out_dir << "\n";
      return kExitInput;
    }
  }

  int digits = static_cast<int>(std::to_string(count > 0 ? count - 1 : 0).size());
  if (digits < 4) digits = 4;

  int check_failures = 0;
  try {
    for (int i = 0; i < count; ++i) {
      config.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
      StageGame game = random_game(config);
      if (!out_dir.empty()) {
        std::string index = std::to_string(i);
        index.insert(0, static_cast<std::size_t>(digits) - index.size(), '0');
        write_file(out_dir + "/game_" + index + ".json", game_to_json(game).dump(2) + "\n");
      }
      if (do_cross_check) {
        ConsistencyReport report = cross_check(game);
        bool ok = report.unique && report.matches_solver.value_or(false) &&
                  all_theorems_pass(report.theorem_results);
        if (!ok) {
          ++check_failures;
          std::cout << "cross-check FAILED for instance " << i << " (seed " << config.seed << ")\n";
          std::cout << "  consistent graphs: " << report.consistent_graphs.size() << "\n";
          for (const auto& [name, check] : report.theorem_results)
            if (!check.passed) std::cout << "  " << name << ": " << check.witness << "\n";
        }
      }
    }
  } catch (const InfeasibleRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
  std::cout << "generated " << count << " game(s) with " << n << " players\n";
  if (do_cross_check)
    std::cout << "cross-check failures: " << check_failures << "/" << count << "\n";
  return check_failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver, verifier, and simulator for symmetric n-player prisoners' dilemma "
               "supergames under a one-switch-per-round transition model."};
  app.require_subcommand(1);

  std::string spec_path, dot_path, json_path, graph_path, trace_path, out_dir;
  std::string initial_bits, low = "0", high, resolution = "1/2";
  int max_n = 12, rounds = 1000, gen_n = 3, count = 1;
  std::uint64_t seed = 1;
  bool do_cross_check = false;

  CLI::App* audit = app.add_subcommand("audit", "Check the two structural game properties");
  audit->add_option("spec", spec_path, "game spec JSON file")->required();

  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute the transition graph and equilibria");
  solve_cmd->add_option("spec", spec_path, "game spec JSON file")->required();
  solve_cmd->add_option("--dot", dot_path, "write a Graphviz diagram here");
  solve_cmd->add_option("--json", json_path, "write a JSON report here");

  CLI::App* check = app.add_subcommand("check", "Cross-check the solver against exhaustive search");
  check->add_option("spec", spec_path, "game spec JSON file")->required();
  check->add_option("--max-n", max_n, "refuse exhaustive search beyond this player count");
  check->add_option("--graph", graph_path, "validate this solve report's graph instead");

  CLI::App* simulate = app.add_subcommand("simulate", "Play the supergame at a finite horizon");
  simulate->add_option("spec", spec_path, "game spec JSON file")->required();
  simulate->add_option("--initial", initial_bits, "initial strategies as a bit string, e.g. 100")
      ->required();
  simulate->add_option("--rounds", rounds, "number of rounds to play");
  simulate->add_option("--seed", seed, "PRNG seed");
  simulate->add_option("--trace", trace_path, "write a JSONL trace here");

  CLI::App* generate = app.add_subcommand("generate", "Generate random audited games");
  generate->add_option("--n", gen_n, "player count")->required();
  generate->add_option("--count", count, "number of games");
  generate->add_option("--seed", seed, "base seed");
  generate->add_option("--out", out_dir, "directory for the spec files");
  generate->add_flag("--cross-check", do_cross_check, "run the oracle campaign on each game");
  generate->add_option("--low", low, "grid lower bound (rational)");
  generate->add_option("--high", high, "grid upper bound (rational, default low + 2n+2)");
  generate->add_option("--resolution", resolution, "grid step (rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (app.got_subcommand(audit)) return cmd_audit(spec_path);
    if (app.got_subcommand(solve_cmd)) return cmd_solve(spec_path, dot_path, json_path);
    if (app.got_subcommand(check)) return cmd_check(spec_path, max_n, graph_path);
    if (app.got_subcommand(simulate))
      return cmd_simulate(spec_path, initial_bits, rounds, seed, trace_path);
    if (app.got_subcommand(generate))
      return cmd_generate(gen_n, count, seed, out_dir, do_cross_check, low, high, resolution);
  } catch (const PropertyViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const SearchTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InfeasibleRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
