#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "supergame/game.hpp"
#include "supergame/solver.hpp"

namespace supergame {

struct SearchTooLarge : std::runtime_error {
  explicit SearchTooLarge(int n)
      : std::runtime_error("exhaustive search over " + std::to_string(n + 1) +
                           " states exceeds the n <= 12 cap") {}
};

struct TheoremCheck {
  bool passed = true;
  std::string witness;  // empty when passed
};

using TheoremResults = std::map<std::string, TheoremCheck>;

struct ConsistencyReport {
  std::vector<TransitionGraph> consistent_graphs;  // lexicographic by lead vector
  bool unique = false;
  TransitionGraph solver_graph;
  std::optional<bool> matches_solver;  // set only when unique
  TheoremResults theorem_results;
};

namespace detail {

// absorbing[s] = self-loop state reached from s, or -1 if the walk enters a
// longer cycle.
inline std::vector<StateIndex> compute_absorbing(int n, const std::vector<StateIndex>& lead) {
  std::vector<StateIndex> absorbing(n + 1, -2);  // -2 unvisited, -1 unresolved/cyclic
  for (StateIndex s = 0; s <= n; ++s) {
    if (absorbing[s] != -2) continue;
    std::vector<StateIndex> path;
    StateIndex cur = s;
    while (absorbing[cur] == -2 && lead[cur] != cur) {
      absorbing[cur] = -1;
      path.push_back(cur);
      cur = lead[cur];
    }
    // Ends at a self-loop, rejoins the current path (cycle), or hits an
    // already resolved state; -1 stored earlier also means cycle-bound.
    StateIndex end = (lead[cur] == cur) ? cur : absorbing[cur];
    for (StateIndex p : path) absorbing[p] = end;
    if (absorbing[cur] == -2) absorbing[cur] = end;
  }
  return absorbing;
}

// Follows the walk from `probe` until it settles, tracking one agent that
// enters holding `role`. An upward step flips a cooperating agent only when
// it is the last cooperator, a downward step flips a defecting agent only
// when it is the last defector; otherwise some other agent of that role
// takes the step. Caller guarantees the walk terminates.
inline int terminal_role(int n, const std::vector<StateIndex>& lead, StateIndex probe, int role) {
  StateIndex s = probe;
  while (lead[s] != s) {
    StateIndex t = lead[s];
    if (t == s + 1) {
      if (role == kCooperate && n - s == 1) role = kDefect;
    } else {
      if (role == kDefect && s == 1) role = kCooperate;
    }
    s = t;
  }
  return role;
}

}  // namespace detail

// Tests one candidate lead map against the leading relation's semantics.
// Returns the first inconsistency found, or nullopt if the candidate is a
// fully consistent reading of the game:
//   (a) every walk ends in a self-loop (no longer cycles),
//   (b) an upward edge's deviating cooperator strictly improves at the state
//       the post-switch walk absorbs into, evaluated at its tracked role,
//   (c) a downward edge's deviating defector symmetrically improves,
//   (d) a self-loop state admits no strictly improving deviation either way.
inline std::optional<std::string> inconsistency_witness(const StageGame& game,
                                                        const TransitionGraph& candidate) {
  const int n = game.players();
  const auto& lead = candidate.lead;

  for (StateIndex b = 0; b <= n; ++b) {
    StateIndex t = lead[b];
    if (t < b - 1 || t > b + 1 || t < 0 || t > n)
      return "lead([" + std::to_string(b) + "]) = [" + std::to_string(t) +
             "] is not an adjacent or identical state";
  }

  std::vector<StateIndex> absorbing = detail::compute_absorbing(n, lead);
  for (StateIndex s = 0; s <= n; ++s)
    if (absorbing[s] == -1)
      return "walk from [" + std::to_string(s) + "] cycles without reaching a self-loop";

  auto improves = [&](StateIndex probe, int start_role, const Rational& baseline,
                      std::string* detail_out) {
    StateIndex e = absorbing[probe];
    int role = detail::terminal_role(n, lead, probe, start_role);
    Rational settled = game.utility(role, e);
    if (detail_out)
      *detail_out = "u(" + std::to_string(role) + ",[" + std::to_string(e) +
                    "]) = " + to_string(settled) + " vs " + to_string(baseline);
    return settled > baseline;
  };

  for (StateIndex b = 0; b <= n; ++b) {
    StateIndex t = lead[b];
    std::string detail;
    if (t == b + 1) {
      if (!improves(b + 1, kDefect, game.utility(kCooperate, b), &detail))
        return "edge [" + std::to_string(b) + "]->[" + std::to_string(t) +
               "] does not pay the switching cooperator: " + detail;
    } else if (t == b - 1) {
      if (!improves(b - 1, kCooperate, game.utility(kDefect, b), &detail))
        return "edge [" + std::to_string(b) + "]->[" + std::to_string(t) +
               "] does not pay the switching defector: " + detail;
    } else {
      if (b <= n - 1 && improves(b + 1, kDefect, game.utility(kCooperate, b), &detail))
        return "self-loop at [" + std::to_string(b) +
               "] is unstable: a cooperator gains by defecting: " + detail;
      if (b >= 1 && improves(b - 1, kCooperate, game.utility(kDefect, b), &detail))
        return "self-loop at [" + std::to_string(b) +
               "] is unstable: a defector gains by cooperating: " + detail;
    }
  }
  return std::nullopt;
}

// Enumerates every candidate map lead(b) in {b-1, b, b+1} clipped to [0, n]
// and keeps the consistent ones. The candidate space deliberately includes
// downward edges so the search cannot inherit the solver's pruning.
inline std::vector<TransitionGraph> enumerate_consistent_graphs(const StageGame& game) {
  const int n = game.players();
  if (n > 12) throw SearchTooLarge(n);

  std::vector<std::vector<StateIndex>> options(n + 1);
  for (StateIndex b = 0; b <= n; ++b)
    for (StateIndex t = std::max(0, b - 1); t <= std::min(n, b + 1); ++t)
      options[b].push_back(t);

  std::vector<TransitionGraph> found;
  TransitionGraph candidate;
  candidate.n = n;
  candidate.lead.assign(n + 1, 0);
  std::vector<std::size_t> pick(n + 1, 0);
  for (StateIndex b = 0; b <= n; ++b) candidate.lead[b] = options[b][0];

  while (true) {
    if (!inconsistency_witness(game, candidate)) found.push_back(candidate);
    int pos = n;
    while (pos >= 0 && pick[pos] + 1 == options[pos].size()) {
      pick[pos] = 0;
      candidate.lead[pos] = options[pos][0];
      --pos;
    }
    if (pos < 0) break;
    ++pick[pos];
    candidate.lead[pos] = options[pos][pick[pos]];
  }
  return found;
}

namespace detail {

// absorb() that reports cycles instead of throwing.
inline std::optional<StateIndex> safe_absorb(const TransitionGraph& graph, StateIndex start) {
  std::vector<bool> seen(graph.n + 1, false);
  StateIndex s = start;
  while (graph.lead[s] != s) {
    if (seen[s]) return std::nullopt;
    seen[s] = true;
    s = graph.lead[s];
  }
  return s;
}

}  // namespace detail

// Checks the structural claims that any correctly solved audited game must
// satisfy, each literally against (game, graph). Failures are data: every
// failing check carries a witness state or inequality.
inline TheoremResults verify_theorems(const StageGame& game, const TransitionGraph& graph) {
  const int n = game.players();
  TheoremResults results;
  auto fail = [&results](const std::string& name, const std::string& witness) {
    auto& check = results[name];
    if (check.passed) {
      check.passed = false;
      check.witness = witness;
    }
  };
  auto pass = [&results](const std::string& name) { results[name]; };

  pass("single_lead_within_step");
  if (static_cast<int>(graph.lead.size()) != n + 1)
    fail("single_lead_within_step", "graph covers " + std::to_string(graph.lead.size()) +
                                        " states, expected " + std::to_string(n + 1));
  else
    for (StateIndex b = 0; b <= n; ++b)
      if (graph.lead[b] < std::max(0, b - 1) || graph.lead[b] > std::min(n, b + 1))
        fail("single_lead_within_step",
             "lead([" + std::to_string(b) + "]) = [" + std::to_string(graph.lead[b]) + "]");
  if (!results["single_lead_within_step"].passed) return results;  // nothing else is well-posed

  std::vector<std::optional<StateIndex>> absorbing(n + 1);
  for (StateIndex b = 0; b <= n; ++b) absorbing[b] = detail::safe_absorb(graph, b);

  pass("only_self_loop_cycles");
  for (StateIndex b = 0; b <= n; ++b)
    if (!absorbing[b])
      fail("only_self_loop_cycles",
           "walk from [" + std::to_string(b) + "] cycles without reaching a self-loop");

  pass("top_state_equilibrium");
  if (graph.lead[n] != n)
    fail("top_state_equilibrium", "lead([" + std::to_string(n) + "]) = [" +
                                      std::to_string(graph.lead[n]) + "]");

  pass("symmetric_equilibrium_exists");
  if (graph.lead[0] != 0 && graph.lead[n] != n)
    fail("symmetric_equilibrium_exists", "neither [0] nor [" + std::to_string(n) +
                                             "] is a self-loop");

  pass("upward_absorption_pays_defector");
  pass("downward_absorption_pays_cooperator");
  for (StateIndex b = 0; b <= n; ++b) {
    if (!absorbing[b]) continue;
    StateIndex c = *absorbing[b];
    if (c > b && !(game.utility(kDefect, c) > game.utility(kCooperate, b)))
      fail("upward_absorption_pays_defector",
           "[" + std::to_string(b) + "] absorbs at [" + std::to_string(c) + "] but u(1,[" +
               std::to_string(c) + "]) = " + to_string(game.utility(kDefect, c)) +
               " <= u(0,[" + std::to_string(b) + "]) = " + to_string(game.utility(kCooperate, b)));
    if (c < b && !(game.utility(kCooperate, c) > game.utility(kDefect, b)))
      fail("downward_absorption_pays_cooperator",
           "[" + std::to_string(b) + "] absorbs at [" + std::to_string(c) + "] but u(0,[" +
               std::to_string(c) + "]) = " + to_string(game.utility(kCooperate, c)) +
               " <= u(1,[" + std::to_string(b) + "]) = " + to_string(game.utility(kDefect, b)));
  }

  pass("upward_lead_dominates_waiting");
  pass("downward_lead_dominates_waiting");
  for (StateIndex b = 0; b <= n; ++b) {
    if (!absorbing[b] || graph.lead[b] == b) continue;
    StateIndex e = *absorbing[b];
    if (graph.lead[b] == b + 1) {
      for (StateIndex d = b; d <= e - 1; ++d)
        if (!(game.utility(kDefect, e) > game.utility(kCooperate, d)))
          fail("upward_lead_dominates_waiting",
               "lead([" + std::to_string(b) + "]) = [" + std::to_string(b + 1) + "] but u(1,[" +
                   std::to_string(e) + "]) <= u(0,[" + std::to_string(d) + "])");
    } else {
      for (StateIndex d = e + 1; d <= b; ++d)
        if (!(game.utility(kCooperate, e) > game.utility(kDefect, d)))
          fail("downward_lead_dominates_waiting",
               "lead([" + std::to_string(b) + "]) = [" + std::to_string(b - 1) + "] but u(0,[" +
                   std::to_string(e) + "]) <= u(1,[" + std::to_string(d) + "])");
    }
  }

  pass("high_defect_payoff_chains_to_top");
  for (StateIndex b = 0; b <= n - 1; ++b)
    if (game.utility(kDefect, n) > game.utility(kCooperate, b))
      if (!absorbing[b] || *absorbing[b] != n)
        fail("high_defect_payoff_chains_to_top",
             "u(1,[" + std::to_string(n) + "]) > u(0,[" + std::to_string(b) + "]) but [" +
                 std::to_string(b) + "] does not absorb at [" + std::to_string(n) + "]");

  return results;
}

inline bool all_theorems_pass(const TheoremResults& results) {
  for (const auto& [name, check] : results)
    if (!check.passed) return false;
  return true;
}

// Full anti-drift bundle: solve, exhaustively enumerate, compare, and run
// the structural checks against the solver's graph.
inline ConsistencyReport cross_check(const StageGame& game) {
  ConsistencyReport report;
  report.solver_graph = solve(game);
  report.consistent_graphs = enumerate_consistent_graphs(game);
  report.unique = report.consistent_graphs.size() == 1;
  if (report.unique) report.matches_solver = (report.consistent_graphs[0] == report.solver_graph);
  report.theorem_results = verify_theorems(game, report.solver_graph);
  return report;
}

}  // namespace supergame
