#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "supergame/game.hpp"
#include "supergame/rational.hpp"

namespace supergame {

// The solved form of a supergame: a total map from each state to the single
// state it leads to. A state mapped to itself is an equilibrium.
struct TransitionGraph {
  int n = 0;
  std::vector<StateIndex> lead;  // lead[j] for j = 0..n

  StateIndex operator()(StateIndex j) const { return lead[j]; }

  friend bool operator==(const TransitionGraph& a, const TransitionGraph& b) {
    return a.n == b.n && a.lead == b.lead;
  }
};

// Thrown by solve() when a game fails either structural audit. Outside those
// hypotheses the leading relation can be multi-valued, so the solver refuses
// instead of guessing; the oracle's exhaustive mode is the tool there.
struct PropertyViolation : std::runtime_error {
  explicit PropertyViolation(AuditResult result)
      : std::runtime_error(render(result)), audit(std::move(result)) {}
  AuditResult audit;

 private:
  static std::string render(const AuditResult& result) {
    std::string msg = "game violates required structural properties:";
    for (const auto& v : result.violations) msg += "\n  [" + v.property + "] " + v.inequality;
    return msg;
  }
};

// Guards walks over corrupted graphs; a valid graph has self-loop cycles only.
struct CycleLengthViolation : std::runtime_error {
  explicit CycleLengthViolation(StateIndex revisited)
      : std::runtime_error("walk revisits state [" + std::to_string(revisited) +
                           "] without reaching a self-loop") {}
};

// Follows the lead map from `start` to its unique absorbing self-loop state.
inline StateIndex absorb(const TransitionGraph& graph, StateIndex start) {
  std::vector<bool> seen(graph.n + 1, false);
  StateIndex s = start;
  while (graph.lead[s] != s) {
    if (seen[s]) throw CycleLengthViolation(s);
    seen[s] = true;
    s = graph.lead[s];
  }
  return s;
}

// Full walk from `start` to its absorbing state, both endpoints included.
inline std::vector<StateIndex> chain_path(const TransitionGraph& graph, StateIndex start) {
  std::vector<bool> seen(graph.n + 1, false);
  std::vector<StateIndex> path{start};
  StateIndex s = start;
  while (graph.lead[s] != s) {
    if (seen[s]) throw CycleLengthViolation(s);
    seen[s] = true;
    s = graph.lead[s];
    path.push_back(s);
  }
  return path;
}

// Computes the leading relation of an audited game.
//
// All leads in an audited game point upward or stay put: a downward lead
// would need the cooperative payoff at its absorbing state to beat the
// defective payoff one state above it, which the local non-cooperativity
// audit rules out. That makes a single backward pass sufficient: [n] is an
// equilibrium, and each lower state [b] compares staying put forever
// (u(0,[b])) against the defective payoff at the state the chain above it
// absorbs into. The deviating cooperator is still defecting when the chain
// settles, because every step of an upward chain flips some other
// cooperator, so its comparison payoff is the defective one.
inline TransitionGraph solve(const StageGame& game) {
  AuditResult audit = check_locally_noncooperative(game);
  AuditResult mono = check_monotone_decreasing(game);
  if (!mono.passed) {
    audit.passed = false;
    audit.violations.insert(audit.violations.end(), mono.violations.begin(), mono.violations.end());
  }
  if (!audit.passed) throw PropertyViolation(std::move(audit));

  const int n = game.players();
  TransitionGraph graph;
  graph.n = n;
  graph.lead.assign(n + 1, 0);
  std::vector<StateIndex> absorbs(n + 1, 0);

  graph.lead[n] = n;
  absorbs[n] = n;
  for (StateIndex b = n - 1; b >= 0; --b) {
    StateIndex e = absorbs[b + 1];
    if (game.utility(kDefect, e) > game.utility(kCooperate, b)) {
      graph.lead[b] = b + 1;
      absorbs[b] = e;
    } else {
      graph.lead[b] = b;
      absorbs[b] = b;
    }
  }
  return graph;
}

enum class EquilibriumKind { symmetric, asymmetric };

inline std::string to_string(EquilibriumKind kind) {
  return kind == EquilibriumKind::symmetric ? "symmetric" : "asymmetric";
}

struct Equilibrium {
  StateIndex state = 0;
  EquilibriumKind kind = EquilibriumKind::symmetric;
  std::optional<Rational> coop_payoff;    // unset at [n]
  std::optional<Rational> defect_payoff;  // unset at [0]
};

struct EquilibriumReport {
  std::vector<Equilibrium> equilibria;  // ascending by state
  std::vector<StateIndex> basin;        // basin[j] = absorbing state of [j]
};

inline EquilibriumReport equilibria(const StageGame& game, const TransitionGraph& graph) {
  EquilibriumReport report;
  const int n = graph.n;
  for (StateIndex e = 0; e <= n; ++e) {
    if (graph.lead[e] != e) continue;
    Equilibrium eq;
    eq.state = e;
    eq.kind = (e == 0 || e == n) ? EquilibriumKind::symmetric : EquilibriumKind::asymmetric;
    if (e <= n - 1) eq.coop_payoff = game.utility(kCooperate, e);
    if (e >= 1) eq.defect_payoff = game.utility(kDefect, e);
    report.equilibria.push_back(eq);
  }
  report.basin.resize(n + 1);
  for (StateIndex b = 0; b <= n; ++b) report.basin[b] = absorb(graph, b);
  return report;
}

// Per-agent payoffs at a state, cooperative agents first: n-j entries of
// u(0,[j]) followed by j entries of u(1,[j]).
inline std::vector<Rational> payoff_vector(const StageGame& game, StateIndex state) {
  const int n = game.players();
  std::vector<Rational> payoffs;
  payoffs.reserve(n);
  for (int i = 0; i < n - state; ++i) payoffs.push_back(game.utility(kCooperate, state));
  for (int i = 0; i < state; ++i) payoffs.push_back(game.utility(kDefect, state));
  return payoffs;
}

}  // namespace supergame
