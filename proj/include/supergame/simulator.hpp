#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "supergame/game.hpp"
#include "supergame/random.hpp"
#include "supergame/solver.hpp"

namespace supergame {

struct InvalidProfile : std::invalid_argument {
  explicit InvalidProfile(const std::string& what) : std::invalid_argument(what) {}
};

// Per-agent pure strategies; the derived state is the defector count.
struct Profile {
  std::vector<int> strategies;

  StateIndex state() const {
    StateIndex count = 0;
    for (int s : strategies) count += (s == kDefect);
    return count;
  }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.strategies == b.strategies;
  }
};

// "100" -> agent 0 defects, agents 1 and 2 cooperate.
inline Profile parse_profile(const std::string& bits) {
  Profile p;
  p.strategies.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidProfile("profile must be a bit string, got '" + bits + "'");
    p.strategies.push_back(c == '1' ? kDefect : kCooperate);
  }
  if (p.strategies.empty()) throw InvalidProfile("profile must not be empty");
  return p;
}

struct TraceRound {
  int round = 0;
  StateIndex state = 0;               // realized state of the round
  std::optional<int> switcher;        // agent that flipped entering this round
  std::vector<Rational> payoffs;      // per agent, at the realized state
};

struct Trace {
  std::vector<TraceRound> rounds;
  std::optional<int> absorbed_at;     // first round whose state is a self-loop
  std::uint64_t seed = 0;
  Profile initial;
  Profile final_strategies;
};

// Plays the supergame at a finite horizon. Round 0 records the initial
// profile as-is; each later round applies the graph's prescribed step to the
// previous state, flipping one uniformly chosen agent of the eligible role
// (chosen by rank within the eligible subset, lowest agent id first).
// Payoffs are recorded at the realized state of the round.
inline Trace run(const StageGame& game, const TransitionGraph& graph, const Profile& initial,
                 int rounds, std::uint64_t seed) {
  const int n = game.players();
  if (static_cast<int>(initial.strategies.size()) != n)
    throw InvalidProfile("profile has " + std::to_string(initial.strategies.size()) +
                         " agents, game has " + std::to_string(n));
  for (int s : initial.strategies)
    if (s != kCooperate && s != kDefect) throw InvalidProfile("profile entries must be 0 or 1");
  if (rounds < 1) throw std::invalid_argument("run: need at least one round");

  std::mt19937_64 rng(seed);
  Trace trace;
  trace.seed = seed;
  trace.initial = initial;

  Profile current = initial;
  StateIndex state = current.state();
  for (int r = 0; r < rounds; ++r) {
    std::optional<int> switcher;
    if (r > 0) {
      StateIndex target = graph.lead[state];
      if (target != state) {
        if (target < 0 || target > n || std::abs(target - state) != 1)
          throw std::invalid_argument("graph steps outside the adjacent-state window");
        const int flipping_role = (target > state) ? kCooperate : kDefect;
        const int eligible = (flipping_role == kCooperate) ? n - state : state;
        std::uint64_t rank = uniform_below(rng, static_cast<std::uint64_t>(eligible));
        for (int agent = 0; agent < n; ++agent) {
          if (current.strategies[agent] != flipping_role) continue;
          if (rank == 0) {
            current.strategies[agent] = 1 - flipping_role;
            switcher = agent;
            break;
          }
          --rank;
        }
        state = target;
      }
    }
    TraceRound record;
    record.round = r;
    record.state = state;
    record.switcher = switcher;
    record.payoffs.reserve(n);
    for (int agent = 0; agent < n; ++agent)
      record.payoffs.push_back(game.utility(current.strategies[agent], state));
    if (!trace.absorbed_at && graph.lead[state] == state) trace.absorbed_at = r;
    trace.rounds.push_back(std::move(record));
  }
  trace.final_strategies = current;
  return trace;
}

struct ConvergenceCheck {
  std::vector<Rational> per_agent_running_mean;
  std::vector<Rational> target;  // settled payoff per agent, at its terminal role
  Rational max_deviation;
};

// Per-agent mean payoff over rounds 0..upto-1 against the payoff each agent
// settles at. The finite transient shrinks like 1/upto, so the deviation is
// exactly bounded by (rounds before absorption) * (payoff spread) / upto.
inline ConvergenceCheck empirical_limit_mean(const StageGame& game, const Trace& trace, int upto) {
  if (upto < 1 || upto > static_cast<int>(trace.rounds.size()))
    throw std::out_of_range("empirical_limit_mean: upto outside the recorded horizon");
  const int n = game.players();

  ConvergenceCheck check;
  check.per_agent_running_mean.assign(n, Rational(0));
  for (int r = 0; r < upto; ++r)
    for (int agent = 0; agent < n; ++agent)
      check.per_agent_running_mean[agent] += trace.rounds[r].payoffs[agent];
  for (int agent = 0; agent < n; ++agent) check.per_agent_running_mean[agent] /= Rational(upto);

  const StateIndex settled_state =
      trace.absorbed_at ? trace.rounds[*trace.absorbed_at].state : trace.rounds.back().state;
  check.target.reserve(n);
  for (int agent = 0; agent < n; ++agent)
    check.target.push_back(game.utility(trace.final_strategies.strategies[agent], settled_state));

  check.max_deviation = Rational(0);
  for (int agent = 0; agent < n; ++agent) {
    Rational dev = abs(check.per_agent_running_mean[agent] - check.target[agent]);
    if (dev > check.max_deviation) check.max_deviation = dev;
  }
  return check;
}

}  // namespace supergame
