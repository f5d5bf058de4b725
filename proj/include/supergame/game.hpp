#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "supergame/rational.hpp"

namespace supergame {

// A state of the symmetric stage game is identified by the number of
// defecting agents, an integer in [0, n].
using StateIndex = int;

constexpr int kCooperate = 0;
constexpr int kDefect = 1;

struct UndefinedUtility : std::domain_error {
  explicit UndefinedUtility(const std::string& what) : std::domain_error(what) {}
};

struct EmptyCycle : std::invalid_argument {
  EmptyCycle() : std::invalid_argument("limit_of_means: empty periodic part") {}
};

struct AuditViolation {
  std::string property;           // which audit the entry belongs to
  std::vector<StateIndex> states; // offending state index/indices
  std::string inequality;         // the failing comparison, rendered as text
};

struct AuditResult {
  bool passed = true;
  std::vector<AuditViolation> violations;
};

// Symmetric n-player stage game with actions cooperate (0) and defect (1).
// Utilities are two dense rows over states: the cooperative row covers
// states [0]..[n-1] and the defective row covers [1]..[n]. The two missing
// cells — a cooperator at [n], a defector at [0] — are not representable at
// all; utility() throws on them.
class StageGame {
 public:
  StageGame(int n, std::vector<Rational> coop_utility, std::vector<Rational> defect_utility)
      : n_(n), coop_(std::move(coop_utility)), defect_(std::move(defect_utility)) {
    if (n_ < 2) throw std::invalid_argument("StageGame: need at least 2 players");
    if (coop_.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("StageGame: cooperative row must have n entries (states [0]..[n-1])");
    if (defect_.size() != static_cast<std::size_t>(n_))
      throw std::invalid_argument("StageGame: defective row must have n entries (states [1]..[n])");
  }

  int players() const { return n_; }

  bool valid_state(StateIndex j) const { return j >= 0 && j <= n_; }

  Rational utility(int action, StateIndex state) const {
    if (!valid_state(state) || (action != kCooperate && action != kDefect))
      throw std::invalid_argument("utility: action must be 0/1 and state in [0,n]");
    if (action == kCooperate) {
      if (state == n_)
        throw UndefinedUtility("u(0,[" + std::to_string(n_) + "]) is undefined: no cooperative agent at [n]");
      return coop_[state];
    }
    if (state == 0)
      throw UndefinedUtility("u(1,[0]) is undefined: no defective agent at [0]");
    return defect_[state - 1];
  }

  const std::vector<Rational>& cooperative_row() const { return coop_; }
  const std::vector<Rational>& defective_row() const { return defect_; }

  friend bool operator==(const StageGame& a, const StageGame& b) {
    return a.n_ == b.n_ && a.coop_ == b.coop_ && a.defect_ == b.defect_;
  }

 private:
  int n_;
  std::vector<Rational> coop_;   // u(0,[j]) for j = 0..n-1
  std::vector<Rational> defect_; // u(1,[j]) for j = 1..n
};

namespace detail {

inline std::string cell(int action, StateIndex j) {
  return "u(" + std::to_string(action) + ",[" + std::to_string(j) + "])";
}

inline void add_violation(AuditResult& result, std::string property,
                          std::vector<StateIndex> states, std::string inequality) {
  result.passed = false;
  result.violations.push_back({std::move(property), std::move(states), std::move(inequality)});
}

}  // namespace detail

// Defectors out-earn cooperators wherever both roles exist, and defecting at
// [b+1] beats cooperating at [b]. Both comparisons are strict; equality is a
// violation.
inline AuditResult check_locally_noncooperative(const StageGame& game) {
  AuditResult result;
  const int n = game.players();
  for (StateIndex j = 1; j <= n - 1; ++j) {
    if (!(game.utility(kDefect, j) > game.utility(kCooperate, j)))
      detail::add_violation(result, "locally_noncooperative", {j},
                            detail::cell(kDefect, j) + " = " + to_string(game.utility(kDefect, j)) +
                                " <= " + detail::cell(kCooperate, j) + " = " +
                                to_string(game.utility(kCooperate, j)));
  }
  for (StateIndex b = 0; b <= n - 1; ++b) {
    if (!(game.utility(kDefect, b + 1) > game.utility(kCooperate, b)))
      detail::add_violation(result, "locally_noncooperative", {b, b + 1},
                            detail::cell(kDefect, b + 1) + " = " + to_string(game.utility(kDefect, b + 1)) +
                                " <= " + detail::cell(kCooperate, b) + " = " +
                                to_string(game.utility(kCooperate, b)));
  }
  return result;
}

// Both utility rows strictly decrease as the defector count rises.
inline AuditResult check_monotone_decreasing(const StageGame& game) {
  AuditResult result;
  const int n = game.players();
  for (StateIndex j = 0; j + 1 <= n - 1; ++j) {
    if (!(game.utility(kCooperate, j + 1) < game.utility(kCooperate, j)))
      detail::add_violation(result, "monotone_decreasing", {j, j + 1},
                            detail::cell(kCooperate, j + 1) + " = " + to_string(game.utility(kCooperate, j + 1)) +
                                " >= " + detail::cell(kCooperate, j) + " = " +
                                to_string(game.utility(kCooperate, j)));
  }
  for (StateIndex j = 1; j + 1 <= n; ++j) {
    if (!(game.utility(kDefect, j + 1) < game.utility(kDefect, j)))
      detail::add_violation(result, "monotone_decreasing", {j, j + 1},
                            detail::cell(kDefect, j + 1) + " = " + to_string(game.utility(kDefect, j + 1)) +
                                " >= " + detail::cell(kDefect, j) + " = " +
                                to_string(game.utility(kDefect, j)));
  }
  return result;
}

// Long-run average payoff of an eventually-periodic stream. Any finite
// prefix vanishes in the average, so only the cycle mean survives.
inline Rational limit_of_means(const std::vector<Rational>& transient,
                               const std::vector<Rational>& periodic) {
  (void)transient;
  if (periodic.empty()) throw EmptyCycle();
  Rational sum;
  for (const Rational& v : periodic) sum += v;
  return sum / Rational(static_cast<std::int64_t>(periodic.size()));
}

}  // namespace supergame
