#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "supergame/game.hpp"
#include "supergame/random.hpp"
#include "supergame/simulator.hpp"

namespace supergame {

struct InfeasibleRange : std::runtime_error {
  explicit InfeasibleRange(const std::string& what) : std::runtime_error(what) {}
};

struct GeneratorConfig {
  int n = 3;
  Rational low = 0;
  Rational high = 8;
  Rational resolution{1, 2};
  std::uint64_t seed = 0;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// Largest k with low + k*resolution <= high.
inline std::int64_t grid_top(const GeneratorConfig& config) {
  Rational span = (config.high - config.low) / config.resolution;
  return floor_div(span.num(), span.den());
}

inline void require_feasible(const GeneratorConfig& config) {
  if (config.n < 2) throw InfeasibleRange("need at least 2 players");
  if (!(config.resolution > Rational(0))) throw InfeasibleRange("resolution must be positive");
  Rational needed = Rational(2 * config.n + 1) * config.resolution;
  if (config.high - config.low < needed)
    throw InfeasibleRange("value range " + to_string(config.low) + ".." + to_string(config.high) +
                          " cannot host " + std::to_string(2 * config.n + 1) +
                          " strict steps of " + to_string(config.resolution));
}

}  // namespace detail

// Builds a game from explicit grid choices. `choose(lo, hi)` must return an
// index in [lo, hi]; every choice sequence yields a game that passes both
// structural audits: the defective row is drawn strictly decreasing with
// room left below, then each cooperative entry is forced under both its
// predecessor and the defective entry one state up.
template <typename ChooseFn>
StageGame game_from_grid_choices(const GeneratorConfig& config, ChooseFn&& choose) {
  detail::require_feasible(config);
  const int n = config.n;
  const std::int64_t top = detail::grid_top(config);
  auto value = [&config](std::int64_t k) { return config.low + Rational(k) * config.resolution; };

  // defect row: indices k(d_b) with n-b+1 <= k(d_b) <= k(d_{b-1}) - 1
  std::vector<std::int64_t> defect_idx(n);
  std::int64_t prev = top + 1;
  for (int b = 1; b <= n; ++b) {
    std::int64_t lo = n - b + 1;
    std::int64_t hi = prev - 1;
    defect_idx[b - 1] = choose(lo, hi);
    if (defect_idx[b - 1] < lo || defect_idx[b - 1] > hi)
      throw std::out_of_range("grid choice outside its feasible window");
    prev = defect_idx[b - 1];
  }

  // coop row: k(c_b) < min(k(d_{b+1}), k(c_{b-1})), with descent room below
  std::vector<std::int64_t> coop_idx(n);
  prev = top + 1;
  for (int b = 0; b <= n - 1; ++b) {
    std::int64_t lo = n - 1 - b;
    std::int64_t hi = std::min(defect_idx[b], prev) - 1;
    coop_idx[b] = choose(lo, hi);
    if (coop_idx[b] < lo || coop_idx[b] > hi)
      throw std::out_of_range("grid choice outside its feasible window");
    prev = coop_idx[b];
  }

  std::vector<Rational> coop, defect;
  coop.reserve(n);
  defect.reserve(n);
  for (int b = 0; b <= n - 1; ++b) coop.push_back(value(coop_idx[b]));
  for (int b = 1; b <= n; ++b) defect.push_back(value(defect_idx[b - 1]));
  return StageGame(n, std::move(coop), std::move(defect));
}

// Seeded draw from the audited-game family above.
inline StageGame random_game(const GeneratorConfig& config) {
  std::mt19937_64 rng(config.seed);
  return game_from_grid_choices(config, [&rng](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
  });
}

// Uniform over all 2^n strategy vectors.
inline Profile random_profile(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_profile: need at least 2 agents");
  if (n > 63) throw std::invalid_argument("random_profile: n too large for one word");
  std::mt19937_64 rng(seed);
  std::uint64_t bits = rng();
  Profile p;
  p.strategies.reserve(n);
  for (int i = 0; i < n; ++i) p.strategies.push_back((bits >> i) & 1 ? kDefect : kCooperate);
  return p;
}

}  // namespace supergame
