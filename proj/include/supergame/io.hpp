#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "supergame/game.hpp"
#include "supergame/simulator.hpp"
#include "supergame/solver.hpp"

namespace supergame {

using json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_from_json(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw std::invalid_argument(where +
                              ": utility values must be integers or strings like \"3/2\" or \"1.5\""
                              " (non-integer JSON numbers are rejected to keep values exact)");
}

inline std::vector<Rational> rational_array(const json& doc, const std::string& key,
                                            std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw std::invalid_argument("game spec: missing array field \"" + key + "\"");
  const json& arr = doc[key];
  if (arr.size() != expected)
    throw std::invalid_argument("game spec: \"" + key + "\" has " + std::to_string(arr.size()) +
                                " entries, expected " + std::to_string(expected));
  std::vector<Rational> values;
  values.reserve(expected);
  for (std::size_t i = 0; i < arr.size(); ++i)
    values.push_back(rational_from_json(arr[i], "\"" + key + "\"[" + std::to_string(i) + "]"));
  return values;
}

}  // namespace detail

// Game spec object: {"players": n, "cooperate": [v_0..v_{n-1}], "defect":
// [v_1..v_n]}. "cooperate"[i] is the payoff of a cooperator at state [i];
// "defect"[i] is the payoff of a defector at state [i+1]. Lengths are
// checked strictly.
inline StageGame parse_game(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("game spec: top level must be an object");
  if (!doc.contains("players") || !doc["players"].is_number_integer())
    throw std::invalid_argument("game spec: missing integer field \"players\"");
  const int n = doc["players"].get<int>();
  if (n < 2) throw std::invalid_argument("game spec: \"players\" must be at least 2");
  std::vector<Rational> coop = detail::rational_array(doc, "cooperate", static_cast<std::size_t>(n));
  std::vector<Rational> defect = detail::rational_array(doc, "defect", static_cast<std::size_t>(n));
  return StageGame(n, std::move(coop), std::move(defect));
}

inline StageGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game spec: " + path);
  json doc = json::parse(in);  // parse errors carry byte positions
  return parse_game(doc);
}

inline json game_to_json(const StageGame& game) {
  json doc;
  doc["players"] = game.players();
  json coop = json::array(), defect = json::array();
  for (const Rational& v : game.cooperative_row()) coop.push_back(to_string(v));
  for (const Rational& v : game.defective_row()) defect.push_back(to_string(v));
  doc["cooperate"] = std::move(coop);
  doc["defect"] = std::move(defect);
  return doc;
}

// Solve report: game echo + lead map + basins + classified equilibria. The
// echo keeps the report itself loadable as a game spec.
inline json solve_report_to_json(const StageGame& game, const TransitionGraph& graph,
                                 const EquilibriumReport& report) {
  json doc = game_to_json(game);
  doc["lead"] = graph.lead;
  doc["basin"] = report.basin;
  json eqs = json::array();
  for (const Equilibrium& eq : report.equilibria) {
    json entry;
    entry["state"] = eq.state;
    entry["kind"] = to_string(eq.kind);
    if (eq.coop_payoff) entry["cooperate"] = to_string(*eq.coop_payoff);
    if (eq.defect_payoff) entry["defect"] = to_string(*eq.defect_payoff);
    eqs.push_back(std::move(entry));
  }
  doc["equilibria"] = std::move(eqs);
  return doc;
}

// Reads a lead map back out of a solve report (or any object carrying
// "players" and "lead").
inline TransitionGraph graph_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("players") || !doc["players"].is_number_integer())
    throw std::invalid_argument("graph: missing integer field \"players\"");
  const int n = doc["players"].get<int>();
  if (!doc.contains("lead") || !doc["lead"].is_array() ||
      doc["lead"].size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("graph: \"lead\" must be an array of n+1 state indices");
  TransitionGraph graph;
  graph.n = n;
  for (const json& v : doc["lead"]) {
    if (!v.is_number_integer()) throw std::invalid_argument("graph: lead entries must be integers");
    graph.lead.push_back(v.get<int>());
  }
  return graph;
}

// Graphviz rendering: one circle per state labeled with the state index and
// the per-agent payoffs (cooperative agents first), one edge per lead.
// Output is byte-stable for a fixed input.
inline std::string to_dot(const StageGame& game, const TransitionGraph& graph) {
  std::ostringstream out;
  out << "digraph supergame {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateIndex j = 0; j <= graph.n; ++j) {
    out << "  s" << j << " [label=\"[" << j << "]\\n(";
    std::vector<Rational> payoffs = payoff_vector(game, j);
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      if (i > 0) out << ", ";
      out << payoffs[i];
    }
    out << ")\"];\n";
  }
  for (StateIndex j = 0; j <= graph.n; ++j)
    out << "  s" << j << " -> s" << graph.lead[j] << ";\n";
  out << "}\n";
  return out.str();
}

// JSON-lines trace export: one record per round, rationals as exact strings.
inline std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const TraceRound& round : trace.rounds) {
    json record;
    record["round"] = round.round;
    record["state"] = round.state;
    if (round.switcher)
      record["switcher"] = *round.switcher;
    else
      record["switcher"] = nullptr;
    json payoffs = json::array();
    for (const Rational& p : round.payoffs) payoffs.push_back(to_string(p));
    record["payoffs"] = std::move(payoffs);
    out += record.dump();
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace supergame
