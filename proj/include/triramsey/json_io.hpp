#ifndef TRIRAMSEY_JSON_IO_HPP
#define TRIRAMSEY_JSON_IO_HPP

// JSON wire format shared by the CLI, the cache file and the HTTP service.
// Cells are 1-based cellIndex values; big integers travel as decimal strings
// and colorings as lowercase hex (bit i = cell i+1 owned by player one).

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "triramsey/bounds.hpp"
#include "triramsey/mines.hpp"
#include "triramsey/ramsey_search.hpp"
#include "triramsey/solver.hpp"

namespace triramsey {

using Json = nlohmann::json;

inline Variant parse_variant(std::string_view s) {
  if (s == "standard") return Variant::Standard;
  if (s == "directional") return Variant::Directional;
  throw Error(Errc::InvalidConfig, "unknown variant '" + std::string(s) + "'");
}

inline Outcome parse_outcome(std::string_view s) {
  for (auto o : {Outcome::FirstPlayerWin, Outcome::SecondPlayerWin, Outcome::DrawValue}) {
    if (outcome_name(o) == s) return o;
  }
  throw Error(Errc::ParseError, "unknown outcome '" + std::string(s) + "'");
}

namespace detail {

inline bool is_natural(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline std::size_t json_size(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::InvalidConfig, std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!is_natural(v)) throw Error(Errc::InvalidConfig, std::string("field '") + key + "' must be a natural");
  return v.get<std::size_t>();
}

}  // namespace detail

inline Json config_to_json(const GameConfig& c) {
  return {{"m", c.m}, {"p", c.p}, {"q", c.q}, {"k", c.k}, {"variant", std::string(variant_name(c.variant))}};
}

// Variant defaults to standard. The result is validated.
inline GameConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "config must be an object");
  GameConfig c;
  c.m = detail::json_size(j, "m");
  c.p = detail::json_size(j, "p");
  c.q = detail::json_size(j, "q");
  c.k = detail::json_size(j, "k");
  if (j.contains("variant")) {
    if (!j.at("variant").is_string()) throw Error(Errc::InvalidConfig, "variant must be a string");
    c.variant = parse_variant(j.at("variant").get<std::string>());
  }
  c.validate();
  return c;
}

// A move is a cell number or the string "pass".
inline Json move_to_json(Move m) { return m.is_pass() ? Json("pass") : Json(m.cell); }

inline Move move_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "pass") return Move::pass();
  if (detail::is_natural(j)) return Move::mark(j.get<std::size_t>());
  throw Error(Errc::ParseError, "move must be a cell number or \"pass\"");
}

inline Json status_to_json(const GameStatus& s) {
  Json out;
  switch (s.kind) {
    case GameStatus::Kind::Ongoing: out["kind"] = "ongoing"; break;
    case GameStatus::Kind::Won:
      out["kind"] = "won";
      out["winner"] = s.winner == Player::One ? 1 : 2;
      out["witness"] = std::vector<Natural>(s.witness.elements().begin(), s.witness.elements().end());
      out["moveIndex"] = s.move_index;
      if (!s.directions.empty()) out["directions"] = s.directions;
      break;
    case GameStatus::Kind::Draw:
      out["kind"] = "draw";
      out["moveIndex"] = s.move_index;
      // double-pass endings are an engine rule, flagged as such
      out["reason"] = s.reason == DrawReason::BoardFull ? "boardFull" : "doublePass";
      break;
  }
  return out;
}

inline Json state_to_json(const GameState& state) {
  Json owner = Json::array();
  for (std::size_t c = 1; c <= state.cell_count(); ++c) owner.push_back(static_cast<int>(state.owner(c)));
  Json history = Json::array();
  for (const auto& h : state.history()) {
    history.push_back({{"player", h.player == Player::One ? 1 : 2}, {"move", move_to_json(h.move)}});
  }
  Json out{{"config", config_to_json(state.config())},
           {"cells", state.cell_count()},
           {"owner", owner},
           {"history", history},
           {"turn", state.history().size()},
           {"toMove", state.to_move() == Player::One ? 1 : 2},
           {"passStreak", state.pass_streak()},
           {"status", status_to_json(state.status())}};
  if (state.config().variant == Variant::Directional) {
    out["directions"] = {{"1", directional_wins(state, Player::One)}, {"2", directional_wins(state, Player::Two)}};
  }
  return out;
}

// Rebuilds a state by replaying its history; everything else in the JSON is
// checked against the replay rather than trusted.
inline GameState state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("config") || !j.contains("history") || !j.at("history").is_array()) {
    throw Error(Errc::ParseError, "state needs config and history");
  }
  const GameConfig config = config_from_json(j.at("config"));
  GameState state = new_game(config);
  for (const auto& h : j.at("history")) {
    if (!h.is_object() || !h.contains("move")) throw Error(Errc::ParseError, "history entry needs a move");
    const int want = state.to_move() == Player::One ? 1 : 2;
    if (h.contains("player") && h.at("player") != want) throw Error(Errc::ParseError, "history player out of turn");
    state = apply_move(state, move_from_json(h.at("move")));
  }
  if (j.contains("owner") && j.at("owner") != state_to_json(state).at("owner")) {
    throw Error(Errc::ParseError, "owner array disagrees with history");
  }
  if (j.contains("status") && j.at("status") != status_to_json(state.status())) {
    throw Error(Errc::ParseError, "status disagrees with history");
  }
  return state;
}

inline std::string coloring_to_hex(const Coloring& c) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t n = c.size();
  std::string out((n + 3) / 4, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.player_one.test(i)) continue;
    const std::size_t digit = out.size() - 1 - i / 4;
    const auto v = static_cast<unsigned>(out[digit] >= 'a' ? out[digit] - 'a' + 10 : out[digit] - '0');
    out[digit] = kDigits[v | (1U << (i % 4))];
  }
  if (out.empty()) out = "0";
  return out;
}

inline Coloring coloring_from_hex(std::string_view hex, std::size_t cells) {
  Coloring out{CellSet(cells)};
  if (hex.empty() || hex.size() > std::max<std::size_t>(1, (cells + 3) / 4)) {
    throw Error(Errc::ParseError, "coloring has the wrong length");
  }
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char ch = hex[hex.size() - 1 - d];
    unsigned v = 0;
    if (ch >= '0' && ch <= '9') {
      v = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      v = static_cast<unsigned>(ch - 'a' + 10);
    } else {
      throw Error(Errc::ParseError, "coloring must be lowercase hex");
    }
    for (unsigned b = 0; b < 4; ++b) {
      if (((v >> b) & 1U) == 0) continue;
      const std::size_t bit = 4 * d + b;
      if (bit >= cells) throw Error(Errc::ParseError, "coloring sets a bit past the last cell");
      out.player_one.set(bit);
    }
  }
  return out;
}

inline BigNat bignat_from_string(const std::string& s) {
  if (s.empty() || s.size() > 5000 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(Errc::ParseError, "expected a decimal string");
  }
  return BigNat(s);
}

inline Json interval_to_json(const Interval& i) {
  return {{"lo", i.lo.str()}, {"hi", i.hi ? Json(i.hi->str()) : Json(nullptr)}};
}

inline Json search_outcome_to_json(const SearchOutcome& o) {
  Json out{{"result", std::string(result_name(o.result))},
           {"nodesExplored", o.nodes_explored},
           {"elapsedMs", std::chrono::duration<double, std::milli>(o.elapsed).count()}};
  if (o.witness) out["coloring"] = coloring_to_hex(*o.witness);
  return out;
}

}  // namespace triramsey

#endif  // TRIRAMSEY_JSON_IO_HPP
