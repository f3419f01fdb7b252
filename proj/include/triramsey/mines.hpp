#ifndef TRIRAMSEY_MINES_HPP
#define TRIRAMSEY_MINES_HPP

// Rules of Mines_m(p, q, k).
//
// Players alternate; each turn marks one empty cell or passes. Player one
// wins on completing a p-level triangle all of whose k-level cells they own,
// player two likewise with a q-level triangle; the win is stamped at the move
// that first completes it. The game is drawn when every cell is marked with
// no winner, or when both players pass in a row.
//
// The directional variant (k = 1 only) checks the win condition in the three
// orientations of the board; owning a triangle in two of them wins.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "triramsey/board.hpp"
#include "triramsey/errors.hpp"

namespace triramsey {

enum class Variant : std::uint8_t { Standard, Directional };

constexpr std::string_view variant_name(Variant v) noexcept {
  return v == Variant::Standard ? "standard" : "directional";
}

struct GameConfig {
  std::size_t m = 3;
  std::size_t p = 2;
  std::size_t q = 2;
  std::size_t k = 1;
  Variant variant = Variant::Standard;

  void validate() const {
    if (k == 0 || k > p || k > q || p > m || q > m) {
      throw Error(Errc::InvalidConfig, "need 1 <= k <= p, q <= m");
    }
    if (variant == Variant::Directional && k != 1) throw Error(Errc::InvalidConfig, "directional variant needs k = 1");
  }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

struct Move {
  enum class Kind : std::uint8_t { Mark, Pass };
  Kind kind = Kind::Pass;
  std::size_t cell = 0;  // 1-based; 0 for a pass

  static Move mark(std::size_t cell) { return {Kind::Mark, cell}; }
  static Move pass() { return {Kind::Pass, 0}; }
  bool is_pass() const noexcept { return kind == Kind::Pass; }

  friend bool operator==(const Move&, const Move&) = default;
};

struct HistoryEntry {
  Player player = Player::One;
  Move move;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

enum class Owner : std::uint8_t { Empty = 0, One = 1, Two = 2 };

enum class DrawReason : std::uint8_t { BoardFull, DoublePass };

struct GameStatus {
  enum class Kind : std::uint8_t { Ongoing, Won, Draw };
  Kind kind = Kind::Ongoing;
  Player winner = Player::One;       // when Won
  TriangularSet witness;             // when Won
  std::size_t move_index = 0;        // 1-based move that ended the game
  std::vector<int> directions;       // directional wins of the winner
  DrawReason reason = DrawReason::BoardFull;  // when Draw

  bool ongoing() const noexcept { return kind == Kind::Ongoing; }
  friend bool operator==(const GameStatus&, const GameStatus&) = default;
};

// Immutable rule data shared by every state of one game configuration.
class Rules {
 public:
  explicit Rules(GameConfig config) : config_(config) {
    config_.validate();
    board_ = std::make_shared<const Board>(config_.m, config_.k);
    detector_one_ = std::make_unique<TriangleDetector>(board_, config_.p);
    detector_two_ = std::make_unique<TriangleDetector>(board_, config_.q);
    if (config_.variant == Variant::Directional) {
      const auto turn = board_->rotation();
      rotate_once_ = turn;
      rotate_twice_.resize(turn.size());
      for (std::size_t i = 0; i < turn.size(); ++i) rotate_twice_[i] = turn[turn[i]];
    }
  }

  const GameConfig& config() const noexcept { return config_; }
  const Board& board() const noexcept { return *board_; }
  std::shared_ptr<const Board> board_ptr() const noexcept { return board_; }
  const TriangleDetector& detector(Player p) const noexcept { return p == Player::One ? *detector_one_ : *detector_two_; }

  // Directions (1..3) in which `owned` holds a winning triangle: direction d
  // holds one when the owned set turned d-1 times contains a standard one.
  std::vector<int> directions(Player player, const CellSet& owned) const {
    if (config_.variant != Variant::Directional) throw Error(Errc::NotDirectional, "game is not directional");
    std::vector<int> out;
    const auto& det = detector(player);
    if (det.found_in(owned)) out.push_back(1);
    if (det.found_in(permute_cells(owned, rotate_once_))) out.push_back(2);
    if (det.found_in(permute_cells(owned, rotate_twice_))) out.push_back(3);
    return out;
  }

  std::optional<TriangularSet> witness(Player player, const CellSet& owned) const {
    if (config_.variant == Variant::Standard) return detector(player).witness(owned);
    for (int d : directions(player, owned)) {
      if (d == 1) return detector(player).witness(owned);
      const auto& forward = d == 2 ? rotate_once_ : rotate_twice_;
      auto z = detector(player).witness(permute_cells(owned, forward));
      // Map the standard triangle back: the inverse of turning d-1 times.
      const auto& back = d == 2 ? rotate_twice_ : rotate_once_;
      std::vector<Natural> ids;
      for (auto id : z->elements()) ids.push_back(back[id - 1] + 1);
      return TriangularSet::from_elements(std::move(ids));
    }
    return std::nullopt;
  }

  bool wins(Player player, const CellSet& owned) const {
    if (config_.variant == Variant::Standard) return detector(player).found_in(owned);
    return directions(player, owned).size() >= 2;
  }

 private:
  GameConfig config_;
  std::shared_ptr<const Board> board_;
  std::unique_ptr<TriangleDetector> detector_one_;
  std::unique_ptr<TriangleDetector> detector_two_;
  std::vector<std::uint32_t> rotate_once_;
  std::vector<std::uint32_t> rotate_twice_;
};

class GameState {
 public:
  explicit GameState(std::shared_ptr<const Rules> rules)
      : rules_(std::move(rules)),
        owned_one_(rules_->board().cell_count()),
        owned_two_(rules_->board().cell_count()) {}

  const GameConfig& config() const noexcept { return rules_->config(); }
  const Rules& rules() const noexcept { return *rules_; }
  std::shared_ptr<const Rules> rules_ptr() const noexcept { return rules_; }
  const Board& board() const noexcept { return rules_->board(); }
  std::size_t cell_count() const noexcept { return owned_one_.size(); }

  Owner owner(std::size_t cell) const {
    board().check_cell(cell);
    if (owned_one_.test(cell - 1)) return Owner::One;
    if (owned_two_.test(cell - 1)) return Owner::Two;
    return Owner::Empty;
  }

  const CellSet& owned(Player p) const noexcept { return p == Player::One ? owned_one_ : owned_two_; }
  std::size_t marked_count() const noexcept { return owned_one_.count() + owned_two_.count(); }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }
  Player to_move() const noexcept { return to_move_; }
  std::size_t pass_streak() const noexcept { return pass_streak_; }
  const GameStatus& status() const noexcept { return status_; }

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.config() == b.config() && a.owned_one_ == b.owned_one_ && a.owned_two_ == b.owned_two_ &&
           a.history_ == b.history_ && a.to_move_ == b.to_move_ && a.pass_streak_ == b.pass_streak_ &&
           a.status_ == b.status_;
  }

 private:
  friend GameState apply_move(const GameState& state, Move move);

  std::shared_ptr<const Rules> rules_;
  CellSet owned_one_;
  CellSet owned_two_;
  std::vector<HistoryEntry> history_;
  Player to_move_ = Player::One;
  std::size_t pass_streak_ = 0;
  GameStatus status_;
};

inline GameState new_game(const GameConfig& config) { return GameState(std::make_shared<const Rules>(config)); }

// Pass first, then a mark for every empty cell in increasing order.
inline std::vector<Move> legal_moves(const GameState& state) {
  if (!state.status().ongoing()) throw Error(Errc::GameOver, "game is over");
  std::vector<Move> out{Move::pass()};
  for (std::size_t c = 1; c <= state.cell_count(); ++c) {
    if (state.owner(c) == Owner::Empty) out.push_back(Move::mark(c));
  }
  return out;
}

inline GameState apply_move(const GameState& state, Move move) {
  if (!state.status().ongoing()) throw Error(Errc::GameOver, "game is over");
  GameState next = state;
  const Player mover = state.to_move();
  next.history_.push_back({mover, move});
  const std::size_t move_number = next.history_.size();
  next.to_move_ = opponent(mover);

  if (move.is_pass()) {
    next.pass_streak_ = state.pass_streak_ + 1;
    if (next.pass_streak_ >= 2) {
      next.status_.kind = GameStatus::Kind::Draw;
      next.status_.reason = DrawReason::DoublePass;
      next.status_.move_index = move_number;
    }
    return next;
  }

  if (state.owner(move.cell) != Owner::Empty) {
    throw Error(Errc::CellOccupied, "cell " + std::to_string(move.cell) + " is already marked");
  }
  next.pass_streak_ = 0;
  CellSet& mine = mover == Player::One ? next.owned_one_ : next.owned_two_;
  mine.set(move.cell - 1);

  const Rules& rules = state.rules();
  if (rules.wins(mover, mine)) {
    next.status_.kind = GameStatus::Kind::Won;
    next.status_.winner = mover;
    next.status_.witness = *rules.witness(mover, mine);
    next.status_.move_index = move_number;
    if (state.config().variant == Variant::Directional) next.status_.directions = rules.directions(mover, mine);
  } else if (next.marked_count() == next.cell_count()) {
    next.status_.kind = GameStatus::Kind::Draw;
    next.status_.reason = DrawReason::BoardFull;
    next.status_.move_index = move_number;
  }
  return next;
}

// Some triangle of the player's size whose cells the player owns (in the
// directional variant, in any one direction).
inline std::optional<TriangularSet> winning_witness(const GameState& state, Player player) {
  return state.rules().witness(player, state.owned(player));
}

inline std::vector<int> directional_wins(const GameState& state, Player player) {
  return state.rules().directions(player, state.owned(player));
}

inline GameState replay(const GameConfig& config, const std::vector<Move>& moves) {
  GameState state = new_game(config);
  for (const auto& mv : moves) state = apply_move(state, mv);
  return state;
}

// Cells grouped by the row of their last position, one line per row, marked
// X (player one), Y (player two) or '.'. For k = 1 this is the board itself.
inline std::string render_board(const GameState& state) {
  const Board& board = state.board();
  std::vector<std::string> rows(board.m());
  for (std::size_t c = 1; c <= state.cell_count(); ++c) {
    const std::size_t last = board.cell_positions(c).back();
    const std::size_t row = TriangularSet::level_of_index(last);
    const Owner o = state.owner(c);
    auto& line = rows[row - 1];
    if (!line.empty()) line += ' ';
    line += o == Owner::One ? 'X' : (o == Owner::Two ? 'Y' : '.');
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    if (board.k() == 1) out << std::string(board.m() - r - 1, ' ');
    out << rows[r] << '\n';
  }
  return out.str();
}

}  // namespace triramsey

#endif  // TRIRAMSEY_MINES_HPP
