#ifndef TRIRAMSEY_SOLVER_HPP
#define TRIRAMSEY_SOLVER_HPP

// Exact game values for small Mines boards: negamax over (owned bits of both
// players, side to move, pass streak) with a transposition table, states
// folded under the board symmetries that keep the win rule intact.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "triramsey/board.hpp"
#include "triramsey/errors.hpp"
#include "triramsey/mines.hpp"

namespace triramsey {

enum class Outcome : std::uint8_t { FirstPlayerWin, SecondPlayerWin, DrawValue };

constexpr std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::FirstPlayerWin: return "FirstPlayerWin";
    case Outcome::SecondPlayerWin: return "SecondPlayerWin";
    case Outcome::DrawValue: return "DrawValue";
  }
  return "?";
}

struct GameValue {
  Outcome outcome = Outcome::DrawValue;
  std::optional<Move> principal;
  std::uint64_t nodes_explored = 0;
};

struct SolverOptions {
  std::uint64_t node_budget = 20'000'000;
  unsigned threads = 1;  // root moves evaluated in parallel when > 1
};

// Largest board the solver packs into one word per player.
inline constexpr std::size_t kMaxSolverCells = 64;

namespace detail {

inline std::uint64_t permute_word(std::uint64_t bits, const std::vector<std::uint32_t>& perm) {
  std::uint64_t out = 0;
  while (bits) {
    const int i = std::countr_zero(bits);
    bits &= bits - 1;
    out |= std::uint64_t{1} << perm[static_cast<std::size_t>(i)];
  }
  return out;
}

inline std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& outer,
                                          const std::vector<std::uint32_t>& inner) {
  std::vector<std::uint32_t> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

}  // namespace detail

// Win tests and symmetry group of one configuration, on single-word states.
class SolverRules {
 public:
  explicit SolverRules(std::shared_ptr<const Rules> rules) : rules_(std::move(rules)) {
    const Board& board = rules_->board();
    cells_ = board.cell_count();
    if (cells_ > kMaxSolverCells) throw Error(Errc::SpaceTooLarge, "board too large to solve");
    full_ = cells_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells_) - 1;
    directional_ = rules_->config().variant == Variant::Directional;
    if (directional_) {
      const auto turn = *board.cell_permutation(board.rotation());
      turns_ = {identity(), turn, detail::compose(turn, turn)};
    }
    build_symmetries();
  }

  const Rules& rules() const noexcept { return *rules_; }
  std::size_t cells() const noexcept { return cells_; }
  std::uint64_t full() const noexcept { return full_; }
  const std::vector<std::vector<std::uint32_t>>& symmetries() const noexcept { return symmetries_; }

  bool wins(Player player, std::uint64_t owned) const {
    const auto& det = rules_->detector(player);
    if (!directional_) return det.found_in(owned);
    int directions = 0;
    for (const auto& t : turns_) directions += det.found_in(detail::permute_word(owned, t)) ? 1 : 0;
    return directions >= 2;
  }

  // Smallest image of the pair under the symmetry group.
  std::pair<std::uint64_t, std::uint64_t> canonical(std::uint64_t one, std::uint64_t two) const {
    std::pair<std::uint64_t, std::uint64_t> best{one, two};
    for (std::size_t s = 1; s < symmetries_.size(); ++s) {
      const std::pair<std::uint64_t, std::uint64_t> image{detail::permute_word(one, symmetries_[s]),
                                                          detail::permute_word(two, symmetries_[s])};
      if (image < best) best = image;
    }
    return best;
  }

 private:
  std::vector<std::uint32_t> identity() const {
    std::vector<std::uint32_t> id(cells_);
    for (std::size_t i = 0; i < cells_; ++i) id[i] = static_cast<std::uint32_t>(i);
    return id;
  }

  // The winning sets a player can complete, one list per direction, each
  // sorted. Standard play has a single direction.
  std::vector<std::vector<std::uint64_t>> winning_families(std::size_t levels) const {
    const auto fam = rules_->board().family(levels);
    std::vector<std::vector<std::uint64_t>> out;
    const std::size_t dirs = directional_ ? 3 : 1;
    for (std::size_t d = 0; d < dirs; ++d) {
      // Direction d+1 holds when turning the owned set d times exposes a
      // standard triangle, i.e. the owned set contains its preimage.
      std::vector<std::uint32_t> back = identity();
      if (d > 0) {
        const auto& fwd = turns_[d];
        for (std::size_t i = 0; i < cells_; ++i) back[fwd[i]] = static_cast<std::uint32_t>(i);
      }
      std::vector<std::uint64_t> masks;
      for (auto mask : fam->masks) masks.push_back(detail::permute_word(mask, back));
      std::sort(masks.begin(), masks.end());
      out.push_back(std::move(masks));
    }
    return out;
  }

  // Candidates: the six symmetries of the triangle. A candidate is kept when
  // it maps each player's direction families onto direction families.
  void build_symmetries() {
    const Board& board = rules_->board();
    const auto rot = board.rotation();
    const auto flip = board.reflection();
    std::vector<std::vector<std::uint32_t>> positions{rot, detail::compose(rot, rot)};
    std::vector<std::uint32_t> id(rot.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint32_t>(i);
    positions.insert(positions.begin(), id);
    for (std::size_t i = 0; i < 3; ++i) positions.push_back(detail::compose(flip, positions[i]));

    const auto one = winning_families(rules_->config().p);
    const auto two = winning_families(rules_->config().q);
    for (const auto& pos : positions) {
      auto cells = board.cell_permutation(pos);
      if (!cells) continue;
      if (preserves(*cells, one) && preserves(*cells, two)) symmetries_.push_back(std::move(*cells));
    }
  }

  static bool preserves(const std::vector<std::uint32_t>& perm, const std::vector<std::vector<std::uint64_t>>& families) {
    for (const auto& family : families) {
      std::vector<std::uint64_t> image;
      for (auto mask : family) image.push_back(detail::permute_word(mask, perm));
      std::sort(image.begin(), image.end());
      if (std::find(families.begin(), families.end(), image) == families.end()) return false;
    }
    return true;
  }

  std::shared_ptr<const Rules> rules_;
  std::size_t cells_ = 0;
  std::uint64_t full_ = 0;
  bool directional_ = false;
  std::vector<std::vector<std::uint32_t>> turns_;
  std::vector<std::vector<std::uint32_t>> symmetries_;
};

struct SolverKey {
  std::uint64_t one = 0;
  std::uint64_t two = 0;
  std::uint8_t to_move = 1;
  std::uint8_t pass_streak = 0;
  friend bool operator==(const SolverKey&, const SolverKey&) = default;
};

struct SolverKeyHash {
  std::size_t operator()(const SolverKey& k) const noexcept {
    std::uint64_t h = k.one * 0x9E3779B97F4A7C15ULL;
    h ^= (k.two + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    h ^= (std::uint64_t{k.to_move} << 1 | k.pass_streak) * 0x165667B19E3779F9ULL;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Values are stored for the side to move: +1 win, 0 draw, -1 loss. Entries
// are exact, so concurrent writers always agree.
class TranspositionTable {
 public:
  std::optional<int> find(const SolverKey& key) const {
    auto& s = stripe(key);
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }
  void store(const SolverKey& key, int value) {
    auto& s = stripe(key);
    std::lock_guard lock(s.mutex);
    s.map.emplace(key, static_cast<std::int8_t>(value));
  }
  std::size_t size() const {
    std::size_t n = 0;
    for (auto& s : stripes_) {
      std::lock_guard lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

 private:
  struct Stripe {
    mutable std::mutex mutex;
    std::unordered_map<SolverKey, std::int8_t, SolverKeyHash> map;
  };
  Stripe& stripe(const SolverKey& key) const { return stripes_[SolverKeyHash{}(key) % stripes_.size()]; }
  mutable std::array<Stripe, 16> stripes_;
};

class Solver {
 public:
  explicit Solver(std::shared_ptr<const Rules> rules, SolverOptions options = {})
      : rules_(std::move(rules)), options_(options) {}

  const SolverRules& rules() const noexcept { return rules_; }
  std::uint64_t nodes() const noexcept { return nodes_.load(); }
  const TranspositionTable& table() const noexcept { return table_; }

  // Value of `state` from player one's side, with the first best move under
  // the lowest-cell, pass-last tie-break.
  GameValue solve(const GameState& state) {
    GameValue out;
    const GameStatus& status = state.status();
    if (!status.ongoing()) {
      out.outcome = status.kind == GameStatus::Kind::Draw ? Outcome::DrawValue
                    : status.winner == Player::One        ? Outcome::FirstPlayerWin
                                                          : Outcome::SecondPlayerWin;
      return out;
    }
    const std::uint64_t start = nodes_.load();
    const std::uint64_t one = state.owned(Player::One).word0();
    const std::uint64_t two = state.owned(Player::Two).word0();
    const Player mover = state.to_move();
    const auto streak = static_cast<int>(state.pass_streak());

    const auto moves = root_moves(one, two);
    std::vector<int> values(moves.size());
    auto evaluate = [&](std::size_t i) { values[i] = child_value(one, two, mover, streak, moves[i]); };
    if (options_.threads > 1 && moves.size() > 1) {
      std::vector<std::future<void>> jobs;
      std::atomic<std::size_t> next{0};
      for (unsigned t = 0; t < std::min<std::size_t>(options_.threads, moves.size()); ++t) {
        jobs.push_back(std::async(std::launch::async, [&] {
          for (std::size_t i; (i = next.fetch_add(1)) < moves.size();) evaluate(i);
        }));
      }
      for (auto& j : jobs) j.get();
    } else {
      for (std::size_t i = 0; i < moves.size(); ++i) {
        evaluate(i);
        if (values[i] == 1) {
          values.resize(i + 1);
          break;
        }
      }
    }
    const auto best = std::max_element(values.begin(), values.end());  // first maximum
    out.principal = moves[static_cast<std::size_t>(best - values.begin())];
    const int v = *best;
    out.outcome = v == 0 ? Outcome::DrawValue
                  : (v > 0) == (mover == Player::One) ? Outcome::FirstPlayerWin
                                                      : Outcome::SecondPlayerWin;
    out.nodes_explored = nodes_.load() - start;
    return out;
  }

 private:
  std::vector<Move> root_moves(std::uint64_t one, std::uint64_t two) const {
    std::vector<Move> out;
    const std::uint64_t empty = ~(one | two) & rules_.full();
    for (std::size_t c = 0; c < rules_.cells(); ++c) {
      if ((empty >> c) & 1U) out.push_back(Move::mark(c + 1));
    }
    out.push_back(Move::pass());
    return out;
  }

  // Value for `mover` of playing `move`.
  int child_value(std::uint64_t one, std::uint64_t two, Player mover, int streak, Move move) {
    if (move.is_pass()) {
      if (streak >= 1) return 0;
      return -negamax(one, two, opponent(mover), 1);
    }
    const std::uint64_t bit = std::uint64_t{1} << (move.cell - 1);
    std::uint64_t& mine = mover == Player::One ? one : two;
    mine |= bit;
    if (rules_.wins(mover, mine)) return 1;
    if ((one | two) == rules_.full()) return 0;
    return -negamax(one, two, opponent(mover), 0);
  }

  int negamax(std::uint64_t one, std::uint64_t two, Player mover, int streak) {
    if (nodes_.fetch_add(1) >= options_.node_budget) {
      throw Error(Errc::BudgetExceeded, "solver node budget of " + std::to_string(options_.node_budget) + " exhausted");
    }
    const auto [c1, c2] = rules_.canonical(one, two);
    const SolverKey key{c1, c2, static_cast<std::uint8_t>(mover), static_cast<std::uint8_t>(streak)};
    if (auto hit = table_.find(key)) return *hit;

    int best = -1;
    std::uint64_t empty = ~(one | two) & rules_.full();
    while (empty && best < 1) {
      const int c = std::countr_zero(empty);
      empty &= empty - 1;
      best = std::max(best, child_value(one, two, mover, streak, Move::mark(static_cast<std::size_t>(c) + 1)));
    }
    if (best < 1) best = std::max(best, child_value(one, two, mover, streak, Move::pass()));
    table_.store(key, best);
    return best;
  }

  SolverRules rules_;
  SolverOptions options_;
  TranspositionTable table_;
  std::atomic<std::uint64_t> nodes_{0};
};

inline GameValue solve(const GameState& state, SolverOptions options = {}) {
  return Solver(state.rules_ptr(), options).solve(state);
}

inline Move best_move(const GameState& state, SolverOptions options = {}) {
  if (!state.status().ongoing()) throw Error(Errc::GameOver, "game is over");
  return *solve(state, options).principal;
}

namespace detail {

// The explicit opening for player one on three rows. Directional: take two of
// the corners {1, 4, 6}, turn the board so they sit at 4 and 6, then take
// whichever of 1, 2, 3 is free in that frame. Standard play cannot turn the
// board, so it takes two bottom-row cells (corners first) and then whichever
// of 1, 2, 3 is free.
inline std::optional<std::size_t> strategy_move(const GameState& state) {
  auto free = [&](std::size_t c) { return state.owner(c) == Owner::Empty; };
  auto mine = [&](std::size_t c) { return state.owner(c) == Owner::One; };
  auto first_free = [&](std::initializer_list<std::size_t> cells) -> std::optional<std::size_t> {
    for (auto c : cells) {
      if (free(c)) return c;
    }
    return std::nullopt;
  };

  if (state.config().variant == Variant::Standard) {
    if (mine(4) + mine(5) + mine(6) < 2) return first_free({4, 6, 5});
    return first_free({1, 2, 3});
  }
  if (mine(1) + mine(4) + mine(6) < 2) return first_free({1, 4, 6});
  const std::size_t left = !mine(1) ? 1 : !mine(4) ? 4 : 6;
  // Turn t with rot^t(left) = 1; play the preimages of 1, 2, 3.
  const auto rot = state.board().rotation();
  std::vector<std::uint32_t> turn(rot.size());
  for (std::size_t i = 0; i < turn.size(); ++i) turn[i] = static_cast<std::uint32_t>(i);
  while (turn[left - 1] != 0) turn = compose(rot, turn);
  std::array<std::size_t, 3> pre{};
  for (std::size_t i = 0; i < turn.size(); ++i) {
    if (turn[i] < 3) pre[turn[i]] = i + 1;
  }
  return first_free({pre[0], pre[1], pre[2]});
}

inline bool strategy_holds(const GameState& state) {
  if (!state.status().ongoing()) {
    const auto& s = state.status();
    if (s.kind != GameStatus::Kind::Won || s.winner != Player::One) return false;
    return state.config().variant == Variant::Standard || s.directions.size() >= 2;
  }
  if (state.to_move() == Player::One) {
    const auto cell = strategy_move(state);
    if (!cell) return false;
    const auto legal = legal_moves(state);
    if (std::find(legal.begin(), legal.end(), Move::mark(*cell)) == legal.end()) return false;
    return strategy_holds(apply_move(state, Move::mark(*cell)));
  }
  for (const auto& reply : legal_moves(state)) {
    if (!strategy_holds(apply_move(state, reply))) return false;
  }
  return true;
}

}  // namespace detail

// Plays the explicit three-row strategy for player one against every reply
// of player two (passes included) and checks that each line ends in a win.
inline bool verify_strategy_theorem(Variant variant) {
  return detail::strategy_holds(new_game(GameConfig{3, 2, 2, 1, variant}));
}

}  // namespace triramsey

#endif  // TRIRAMSEY_SOLVER_HPP
