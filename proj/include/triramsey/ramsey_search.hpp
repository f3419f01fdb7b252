#ifndef TRIRAMSEY_RAMSEY_SEARCH_HPP
#define TRIRAMSEY_RAMSEY_SEARCH_HPP

// Draw search over total 2-colorings of a Mines_m(p, q, k) board.
//
// A coloring hands every cell to one player. It is a draw when player one
// owns no p-level triangle and player two no q-level triangle. Passing lets
// any split of the cells arise in play, so a draw coloring exists exactly
// when some game can end drawn; the smallest m without one is R1(p, q, k).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "triramsey/board.hpp"
#include "triramsey/errors.hpp"
#include "triramsey/mines.hpp"

namespace triramsey {

// Bit i set: cell i+1 belongs to player one; clear: player two.
struct Coloring {
  CellSet player_one;

  std::size_t size() const noexcept { return player_one.size(); }
  Player owner(std::size_t cell) const { return player_one.test(cell - 1) ? Player::One : Player::Two; }
  Coloring swapped() const { return {player_one.complement()}; }

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

enum class SearchStrategy : std::uint8_t { Exhaustive, Backtracking, Randomized };

constexpr std::string_view strategy_name(SearchStrategy s) noexcept {
  switch (s) {
    case SearchStrategy::Exhaustive: return "exhaustive";
    case SearchStrategy::Backtracking: return "backtracking";
    case SearchStrategy::Randomized: return "randomized";
  }
  return "?";
}

inline SearchStrategy parse_strategy(std::string_view name) {
  for (auto s : {SearchStrategy::Exhaustive, SearchStrategy::Backtracking, SearchStrategy::Randomized}) {
    if (strategy_name(s) == name) return s;
  }
  throw Error(Errc::InvalidParams, "unknown strategy '" + std::string(name) + "'");
}

struct SearchOutcome {
  enum class Result : std::uint8_t { DrawFound, NoDrawExists, Inconclusive };
  Result result = Result::Inconclusive;
  std::optional<Coloring> witness;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

constexpr std::string_view result_name(SearchOutcome::Result r) noexcept {
  switch (r) {
    case SearchOutcome::Result::DrawFound: return "DrawFound";
    case SearchOutcome::Result::NoDrawExists: return "NoDrawExists";
    case SearchOutcome::Result::Inconclusive: return "Inconclusive";
  }
  return "?";
}

// How the 2^N total colorings split by which players own a winning triangle.
struct ColoringCensus {
  std::uint64_t neither = 0;
  std::uint64_t one_only = 0;
  std::uint64_t two_only = 0;
  std::uint64_t both = 0;

  std::uint64_t total() const noexcept { return neither + one_only + two_only + both; }
};

// Largest board (in cells) that exhaustive sweeps accept.
inline constexpr std::size_t kMaxSweepCells = 40;

namespace detail {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over consecutive chunks of [0, total) on worker threads,
// handing chunks out in increasing order. fn returns true to claim the chunk
// as the answer; chunks after the lowest claimed one are skipped, so the
// claimed chunk is the first one in canonical order whatever the timing.
template <class ChunkFn>
std::optional<std::uint64_t> sweep_chunks(std::uint64_t total, std::uint64_t chunk, ChunkFn&& fn) {
  const std::uint64_t chunks = (total + chunk - 1) / chunk;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  auto work = [&] {
    while (true) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks || c > best.load()) return;
      const std::uint64_t begin = c * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (fn(c, begin, end)) {
        std::uint64_t seen = best.load();
        while (c < seen && !best.compare_exchange_weak(seen, c)) {
        }
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (best.load() == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return best.load();
}

}  // namespace detail

// Precomputed draw-checking data for one (m, p, q, k).
class DrawSearch {
 public:
  explicit DrawSearch(const GameConfig& config)
      : config_(config),
        board_(std::make_shared<const Board>((config.validate(), config.m), config.k)),
        one_(board_, config.p),
        two_(board_, config.q) {
    const std::size_t n = board_->cell_count();
    full_ = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  }

  const GameConfig& config() const noexcept { return config_; }
  const Board& board() const noexcept { return *board_; }
  std::shared_ptr<const Board> board_ptr() const noexcept { return board_; }
  std::size_t cell_count() const noexcept { return board_->cell_count(); }

  bool is_draw(const Coloring& c) const {
    if (c.size() != cell_count()) throw Error(Errc::InvalidParams, "coloring does not cover the board");
    if (cell_count() <= 64) return is_draw(c.player_one.word0());
    return !one_.found_in(c.player_one) && !two_.found_in(c.player_one.complement());
  }

  // Single-word form; requires cell_count() <= 64.
  bool is_draw(std::uint64_t one) const noexcept { return !one_.found_in(one) && !two_.found_in(~one & full_); }

  Coloring coloring_from_word(std::uint64_t bits) const { return {CellSet::from_word(bits, cell_count())}; }

  SearchOutcome find(SearchStrategy strategy, std::uint64_t budget, std::uint64_t seed = kDefaultSeed) const {
    if (budget == 0) throw Error(Errc::BudgetInvalid, "budget must be positive");
    const auto start = std::chrono::steady_clock::now();
    SearchOutcome out;
    switch (strategy) {
      case SearchStrategy::Exhaustive: out = exhaustive(budget); break;
      case SearchStrategy::Backtracking: out = backtracking(budget); break;
      case SearchStrategy::Randomized: out = randomized(budget, seed); break;
    }
    out.elapsed = std::chrono::steady_clock::now() - start;
    if (out.witness && !is_draw(*out.witness)) throw Error(Errc::InvalidParams, "internal: witness failed re-verification");
    return out;
  }

  // Every coloring in increasing integer order (bit i = cell i+1), at most
  // `budget` of them; the first draw found is the least one.
  SearchOutcome exhaustive(std::uint64_t budget) const {
    const std::size_t n = cell_count();
    if (n > 62) return partial_exhaustive(budget);
    const std::uint64_t space = std::uint64_t{1} << n;
    const std::uint64_t total = std::min(space, budget);
    std::atomic<std::uint64_t> checked{0};
    std::mutex found_mutex;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 1U << 16));
    auto winner = detail::sweep_chunks(total, chunk, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t bits = begin; bits < end; ++bits) {
        if (is_draw(bits)) {
          checked.fetch_add(bits - begin + 1);
          std::lock_guard lock(found_mutex);
          hits.emplace_back(c, bits);
          return true;
        }
      }
      checked.fetch_add(end - begin);
      return false;
    });
    SearchOutcome out;
    out.nodes_explored = checked.load();
    if (winner) {
      for (auto [c, bits] : hits) {
        if (c == *winner) out.witness = coloring_from_word(bits);
      }
      out.result = SearchOutcome::Result::DrawFound;
    } else {
      out.result = total == space ? SearchOutcome::Result::NoDrawExists : SearchOutcome::Result::Inconclusive;
    }
    return out;
  }

  // Depth-first assignment, most-constrained cells first; a branch dies as
  // soon as one player owns a whole winning triangle.
  SearchOutcome backtracking(std::uint64_t budget) const {
    if (cell_count() <= 64) return Backtracker<std::uint64_t>(*this, budget).run();
    return Backtracker<CellSet>(*this, budget).run();
  }

  // Independent fair coin per cell, up to `budget` trials.
  SearchOutcome randomized(std::uint64_t budget, std::uint64_t seed) const {
    std::mt19937_64 rng(seed ^ (config_.m * 0x9E3779B97F4A7C15ULL) ^ (config_.p << 8) ^ (config_.q << 16) ^
                        (config_.k << 24));
    SearchOutcome out;
    const std::size_t n = cell_count();
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
      ++out.nodes_explored;
      if (n <= 64) {
        const std::uint64_t bits = rng() & full_;
        if (is_draw(bits)) {
          out.witness = coloring_from_word(bits);
          out.result = SearchOutcome::Result::DrawFound;
          return out;
        }
        continue;
      }
      Coloring c{CellSet(n)};
      for (std::size_t i = 0; i < n; i += 64) {
        const std::uint64_t word = rng();
        for (std::size_t b = 0; b < 64 && i + b < n; ++b) {
          if ((word >> b) & 1U) c.player_one.set(i + b);
        }
      }
      if (is_draw(c)) {
        out.witness = std::move(c);
        out.result = SearchOutcome::Result::DrawFound;
        return out;
      }
    }
    out.result = SearchOutcome::Result::Inconclusive;
    return out;
  }

  // Classifies all 2^N colorings. With stop_at_both the sweep ends at the
  // first coloring where both players win (counts are then partial).
  ColoringCensus census(bool stop_at_both = false, std::size_t max_cells = kMaxSweepCells) const {
    const std::size_t n = cell_count();
    if (n > max_cells || n > 62) throw Error(Errc::SpaceTooLarge, std::to_string(n) + " cells is too many to sweep");
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 1U << 18));
    std::mutex merge;
    ColoringCensus census;
    detail::sweep_chunks(total, chunk, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
      ColoringCensus local;
      bool both = false;
      for (std::uint64_t bits = begin; bits < end; ++bits) {
        const bool a = one_.found_in(bits);
        const bool b = two_.found_in(~bits & full_);
        if (a && b) {
          ++local.both;
          if (stop_at_both) {
            both = true;
            break;
          }
        } else if (a) {
          ++local.one_only;
        } else if (b) {
          ++local.two_only;
        } else {
          ++local.neither;
        }
      }
      std::lock_guard lock(merge);
      census.neither += local.neither;
      census.one_only += local.one_only;
      census.two_only += local.two_only;
      census.both += local.both;
      return both;
    });
    return census;
  }

  static constexpr std::uint64_t kDefaultSeed = 0x5EED'0F'C01DULL;

 private:
  template <class Mask>
  class Backtracker {
   public:
    Backtracker(const DrawSearch& search, std::uint64_t budget) : s_(search), budget_(budget) {
      const std::size_t n = s_.cell_count();
      if constexpr (std::is_same_v<Mask, CellSet>) {
        assigned_[0] = CellSet(n);
        assigned_[1] = CellSet(n);
      }
      // Incidence lists: only needed when k > 1 (k = 1 uses the row scan).
      std::vector<std::size_t> weight(n, 0);
      bool weighted = false;
      try {
        for (int side = 0; side < 2; ++side) {
          const auto fam = s_.board_->family(side == 0 ? s_.config_.p : s_.config_.q);
          families_[side] = fam;
          if (s_.board_->k() > 1) incidence_[side].assign(n, {});
          for (std::size_t z = 0; z < fam->size(); ++z) {
            for (auto cell : fam->cells_of(z)) {
              ++weight[cell];
              if (s_.board_->k() > 1) incidence_[side][cell].push_back(static_cast<std::uint32_t>(z));
            }
          }
        }
        weighted = true;
      } catch (const Error&) {
        if (s_.board_->k() > 1) throw;
      }
      order_.resize(n);
      std::iota(order_.begin(), order_.end(), 0U);
      if (weighted) {
        std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return weight[a] > weight[b]; });
      } else {
        std::reverse(order_.begin(), order_.end());
      }
    }

    SearchOutcome run() {
      SearchOutcome out;
      const bool found = dfs(0);
      out.nodes_explored = nodes_;
      if (found) {
        out.result = SearchOutcome::Result::DrawFound;
        if constexpr (std::is_same_v<Mask, CellSet>) {
          out.witness = Coloring{assigned_[0]};
        } else {
          out.witness = s_.coloring_from_word(assigned_[0]);
        }
      } else {
        out.result = exhausted_ ? SearchOutcome::Result::Inconclusive : SearchOutcome::Result::NoDrawExists;
      }
      return out;
    }

   private:
    static void set_bit(Mask& m, std::uint32_t i) {
      if constexpr (std::is_same_v<Mask, CellSet>) {
        m.set(i);
      } else {
        m |= std::uint64_t{1} << i;
      }
    }
    static void clear_bit(Mask& m, std::uint32_t i) {
      if constexpr (std::is_same_v<Mask, CellSet>) {
        m.reset(i);
      } else {
        m &= ~(std::uint64_t{1} << i);
      }
    }

    // Does giving `cell` to `side` complete one of that side's triangles?
    bool completes(int side, std::uint32_t cell) const {
      const Mask& mine = assigned_[side];
      if (s_.board_->k() == 1) return (side == 0 ? s_.one_ : s_.two_).found_in(mine);
      const TriangleFamily& fam = *families_[side];
      for (auto z : incidence_[side][cell]) {
        if constexpr (std::is_same_v<Mask, CellSet>) {
          if (fam.contained_in(z, mine)) return true;
        } else {
          const std::uint64_t m = fam.masks[z];
          if ((m & mine) == m) return true;
        }
      }
      return false;
    }

    bool dfs(std::size_t depth) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      if (depth == order_.size()) return true;
      const std::uint32_t cell = order_[depth];
      for (int side = 0; side < 2; ++side) {
        set_bit(assigned_[side], cell);
        if (!completes(side, cell) && dfs(depth + 1)) return true;
        clear_bit(assigned_[side], cell);
        if (exhausted_) return false;
      }
      return false;
    }

    const DrawSearch& s_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    Mask assigned_[2]{};
    std::shared_ptr<const TriangleFamily> families_[2];
    std::vector<std::vector<std::uint32_t>> incidence_[2];
    std::vector<std::uint32_t> order_;
  };

  // Boards beyond one word: sweep the low 62 cells with the rest given to
  // player two. Never proves absence.
  SearchOutcome partial_exhaustive(std::uint64_t budget) const {
    SearchOutcome out;
    const std::size_t n = cell_count();
    for (std::uint64_t bits = 0; bits < budget; ++bits) {
      ++out.nodes_explored;
      Coloring c{CellSet(n)};
      for (std::size_t b = 0; b < 62; ++b) {
        if ((bits >> b) & 1U) c.player_one.set(b);
      }
      if (is_draw(c)) {
        out.witness = std::move(c);
        out.result = SearchOutcome::Result::DrawFound;
        return out;
      }
    }
    out.result = SearchOutcome::Result::Inconclusive;
    return out;
  }

  GameConfig config_;
  std::shared_ptr<const Board> board_;
  TriangleDetector one_;
  TriangleDetector two_;
  std::uint64_t full_ = 0;
};

inline GameConfig search_config(std::size_t m, std::size_t p, std::size_t q, std::size_t k) {
  return GameConfig{m, p, q, k, Variant::Standard};
}

inline bool is_draw_coloring(const Coloring& coloring, const GameConfig& config) {
  return DrawSearch(config).is_draw(coloring);
}

inline SearchOutcome find_draw(const GameConfig& config, SearchStrategy strategy, std::uint64_t budget,
                               std::uint64_t seed = DrawSearch::kDefaultSeed) {
  return DrawSearch(config).find(strategy, budget, seed);
}

// Restricts a coloring of an m-level board to the (m-1)-level board on its
// first m-1 rows. Draws restrict to draws.
inline Coloring restrict_coloring(const Coloring& coloring, const Board& from, const Board& to) {
  if (to.k() != from.k() || to.m() > from.m()) throw Error(Errc::InvalidParams, "can only restrict to a smaller board");
  Coloring out{CellSet(to.cell_count())};
  for (std::size_t c = 1; c <= to.cell_count(); ++c) {
    const auto source = from.cell_of(to.cell_positions(c));
    if (coloring.player_one.test(*source - 1)) out.player_one.set(c - 1);
  }
  return out;
}

struct R1Report {
  enum class Status : std::uint8_t { Exact, LowerBound };
  Status status = Status::LowerBound;
  std::size_t value = 0;          // R1 when Exact, else a verified lower bound
  std::optional<Coloring> witness;  // a draw on the (value-1)-level board
  std::size_t witness_m = 0;
  std::vector<std::pair<std::size_t, SearchOutcome::Result>> scanned;
  std::uint64_t nodes_explored = 0;
};

// Scans m upward from max(p, q). A draw at m restricts to a draw at every
// smaller board, so the first m with no draw is R1(p, q, k). When a search
// runs out of budget the report carries the best lower bound proven so far.
inline R1Report compute_r1(std::size_t p, std::size_t q, std::size_t k, std::size_t m_max, std::uint64_t budget,
                           SearchStrategy strategy = SearchStrategy::Backtracking) {
  if (k == 0 || k > p || k > q) throw Error(Errc::InvalidParams, "need 1 <= k <= p, q");
  R1Report report;
  const std::size_t m0 = std::max(p, q);
  report.value = m0;
  for (std::size_t m = m0; m <= m_max; ++m) {
    DrawSearch search(search_config(m, p, q, k));
    SearchOutcome outcome = search.find(strategy, budget);
    report.nodes_explored += outcome.nodes_explored;
    if (outcome.result == SearchOutcome::Result::Inconclusive && strategy != SearchStrategy::Randomized) {
      SearchOutcome random = search.find(SearchStrategy::Randomized, budget);
      report.nodes_explored += random.nodes_explored;
      if (random.result == SearchOutcome::Result::DrawFound) outcome = std::move(random);
    }
    report.scanned.emplace_back(m, outcome.result);
    switch (outcome.result) {
      case SearchOutcome::Result::NoDrawExists:
        report.status = R1Report::Status::Exact;
        report.value = m;
        return report;
      case SearchOutcome::Result::DrawFound:
        report.value = m + 1;
        report.witness = std::move(outcome.witness);
        report.witness_m = m;
        break;
      case SearchOutcome::Result::Inconclusive:
        return report;
    }
  }
  return report;
}

// True when no total coloring of the board gives both players a winning
// triangle.
inline bool verify_no_double_win(std::size_t m, std::size_t p, std::size_t q, std::size_t k,
                                 std::size_t max_cells = kMaxSweepCells) {
  return DrawSearch(search_config(m, p, q, k)).census(true, max_cells).both == 0;
}

}  // namespace triramsey

#endif  // TRIRAMSEY_RAMSEY_SEARCH_HPP
