#ifndef TRIRAMSEY_BOARD_HPP
#define TRIRAMSEY_BOARD_HPP

// Game boards: an m-level triangle of positions 1..T_m (row-major), whose
// playable cells are its k-level sub-triangles, numbered 1..[m k] in
// enumeration order. For k = 1 cell i is position i.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triramsey/bracket.hpp"
#include "triramsey/cell_set.hpp"
#include "triramsey/errors.hpp"
#include "triramsey/triangular.hpp"

namespace triramsey {

enum class Player : std::uint8_t { One = 1, Two = 2 };

constexpr Player opponent(Player p) noexcept { return p == Player::One ? Player::Two : Player::One; }

struct Position {
  std::size_t row = 1;  // 1..m
  std::size_t col = 1;  // 1..row

  std::size_t id() const noexcept { return triangular_number(row - 1) + col; }

  static Position from_id(std::size_t id) {
    if (id == 0) throw Error(Errc::InvalidParams, "position ids start at 1");
    Position p;
    p.row = TriangularSet::level_of_index(id - 1);
    p.col = id - triangular_number(p.row - 1);
    return p;
  }

  friend bool operator==(const Position&, const Position&) = default;
};

// One clockwise 120-degree turn. In barycentric form
// (a, b, c) = (m - row, col - 1, row - col) the turn is (a, b, c) -> (c, a, b).
inline Position rotate_position(Position pos, std::size_t m) {
  if (pos.row == 0 || pos.row > m || pos.col == 0 || pos.col > pos.row) {
    throw Error(Errc::InvalidParams, "position is not on the board");
  }
  const std::size_t a = m - pos.row;
  const std::size_t b = pos.col - 1;
  const std::size_t c = pos.row - pos.col;
  // (a', b', c') = (c, a, b)
  Position out;
  out.row = m - c;
  out.col = a + 1;
  (void)b;
  return out;
}

// Left-right reflection; preserves rows.
inline Position mirror_position(Position pos) { return {pos.row, pos.row + 1 - pos.col}; }

class Board;

// Every n-level triangle Z on a board together with the cells of Z
// (its k-level sub-triangles), stored flat.
struct TriangleFamily {
  std::size_t levels = 0;
  std::size_t cells_per_set = 0;
  std::size_t words_per_mask = 0;
  std::size_t position_count = 0;  // T_levels
  std::vector<std::uint64_t> masks;
  std::vector<std::uint32_t> cells;      // 0-based cell bits
  std::vector<std::uint32_t> positions;  // 0-based board positions

  std::size_t size() const noexcept { return position_count == 0 ? 0 : positions.size() / position_count; }
  std::span<const std::uint64_t> mask(std::size_t i) const { return {masks.data() + i * words_per_mask, words_per_mask}; }
  std::span<const std::uint32_t> cells_of(std::size_t i) const { return {cells.data() + i * cells_per_set, cells_per_set}; }
  std::span<const std::uint32_t> positions_of(std::size_t i) const {
    return {positions.data() + i * position_count, position_count};
  }

  bool contained_in(std::size_t i, const CellSet& owned) const {
    auto m = mask(i);
    auto w = owned.words();
    for (std::size_t j = 0; j < words_per_mask; ++j) {
      if (m[j] & ~w[j]) return false;
    }
    return true;
  }
};

// Largest number of (triangle, cell) incidences a family may materialize.
inline constexpr std::size_t kMaxFamilyIncidences = 60'000'000;

class Board {
 public:
  Board(std::size_t m, std::size_t k) : m_(m), k_(k) {
    if (k == 0 || k > m) throw Error(Errc::InvalidConfig, "board needs 1 <= k <= m");
    const BigNat cell_count = bracket(m, k);
    if (cell_count > 1'000'000) throw Error(Errc::SpaceTooLarge, "board has too many cells");
    for_each_subtriangle(m, k, [&](std::span<const std::uint32_t> pos) {
      const auto index = static_cast<std::uint32_t>(cell_count_++);
      cell_positions_.insert(cell_positions_.end(), pos.begin(), pos.end());
      if (k_ > 1) lookup_.emplace(std::vector<std::uint32_t>(pos.begin(), pos.end()), index);
    });
    row_first_.resize(m + 1);
    for (std::size_t r = 1; r <= m; ++r) row_first_[r - 1] = triangular_number(r - 1);
    row_first_[m] = triangular_number(m);
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t cell_count() const noexcept { return cell_count_; }
  std::size_t position_count() const noexcept { return triangular_number(m_); }

  // 0-based positions of 1-based cell `cell`.
  std::span<const std::uint32_t> cell_positions(std::size_t cell) const {
    check_cell(cell);
    const std::size_t width = triangular_number(k_);
    return {cell_positions_.data() + (cell - 1) * width, width};
  }

  // Position ids (1-based) of a cell, as a triangular set.
  TriangularSet cell_set(std::size_t cell) const {
    std::vector<Natural> ids;
    for (auto p : cell_positions(cell)) ids.push_back(p + 1);
    return TriangularSet::from_elements(std::move(ids));
  }

  // 1-based cell whose 0-based positions are exactly `positions` (sorted).
  std::optional<std::size_t> cell_of(std::span<const std::uint32_t> positions) const {
    if (positions.size() != triangular_number(k_)) return std::nullopt;
    if (k_ == 1) {
      if (positions[0] >= cell_count_) return std::nullopt;
      return positions[0] + 1;
    }
    auto it = lookup_.find(std::vector<std::uint32_t>(positions.begin(), positions.end()));
    if (it == lookup_.end()) return std::nullopt;
    return it->second + 1;
  }

  // First 0-based position of 1-based row r, and one past the last.
  std::size_t row_begin(std::size_t r) const { return row_first_.at(r - 1); }
  std::size_t row_end(std::size_t r) const { return row_first_.at(r); }

  void check_cell(std::size_t cell) const {
    if (cell == 0 || cell > cell_count_) {
      throw Error(Errc::InvalidParams, "cell " + std::to_string(cell) + " is not on the board");
    }
  }

  // Image of every 0-based position under one 120-degree turn.
  std::vector<std::uint32_t> rotation() const {
    std::vector<std::uint32_t> perm(position_count());
    for (std::size_t id = 1; id <= perm.size(); ++id) {
      perm[id - 1] = static_cast<std::uint32_t>(rotate_position(Position::from_id(id), m_).id() - 1);
    }
    return perm;
  }

  std::vector<std::uint32_t> reflection() const {
    std::vector<std::uint32_t> perm(position_count());
    for (std::size_t id = 1; id <= perm.size(); ++id) {
      perm[id - 1] = static_cast<std::uint32_t>(mirror_position(Position::from_id(id)).id() - 1);
    }
    return perm;
  }

  // Permutation of 0-based cell bits induced by a position permutation, or
  // nothing when some cell maps outside the cell list.
  std::optional<std::vector<std::uint32_t>> cell_permutation(std::span<const std::uint32_t> position_perm) const {
    std::vector<std::uint32_t> out(cell_count_);
    std::vector<std::uint32_t> image;
    for (std::size_t c = 1; c <= cell_count_; ++c) {
      image.clear();
      for (auto p : cell_positions(c)) image.push_back(position_perm[p]);
      std::sort(image.begin(), image.end());
      auto target = cell_of(image);
      if (!target) return std::nullopt;
      out[c - 1] = static_cast<std::uint32_t>(*target - 1);
    }
    return out;
  }

  // All `levels`-level triangles with their cells; built once per level count.
  std::shared_ptr<const TriangleFamily> family(std::size_t levels) const {
    std::lock_guard lock(family_mutex_);
    auto& slot = families_[levels];
    if (!slot) slot = build_family(levels);
    return slot;
  }

 private:
  std::shared_ptr<const TriangleFamily> build_family(std::size_t levels) const {
    auto fam = std::make_shared<TriangleFamily>();
    fam->levels = levels;
    fam->words_per_mask = (cell_count_ + 63) / 64;
    fam->position_count = triangular_number(levels);
    if (levels > m_ || levels < k_) return fam;
    fam->cells_per_set = static_cast<std::size_t>(bracket(levels, k_));
    const BigNat incidences = bracket(m_, levels) * fam->cells_per_set;
    if (incidences > kMaxFamilyIncidences) throw Error(Errc::SpaceTooLarge, "winning-triangle family too large");

    const auto inner = enumerate_subtriangle_positions(levels, k_);
    std::vector<std::uint32_t> image;
    for_each_subtriangle(m_, levels, [&](std::span<const std::uint32_t> z) {
      fam->positions.insert(fam->positions.end(), z.begin(), z.end());
      const std::size_t base = fam->masks.size();
      fam->masks.resize(base + fam->words_per_mask, 0);
      for (const auto& sub : inner) {
        image.clear();
        for (auto i : sub) image.push_back(z[i]);
        const auto cell = cell_of(image);
        const auto bit = static_cast<std::uint32_t>(*cell - 1);
        fam->cells.push_back(bit);
        fam->masks[base + (bit >> 6)] |= std::uint64_t{1} << (bit & 63);
      }
    });
    return fam;
  }

  std::size_t m_;
  std::size_t k_;
  std::size_t cell_count_ = 0;
  std::vector<std::uint32_t> cell_positions_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> lookup_;
  std::vector<std::size_t> row_first_;
  mutable std::mutex family_mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const TriangleFamily>> families_;
};

// Decides whether an owned cell set contains all cells of some n-level
// triangle. For k = 1 a triangle only needs j owned positions in its j-th
// row, so a greedy scan over row counts decides it in O(m); other k scan the
// precomputed family masks.
class TriangleDetector {
 public:
  TriangleDetector(std::shared_ptr<const Board> board, std::size_t levels)
      : board_(std::move(board)), levels_(levels) {
    if (board_->k() != 1) {
      family_ = board_->family(levels);
      if (board_->cell_count() <= 64) word_masks_ = family_->masks;
    } else if (board_->cell_count() <= 64) {
      for (std::size_t r = 1; r <= board_->m(); ++r) {
        const std::size_t lo = board_->row_begin(r), hi = board_->row_end(r);
        row_masks_.push_back(((hi == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << hi) - 1)) &
                             ~((std::uint64_t{1} << lo) - 1));
      }
    }
  }

  const Board& board() const noexcept { return *board_; }
  std::size_t levels() const noexcept { return levels_; }

  bool found_in(std::uint64_t owned) const noexcept {
    if (levels_ > board_->m()) return false;
    if (!row_masks_.empty()) {
      std::size_t built = 0;
      for (auto row : row_masks_) {
        if (static_cast<std::size_t>(std::popcount(owned & row)) > built && ++built == levels_) return true;
      }
      return false;
    }
    if (board_->k() != 1) {
      for (auto mask : word_masks_) {
        if ((mask & owned) == mask) return true;
      }
      return false;
    }
    return found_in(CellSet::from_word(owned, board_->cell_count()));
  }

  bool found_in(const CellSet& owned) const {
    if (levels_ > board_->m()) return false;
    if (board_->k() == 1) {
      std::size_t built = 0;
      for (std::size_t r = 1; r <= board_->m(); ++r) {
        if (owned.count_range(board_->row_begin(r), board_->row_end(r)) > built && ++built == levels_) return true;
      }
      return false;
    }
    for (std::size_t i = 0; i < family_->size(); ++i) {
      if (family_->contained_in(i, owned)) return true;
    }
    return false;
  }

  // A triangle (as 1-based position ids) whose cells are all owned.
  std::optional<TriangularSet> witness(const CellSet& owned) const {
    if (levels_ > board_->m()) return std::nullopt;
    std::vector<Natural> ids;
    if (board_->k() == 1) {
      std::size_t built = 0;
      for (std::size_t r = 1; r <= board_->m() && built < levels_; ++r) {
        const std::size_t lo = board_->row_begin(r), hi = board_->row_end(r);
        if (owned.count_range(lo, hi) <= built) continue;
        ++built;
        std::size_t taken = 0;
        for (std::size_t p = lo; p < hi && taken < built; ++p) {
          if (owned.test(p)) {
            ids.push_back(p + 1);
            ++taken;
          }
        }
      }
      if (built < levels_) return std::nullopt;
      return TriangularSet::from_elements(std::move(ids));
    }
    for (std::size_t i = 0; i < family_->size(); ++i) {
      if (!family_->contained_in(i, owned)) continue;
      for (auto p : family_->positions_of(i)) ids.push_back(p + 1);
      return TriangularSet::from_elements(std::move(ids));
    }
    return std::nullopt;
  }

 private:
  std::shared_ptr<const Board> board_;
  std::size_t levels_;
  std::shared_ptr<const TriangleFamily> family_;
  std::vector<std::uint64_t> row_masks_;
  std::vector<std::uint64_t> word_masks_;
};

// Applies a 0-based bit permutation to a cell set.
inline CellSet permute_cells(const CellSet& cells, std::span<const std::uint32_t> perm) {
  CellSet out(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells.test(i)) out.set(perm[i]);
  }
  return out;
}

}  // namespace triramsey

#endif  // TRIRAMSEY_BOARD_HPP
