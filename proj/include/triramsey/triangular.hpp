#ifndef TRIRAMSEY_TRIANGULAR_HPP
#define TRIRAMSEY_TRIANGULAR_HPP

// Triangular numbers, triangular sets and the sub-triangle order.
//
// A triangular set with n levels stores T_n = n(n+1)/2 naturals in increasing
// order; level i (1-based) is the slice [T_{i-1}, T_i) of that order:
//
//          x1                 <- level 1
//        x2  x3               <- level 2
//      x4  x5  x6             <- level 3
//
// Sub-triangles are enumerated positionally (as index sets into the parent)
// and only materialized to element values when asked for.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triramsey/errors.hpp"

namespace triramsey {

using Natural = std::uint64_t;

constexpr Natural triangular_number(Natural n) noexcept { return n * (n + 1) / 2; }

// Level count n with T_n == size, if size is triangular.
constexpr std::optional<Natural> triangular_root(Natural size) noexcept {
  Natural n = 0;
  while (triangular_number(n) < size) ++n;
  if (triangular_number(n) == size) return n;
  return std::nullopt;
}

class TriangularSet {
 public:
  TriangularSet() = default;

  // Takes any collection of naturals; duplicates collapse as in a set.
  static TriangularSet from_elements(std::vector<Natural> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    auto levels = triangular_root(elements.size());
    if (!levels) {
      throw Error(Errc::NotTriangularCardinality,
                  std::to_string(elements.size()) + " is not a triangular number");
    }
    TriangularSet out;
    out.elements_ = std::move(elements);
    out.levels_ = static_cast<std::size_t>(*levels);
    return out;
  }

  // The n-level set {1, 2, ..., T_n}; the shape of every game board.
  static TriangularSet standard(std::size_t levels) {
    std::vector<Natural> elements(triangular_number(levels));
    for (std::size_t i = 0; i < elements.size(); ++i) elements[i] = i + 1;
    TriangularSet out;
    out.elements_ = std::move(elements);
    out.levels_ = levels;
    return out;
  }

  std::size_t level_count() const noexcept { return levels_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::span<const Natural> elements() const noexcept { return elements_; }

  // Level i, 1-based.
  std::span<const Natural> level(std::size_t i) const {
    if (i == 0 || i > levels_) throw Error(Errc::KTooLarge, "level out of range");
    return std::span<const Natural>(elements_).subspan(triangular_number(i - 1), i);
  }

  // 1-based level holding the element at 0-based position idx.
  static std::size_t level_of_index(std::size_t idx) noexcept {
    std::size_t level = 1;
    while (triangular_number(level) <= idx) ++level;
    return level;
  }

  // Elements at the given 0-based positions, as a triangular set.
  TriangularSet select(std::span<const std::uint32_t> positions) const {
    std::vector<Natural> picked;
    picked.reserve(positions.size());
    for (auto p : positions) picked.push_back(elements_.at(p));
    return from_elements(std::move(picked));
  }

  bool contains(Natural value) const {
    return std::binary_search(elements_.begin(), elements_.end(), value);
  }

  friend bool operator==(const TriangularSet&, const TriangularSet&) = default;
  friend auto operator<=>(const TriangularSet& a, const TriangularSet& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<Natural> elements_;
  std::size_t levels_ = 0;
};

inline TriangularSet parse_triangular_set(std::span<const Natural> values) {
  return TriangularSet::from_elements(std::vector<Natural>(values.begin(), values.end()));
}

// x <= y: x is a subset of y and each level of x sits inside one level of y,
// with distinct levels of x landing in distinct levels of y.
inline bool leq(const TriangularSet& x, const TriangularSet& y) {
  auto ys = y.elements();
  std::size_t previous_level = 0;
  for (std::size_t i = 1; i <= x.level_count(); ++i) {
    std::size_t host = 0;
    for (Natural v : x.level(i)) {
      auto it = std::lower_bound(ys.begin(), ys.end(), v);
      if (it == ys.end() || *it != v) return false;
      std::size_t lvl = TriangularSet::level_of_index(static_cast<std::size_t>(it - ys.begin()));
      if (host == 0) {
        host = lvl;
      } else if (host != lvl) {
        return false;
      }
    }
    // Levels of x are increasing intervals, so distinct hosts are increasing hosts.
    if (host <= previous_level) return false;
    previous_level = host;
  }
  return true;
}

namespace detail {

template <class Visitor>
void walk_subtriangles(std::size_t levels, std::size_t k, std::size_t size, std::size_t first_level,
                       std::vector<std::uint32_t>& current, Visitor& visit) {
  if (size > k) {
    visit(std::span<const std::uint32_t>(current));
    return;
  }
  const std::size_t remaining_after = k - size;
  for (std::size_t level = first_level; level + remaining_after <= levels; ++level) {
    const auto offset = static_cast<std::uint32_t>(triangular_number(level - 1));
    // r-combinations of the `level` slots, lexicographic.
    std::vector<std::uint32_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<std::uint32_t>(i);
    while (true) {
      for (auto p : pick) current.push_back(offset + p);
      walk_subtriangles(levels, k, size + 1, level + 1, current, visit);
      current.resize(current.size() - size);
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == level - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace detail

// Calls visit(span<const uint32_t>) once per k-level sub-triangle of an
// n-level triangular set, with 0-based positions in increasing order.
// Visiting order is lexicographic in those positions (and so in elements).
template <class Visitor>
void for_each_subtriangle(std::size_t levels, std::size_t k, Visitor&& visit) {
  if (k > levels) {
    throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " exceeds " + std::to_string(levels) + " levels");
  }
  std::vector<std::uint32_t> current;
  current.reserve(triangular_number(k));
  detail::walk_subtriangles(levels, k, 1, 1, current, visit);
}

inline std::vector<std::vector<std::uint32_t>> enumerate_subtriangle_positions(std::size_t levels, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  for_each_subtriangle(levels, k, [&](std::span<const std::uint32_t> pos) { out.emplace_back(pos.begin(), pos.end()); });
  return out;
}

inline std::vector<TriangularSet> enumerate_subtriangles(const TriangularSet& y, std::size_t k) {
  std::vector<TriangularSet> out;
  for_each_subtriangle(y.level_count(), k, [&](std::span<const std::uint32_t> pos) { out.push_back(y.select(pos)); });
  return out;
}

}  // namespace triramsey

#endif  // TRIRAMSEY_TRIANGULAR_HPP
