#ifndef TRIRAMSEY_CELL_SET_HPP
#define TRIRAMSEY_CELL_SET_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triramsey/errors.hpp"

namespace triramsey {

// Fixed-size bitset over a board's cells; bit i is cell i+1.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

  static CellSet from_word(std::uint64_t bits, std::size_t size) {
    CellSet out(size);
    if (!out.words_.empty()) out.words_[0] = bits & out.tail_mask(0);
    return out;
  }

  std::size_t size() const noexcept { return size_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t word0() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool test(std::size_t bit) const noexcept { return (words_[bit >> 6] >> (bit & 63)) & 1U; }
  void set(std::size_t bit) noexcept { words_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  void reset(std::size_t bit) noexcept { words_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63)); }
  void assign(std::size_t bit, bool value) noexcept { value ? set(bit) : reset(bit); }

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  // Set bits in [first, last).
  std::size_t count_range(std::size_t first, std::size_t last) const noexcept {
    std::size_t total = 0;
    while (first < last) {
      const std::size_t w = first >> 6;
      const std::size_t lo = first & 63;
      const std::size_t hi = std::min<std::size_t>(64, lo + (last - first));
      std::uint64_t mask = (hi == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << hi) - 1)) & (~std::uint64_t{0} << lo);
      total += static_cast<std::size_t>(std::popcount(words_[w] & mask));
      first += hi - lo;
    }
    return total;
  }

  bool is_subset_of(const CellSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const CellSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  CellSet complement() const {
    CellSet out(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i] & tail_mask(i);
    return out;
  }

  // Lowercase hex, most significant digit first, ceil(size/4) digits.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (size_ + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
      const std::size_t bit = d * 4;
      unsigned nibble = 0;
      for (std::size_t b = 0; b < 4 && bit + b < size_; ++b) nibble |= static_cast<unsigned>(test(bit + b)) << b;
      out[digits - 1 - d] = kDigits[nibble];
    }
    return out;
  }

  static CellSet from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() != (size + 3) / 4) throw Error(Errc::ParseError, "bitstring length does not match cell count");
    CellSet out(size);
    for (std::size_t d = 0; d < hex.size(); ++d) {
      const char c = hex[hex.size() - 1 - d];
      unsigned nibble = 0;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<unsigned>(c - 'a' + 10);
      } else {
        throw Error(Errc::ParseError, "bitstring must be lowercase hex");
      }
      for (std::size_t b = 0; b < 4; ++b) {
        if (!((nibble >> b) & 1U)) continue;
        if (d * 4 + b >= size) throw Error(Errc::ParseError, "bitstring sets bits past the last cell");
        out.set(d * 4 + b);
      }
    }
    return out;
  }

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::uint64_t tail_mask(std::size_t word) const noexcept {
    const std::size_t rem = size_ - word * 64;
    return rem >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace triramsey

#endif  // TRIRAMSEY_CELL_SET_HPP
