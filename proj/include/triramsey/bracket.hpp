#ifndef TRIRAMSEY_BRACKET_HPP
#define TRIRAMSEY_BRACKET_HPP

// The bracket coefficient [n k]: the number of k-level sub-triangles of an
// n-level triangular set.
//
//   [n 0] = [n n] = 1
//   [n k] = [n-1 k] + C(n,k) [n-1 k-1]
//
// Values leave 64 bits quickly, so exact values are cpp_int throughout.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "triramsey/errors.hpp"
#include "triramsey/log_domain.hpp"
#include "triramsey/triangular.hpp"

namespace triramsey {

using BigNat = boost::multiprecision::cpp_int;

inline BigNat binomial(Natural n, Natural k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigNat out = 1;
  for (Natural i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

namespace detail {

inline void check_k(Natural n, Natural k) {
  if (k > n) throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " > n=" + std::to_string(n));
}

}  // namespace detail

// Streaming exact DP over n: holds [n j] for j = 0..width-1 and advances n by
// one per step. Columns with j > n hold zero, which is what the sum formula
// gives there, so the DP is valid from n = 0.
class BracketColumns {
 public:
  explicit BracketColumns(std::size_t max_k) : values_(max_k + 1, BigNat(0)) { values_[0] = 1; }

  Natural n() const noexcept { return n_; }
  const BigNat& operator[](std::size_t k) const { return values_.at(k); }

  void advance() {
    ++n_;
    // C(n, j) built incrementally; descending j keeps [n-1 j-1] unread.
    std::vector<BigNat> choose(values_.size());
    choose[0] = 1;
    for (std::size_t j = 1; j < values_.size(); ++j) choose[j] = choose[j - 1] * (n_ - j + 1) / j;
    for (std::size_t j = values_.size() - 1; j >= 1; --j) values_[j] += choose[j] * values_[j - 1];
  }

  void advance_to(Natural n) {
    while (n_ < n) advance();
  }

 private:
  std::vector<BigNat> values_;
  Natural n_ = 0;
};

// Log-domain counterpart: log2 [n j] for j = 0..max_k, memory O(max_k).
class Log2BracketColumns {
 public:
  explicit Log2BracketColumns(std::size_t max_k) : values_(max_k + 1, log2d::kNegInf), log2_fact_(max_k + 1, 0.0), recent_(max_k + 1, 0.0) {
    values_[0] = 0.0;
    for (std::size_t j = 1; j <= max_k; ++j) log2_fact_[j] = log2_fact_[j - 1] + std::log2(static_cast<double>(j));
  }

  Natural n() const noexcept { return n_; }
  double operator[](std::size_t k) const { return values_.at(k); }

  void advance() {
    ++n_;
    // recent_[t] = log2(n - t)
    for (std::size_t t = recent_.size() - 1; t >= 1; --t) recent_[t] = recent_[t - 1];
    recent_[0] = std::log2(static_cast<double>(n_));
    const std::size_t top = std::min<std::size_t>(values_.size() - 1, n_);
    double log2_falling = 0.0;
    std::vector<double>& lc = scratch_;
    lc.assign(top + 1, 0.0);
    for (std::size_t j = 1; j <= top; ++j) {
      log2_falling += recent_[j - 1];
      lc[j] = log2_falling - log2_fact_[j];
    }
    for (std::size_t j = top; j >= 1; --j) values_[j] = log2d::add(values_[j], lc[j] + values_[j - 1]);
  }

  void advance_to(Natural n) {
    while (n_ < n) advance();
  }

 private:
  std::vector<double> values_;
  std::vector<double> log2_fact_;
  std::vector<double> recent_;
  std::vector<double> scratch_;
  Natural n_ = 0;
};

// Memo of exact and log-domain values. Reads share a lock; inserts take it
// exclusively.
class BracketTable {
 public:
  BigNat exact(Natural n, Natural k) {
    detail::check_k(n, k);
    if (k == 0 || k == n) return 1;
    {
      std::shared_lock lock(mutex_);
      if (auto it = exact_.find({n, k}); it != exact_.end()) return it->second;
    }
    BracketColumns columns(k);
    columns.advance_to(n);
    BigNat value = columns[k];
    std::unique_lock lock(mutex_);
    exact_.emplace(std::pair{n, k}, value);
    return value;
  }

  double log2(Natural n, Natural k) {
    detail::check_k(n, k);
    if (k == 0 || k == n) return 0.0;
    {
      std::shared_lock lock(mutex_);
      if (auto it = log2_.find({n, k}); it != log2_.end()) return it->second;
    }
    Log2BracketColumns columns(k);
    columns.advance_to(n);
    const double value = columns[k];
    std::unique_lock lock(mutex_);
    log2_.emplace(std::pair{n, k}, value);
    return value;
  }

  // Seeds an exact entry (cache load). The caller has already validated it.
  void insert(Natural n, Natural k, BigNat value) {
    std::unique_lock lock(mutex_);
    exact_.insert_or_assign(std::pair{n, k}, std::move(value));
  }

  std::vector<std::pair<std::pair<Natural, Natural>, BigNat>> exact_entries() const {
    std::shared_lock lock(mutex_);
    return {exact_.begin(), exact_.end()};
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<Natural, Natural>, BigNat> exact_;
  std::map<std::pair<Natural, Natural>, double> log2_;
};

inline BracketTable& default_bracket_table() {
  static BracketTable table;
  return table;
}

inline BigNat bracket(Natural n, Natural k) { return default_bracket_table().exact(n, k); }

inline double bracket_log2(Natural n, Natural k) { return default_bracket_table().log2(n, k); }

// Direct evaluation of the sum formula
//   [n k] = sum over 0 < i_1 < ... < i_k <= n of prod_j C(i_j, j).
// Stated for 0 < k < n; k = 0 and k = n return 1 like the recursion.
inline BigNat bracket_sum(Natural n, Natural k) {
  detail::check_k(n, k);
  if (k == 0 || k == n) return 1;
  BigNat total = 0;
  std::vector<Natural> idx(k);
  for (Natural j = 0; j < k; ++j) idx[j] = j + 1;
  while (true) {
    BigNat term = 1;
    for (Natural j = 0; j < k; ++j) term *= binomial(idx[j], j + 1);
    total += term;
    Natural i = k;
    while (i > 0 && idx[i - 1] == n - k + i) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (Natural j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

// For fixed k, n -> [n k] is a polynomial of degree T_k + k on n >= 0 (the
// sum formula is a k-fold nested sum of binomial polynomials). Stores the
// Newton forward differences at 0 so any single n evaluates exactly without
// walking the recursion up to n.
class BracketPolynomial {
 public:
  explicit BracketPolynomial(std::size_t k) : k_(k) {
    const std::size_t degree = triangular_number(k) + k;
    std::vector<BigNat> samples;
    samples.reserve(degree + 1);
    BracketColumns columns(k);
    for (std::size_t n = 0; n <= degree; ++n) {
      samples.push_back(columns[k]);
      columns.advance();
    }
    for (std::size_t order = 0; order <= degree; ++order) {
      differences_.push_back(samples[0]);
      for (std::size_t i = 0; i + 1 < samples.size(); ++i) samples[i] = samples[i + 1] - samples[i];
      samples.pop_back();
    }
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t degree() const noexcept { return differences_.size() - 1; }

  BigNat operator()(Natural n) const {
    BigNat total = 0;
    BigNat choose = 1;  // C(n, j)
    for (std::size_t j = 0; j < differences_.size(); ++j) {
      if (j > 0) {
        if (n < j) break;
        choose = choose * (n - j + 1) / j;
      }
      total += choose * differences_[j];
    }
    return total;
  }

 private:
  std::size_t k_;
  std::vector<BigNat> differences_;
};

}  // namespace triramsey

#endif  // TRIRAMSEY_BRACKET_HPP
