#ifndef TRIRAMSEY_LOG_DOMAIN_HPP
#define TRIRAMSEY_LOG_DOMAIN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace triramsey::log2d {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log2(2^a + 2^b) without leaving the log domain.
inline double add(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp2(lo - hi)) / std::numbers::ln2;
}

}  // namespace triramsey::log2d

#endif  // TRIRAMSEY_LOG_DOMAIN_HPP
