#ifndef TRIRAMSEY_BOUNDS_HPP
#define TRIRAMSEY_BOUNDS_HPP

// Numeric bounds on triangular Ramsey numbers: the fair-coin lower bound
// (exact, or a streaming log2 sweep for big exponents), its closed-form
// asymptotic version, and the classical Ramsey table used to evaluate the
// symbolic upper bounds.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "triramsey/bracket.hpp"
#include "triramsey/errors.hpp"
#include "triramsey/log_domain.hpp"

namespace triramsey {

// Values above this many bits are clamped during interval evaluation.
inline constexpr std::size_t kIntervalCapBits = 4096;

inline BigNat interval_cap() { return BigNat(1) << kIntervalCapBits; }

// [lo, hi]; no hi means unbounded above.
struct Interval {
  BigNat lo = 0;
  std::optional<BigNat> hi;

  static Interval exact(BigNat v) { return {v, v}; }
  bool is_exact() const { return hi && *hi == lo; }
  bool bounded() const noexcept { return hi.has_value(); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& i) {
  return "[" + i.lo.str() + ", " + (i.hi ? i.hi->str() : std::string("inf")) + "]";
}

// Known values and bounds of R(n, k): the least vertex count forcing a
// monochromatic n-set when the k-sets are 2-colored.
class ClassicalRamseyTable {
 public:
  static ClassicalRamseyTable with_known_values() {
    ClassicalRamseyTable t;
    t.set(3, 2, Interval::exact(6));
    t.set(4, 2, Interval::exact(18));
    t.set(5, 2, {43, BigNat(49)});
    t.set(6, 2, {102, BigNat(165)});
    t.set(7, 2, {205, BigNat(540)});
    return t;
  }

  void set(Natural n, Natural k, Interval value) { entries_[{n, k}] = std::move(value); }

  std::optional<Interval> entry(Natural n, Natural k) const {
    auto it = entries_.find({n, k});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  // Table entry when present; otherwise the general bounds. With n <= k there
  // are at most one k-set in n vertices, so R = n; k = 1 is pigeonhole, 2n-1;
  // k = 2 uses 2^{n/2} <= R(n) <= 4^{n-1}; larger k only has R >= n.
  Interval lookup(const BigNat& n, Natural k) const {
    if (k == 0) throw Error(Errc::MalformedExpr, "Ramsey number needs k >= 1");
    if (n <= 64) {
      if (auto e = entry(static_cast<Natural>(n), k)) return *e;
    }
    if (n <= k) return Interval::exact(n);
    if (k == 1) return Interval::exact(2 * n - 1);
    if (k == 2) {
      Interval out;
      out.lo = n;
      if (n / 2 < kIntervalCapBits) {
        const BigNat erdos = BigNat(1) << static_cast<unsigned>(n / 2);
        if (erdos > out.lo) out.lo = erdos;
      } else {
        out.lo = interval_cap();
      }
      if (2 * (n - 1) <= kIntervalCapBits) out.hi = BigNat(1) << static_cast<unsigned>(2 * (n - 1));
      return out;
    }
    return {n, std::nullopt};
  }

 private:
  std::map<std::pair<Natural, Natural>, Interval> entries_;
};

inline const ClassicalRamseyTable& default_ramsey_table() {
  static const ClassicalRamseyTable table = ClassicalRamseyTable::with_known_values();
  return table;
}

// The fair-coin inequality [m p] 2^{-[p k]} + [m q] 2^{-[q k]} < 1 as
// stated; the proof's expectation carries an extra factor 2.
enum class ExpectationForm : std::uint8_t { Statement, Proof };

constexpr std::string_view form_name(ExpectationForm f) noexcept {
  return f == ExpectationForm::Statement ? "statement" : "proof";
}

struct ProbBound {
  Natural m_star = 0;      // largest m satisfying the inequality
  bool complete = true;    // false when the sweep stopped at its cap
  bool log_domain = false;  // true when the sweep ran in log2
  bool exact_checked = true;  // crossing confirmed with integer arithmetic
  Natural bound() const noexcept { return m_star + 1; }  // R1 >= m* + 1
};

inline constexpr Natural kExactExponentLimit = 256;
inline constexpr double kLogGuard = 1e-6;
inline constexpr Natural kExactCheckBits = Natural{1} << 22;

namespace detail {

// Exact test of the inequality at m, via B(m,p) 2^{Q} + B(m,q) 2^{P} < 2^{P+Q}
// (both sides halved for the proof form).
inline bool prob_inequality_holds(const BigNat& bp, const BigNat& bq, const BigNat& P, const BigNat& Q,
                                  ExpectationForm form) {
  const auto p_bits = static_cast<unsigned>(P);
  const auto q_bits = static_cast<unsigned>(Q);
  BigNat lhs = (bp << q_bits) + (bq << p_bits);
  if (form == ExpectationForm::Proof) lhs <<= 1;
  return lhs < (BigNat(1) << (p_bits + q_bits));
}

}  // namespace detail

namespace detail {

inline void check_prob_params(Natural& p, Natural& q, Natural k) {
  if (p > q) std::swap(p, q);
  if (k == 0 || k > p) throw Error(Errc::InvalidParams, "need 1 <= k <= p <= q");
}

}  // namespace detail

// Largest m with the inequality, by exact integer arithmetic over a streaming
// column DP.
inline ProbBound prob_lower_bound_exact(Natural p, Natural q, Natural k,
                                        ExpectationForm form = ExpectationForm::Statement,
                                        Natural m_cap = Natural{1} << 28) {
  detail::check_prob_params(p, q, k);
  const BigNat P = bracket(p, k);
  const BigNat Q = bracket(q, k);
  if (P + Q > kExactCheckBits) throw Error(Errc::InvalidParams, "exponents too large for exact arithmetic");
  ProbBound out;
  BracketColumns columns(q);
  Natural m = 0;
  while (detail::prob_inequality_holds(columns[p], columns[q], P, Q, form)) {
    if (m >= m_cap) {
      out.complete = false;
      out.m_star = m;
      return out;
    }
    columns.advance();
    ++m;
  }
  out.m_star = m - 1;
  return out;
}

// The same m* from a log2 sweep over m; the first m within the guard band of
// violating is settled exactly (walking either way) when 2^{P+Q} is small
// enough to write down.
inline ProbBound prob_lower_bound_sweep(Natural p, Natural q, Natural k,
                                        ExpectationForm form = ExpectationForm::Statement,
                                        Natural m_cap = Natural{1} << 28) {
  detail::check_prob_params(p, q, k);
  const BigNat P = bracket(p, k);
  const BigNat Q = bracket(q, k);
  ProbBound out;
  out.log_domain = true;
  const double lp = static_cast<double>(P);
  const double lq = static_cast<double>(Q);
  const double extra = form == ExpectationForm::Proof ? 1.0 : 0.0;
  Log2BracketColumns columns(q);
  Natural m = 0;
  while (true) {
    const double s = log2d::add(columns[p] - lp, columns[q] - lq) + extra;
    if (s >= -kLogGuard) break;
    if (m >= m_cap) {
      out.complete = false;
      out.m_star = m;
      return out;
    }
    columns.advance();
    ++m;
  }
  if (P + Q > kExactCheckBits) {
    out.exact_checked = false;
    out.m_star = m - 1;
    return out;
  }
  const BracketPolynomial poly_p(p), poly_q(q);
  auto holds = [&](Natural at) { return detail::prob_inequality_holds(poly_p(at), poly_q(at), P, Q, form); };
  while (holds(m)) ++m;
  while (m > 0 && !holds(m - 1)) --m;
  out.m_star = m - 1;
  return out;
}

// Largest m with the inequality; the lower bound on R1(p, q, k) is m* + 1.
// Exponents up to 256 bits are decided exactly, larger ones by the sweep.
// The sweep stops at m_cap and then reports an incomplete (but valid) bound.
inline ProbBound prob_lower_bound(Natural p, Natural q, Natural k, ExpectationForm form = ExpectationForm::Statement,
                                  Natural m_cap = Natural{1} << 28) {
  detail::check_prob_params(p, q, k);
  if (bracket(q, k) <= kExactExponentLimit) return prob_lower_bound_exact(p, q, k, form, m_cap);
  return prob_lower_bound_sweep(p, q, k, form, m_cap);
}

// A positive real stored as its log2.
struct LogReal {
  double log2 = log2d::kNegInf;

  double to_double() const { return std::exp2(log2); }
  double log10() const { return log2 * std::numbers::ln2 / std::numbers::ln10; }

  // "9.39e+07"-style text with `digits` significant figures, valid far past
  // the range of double.
  std::string scientific(int digits = 3) const {
    if (log2 == log2d::kNegInf) return "0";
    const double l10 = log10();
    double exponent = std::floor(l10);
    double mantissa = std::pow(10.0, l10 - exponent);
    const double scale = std::pow(10.0, digits - 1);
    mantissa = std::round(mantissa * scale) / scale;
    if (mantissa >= 10.0) {
      mantissa /= 10.0;
      exponent += 1.0;
    }
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits - 1) << mantissa << "e" << (exponent < 0 ? "-" : "+")
        << std::setw(2) << std::setfill('0') << std::setprecision(0) << std::fabs(exponent);
    return out.str();
  }
};

// Closed-form weakening of the fair-coin bound for the diagonal R1(n, n, k):
//   (2 pi T)^{1/(4T)} sqrt(2T/e) 2^{(n^k - k^k)/(2 k^k T)} - 1,  T = T_n,
// evaluated in log2 so that large n, k do not overflow.
inline LogReal asymptotic_lower_bound(Natural n, Natural k) {
  if (k == 0 || k > n) throw Error(Errc::InvalidParams, "need 1 <= k <= n");
  const double t = static_cast<double>(triangular_number(n));
  const double ratio_pow = std::exp2(static_cast<double>(k) * std::log2(static_cast<double>(n) / static_cast<double>(k)));
  const double log2_plus_one = std::log2(2.0 * std::numbers::pi * t) / (4.0 * t) +
                               0.5 * std::log2(2.0 * t / std::numbers::e) + (ratio_pow - 1.0) / (2.0 * t);
  // log2(2^x - 1)
  if (log2_plus_one <= 0.0) return {};
  const double x = log2_plus_one;
  return {x + std::log2(-std::expm1(-x * std::numbers::ln2))};
}

}  // namespace triramsey

#endif  // TRIRAMSEY_BOUNDS_HPP
