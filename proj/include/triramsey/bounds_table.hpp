#ifndef TRIRAMSEY_BOUNDS_TABLE_HPP
#define TRIRAMSEY_BOUNDS_TABLE_HPP

// One row per (p, q, k): the best lower bound we can compute, the exact value
// where it is known in closed form, and the symbolic upper bound with its
// numeric interval.

#include <optional>
#include <string>
#include <vector>

#include "triramsey/bound_expr.hpp"
#include "triramsey/bounds.hpp"
#include "triramsey/json_io.hpp"

namespace triramsey {

struct BoundsRow {
  Natural p = 0, q = 0, k = 0;
  std::optional<Natural> value;         // exact R1 when known in closed form
  std::optional<ProbBound> counting;    // fair-coin bound, when used
  std::optional<LogReal> asymptotic;    // closed-form weakening, when used
  BoundExprPtr upper;                   // empty when the value is exact
  Interval upper_interval;
  std::string source;

  // "6", "9.39e+07", or "-" when the value is exact.
  std::string lower_text() const {
    if (counting) {
      const Natural b = counting->bound();
      return b < 1'000'000 ? std::to_string(b) : LogReal{std::log2(static_cast<double>(b))}.scientific(3);
    }
    // R1 is an integer, so a real lower bound x gives R1 >= ceil(x).
    if (asymptotic) {
      return asymptotic->log2 < 20 ? std::to_string(static_cast<long long>(std::ceil(asymptotic->to_double())))
                                   : asymptotic->scientific(3);
    }
    return "-";
  }
};

inline BoundsRow bounds_row(Natural p, Natural q, Natural k, ExpectationForm form = ExpectationForm::Statement,
                            Natural m_cap = Natural{1} << 28) {
  if (p > q) std::swap(p, q);
  if (k == 0 || k > p) throw Error(Errc::InvalidParams, "need 1 <= k <= p <= q");
  BoundsRow row;
  row.p = p;
  row.q = q;
  row.k = k;
  if (k == 1) {
    row.value = p + q - 1;
    row.source = "pigeonhole on the bottom row";
  } else if (p == k) {
    row.value = q;
    row.source = "trivial";
  } else {
    row.upper = upper_bound_expr(p, q, k);
    row.upper_interval = eval_bound_expr(row.upper);
    const std::string upper_src = q == k + 1 ? "iterated Ramsey bound" : "M-sequence bound";
    if (bracket(p, k) + bracket(q, k) <= kExactCheckBits) {
      row.counting = prob_lower_bound(p, q, k, form, m_cap);
      row.source = "counting bound & " + upper_src;
    } else if (p == q) {
      row.asymptotic = asymptotic_lower_bound(q, k);
      row.source = "asymptotic counting bound & " + upper_src;
    } else {
      row.counting = prob_lower_bound_sweep(p, q, k, form, m_cap);
      row.source = "counting bound (log2) & " + upper_src;
    }
  }
  return row;
}

struct RowKey {
  Natural p, q, k;
};

// The rows of the summary table for small parameters.
inline const std::vector<RowKey>& summary_rows() {
  static const std::vector<RowKey> rows = {
      {1, 2, 1}, {2, 2, 1}, {2, 3, 1}, {3, 3, 1}, {2, 2, 2}, {2, 3, 2}, {3, 3, 2},   {3, 4, 2},   {4, 4, 2},
      {3, 3, 3}, {3, 4, 3}, {4, 4, 3}, {4, 5, 3}, {5, 5, 3}, {4, 4, 4}, {4, 5, 4},   {5, 5, 4},   {30, 30, 20},
      {35, 35, 20}, {40, 40, 20}};
  return rows;
}

inline Json bounds_row_to_json(const BoundsRow& r) {
  Json out{{"p", r.p}, {"q", r.q}, {"k", r.k}, {"lower", r.lower_text()}, {"source", r.source}};
  out["value"] = r.value ? Json(*r.value) : Json(nullptr);
  if (r.counting) {
    out["lowerExact"] = std::to_string(r.counting->bound());
    out["lowerComplete"] = r.counting->complete;
  }
  if (r.asymptotic) out["lowerLog2"] = r.asymptotic->log2;
  if (r.upper) {
    out["upperExpr"] = r.upper->render();
    out["upperInterval"] = interval_to_json(r.upper_interval);
  } else {
    out["upperExpr"] = nullptr;
    out["upperInterval"] = nullptr;
  }
  return out;
}

// Interval ends past 12 digits are shown by their length.
inline std::string interval_text(const Interval& i) {
  auto show = [](const BigNat& v) {
    std::string s = v.str();
    return s.size() <= 12 ? s : s.substr(0, 3) + "..(" + std::to_string(s.size()) + " digits)";
  };
  return "[" + show(i.lo) + ", " + (i.hi ? show(*i.hi) : std::string("inf")) + "]";
}

}  // namespace triramsey

#endif  // TRIRAMSEY_BOUNDS_TABLE_HPP
