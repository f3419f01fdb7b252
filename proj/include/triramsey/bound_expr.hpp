#ifndef TRIRAMSEY_BOUND_EXPR_HPP
#define TRIRAMSEY_BOUND_EXPR_HPP

// Symbolic upper bounds on triangular Ramsey numbers.
//
//   M_{n,k} = n                                        if k = 1 or n = k
//   M_{n+1,k} = R^{[R1(M_{n,k}, k-1)  k-1]}(n+1, k)    if n > k > 1
//
// with R1(n, n, k) <= M_{2n-1,k}, and the sharper
// R1(k+1, k) <= R^{[R1(k+1, k-1)  k-1]}(k+1, k). Expressions are trees that
// render in the usual notation and evaluate to intervals against a table of
// classical Ramsey bounds.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "triramsey/bounds.hpp"
#include "triramsey/bracket.hpp"
#include "triramsey/errors.hpp"

namespace triramsey {

class BoundExpr;
using BoundExprPtr = std::shared_ptr<const BoundExpr>;

class BoundExpr {
 public:
  enum class Kind : std::uint8_t { Const, ClassicalR, IteratedR, Bracket, TriR1, ClosedForm2xMinus1, MSeq };

  // Leaf.
  static BoundExprPtr constant(BigNat value) { return make(Kind::Const, 0, {}, std::move(value)); }

  // R(arg, k).
  static BoundExprPtr classical_r(BoundExprPtr arg, Natural k) { return make(Kind::ClassicalR, k, {std::move(arg)}); }

  // R^{times}(base, k): R applied `times` times.
  static BoundExprPtr iterated_r(BoundExprPtr times, BoundExprPtr base, Natural k) {
    return make(Kind::IteratedR, k, {std::move(times), std::move(base)});
  }

  // [arg k]; folds when arg is a constant.
  static BoundExprPtr bracket(BoundExprPtr arg, Natural k) {
    if (arg && arg->kind() == Kind::Const && arg->value() <= kFoldLimit) {
      return constant(triramsey::bracket(static_cast<Natural>(arg->value()), k));
    }
    return make(Kind::Bracket, k, {std::move(arg)});
  }

  // R1(p, q, k); single-cell levels fold to p + q - 1.
  static BoundExprPtr tri_r1(BoundExprPtr p, BoundExprPtr q, Natural k) {
    if (k == 1 && p && q && p->kind() == Kind::Const && q->kind() == Kind::Const) {
      return constant(p->value() + q->value() - 1);
    }
    return make(Kind::TriR1, k, {std::move(p), std::move(q)});
  }

  // 2 arg - 1; folds on constants.
  static BoundExprPtr closed_form(BoundExprPtr arg) {
    if (arg && arg->kind() == Kind::Const) return constant(2 * arg->value() - 1);
    return make(Kind::ClosedForm2xMinus1, 0, {std::move(arg)});
  }

  // A named M_{n,k} standing for its expansion.
  static BoundExprPtr m_seq(Natural n, Natural k, BoundExprPtr expansion) {
    auto e = make(Kind::MSeq, k, {std::move(expansion)}, BigNat(n));
    return e;
  }

  Kind kind() const noexcept { return kind_; }
  Natural k() const noexcept { return k_; }
  const BigNat& value() const noexcept { return value_; }  // Const value, or n of M_{n,k}
  const std::vector<BoundExprPtr>& children() const noexcept { return children_; }
  const BoundExprPtr& child(std::size_t i) const {
    if (i >= children_.size() || !children_[i]) throw Error(Errc::MalformedExpr, "missing operand");
    return children_[i];
  }

  std::string render() const {
    switch (kind_) {
      case Kind::Const: return value_.str();
      case Kind::ClassicalR: return "R(" + child(0)->render() + "," + std::to_string(k_) + ")";
      case Kind::IteratedR:
        return "R^{" + child(0)->render() + "}(" + child(1)->render() + "," + std::to_string(k_) + ")";
      case Kind::Bracket: return "{" + child(0)->render() + " \\brack " + std::to_string(k_) + "}";
      case Kind::TriR1:
        return "\\mathcal{R}_1(" + child(0)->render() + "," + child(1)->render() + "," + std::to_string(k_) + ")";
      case Kind::ClosedForm2xMinus1: {
        const auto& a = child(0);
        const bool atom = a->kind() == Kind::Const || a->kind() == Kind::MSeq;
        return "2" + (atom ? a->render() : "(" + a->render() + ")") + "-1";
      }
      case Kind::MSeq: return "M_{" + value_.str() + "," + std::to_string(k_) + "}";
    }
    return "?";
  }

  // Structural equality; M_{n,k} labels compare by label and expansion.
  friend bool operator==(const BoundExpr& a, const BoundExpr& b) {
    if (a.kind_ != b.kind_ || a.k_ != b.k_ || a.value_ != b.value_ || a.children_.size() != b.children_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.children_.size(); ++i) {
      const auto& x = a.children_[i];
      const auto& y = b.children_[i];
      if (!x || !y) {
        if (x != y) return false;
        continue;
      }
      if (x != y && !(*x == *y)) return false;
    }
    return true;
  }

  // Constants up to this size fold through brackets.
  static constexpr Natural kFoldLimit = 1'000'000;

 private:
  static BoundExprPtr make(Kind kind, Natural k, std::vector<BoundExprPtr> children, BigNat value = 0) {
    auto e = std::shared_ptr<BoundExpr>(new BoundExpr);
    e->kind_ = kind;
    e->k_ = k;
    e->children_ = std::move(children);
    e->value_ = std::move(value);
    return e;
  }

  Kind kind_ = Kind::Const;
  Natural k_ = 0;
  BigNat value_ = 0;
  std::vector<BoundExprPtr> children_;
};

// The expansion of M_{n,k}; earlier terms of the sequence appear as named
// M_{n',k} nodes.
inline BoundExprPtr m_sequence_expr(Natural n, Natural k) {
  if (k == 0 || n < k) throw Error(Errc::InvalidParams, "M_{n,k} needs n >= k >= 1");
  if (k == 1 || n == k) return BoundExpr::constant(n);
  BoundExprPtr prev = BoundExpr::constant(k);  // M_{k,k}
  BoundExprPtr current;
  for (Natural j = k; j < n; ++j) {
    // M_{j+1,k} = R^{[R1(M_{j,k}, k-1)  k-1]}(j+1, k)
    const BoundExprPtr r1 = k - 1 == 1 ? BoundExpr::closed_form(prev) : BoundExpr::tri_r1(prev, prev, k - 1);
    current = BoundExpr::iterated_r(BoundExpr::bracket(r1, k - 1), BoundExpr::constant(j + 1), k);
    prev = current->kind() == BoundExpr::Kind::Const ? current : BoundExpr::m_seq(j + 1, k, current);
  }
  return current;
}

// The labelled form: M_{n,k} itself, or a constant when it is one.
inline BoundExprPtr m_sequence_term(Natural n, Natural k) {
  auto e = m_sequence_expr(n, k);
  if (e->kind() == BoundExpr::Kind::Const) return e;
  return BoundExpr::m_seq(n, k, e);
}

// Upper bound on R1(p, q, k), p <= q. A draw at m restricts to the smaller
// target, so R1(p, q, k) <= R1(q, q, k) and the diagonal bounds apply with
// n = q. Special cases: k = 1 is exact (p + q - 1); p = k makes every cell a
// win for player one, so R1 = q; q = k + 1 takes the sharper bound with the
// inner R1 replaced by its own upper bound.
inline BoundExprPtr upper_bound_expr(Natural p, Natural q, Natural k) {
  if (p > q) std::swap(p, q);
  if (k == 0 || k > p) throw Error(Errc::InvalidParams, "need 1 <= k <= p <= q");
  if (k == 1) return BoundExpr::constant(p + q - 1);
  if (p == k) return BoundExpr::constant(q);
  if (q == k + 1) {
    const BoundExprPtr inner = upper_bound_expr(k + 1, k + 1, k - 1);
    return BoundExpr::iterated_r(BoundExpr::bracket(inner, k - 1), BoundExpr::constant(k + 1), k);
  }
  return m_sequence_term(2 * q - 1, k);
}

// Lower end clamped at the cap (still a valid lower bound), upper end
// dropped when it would exceed it.
inline Interval clamp_interval(Interval i) {
  const BigNat cap = interval_cap();
  if (i.lo > cap) i.lo = cap;
  if (i.hi && *i.hi > cap) i.hi.reset();
  return i;
}

// Largest iteration count that IteratedR unrolls.
inline constexpr Natural kMaxUnroll = 64;

namespace detail {

// [n k] for a possibly huge n: exact when n is small, else the cheap lower
// bound n - k + 1 (distinct last rows) and no upper end.
inline Interval bracket_interval(const Interval& arg, Natural k) {
  auto at = [&](const BigNat& n) -> std::optional<BigNat> {
    if (n < k) return BigNat(0);
    if (n > BoundExpr::kFoldLimit) return std::nullopt;
    return bracket(static_cast<Natural>(n), k);
  };
  Interval out;
  if (auto lo = at(arg.lo)) {
    out.lo = *lo;
  } else {
    out.lo = arg.lo - k + 1;
  }
  if (arg.hi) {
    if (auto hi = at(*arg.hi)) out.hi = *hi;
  }
  return clamp_interval(out);
}

inline Interval ramsey_interval(const Interval& arg, Natural k, const ClassicalRamseyTable& table) {
  Interval out;
  out.lo = table.lookup(arg.lo, k).lo;
  if (arg.hi) out.hi = table.lookup(*arg.hi, k).hi;
  return clamp_interval(out);
}

}  // namespace detail

// Bottom-up interval evaluation. R and [. k] are monotone, so the ends map
// through separately. IteratedR unrolls when the count is exact and at most
// kMaxUnroll; otherwise the lower end comes from min(count, kMaxUnroll)
// applications and the upper end is open.
inline Interval eval_bound_expr(const BoundExpr& e, const ClassicalRamseyTable& table = default_ramsey_table()) {
  using Kind = BoundExpr::Kind;
  if (e.kind() != Kind::Const && e.kind() != Kind::ClosedForm2xMinus1 && e.k() == 0) {
    throw Error(Errc::MalformedExpr, "k must be at least 1");
  }
  switch (e.kind()) {
    case Kind::Const: return Interval::exact(e.value());
    case Kind::ClassicalR: return detail::ramsey_interval(eval_bound_expr(*e.child(0), table), e.k(), table);
    case Kind::IteratedR: {
      const Interval times = eval_bound_expr(*e.child(0), table);
      Interval x = eval_bound_expr(*e.child(1), table);
      if (times.is_exact() && times.lo <= kMaxUnroll) {
        for (auto t = static_cast<Natural>(times.lo); t > 0; --t) x = detail::ramsey_interval(x, e.k(), table);
        return x;
      }
      const Natural reps = times.lo > kMaxUnroll ? kMaxUnroll : static_cast<Natural>(times.lo);
      for (Natural t = 0; t < reps; ++t) x = detail::ramsey_interval(x, e.k(), table);
      x.hi.reset();
      return x;
    }
    case Kind::Bracket: return detail::bracket_interval(eval_bound_expr(*e.child(0), table), e.k());
    case Kind::TriR1: {
      const Interval p = eval_bound_expr(*e.child(0), table);
      // M-sequence nodes share one child for both sides; evaluating it twice
      // per level is exponential in the depth.
      const Interval q = e.child(1) == e.child(0) ? p : eval_bound_expr(*e.child(1), table);
      if (e.k() == 1) {
        Interval out{p.lo + q.lo - 1, std::nullopt};
        if (p.hi && q.hi) out.hi = *p.hi + *q.hi - 1;
        return clamp_interval(out);
      }
      // Only R1 >= max(p, q) is known here.
      return {std::max(p.lo, q.lo), std::nullopt};
    }
    case Kind::ClosedForm2xMinus1: {
      const Interval a = eval_bound_expr(*e.child(0), table);
      if (a.lo == 0) throw Error(Errc::MalformedExpr, "2x - 1 of zero");
      Interval out{2 * a.lo - 1, std::nullopt};
      if (a.hi) out.hi = 2 * *a.hi - 1;
      return clamp_interval(out);
    }
    case Kind::MSeq: return eval_bound_expr(*e.child(0), table);
  }
  throw Error(Errc::MalformedExpr, "unknown node");
}

inline Interval eval_bound_expr(const BoundExprPtr& e, const ClassicalRamseyTable& table = default_ramsey_table()) {
  if (!e) throw Error(Errc::MalformedExpr, "empty expression");
  return eval_bound_expr(*e, table);
}

}  // namespace triramsey

#endif  // TRIRAMSEY_BOUND_EXPR_HPP
