#pragma once

#include <array>
#include <utility>

#include "diophant/bigreal.hpp"
#include "diophant/rational.hpp"

namespace diophant {

enum class Ordering3 { less, greater, indeterminate };

constexpr std::string_view to_string(Ordering3 o) {
  switch (o) {
    case Ordering3::less: return "Less";
    case Ordering3::greater: return "Greater";
    case Ordering3::indeterminate: return "Indeterminate";
  }
  return "?";
}

/// Closed interval [lo, hi] with outward-rounded endpoints. Every operation
/// takes the precision of its result endpoints explicitly.
class Interval {
 public:
  Interval(BigReal lo, BigReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval point(const BigInt& v, Precision q) {
    return {BigReal(v, q, MPFR_RNDD), BigReal(v, q, MPFR_RNDU)};
  }
  static Interval point(long v, Precision q) { return point(BigInt(v), q); }

  static Interval point(const BigRational& r, Precision q) {
    return {to_big_real(r, q, MPFR_RNDD), to_big_real(r, q, MPFR_RNDU)};
  }

  const BigReal& lo() const { return lo_; }
  const BigReal& hi() const { return hi_; }

  bool is_zero() const { return lo_.is_zero() && hi_.is_zero(); }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  /// Midpoint rounded to nearest at `precision`.
  BigReal mid(Precision precision) const {
    BigReal out(std::max(lo_.precision(), hi_.precision()) + 1);
    mpfr_add(out.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
    return out.rounded(precision);
  }

  /// True when 0 is excluded and hi - lo <= 2^-bits * min(|lo|, |hi|).
  bool relatively_tight(Precision bits) const {
    if (is_zero()) return true;
    if (contains_zero()) return false;
    const Precision q = std::max(lo_.precision(), hi_.precision()) + 8;
    BigReal width(q);
    mpfr_sub(width.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    BigReal mag(q);
    mpfr_abs(mag.get(), positive() ? lo_.get() : hi_.get(), MPFR_RNDD);
    mpfr_div_2si(mag.get(), mag.get(), bits, MPFR_RNDD);
    return mpfr_lessequal_p(width.get(), mag.get()) != 0;
  }

 private:
  BigReal lo_;
  BigReal hi_;
};

namespace ival {

using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

inline BigReal apply(BinaryFn fn, const BigReal& a, const BigReal& b, Precision q,
                     mpfr_rnd_t rnd) {
  BigReal out(q);
  fn(out.get(), a.get(), b.get(), rnd);
  return out;
}

inline Interval add(const Interval& a, const Interval& b, Precision q) {
  return {apply(mpfr_add, a.lo(), b.lo(), q, MPFR_RNDD),
          apply(mpfr_add, a.hi(), b.hi(), q, MPFR_RNDU)};
}

inline Interval sub(const Interval& a, const Interval& b, Precision q) {
  return {apply(mpfr_sub, a.lo(), b.hi(), q, MPFR_RNDD),
          apply(mpfr_sub, a.hi(), b.lo(), q, MPFR_RNDU)};
}

inline Interval neg(const Interval& a) {
  BigReal lo(a.hi().precision()), hi(a.lo().precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDN);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDN);
  return {std::move(lo), std::move(hi)};
}

namespace detail {

// Hull of fn over all endpoint pairings, lower bounds rounded down and
// upper bounds rounded up. Valid for mul and for div by a zero-free interval.
inline Interval corners(BinaryFn fn, const Interval& a, const Interval& b, Precision q) {
  const std::array<const BigReal*, 2> xs{&a.lo(), &a.hi()};
  const std::array<const BigReal*, 2> ys{&b.lo(), &b.hi()};
  BigReal lo(q), hi(q), tmp(q);
  bool first = true;
  for (const BigReal* x : xs) {
    for (const BigReal* y : ys) {
      fn(tmp.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || tmp < lo) lo = tmp;
      fn(tmp.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || tmp > hi) hi = tmp;
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

}  // namespace detail

inline Interval mul(const Interval& a, const Interval& b, Precision q) {
  return detail::corners(mpfr_mul, a, b, q);
}

/// Throws Error(eval_singular) when the divisor is exactly zero and
/// detail::Unresolved when it merely cannot be separated from zero.
inline Interval div(const Interval& a, const Interval& b, Precision q) {
  if (b.is_zero()) throw Error(ErrorKind::eval_singular, "division by zero");
  if (b.contains_zero()) {
    throw diophant::detail::Unresolved{ErrorKind::eval_singular,
                                       "divisor indistinguishable from zero"};
  }
  return detail::corners(mpfr_div, a, b, q);
}

inline Interval abs(const Interval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return neg(a);
  const Precision q = std::max(a.lo().precision(), a.hi().precision());
  BigReal hi(q);
  if (mpfr_cmpabs(a.lo().get(), a.hi().get()) > 0) {
    mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  } else {
    mpfr_set(hi.get(), a.hi().get(), MPFR_RNDU);
  }
  return {BigReal(q), std::move(hi)};
}

/// k-th root; k even requires a nonnegative argument.
inline Interval root(const Interval& a, unsigned long k, Precision q) {
  if (k % 2 == 0) {
    if (a.negative()) throw Error(ErrorKind::domain_error, "even root of a negative value");
    if (a.lo().sign() < 0) {
      throw diophant::detail::Unresolved{ErrorKind::domain_error,
                                         "even root of a value indistinguishable from zero"};
    }
  }
  BigReal lo(q), hi(q);
  if (k == 2) {
    mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
  } else {
    mpfr_rootn_ui(lo.get(), a.lo().get(), k, MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), a.hi().get(), k, MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

inline Interval sqrt(const Interval& a, Precision q) { return root(a, 2, q); }

enum class LogBase { natural, decimal, binary };

/// Logarithm of a strictly positive interval.
inline Interval log(const Interval& a, Precision q, LogBase base = LogBase::natural) {
  if (!a.positive()) {
    throw diophant::detail::Unresolved{ErrorKind::log_of_zero,
                                       "log argument not separated from zero"};
  }
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  const UnaryFn fn = base == LogBase::natural ? mpfr_log
                     : base == LogBase::decimal ? mpfr_log10
                                                : mpfr_log2;
  BigReal lo(q), hi(q);
  fn(lo.get(), a.lo().get(), MPFR_RNDD);
  fn(hi.get(), a.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

}  // namespace ival

/// Uncertainty interval of a BigReal: x * (1 -+ 2^(1 - precision)).
inline Interval enclose(const BigReal& x) {
  const Precision p = x.precision();
  const Precision q = p + 4;
  if (x.is_zero()) return {BigReal(q), BigReal(q)};
  BigReal slack(q);
  mpfr_abs(slack.get(), x.get(), MPFR_RNDU);
  mpfr_div_2si(slack.get(), slack.get(), p - 1, MPFR_RNDU);
  BigReal lo(q), hi(q);
  mpfr_sub(lo.get(), x.get(), slack.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.get(), slack.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

/// Less or Greater only when the two enclosures are disjoint.
inline Ordering3 compare_guarded(const Interval& a, const Interval& b) {
  if (a.hi() < b.lo()) return Ordering3::less;
  if (a.lo() > b.hi()) return Ordering3::greater;
  return Ordering3::indeterminate;
}

/// Orders two BigReals only when no value consistent with their stated
/// precisions could reverse the answer.
inline Ordering3 compare_guarded(const BigReal& x, const BigReal& y) {
  return compare_guarded(enclose(x), enclose(y));
}

}  // namespace diophant

namespace diophant::detail {

inline constexpr Precision kGuardBits = 64;
inline constexpr int kEscalations = 4;

/// Runs attempt(q, last) at q = p + 64, then doubling, up to four times.
/// An attempt throws Unresolved when its enclosure cannot decide; on the
/// final round that becomes an Error of the same kind.
template <class Attempt>
auto escalate(Precision p, Attempt&& attempt) {
  check_precision(p);
  Precision q = p + kGuardBits;
  for (int round = 0;; ++round) {
    const bool last = round == kEscalations;
    try {
      return attempt(q, last);
    } catch (const Unresolved& u) {
      if (last) throw Error(u.kind, u.message);
    }
    q *= 2;
  }
}

}  // namespace diophant::detail
