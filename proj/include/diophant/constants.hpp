#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>

#include "diophant/interval.hpp"

namespace diophant {

inline constexpr std::array<std::string_view, 12> kConstantIds{
    "pi",   "e",       "sqrt2",     "sqrt3",            "sqrt5", "sqrt_e",
    "sqrt_pi", "e_over_pi", "sqrt_e2_plus_pi2", "log2",  "log3",  "zeta3"};

inline bool is_constant_id(std::string_view id) {
  return std::find(kConstantIds.begin(), kConstantIds.end(), id) != kConstantIds.end();
}

namespace detail {

using ConstFn = int (*)(mpfr_ptr, mpfr_rnd_t);

inline Interval directed(ConstFn fn, Precision q) {
  BigReal lo(q), hi(q);
  fn(lo.get(), MPFR_RNDD);
  fn(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Interval exp_of(long num, unsigned long den, Precision q) {
  BigReal lo(q), hi(q), arg(q);
  mpfr_set_si(arg.get(), num, MPFR_RNDN);
  mpfr_div_ui(arg.get(), arg.get(), den, MPFR_RNDN);  // exact for den = 1, 2
  mpfr_exp(lo.get(), arg.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), arg.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Interval sqrt_of(unsigned long n, Precision q) {
  BigReal lo(q), hi(q);
  mpfr_sqrt_ui(lo.get(), n, MPFR_RNDD);
  mpfr_sqrt_ui(hi.get(), n, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Interval log_of(unsigned long n, Precision q) {
  BigReal lo(q), hi(q);
  mpfr_log_ui(lo.get(), n, MPFR_RNDD);
  mpfr_log_ui(hi.get(), n, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Interval zeta_of(unsigned long n, Precision q) {
  BigReal lo(q), hi(q);
  mpfr_zeta_ui(lo.get(), n, MPFR_RNDD);
  mpfr_zeta_ui(hi.get(), n, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

}  // namespace detail

/// Rigorous enclosure of a named constant with endpoints at precision q.
inline Interval constant_interval(std::string_view id, Precision q) {
  using namespace detail;
  if (id == "pi") return directed(mpfr_const_pi, q);
  if (id == "e") return exp_of(1, 1, q);
  if (id == "sqrt2") return sqrt_of(2, q);
  if (id == "sqrt3") return sqrt_of(3, q);
  if (id == "sqrt5") return sqrt_of(5, q);
  if (id == "sqrt_e") return exp_of(1, 2, q);
  if (id == "sqrt_pi") return ival::sqrt(directed(mpfr_const_pi, q), q);
  if (id == "e_over_pi") return ival::div(exp_of(1, 1, q), directed(mpfr_const_pi, q), q);
  if (id == "sqrt_e2_plus_pi2") {
    const Interval e = exp_of(1, 1, q);
    const Interval pi = directed(mpfr_const_pi, q);
    return ival::sqrt(ival::add(ival::mul(e, e, q), ival::mul(pi, pi, q), q), q);
  }
  if (id == "log2") return directed(mpfr_const_log2, q);
  if (id == "log3") return log_of(3, q);
  if (id == "zeta3") return zeta_of(3, q);
  throw Error(ErrorKind::unknown_constant, "unknown constant '" + std::string(id) + "'");
}

/// Named constant correct to `precision` bits (relative error < 2^-precision).
inline BigReal constant(std::string_view id, Precision precision = kDefaultPrecision) {
  check_precision(precision);
  return constant_interval(id, precision + 32).mid(precision);
}

}  // namespace diophant
