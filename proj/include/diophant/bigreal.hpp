#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "diophant/error.hpp"

namespace diophant {

using BigInt = mpz_class;
using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMinPrecision = 64;
// Keeps escalation (which multiplies precision) well inside MPFR's range.
inline constexpr Precision kMaxPrecision = Precision{1} << 24;

inline void check_precision(Precision bits) {
  if (bits < kMinPrecision || bits > kMaxPrecision) {
    throw Error(ErrorKind::invalid_argument,
                "precision must be between 64 and 2^24 bits, got " +
                    std::to_string(bits));
  }
}

/// Arbitrary-precision binary floating point value that remembers its
/// working precision. The stated precision is a promise: a BigReal produced
/// by this library is within a relative 2^(1 - precision) of the real number
/// it stands for.
class BigReal {
 public:
  explicit BigReal(Precision precision = kDefaultPrecision) {
    check_precision(precision);
    mpfr_init2(v_, precision);
    mpfr_set_zero(v_, 1);
  }

  BigReal(long value, Precision precision) : BigReal(precision) {
    mpfr_set_si(v_, value, MPFR_RNDN);
  }

  BigReal(const BigInt& value, Precision precision, mpfr_rnd_t rnd = MPFR_RNDN)
      : BigReal(precision) {
    mpfr_set_z(v_, value.get_mpz_t(), rnd);
  }

  /// Decimal text such as "3.14159" or "-2.5e-3", rounded to nearest.
  static BigReal parse(std::string_view text, Precision precision) {
    BigReal out(precision);
    const std::string owned(text);
    char* end = nullptr;
    if (!owned.empty()) mpfr_strtofr(out.v_, owned.c_str(), &end, 10, MPFR_RNDN);
    if (owned.empty() || end != owned.c_str() + owned.size() ||
        mpfr_nan_p(out.v_) || mpfr_inf_p(out.v_)) {
      throw Error(ErrorKind::invalid_argument,
                  "not a decimal number: '" + owned + "'");
    }
    return out;
  }

  BigReal(const BigReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  Precision precision() const { return mpfr_get_prec(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Copy of this value rounded to another precision.
  BigReal rounded(Precision precision, mpfr_rnd_t rnd = MPFR_RNDN) const {
    BigReal out(precision);
    mpfr_set(out.v_, v_, rnd);
    return out;
  }

  /// Scientific notation with `significant` digits, e.g. "1.26e-03".
  std::string to_scientific(int significant) const {
    return format("%.*Re", std::max(significant, 1) - 1);
  }

  /// Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const {
    return format("%.*Rf", std::max(decimals, 0));
  }

  /// All digits the precision supports.
  std::string to_string() const {
    const int digits =
        static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) +
        1;
    return format("%.*Rg", digits);
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend BigReal operator-(const BigReal& x) {
    BigReal out(x.precision());
    mpfr_neg(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    return binary(a, b, mpfr_add);
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    return binary(a, b, mpfr_sub);
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    return binary(a, b, mpfr_mul);
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    return binary(a, b, mpfr_div);
  }

  // Exact comparisons of the stored values. Use compare_guarded() when the
  // question is about the real numbers they approximate.
  friend int compare(const BigReal& a, const BigReal& b) {
    return mpfr_cmp(a.v_, b.v_);
  }
  friend bool operator==(const BigReal& a, const BigReal& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator<(const BigReal& a, const BigReal& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const BigReal& a, const BigReal& b) { return b < a; }

 private:
  template <class Op>
  static BigReal binary(const BigReal& a, const BigReal& b, Op op) {
    BigReal out(std::min(a.precision(), b.precision()));
    op(out.v_, a.v_, b.v_, MPFR_RNDN);
    return out;
  }

  std::string format(const char* fmt, int digits) const {
    char* raw = nullptr;
    if (mpfr_asprintf(&raw, fmt, digits, v_) < 0) return "nan";
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
  }

  mpfr_t v_;
};

inline BigReal abs(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

inline BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw Error(ErrorKind::domain_error, "sqrt of a negative value");
  BigReal out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

/// Natural logarithm of |x| at x's precision.
inline BigReal log_abs(const BigReal& x) {
  if (x.is_zero()) throw Error(ErrorKind::log_of_zero, "log of zero");
  BigReal out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  mpfr_log(out.get(), out.get(), MPFR_RNDN);
  return out;
}

}  // namespace diophant
