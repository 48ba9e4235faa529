#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "diophant/bigreal.hpp"

namespace diophant {

/// Exact rational in canonical form: gcd(|num|, den) = 1 and den >= 1.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(long value) : num_(value), den_(1) {}  // NOLINT: implicit by intent
  BigRational(BigInt value) : num_(std::move(value)), den_(1) {}  // NOLINT

  BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error(ErrorKind::invalid_argument, "zero denominator");
    canonicalize();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  int sign() const { return sgn(num_); }
  bool is_integer() const { return den_ == 1; }

  std::string to_string() const {
    return den_ == 1 ? num_.get_str() : num_.get_str() + "/" + den_.get_str();
  }

  friend BigRational operator+(const BigRational& a, const BigRational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend BigRational operator-(const BigRational& a, const BigRational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend BigRational operator*(const BigRational& a, const BigRational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend BigRational operator/(const BigRational& a, const BigRational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::invalid_argument, "division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend BigRational operator-(const BigRational& a) { return {-a.num_, a.den_}; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(BigInt(a.num_ * b.den_), BigInt(b.num_ * a.den_));
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) {
    return os << r.to_string();
  }

 private:
  void canonicalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g > 1) {
      mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  BigInt num_;
  BigInt den_;
};

inline BigReal to_big_real(const BigRational& r, Precision precision,
                           mpfr_rnd_t rnd = MPFR_RNDN) {
  BigReal out(precision);
  mpq_class q(r.num(), r.den());
  mpfr_set_q(out.get(), q.get_mpq_t(), rnd);
  return out;
}

/// The exact dyadic rational stored in a BigReal.
inline BigRational exact_rational(const BigReal& x) {
  if (x.is_zero()) return BigRational{};
  BigInt mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), x.get());
  if (e >= 0) return BigRational(BigInt(mantissa << static_cast<mp_bitcnt_t>(e)));
  BigInt den(1);
  den <<= static_cast<mp_bitcnt_t>(-e);
  return BigRational(std::move(mantissa), std::move(den));
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace diophant
