#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diophant/constants.hpp"
#include "diophant/contfrac.hpp"
#include "diophant/measure.hpp"

namespace diophant {

inline BigInt fibonacci(unsigned long n) {
  BigInt out;
  mpz_fib_ui(out.get_mpz_t(), n);
  return out;
}

inline BigInt lucas(unsigned long n) {
  BigInt out;
  mpz_lucnum_ui(out.get_mpz_t(), n);
  return out;
}

/// One member of an approximation family. p/q is the fraction as the family
/// states it; mu is measured on (measured_p, measured_q), which differs from
/// (p, q) only when the family reduces the fraction.
struct FamilyReport {
  std::string family;
  unsigned long n;
  BigInt p;
  BigInt q;
  bool reduced;  // gcd(p, q) = 1
  BigInt measured_p;
  BigInt measured_q;
  BigReal mu;
  Verdict verdict;
  bool is_convergent;
  std::string identity;            // CF identity checked for this entry, if any
  std::optional<bool> identity_ok;
};

namespace detail {

inline FiniteCF repeated_cf(long head, long middle, unsigned long count, long last) {
  std::vector<BigInt> terms{BigInt(head)};
  for (unsigned long i = 0; i < count; ++i) terms.emplace_back(middle);
  terms.emplace_back(last);
  return FiniteCF(std::move(terms));
}

inline std::string cf_label(long head, long middle, unsigned long count, long last) {
  return "[" + std::to_string(head) + ", " + std::to_string(middle) + " x " + std::to_string(count) +
         ", " + std::to_string(last) + "]";
}

inline MeasureReport rational_mu(const BigInt& p, const BigInt& q, const char* target,
                                 Precision precision) {
  return mu(Approximation(rational_model(), {p, q}, Target::named(target)), precision);
}

}  // namespace detail

/// sqrt(5) ~ L_n/F_n for 2 <= n <= n_max. For n = 0 mod 3 both terms are
/// even and mu is taken on (L_n/2)/(F_n/2). Entries with n = 3m+4 or
/// n = 3m+5 also check [2, 4 x m, 3] or [2, 4 x m, 5] against L_n/F_n.
inline std::vector<FamilyReport> sqrt5_family(unsigned long n_max,
                                              Precision precision = kDefaultPrecision) {
  if (n_max < 2) throw Error(ErrorKind::invalid_argument, "n_max must be at least 2");
  const BigReal x = constant("sqrt5", precision);
  std::vector<FamilyReport> out;
  for (unsigned long n = 2; n <= n_max; ++n) {
    const BigInt l = lucas(n), f = fibonacci(n);
    const bool halve = n % 3 == 0;
    BigInt mp = halve ? BigInt(l / 2) : l;
    BigInt mq = halve ? BigInt(f / 2) : f;
    const MeasureReport r = detail::rational_mu(mp, mq, "sqrt5", precision);

    std::string identity;
    std::optional<bool> ok;
    if (n >= 4) {
      const unsigned long m = (n - 4) / 3;
      const long last = (n - 4) % 3 == 0 ? 3 : ((n - 5) % 3 == 0 ? 5 : 0);
      if (last != 0) {
        const unsigned long count = last == 3 ? m : (n - 5) / 3;
        identity = detail::cf_label(2, 4, count, last);
        ok = eval_finite_cf(detail::repeated_cf(2, 4, count, last)) == BigRational(l, f);
      }
    }
    out.push_back({"sqrt5", n, l, f, gcd(l, f) == 1, mp, mq, r.mu, r.verdict,
                   is_convergent_of(BigRational(mp, mq), x), std::move(identity), ok});
  }
  return out;
}

/// sqrt(2) ~ [1, 2 x n, 1] for 0 <= n <= n_max, each checked to equal 2/[1, 2 x n].
inline std::vector<FamilyReport> sqrt2_family(unsigned long n_max,
                                              Precision precision = kDefaultPrecision) {
  const BigReal x = constant("sqrt2", precision);
  std::vector<FamilyReport> out;
  for (unsigned long n = 0; n <= n_max; ++n) {
    const BigRational value = eval_finite_cf(detail::repeated_cf(1, 2, n, 1));
    std::vector<BigInt> inner{BigInt(1)};
    inner.insert(inner.end(), n, BigInt(2));
    const bool ok = value == BigRational(2) / eval_finite_cf(FiniteCF(std::move(inner)));
    const MeasureReport r = detail::rational_mu(value.num(), value.den(), "sqrt2", precision);
    out.push_back({"sqrt2", n, value.num(), value.den(), true, value.num(), value.den(), r.mu,
                   r.verdict, is_convergent_of(value, x), detail::cf_label(1, 2, n, 1) + " = 2/[1, 2 x " + std::to_string(n) + "]", ok});
  }
  return out;
}

inline constexpr unsigned long kLiouvilleMaxK = 12;
inline constexpr unsigned long kLiouvilleExactMaxK = 10;

inline BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// sum_{j=1..k} 10^(-j!) exactly, over 10^(k!). Capped at k = 10 because
/// the denominator has k! decimal digits.
inline BigRational liouville_truncation(unsigned long k) {
  if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be at least 1");
  if (k > kLiouvilleExactMaxK) {
    throw Error(ErrorKind::budget_exceeded, "exact truncation limited to k <= 10");
  }
  const unsigned long top = factorial(k).get_ui();
  BigInt num(0), den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, top);
  for (unsigned long j = 1; j <= k; ++j) {
    BigInt term;
    mpz_ui_pow_ui(term.get_mpz_t(), 10, top - factorial(j).get_ui());
    num += term;
  }
  return BigRational(std::move(num), std::move(den));
}

struct LiouvilleEntry {
  unsigned long k;
  BigInt denominator_digits;  // the truncation is a/10^(k!)
  BigReal mu;
  Verdict verdict;
};

namespace detail {

// 10^(-e) enclosed at precision q.
inline Interval neg_pow10(const BigInt& e, Precision q) {
  BigReal lo(q), hi(q), t(q);
  mpfr_ui_pow_ui(t.get(), 10, e.get_ui(), MPFR_RNDU);
  mpfr_ui_div(lo.get(), 1, t.get(), MPFR_RNDD);
  mpfr_ui_pow_ui(t.get(), 10, e.get_ui(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, t.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

// sum 10^(-e_i) for increasing e_i with factorial-like gaps. Terms below
// 2^-(q+16) are replaced by the bound [0, 2^-(q+15)] on the whole remainder.
inline Interval sum_neg_pow10(const std::vector<BigInt>& exps, Precision q) {
  Interval acc = Interval::point(0L, q);
  for (const BigInt& e : exps) {
    if (3 * e > q + 16) {
      BigReal bound(q);
      mpfr_set_ui_2exp(bound.get(), 1, -(q + 15), MPFR_RNDU);
      return ival::add(acc, Interval(BigReal(q), std::move(bound)), q);
    }
    acc = ival::add(acc, neg_pow10(e, q), q);
  }
  return acc;
}

}  // namespace detail

/// mu of x_k ~ a/10^(k!) in the rational model for k = 1..k_max, with the
/// Liouville constant replaced by its truncation at k_max + 2. Evaluated
/// analytically: log E = -(k+1)! ln 10 + log(sum_{j>k} 10^((k+1)! - j!)) and
/// log size = log x_k + 2 k! ln 10.
inline std::vector<LiouvilleEntry> liouville_mu_series(unsigned long k_max,
                                                       Precision precision = kDefaultPrecision) {
  if (k_max == 0) throw Error(ErrorKind::invalid_argument, "k_max must be at least 1");
  if (k_max > kLiouvilleMaxK) throw Error(ErrorKind::budget_exceeded, "k_max limited to 12");
  const unsigned long deep = k_max + 2;
  std::vector<BigInt> fact(deep + 2);
  for (unsigned long j = 0; j < fact.size(); ++j) fact[j] = factorial(j);

  std::vector<LiouvilleEntry> out;
  for (unsigned long k = 1; k <= k_max; ++k) {
    out.push_back(detail::escalate(precision, [&](Precision q, bool last) {
      const Interval ln10 = detail::log_of(10, q);
      auto partial = [&](unsigned long from, unsigned long to, const BigInt& shift) {
        std::vector<BigInt> exps;
        for (unsigned long j = from; j <= to; ++j) exps.emplace_back(fact[j] - shift);
        return detail::sum_neg_pow10(exps, q);
      };
      const Interval x_deep = partial(1, deep, BigInt(0));
      const Interval x_k = partial(1, k, BigInt(0));
      const Interval log_err =
          ival::sub(ival::log(partial(k + 1, deep, fact[k + 1]), q),
                    ival::mul(Interval::point(fact[k + 1], q), ln10, q), q);
      const Interval log_size = ival::add(
          ival::log(x_k, q), ival::mul(Interval::point(BigInt(2 * fact[k]), q), ln10, q), q);
      const Interval m = ival::div(ival::sub(ival::log(x_deep, q), log_err, q), log_size, q);
      if (!m.relatively_tight(precision + 2) && !last) {
        throw detail::Unresolved{ErrorKind::insufficient_precision, "Liouville mu not resolved"};
      }
      BigReal value = m.mid(precision);
      const Verdict v = classify(enclose(value), BigReal(1, precision));
      return LiouvilleEntry{k, fact[k], std::move(value), v};
    }));
  }
  return out;
}

}  // namespace diophant
