#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "diophant/interval.hpp"
#include "diophant/measure.hpp"
#include "diophant/rational.hpp"

namespace diophant {

/// Finite regular continued fraction [a0; a1, ..., an], a_i >= 1 for i >= 1.
class FiniteCF {
 public:
  explicit FiniteCF(std::vector<BigInt> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorKind::invalid_argument, "continued fraction has no terms");
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      if (terms_[i] < 1) {
        throw Error(ErrorKind::invalid_argument,
                    "partial quotient a" + std::to_string(i) + " must be positive");
      }
    }
  }
  FiniteCF(std::initializer_list<long> terms) : FiniteCF(std::vector<BigInt>(terms.begin(), terms.end())) {}

  const std::vector<BigInt>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const BigInt& operator[](std::size_t i) const { return terms_[i]; }

  friend bool operator==(const FiniteCF&, const FiniteCF&) = default;

 private:
  std::vector<BigInt> terms_;
};

/// [c0, ..., c(k-1), overline(b1, ..., bd)]; period nonempty with all terms >= 1.
class PeriodicCF {
 public:
  PeriodicCF(std::vector<BigInt> preperiod, std::vector<BigInt> period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw Error(ErrorKind::invalid_argument, "period is empty");
    for (const BigInt& b : period_) {
      if (b < 1) throw Error(ErrorKind::invalid_argument, "period terms must be positive");
    }
    for (std::size_t i = 1; i < preperiod_.size(); ++i) {
      if (preperiod_[i] < 1) throw Error(ErrorKind::invalid_argument, "preperiod terms after the first must be positive");
    }
  }

  const std::vector<BigInt>& preperiod() const { return preperiod_; }
  const std::vector<BigInt>& period() const { return period_; }

  /// The first n terms of the infinite expansion.
  FiniteCF truncate(std::size_t n) const {
    if (n == 0) throw Error(ErrorKind::invalid_argument, "truncation needs at least one term");
    std::vector<BigInt> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(i < preperiod_.size() ? preperiod_[i]
                                          : period_[(i - preperiod_.size()) % period_.size()]);
    }
    return FiniteCF(std::move(out));
  }

  friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;

 private:
  std::vector<BigInt> preperiod_;
  std::vector<BigInt> period_;
};

/// (P + Q*sqrt(D)) / R with gcd(P, Q, R) = 1, R > 0, D >= 2 squarefree, Q != 0.
class QuadraticSurd {
 public:
  QuadraticSurd(BigInt p, BigInt q, BigInt d, BigInt r)
      : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
    if (r_ == 0) throw Error(ErrorKind::invalid_argument, "surd denominator is zero");
    if (d_ < 2) throw Error(ErrorKind::not_irrational, "radicand must be at least 2");
    canonicalize();
    if (q_ == 0 || d_ == 1) throw Error(ErrorKind::not_irrational, "surd is rational");
  }

  const BigInt& P() const { return p_; }
  const BigInt& Q() const { return q_; }
  const BigInt& D() const { return d_; }
  const BigInt& R() const { return r_; }

  /// Renders "(193 + √65)/64", "√2", "2 + √5", "-√3/2". With ascii set the
  /// radical is written sqrt(D); with radical_first, "(√65 - 1)/2".
  std::string to_string(bool ascii = false, bool radical_first = false) const {
    const std::string root = (ascii ? "sqrt(" + d_.get_str() + ")" : "√" + d_.get_str());
    const BigInt mag = abs(q_);
    const std::string radical = (mag == 1 ? std::string() : mag.get_str()) + root;
    std::string num;
    if (p_ == 0) {
      num = (q_ < 0 ? "-" : "") + radical;
    } else if (radical_first) {
      num = (q_ < 0 ? "-" : "") + radical + (p_ < 0 ? " - " : " + ") + BigInt(abs(p_)).get_str();
    } else {
      num = p_.get_str() + (q_ < 0 ? " - " : " + ") + radical;
    }
    if (r_ == 1) return num;
    return (p_ == 0 ? num : "(" + num + ")") + "/" + r_.get_str();
  }

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  void canonicalize() {
    const auto [square, rest] = split_square(d_);
    d_ = rest;
    q_ *= square;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
      return;
    }
    if (r_ < 0) {
      p_ = -p_;
      q_ = -q_;
      r_ = -r_;
    }
    const BigInt g = gcd(gcd(p_, q_), r_);
    if (g > 1) {
      p_ /= g;
      q_ /= g;
      r_ /= g;
    }
  }

  // n = f^2 * m with m squarefree. Trial division to n^(1/3) leaves a
  // cofactor with at most two prime factors, squarefree unless a square.
  static std::pair<BigInt, BigInt> split_square(const BigInt& n) {
    constexpr unsigned long kTrialLimit = 10'000'000;
    BigInt cube;
    mpz_root(cube.get_mpz_t(), n.get_mpz_t(), 3);
    if (cube > kTrialLimit) throw Error(ErrorKind::budget_exceeded, "radicand too large to reduce");
    const unsigned long limit = cube.get_ui() + 1;
    BigInt f(1), kept(1), m(n);
    for (unsigned long p = 2; p <= limit && BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      for (unsigned k = 0; k < e / 2; ++k) f *= p;
      if (e % 2 == 1) kept *= p;
    }
    if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) {
      BigInt s;
      mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
      f *= s;
      m = 1;
    }
    return {f, BigInt(kept * m)};
  }

  BigInt p_, q_, d_, r_;
};

/// Reliable prefix of a regular continued fraction expansion.
struct CFExpansion {
  FiniteCF cf;
  std::size_t reliable_count;
  bool exhausted;  // stopped because the enclosure no longer fixes the next term
};

namespace detail {

inline BigInt floor_of(const BigRational& r) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return out;
}

}  // namespace detail

/// Expands both endpoints of `x` in lockstep; a term is kept only while the
/// endpoint expansions agree on it and neither has terminated.
inline CFExpansion cf_expand(const Interval& x, std::size_t max_terms) {
  if (max_terms == 0) throw Error(ErrorKind::invalid_argument, "max_terms must be positive");
  BigRational lo = exact_rational(x.lo());
  BigRational hi = exact_rational(x.hi());
  std::vector<BigInt> terms;
  bool exhausted = false;
  while (terms.size() < max_terms) {
    const BigInt a = detail::floor_of(lo);
    if (a != detail::floor_of(hi)) {
      exhausted = true;
      break;
    }
    terms.push_back(a);
    const BigRational flo = lo - BigRational(a);
    const BigRational fhi = hi - BigRational(a);
    if (flo.sign() == 0 || fhi.sign() == 0) {
      exhausted = true;
      break;
    }
    // Reciprocal reverses order.
    lo = BigRational(1) / fhi;
    hi = BigRational(1) / flo;
  }
  if (terms.empty()) throw Error(ErrorKind::insufficient_precision, "no reliable partial quotient");
  const std::size_t n = terms.size();
  return {FiniteCF(std::move(terms)), n, exhausted};
}

inline CFExpansion cf_expand(const BigReal& x, std::size_t max_terms) {
  return cf_expand(enclose(x), max_terms);
}

/// Exact expansion of a rational; the last term exceeds 1 unless it is a0.
inline FiniteCF cf_of_rational(const BigRational& r) {
  std::vector<BigInt> terms;
  BigInt num = r.num(), den = r.den();
  while (den != 0) {
    BigInt a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    terms.push_back(a);
    num = std::move(den);
    den = std::move(rem);
  }
  return FiniteCF(std::move(terms));
}

/// p_k/q_k for k = 0..n via the standard recurrence.
inline std::vector<BigRational> convergents(const FiniteCF& cf) {
  std::vector<BigRational> out;
  out.reserve(cf.size());
  BigInt p2(0), q2(1), p1(1), q1(0);
  for (const BigInt& a : cf.terms()) {
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    out.emplace_back(p, q);
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(p);
    q1 = std::move(q);
  }
  return out;
}

/// Raw (p_k, q_k) pairs, unreduced by construction (they are coprime).
inline std::vector<std::pair<BigInt, BigInt>> convergent_pairs(const FiniteCF& cf) {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p2(0), q2(1), p1(1), q1(0);
  for (const BigInt& a : cf.terms()) {
    BigInt p = a * p1 + p2;
    BigInt q = a * q1 + q2;
    out.emplace_back(p, q);
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = std::move(p);
    q1 = std::move(q);
  }
  return out;
}

inline BigRational eval_finite_cf(const FiniteCF& cf) { return convergents(cf).back(); }

/// Exact closed form of a periodic continued fraction. The tail y satisfies
/// q_d y^2 + (q_{d-1} - p_d) y - p_{d-1} = 0 with exactly one root > 1.
inline QuadraticSurd periodic_to_surd(const PeriodicCF& pcf) {
  const auto per = convergent_pairs(FiniteCF(pcf.period()));
  const auto& [pd, qd] = per.back();
  BigInt pd1(1), qd1(0);
  if (per.size() >= 2) std::tie(pd1, qd1) = per[per.size() - 2];

  // y = (s + sqrt(disc)) / (2 qd)
  const BigInt s = pd - qd1;
  const BigInt disc = s * s + 4 * qd * pd1;
  if (mpz_perfect_square_p(disc.get_mpz_t())) {
    throw Error(ErrorKind::not_irrational, "period yields a rational value");
  }
  if (pcf.preperiod().empty()) return QuadraticSurd(s, BigInt(1), disc, BigInt(2 * qd));

  // x = (A y + B) / (C y + D) for the preperiod matrix.
  const auto pre = convergent_pairs(FiniteCF(pcf.preperiod()));
  const auto& [A, C] = pre.back();
  BigInt B(1), D(0);
  if (pre.size() >= 2) std::tie(B, D) = pre[pre.size() - 2];

  // x = (u + A sqrt(disc)) / (v + C sqrt(disc)), then rationalize.
  const BigInt u = A * s + 2 * qd * B;
  const BigInt v = C * s + 2 * qd * D;
  return QuadraticSurd(BigInt(u * v - A * C * disc), BigInt(A * v - u * C), disc,
                       BigInt(v * v - C * C * disc));
}

/// Rigorous enclosure of a surd.
inline Interval surd_enclosure(const QuadraticSurd& s, Precision q) {
  const Interval root = ival::sqrt(Interval::point(s.D(), q), q);
  const Interval num = ival::add(Interval::point(s.P(), q), ival::mul(Interval::point(s.Q(), q), root, q), q);
  return ival::div(num, Interval::point(s.R(), q), q);
}

inline BigReal surd_eval(const QuadraticSurd& s, Precision precision = kDefaultPrecision) {
  check_precision(precision);
  return surd_enclosure(s, precision + 32).mid(precision);
}

/// "a0 + 1/(tail)" with the tail [a1, ..., overline(period)] in closed form,
/// e.g. "3 + 1/(√65 - 1)"; the canonical form when there is no preperiod.
inline std::string nested_form(const PeriodicCF& pcf, bool ascii = false) {
  const auto& pre = pcf.preperiod();
  if (pre.empty()) return periodic_to_surd(pcf).to_string(ascii, true);
  const PeriodicCF tail(std::vector<BigInt>(pre.begin() + 1, pre.end()), pcf.period());
  const std::string inner = "1/(" + periodic_to_surd(tail).to_string(ascii, true) + ")";
  return pre[0] == 0 ? inner : pre[0].get_str() + " + " + inner;
}

/// True iff r equals a convergent of x. Walks reliable convergents until
/// their denominators pass r's.
inline bool is_convergent_of(const BigRational& r, const BigReal& x) {
  const CFExpansion ex = cf_expand(x, std::numeric_limits<std::size_t>::max());
  for (const BigRational& c : convergents(ex.cf)) {
    if (c == r) return true;
    if (c.den() > r.den()) return false;
  }
  throw Error(ErrorKind::insufficient_precision,
              "reliable expansion too short to decide convergent membership of " + r.to_string());
}

struct TheoremCandidate {
  std::size_t n;
  FiniteCF cf;
  BigRational value;
  Verdict verdict;
  bool is_convergent;
};

namespace detail {

enum class TheoremRule { one, two };

inline std::vector<TheoremCandidate> theorem_candidates(const BigReal& x, std::size_t max_n,
                                                        TheoremRule rule) {
  if (compare_guarded(x, BigReal(1, x.precision())) != Ordering3::greater) {
    throw Error(ErrorKind::invalid_argument, "x must exceed 1");
  }
  const CFExpansion ex = cf_expand(x, max_n + 2);
  if (ex.reliable_count < max_n + 2) {
    throw Error(ErrorKind::insufficient_precision,
                "only " + std::to_string(ex.reliable_count) + " reliable terms; need " +
                    std::to_string(max_n + 2));
  }
  const auto& a = ex.cf.terms();
  std::vector<TheoremCandidate> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const bool holds = rule == TheoremRule::one ? (a[n + 1] >= a[n] - 1 && a[n] - 1 >= 1)
                                                : (2 <= a[n + 1] && a[n + 1] <= a[n] + 1);
    if (!holds) continue;
    std::vector<BigInt> terms(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n) + 1);
    terms.back() += rule == TheoremRule::one ? -1 : 1;
    FiniteCF cf(std::move(terms));
    BigRational value = eval_finite_cf(cf);
    if (abs(value.num()) == 1 && value.den() == 1) continue;  // |pq| = 1 is inadmissible
    const Verdict verdict = rational_intelligent(x, value.num(), value.den());
    const bool conv = is_convergent_of(value, x);
    out.push_back({n, std::move(cf), std::move(value), verdict, conv});
  }
  return out;
}

}  // namespace detail

/// For each n <= max_n with a_{n+1} >= a_n - 1 >= 1: [a0, ..., a(n-1), a_n - 1].
inline std::vector<TheoremCandidate> theorem1_candidates(const BigReal& x, std::size_t max_n) {
  return detail::theorem_candidates(x, max_n, detail::TheoremRule::one);
}

/// For each n <= max_n with 2 <= a_{n+1} <= a_n + 1: [a0, ..., a(n-1), a_n + 1].
inline std::vector<TheoremCandidate> theorem2_candidates(const BigReal& x, std::size_t max_n) {
  return detail::theorem_candidates(x, max_n, detail::TheoremRule::two);
}

// Text form: "[3; 7, 15, 1]", "[2; (4)]", "[3; 7, (16)]", "[(16)]".

namespace detail {

inline std::string join_terms(const std::vector<BigInt>& terms, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < terms.size(); ++i) {
    if (i > from) out += ", ";
    out += terms[i].get_str();
  }
  return out;
}

}  // namespace detail

inline std::string format_cf(const FiniteCF& cf) {
  std::string out = "[" + cf[0].get_str();
  if (cf.size() > 1) out += "; " + detail::join_terms(cf.terms(), 1);
  return out + "]";
}

inline std::string format_cf(const PeriodicCF& pcf) {
  const std::string period = "(" + detail::join_terms(pcf.period(), 0) + ")";
  const auto& pre = pcf.preperiod();
  if (pre.empty()) return "[" + period + "]";
  std::string out = "[" + pre[0].get_str() + "; ";
  if (pre.size() > 1) out += detail::join_terms(pre, 1) + ", ";
  return out + period + "]";
}

/// Parses either text form; "," is accepted in place of ";".
inline std::variant<FiniteCF, PeriodicCF> parse_cf(std::string_view text) {
  auto fail = [&](const std::string& msg, std::size_t pos) -> void {
    throw Error(ErrorKind::syntax, msg + " at position " + std::to_string(pos), pos);
  };
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'", i);
    ++i;
  };
  auto integer = [&]() -> BigInt {
    skip();
    const std::size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) fail("expected an integer", start);
    return BigInt(std::string(text.substr(start, i - start)));
  };

  expect('[');
  std::vector<BigInt> pre, period;
  bool in_period = false, closed_period = false, first = true;
  for (;;) {
    skip();
    if (i < text.size() && text[i] == '(' && !in_period && !closed_period) {
      in_period = true;
      ++i;
    }
    (in_period ? period : pre).push_back(integer());
    skip();
    if (in_period && i < text.size() && text[i] == ')') {
      in_period = false;
      closed_period = true;
      ++i;
      skip();
    }
    if (i < text.size() && text[i] == ']') break;
    if (closed_period) fail("period must be last", i);
    if (i >= text.size() || !(text[i] == ',' || (first && text[i] == ';'))) fail("expected ',' or ']'", i);
    ++i;
    first = false;
  }
  if (in_period) fail("unclosed period", i);
  ++i;
  skip();
  if (i != text.size()) fail("trailing input", i);
  if (closed_period) return PeriodicCF(std::move(pre), std::move(period));
  return FiniteCF(std::move(pre));
}

}  // namespace diophant
