#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diophant/constants.hpp"
#include "diophant/interval.hpp"
#include "diophant/model.hpp"

namespace diophant {

using ival::LogBase;

enum class Verdict { intelligent, naive, indeterminate };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::intelligent: return "Intelligent";
    case Verdict::naive: return "Naive";
    case Verdict::indeterminate: return "Indeterminate";
  }
  return "?";
}

/// The real number being approximated: a registry constant (enclosed as
/// tightly as any computation asks) or an explicit BigReal (enclosed by its
/// own stated precision).
class Target {
 public:
  static Target named(std::string id) {
    if (!is_constant_id(id)) throw Error(ErrorKind::unknown_constant, "unknown constant '" + id + "'");
    return Target(std::move(id), std::nullopt);
  }

  static Target value(BigReal v) {
    std::string label = v.to_string();
    return Target(std::move(label), std::move(v));
  }

  /// A constant id, or otherwise a decimal literal read at `precision` bits.
  static Target parse(std::string_view text, Precision precision = kDefaultPrecision) {
    if (is_constant_id(text)) return named(std::string(text));
    try {
      return value(BigReal::parse(text, precision));
    } catch (const Error&) {
      throw Error(ErrorKind::unknown_constant,
                  "'" + std::string(text) + "' is neither a constant id nor a decimal number");
    }
  }

  Interval enclose(Precision q) const {
    return value_ ? diophant::enclose(*value_) : constant_interval(label_, q);
  }

  /// Point value at `precision` bits (or the explicit value as given).
  BigReal at(Precision precision) const {
    return value_ ? *value_ : constant(label_, precision);
  }

  const std::string& label() const { return label_; }
  bool is_named() const { return !value_.has_value(); }

 private:
  Target(std::string label, std::optional<BigReal> value)
      : label_(std::move(label)), value_(std::move(value)) {}

  std::string label_;
  std::optional<BigReal> value_;
};

/// x ~= M(a1, ..., an): a model, a nonzero integer tuple and the target x.
struct Approximation {
  Approximation(Model m, std::vector<BigInt> p, Target t)
      : model(std::move(m)), params(std::move(p)), target(std::move(t)) {
    check_params(model, params);
  }

  Model model;
  std::vector<BigInt> params;
  Target target;
};

/// Result of measuring one approximation. `mu` holds mu or mu' depending on
/// `prime`; logarithms are natural unless a base was requested, in which
/// case log_size is in that base too. `mu_bounds` is the enclosure verdicts
/// are decided against.
struct MeasureReport {
  std::string model;
  std::vector<BigInt> params;
  std::string target;
  bool prime;
  BigReal value;
  BigReal error;
  BigInt size;
  BigReal log_size;
  BigReal mu;
  Interval mu_bounds;
  Verdict verdict;
};

inline void check_nonzero(std::span<const BigInt> params) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i] == 0) {
      throw Error(ErrorKind::invalid_parameter, "parameter " + std::to_string(i + 1) + " is zero");
    }
  }
}

/// |a1| * ... * |an|.
inline BigInt size_of(std::span<const BigInt> params) {
  check_nonzero(params);
  BigInt out(1);
  for (const BigInt& a : params) out *= abs(a);
  return out;
}

/// log|a1| + ... + log|an|, which is never negative.
inline BigReal log_size(std::span<const BigInt> params, Precision precision = kDefaultPrecision) {
  const BigInt s = size_of(params);
  if (s == 1) return BigReal(precision);
  return ival::log(Interval::point(s, precision + 32), precision + 32).mid(precision);
}

/// True unless every parameter is +-1.
inline bool is_admissible(std::span<const BigInt> params) {
  check_nonzero(params);
  for (const BigInt& a : params) {
    if (abs(a) >= 2) return true;
  }
  return false;
}

/// Decides `value >= threshold` with both sides enclosed.
inline Verdict classify(const Interval& value, const BigReal& threshold) {
  switch (compare_guarded(value, enclose(threshold))) {
    case Ordering3::greater: return Verdict::intelligent;
    case Ordering3::less: return Verdict::naive;
    case Ordering3::indeterminate: break;
  }
  return Verdict::indeterminate;
}

namespace detail {

// Bits of relative accuracy an enclosure actually carries (clamped to [64, cap]).
inline Precision trusted_bits(const Interval& v, Precision cap) {
  for (Precision bits = cap; bits > kMinPrecision; bits -= 8) {
    if (v.relatively_tight(bits)) return bits;
  }
  return kMinPrecision;
}

inline MeasureReport measure(const Approximation& a, Precision p, LogBase base, bool prime) {
  if (!is_admissible(a.params)) {
    throw Error(ErrorKind::inadmissible, "all parameters are +-1 (logarithmic size is zero)");
  }
  const BigInt sz = size_of(a.params);
  return escalate(p, [&](Precision q, bool last) {
    const Interval x = a.target.enclose(q);
    if (x.is_zero()) throw Error(ErrorKind::zero_target, "target is zero");
    if (x.contains_zero()) throw Unresolved{ErrorKind::zero_target, "target indistinguishable from zero"};

    const Interval m = evaluate_enclosure(a.model, a.params, q);
    const Interval diff = ival::sub(x, m, q);
    if (diff.is_zero()) {
      throw Error(ErrorKind::target_representable, "model value equals the target");
    }
    if (diff.contains_zero()) {
      throw Unresolved{ErrorKind::target_representable,
                       "error indistinguishable from zero (target may be representable in the model)"};
    }
    const Interval err = ival::abs(diff);

    Interval head = ival::log(ival::abs(x), q, base);
    if (prime) {
      if (m.is_zero()) throw Error(ErrorKind::zero_model_value, "model value is zero");
      if (m.contains_zero()) {
        throw Unresolved{ErrorKind::zero_model_value, "model value indistinguishable from zero"};
      }
      head = ival::log(ival::abs(m), q, base);
    }
    const Interval lsize = ival::log(Interval::point(sz, q), q, base);
    const Interval mu = ival::div(ival::sub(head, ival::log(err, q, base), q), lsize, q);

    const bool tight = mu.relatively_tight(p + 2);
    if (!tight && !last) throw Unresolved{ErrorKind::insufficient_precision, "mu not resolved"};

    const Precision reported = tight ? p : trusted_bits(mu, p);
    BigReal mu_value = mu.mid(reported);
    Interval bounds = tight ? enclose(mu_value) : mu;
    Verdict verdict = classify(bounds, BigReal(1, p));
    return MeasureReport{format_model(a.model),
                         a.params,
                         a.target.label(),
                         prime,
                         m.mid(p),
                         err.mid(p),
                         sz,
                         lsize.mid(p),
                         std::move(mu_value),
                         std::move(bounds),
                         verdict};
  });
}

}  // namespace detail

/// mu = (log|x| - log|x - M(a)|) / log|a1...an|, with the intelligent/naive
/// verdict decided by guarded comparison against 1. The quotient does not
/// depend on the logarithm base; `base` exists to demonstrate exactly that.
inline MeasureReport mu(const Approximation& a, Precision precision = kDefaultPrecision,
                        LogBase base = LogBase::natural) {
  return detail::measure(a, precision, base, false);
}

/// mu' = (log|M(a)| - log|x - M(a)|) / log|a1...an|.
inline MeasureReport mu_prime(const Approximation& a, Precision precision = kDefaultPrecision,
                              LogBase base = LogBase::natural) {
  return detail::measure(a, precision, base, true);
}

/// Measures at `precision`, doubling it up to `retries` times while the
/// verdict is indeterminate.
inline MeasureReport measure_with_retry(const Approximation& a, Precision precision,
                                        bool prime = false, int retries = 2) {
  MeasureReport r = prime ? mu_prime(a, precision) : mu(a, precision);
  for (int i = 0; i < retries && r.verdict == Verdict::indeterminate; ++i) {
    precision *= 2;
    r = prime ? mu_prime(a, precision) : mu(a, precision);
  }
  return r;
}

namespace detail {

inline void check_rational_pair(const BigReal& alpha, const BigInt& p, const BigInt& q) {
  if (p == 0 || q == 0) throw Error(ErrorKind::invalid_parameter, "p and q must be nonzero");
  if (abs(p) == 1 && abs(q) == 1) throw Error(ErrorKind::inadmissible, "|pq| = 1");
  if (alpha.is_zero()) throw Error(ErrorKind::zero_target, "alpha is zero");
}

// lhs <= rhs, both enclosed.
inline Verdict decide_le(const Interval& lhs, const Interval& rhs) {
  if (compare_guarded(lhs, rhs) == Ordering3::less || lhs.hi() == rhs.lo()) return Verdict::intelligent;
  if (compare_guarded(lhs, rhs) == Ordering3::greater) return Verdict::naive;
  return Verdict::indeterminate;
}

}  // namespace detail

/// Rational-model criterion |alpha - p/q| <= |alpha| / |pq|, equivalent to mu >= 1.
inline Verdict rational_intelligent(const BigReal& alpha, const BigInt& p, const BigInt& q) {
  detail::check_rational_pair(alpha, p, q);
  const Precision w = alpha.precision() + detail::kGuardBits;
  const Interval a = enclose(alpha);
  const Interval lhs = ival::abs(ival::sub(a, Interval::point(BigRational(p, q), w), w));
  const Interval rhs = ival::div(ival::abs(a), Interval::point(BigInt(abs(p * q)), w), w);
  return detail::decide_le(lhs, rhs);
}

/// The reciprocal form |1/alpha - q/p| <= 1/p^2; always agrees with
/// rational_intelligent on determinate answers.
inline Verdict rational_intelligent_reciprocal(const BigReal& alpha, const BigInt& p,
                                               const BigInt& q) {
  detail::check_rational_pair(alpha, p, q);
  const Precision w = alpha.precision() + detail::kGuardBits;
  const Interval inv = ival::div(Interval::point(1L, w), enclose(alpha), w);
  const Interval lhs = ival::abs(ival::sub(inv, Interval::point(BigRational(q, p), w), w));
  const Interval rhs = Interval::point(BigRational(BigInt(1), BigInt(p * p)), w);
  return detail::decide_le(lhs, rhs);
}

/// mu'-criterion in the rational model: |alpha - p/q| <= 1/q^2.
inline Verdict mu_prime_rational_check(const BigReal& alpha, const BigInt& p, const BigInt& q) {
  detail::check_rational_pair(alpha, p, q);
  const Precision w = alpha.precision() + detail::kGuardBits;
  const Interval lhs = ival::abs(ival::sub(enclose(alpha), Interval::point(BigRational(p, q), w), w));
  const Interval rhs = Interval::point(BigRational(BigInt(1), BigInt(q * q)), w);
  return detail::decide_le(lhs, rhs);
}

/// The rational model a1/a2.
inline const Model& rational_model() {
  static const Model m = parse_model("a1/a2");
  return m;
}

}  // namespace diophant
