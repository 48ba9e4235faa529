#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <utility>
#include <vector>

#include "diophant/contfrac.hpp"
#include "diophant/measure.hpp"

namespace diophant {

/// Inclusive range of nonzero integers; with allow_negative each value v
/// also contributes -v.
struct ParamRange {
  long lo;
  long hi;
};

struct SearchSpec {
  Model model;
  Target target;
  std::vector<ParamRange> bounds;
  std::size_t top_k = 10;
  double min_mu = 1.0;
  std::optional<bool> allow_negative{};  // unset: false for a1/a2, true otherwise
  Precision precision = kDefaultPrecision;
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
  bool prune = true;
  std::function<void(const std::vector<BigInt>&)> on_pruned{};  // called from worker threads
};

struct SearchHit {
  std::vector<BigInt> params;
  MeasureReport report;
};

struct SearchStats {
  std::uint64_t examined = 0;
  std::uint64_t pruned = 0;
  std::uint64_t skipped = 0;
  std::uint64_t measured = 0;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // mu descending, then size ascending, then params
  std::vector<std::vector<BigInt>> undecided;
  SearchStats stats;
};

namespace detail {

inline bool hit_before(const SearchHit& a, const SearchHit& b) {
  if (const int c = compare(a.report.mu, b.report.mu); c != 0) return c > 0;
  if (const int c = cmp(a.report.size, b.report.size); c != 0) return c < 0;
  return a.params < b.params;
}

inline void keep_top(std::vector<SearchHit>& hits, std::size_t k) {
  std::sort(hits.begin(), hits.end(), hit_before);
  if (hits.size() > k) hits.erase(hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end());
}

inline std::vector<std::vector<long>> axis_values(const SearchSpec& spec, bool negative) {
  std::vector<std::vector<long>> axes;
  for (const ParamRange& r : spec.bounds) {
    if (r.lo > r.hi) throw Error(ErrorKind::invalid_argument, "empty parameter range");
    if (r.lo <= 0 && r.hi >= 0) throw Error(ErrorKind::invalid_argument, "parameter range contains 0");
    std::vector<long> values;
    for (long v = r.lo; v <= r.hi; ++v) values.push_back(v);
    if (negative) {
      for (long v = r.lo; v <= r.hi; ++v) values.push_back(-v);
    }
    axes.push_back(std::move(values));
  }
  return axes;
}

enum class Outcome { hit, miss, pruned, skipped, undecided };

struct TupleResult {
  Outcome outcome;
  std::optional<MeasureReport> report;
};

inline constexpr Precision kPrunePrecision = 128;

// mu >= min_mu  <=>  err <= |x| * size^(-min_mu). Prunes only when the
// enclosures put err strictly above the bound. With min_mu = 1 the test
// is err * size > |x| and needs no logarithms.
inline bool prunable(const Interval& x, const Model& model, const std::vector<BigInt>& params,
                     const BigInt& size, const BigReal& min_mu) {
  constexpr Precision q = kPrunePrecision;
  try {
    const Interval err = ival::abs(ival::sub(x, evaluate_enclosure(model, params, q), q));
    if (min_mu == BigReal(1, min_mu.precision())) {
      return ival::mul(err, Interval::point(size, q), q).lo() > ival::abs(x).hi();
    }
    const Interval bound =
        ival::sub(ival::log(ival::abs(x), q),
                  ival::mul(Interval::point(exact_rational(min_mu), q),
                            ival::log(Interval::point(size, q), q), q),
                  q);
    return ival::log(err, q).lo() > bound.hi();
  } catch (const Unresolved&) {
    return false;
  }
}

// `x` is the target enclosed at kPrunePrecision.
inline TupleResult examine(const SearchSpec& spec, const Interval& x, const BigReal& min_mu,
                           std::vector<BigInt> params) {
  try {
    if (!is_admissible(params)) return {Outcome::skipped, std::nullopt};
    const BigInt size = size_of(params);
    if (spec.prune && prunable(x, spec.model, params, size, min_mu)) {
      if (spec.on_pruned) spec.on_pruned(params);
      return {Outcome::pruned, std::nullopt};
    }
    const Approximation approx(spec.model, std::move(params), spec.target);
    Precision p = spec.precision;
    for (int attempt = 0; attempt < 3; ++attempt, p *= 2) {
      MeasureReport r = mu(approx, p);
      switch (classify(r.mu_bounds, BigReal(min_mu).rounded(p))) {
        case Verdict::intelligent: return {Outcome::hit, std::move(r)};
        case Verdict::naive: return {Outcome::miss, std::nullopt};
        case Verdict::indeterminate: break;
      }
    }
    return {Outcome::undecided, std::nullopt};
  } catch (const Error&) {
    return {Outcome::skipped, std::nullopt};
  }
}

}  // namespace detail

/// Enumerates every tuple in the box, keeping the top_k with mu >= min_mu
/// determinately. Output does not depend on the worker count.
inline SearchResult exhaustive_search(const SearchSpec& spec) {
  if (spec.top_k == 0) throw Error(ErrorKind::invalid_argument, "top_k must be positive");
  if (spec.bounds.size() != spec.model.arity()) {
    throw Error(ErrorKind::invalid_argument, "one range per model parameter is required");
  }
  check_precision(spec.precision);
  const bool negative = spec.allow_negative.value_or(!(spec.model == rational_model()));
  const auto axes = detail::axis_values(spec, negative);

  std::uint64_t volume = 1;
  for (const auto& axis : axes) {
    if (volume > spec.budget / axis.size()) {
      throw Error(ErrorKind::budget_exceeded, "search box exceeds the tuple budget");
    }
    volume *= axis.size();
  }
  if (volume > spec.budget) throw Error(ErrorKind::budget_exceeded, "search box exceeds the tuple budget");

  // Exact copy of the double threshold.
  BigReal min_mu(spec.precision);
  mpfr_set_d(min_mu.get(), spec.min_mu, MPFR_RNDN);

  const unsigned workers = std::max(1u, spec.workers);
  constexpr std::uint64_t kChunk = 4096;
  std::atomic<std::uint64_t> next{0};

  struct Partial {
    std::vector<SearchHit> hits;
    std::vector<std::vector<BigInt>> undecided;
    SearchStats stats;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(workers);

  auto run = [&](Partial& out) {
    try {
      const Interval x = spec.target.enclose(detail::kPrunePrecision);
      for (;;) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= volume) break;
        const std::uint64_t end = std::min(volume, begin + kChunk);
        for (std::uint64_t index = begin; index < end; ++index) {
          std::vector<BigInt> params(axes.size());
          std::uint64_t rest = index;
          for (std::size_t i = axes.size(); i-- > 0;) {
            params[i] = axes[i][rest % axes[i].size()];
            rest /= axes[i].size();
          }
          ++out.stats.examined;
          std::vector<BigInt> kept = params;
          detail::TupleResult r = detail::examine(spec, x, min_mu, std::move(params));
          switch (r.outcome) {
            case detail::Outcome::hit:
              ++out.stats.measured;
              out.hits.push_back({std::move(kept), std::move(*r.report)});
              if (out.hits.size() >= 2 * spec.top_k + 64) detail::keep_top(out.hits, spec.top_k);
              break;
            case detail::Outcome::miss: ++out.stats.measured; break;
            case detail::Outcome::pruned: ++out.stats.pruned; break;
            case detail::Outcome::skipped: ++out.stats.skipped; break;
            case detail::Outcome::undecided:
              ++out.stats.measured;
              out.undecided.push_back(std::move(kept));
              break;
          }
        }
      }
    } catch (...) {
      out.error = std::current_exception();
    }
  };

  if (workers == 1) {
    run(partials[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, std::ref(partials[w]));
  }

  SearchResult result;
  for (Partial& part : partials) {
    if (part.error) std::rethrow_exception(part.error);
    std::move(part.hits.begin(), part.hits.end(), std::back_inserter(result.hits));
    std::move(part.undecided.begin(), part.undecided.end(), std::back_inserter(result.undecided));
    result.stats.examined += part.stats.examined;
    result.stats.pruned += part.stats.pruned;
    result.stats.skipped += part.stats.skipped;
    result.stats.measured += part.stats.measured;
  }
  detail::keep_top(result.hits, spec.top_k);
  std::sort(result.undecided.begin(), result.undecided.end());
  return result;
}

/// p/q minimizing |x - p/q| over 1 <= q <= max_q, ties to the smaller q.
/// x is taken as the exact value of its binary representation.
inline BigRational best_rational(const BigReal& x, unsigned long max_q) {
  if (max_q == 0) throw Error(ErrorKind::invalid_argument, "max_q must be positive");
  const BigRational xr = exact_rational(x);
  std::optional<BigRational> best;
  std::optional<BigRational> best_err;
  for (unsigned long q = 1; q <= max_q; ++q) {
    // p = floor(x q + 1/2)
    const BigRational scaled = xr * BigRational(BigInt(q)) + BigRational(BigInt(1), BigInt(2));
    BigInt p;
    mpz_fdiv_q(p.get_mpz_t(), scaled.num().get_mpz_t(), scaled.den().get_mpz_t());
    BigRational candidate(p, BigInt(q));
    BigRational diff = xr - candidate;
    if (diff.sign() < 0) diff = -diff;
    if (!best_err || diff < *best_err) {
      best = std::move(candidate);
      best_err = std::move(diff);
    }
  }
  return *best;
}

struct ScanHit {
  BigInt p;
  BigInt q;
  BigReal mu;
  Verdict verdict;             // intelligent, or indeterminate at this precision
  bool reduced;                // gcd(p, q) = 1
  bool is_convergent;          // p/q, as written, is a convergent
  bool reduces_to_convergent;  // its lowest-terms form is a convergent
};

/// Every p/q with 1 <= q <= max_q, |pq| != 1 and |x - p/q| <= |x|/|pq|
/// (decided on enclosures; undecidable pairs are kept with an
/// indeterminate verdict). Intelligence forces |qx - p| <= |x|/|p| <= |x|,
/// so only that window of p is tried. Pairs with gcd > 1 are listed only
/// when include_reducible is set. Ordered by q, then p.
inline std::vector<ScanHit> scan_rational_intelligent(const BigReal& x, unsigned long max_q,
                                                      bool include_reducible) {
  if (max_q == 0) throw Error(ErrorKind::invalid_argument, "max_q must be positive");
  if (x.is_zero()) throw Error(ErrorKind::zero_target, "x is zero");
  const Precision prec = x.precision();

  std::set<std::pair<BigInt, BigInt>> conv;
  const CFExpansion ex = cf_expand(x, std::numeric_limits<std::size_t>::max());
  bool covered = false;
  for (const BigRational& c : convergents(ex.cf)) {
    conv.emplace(c.num(), c.den());
    if (c.den() > max_q) {
      covered = true;
      break;
    }
  }
  if (!covered && !ex.exhausted) covered = true;  // expansion terminated exactly
  if (!covered) {
    throw Error(ErrorKind::insufficient_precision, "reliable convergents do not reach max_q");
  }

  const BigRational xr = exact_rational(x);
  const BigRational width = xr.sign() < 0 ? -xr : xr;
  const Interval xi = enclose(x);
  const Precision w = prec + detail::kGuardBits;
  const Interval log_x = ival::log(ival::abs(xi), w);
  std::vector<ScanHit> out;
  for (unsigned long qu = 1; qu <= max_q; ++qu) {
    const BigInt q(qu);
    const BigRational centre = xr * BigRational(q);
    const BigRational lo_r = centre - width, hi_r = centre + width;
    BigInt lo, hi;
    mpz_cdiv_q(lo.get_mpz_t(), lo_r.num().get_mpz_t(), lo_r.den().get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), hi_r.num().get_mpz_t(), hi_r.den().get_mpz_t());
    for (BigInt p = lo; p <= hi; ++p) {
      if (p == 0 || (abs(p) == 1 && qu == 1)) continue;
      const bool reduced = gcd(p, q) == 1;
      if (!reduced && !include_reducible) continue;
      const Verdict v = rational_intelligent(x, p, q);
      if (v == Verdict::naive) continue;
      const BigRational r(p, q);
      const bool in_conv = conv.count({r.num(), r.den()}) > 0;
      BigReal m(prec);
      try {
        const Interval err = ival::abs(ival::sub(xi, Interval::point(r, w), w));
        m = ival::div(ival::sub(log_x, ival::log(err, w), w),
                      ival::log(Interval::point(BigInt(abs(p * q)), w), w), w)
                .mid(prec);
      } catch (const detail::Unresolved&) {
        mpfr_set_inf(m.get(), 1);  // error not separable from zero
      }
      out.push_back({p, q, std::move(m), v, reduced, reduced && in_conv, in_conv});
    }
  }
  return out;
}

}  // namespace diophant
