// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "diophant/diophant.hpp"
#include "golden.hpp"

using namespace diophant;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      ok = false;
      why << what;
    }
  }
};

bool close_bits(const BigReal& a, const BigReal& b, long bits) {
  const BigReal d = abs(a - b);
  return d.is_zero() || mpfr_get_exp(d.get()) <= -bits;
}

BigRational frac(long p, long q) { return BigRational(BigInt(p), BigInt(q)); }

std::vector<BigInt> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

Approximation approx(const golden::Row& row) {
  return Approximation(parse_model(row.model), ints(row.params), Target::named(row.target));
}

Check golden_mu() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& row : golden::rows()) {
    const MeasureReport r = mu(approx(row), 256);
    const double printed = std::stod(row.printed_mu);
    const double got = r.mu.to_double();
    c.require(std::fabs(got - printed) <= golden::mu_tolerance(row.printed_mu),
              std::string(row.label) + " mu " + r.mu.to_fixed(4) + " vs " + row.printed_mu);
    const Verdict want = printed >= 1 ? Verdict::intelligent : Verdict::naive;
    c.require(r.verdict == want, std::string(row.label) + " verdict " + std::string(to_string(r.verdict)));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  if (c.ok) c.why << golden::rows().size() << " rows in " << secs << " s";
  return c;
}

Check golden_errors() {
  Check c;
  for (const auto& row : golden::rows()) {
    const MeasureReport r = mu(approx(row), 256);
    c.require(golden::error_matches(r.error.to_double(), row.printed_error),
              std::string(row.label) + " error " + r.error.to_scientific(2));
  }
  if (c.ok) c.why << golden::rows().size() << " error magnitudes";
  return c;
}

Check cf_engine() {
  Check c;
  c.require(cf_expand(constant("pi", 256), 6).cf == FiniteCF({3, 7, 15, 1, 292, 1}), "pi prefix");
  c.require(cf_expand(constant("e", 256), 7).cf == FiniteCF({2, 1, 2, 1, 1, 4, 1}), "e prefix");
  const QuadraticSurd pi_surd = periodic_to_surd(PeriodicCF(ints({3, 7}), ints({16})));
  c.require(pi_surd.to_string() == "(193 + √65)/64", "closed form " + pi_surd.to_string());
  const Precision p = 512;
  const QuadraticSurd e_surd = periodic_to_surd(PeriodicCF(ints({2, 1, 2, 1, 1}), ints({4, 1, 1, 6, 1, 1})));
  const BigReal independent = BigReal(3, p) - sqrt(BigReal(5, p) / BigReal(7, p)) / BigReal(3, p);
  c.require(close_bits(surd_eval(e_surd, p), independent, 240), "e closed form beyond 2^-240");
  if (c.ok) c.why << "prefixes, " << pi_surd.to_string() << ", " << e_surd.to_string();
  return c;
}

Check theorem_audit() {
  Check c;
  std::size_t total = 0;
  const auto audit = [&](const char* id, std::size_t max_n) {
    const BigReal x = constant(id, 1024);
    for (int rule = 1; rule <= 2; ++rule) {
      const auto cands = rule == 1 ? theorem1_candidates(x, max_n) : theorem2_candidates(x, max_n);
      for (const auto& t : cands) {
        ++total;
        c.require(t.verdict == Verdict::intelligent && !t.is_convergent,
                  std::string(id) + " theorem " + std::to_string(rule) + " " + format_cf(t.cf));
      }
    }
  };
  audit("pi", 7);
  audit("e", 20);
  audit("sqrt2", 20);
  audit("sqrt5", 20);
  const BigReal e = constant("e", 256);
  const auto e1 = theorem1_candidates(e, 20), e2 = theorem2_candidates(e, 20);
  c.require(e1.size() == 1 && e1[0].value == frac(5, 2), "e theorem 1 not exactly {5/2}");
  c.require(e2.size() == 1 && e2[0].value == frac(5, 2), "e theorem 2 not exactly {5/2}");
  if (c.ok) c.why << total << " candidates audited";
  return c;
}

Check properties() {
  Check c;
  // Rational criterion: three equivalent conditions on random cases.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> alpha_dist(0.1, 10.0);
  std::uniform_real_distribution<double> log_q(0.0, std::log(1000.0));
  std::uniform_int_distribution<long> shift(-1, 1);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    BigReal alpha(256);
    mpfr_set_d(alpha.get(), alpha_dist(rng), MPFR_RNDN);
    const long q = static_cast<long>(std::exp(log_q(rng)));
    long p = std::lround(alpha.to_double() * static_cast<double>(q)) + shift(rng);
    if (p == 0) p = 1;
    if (std::labs(p * q) == 1) p = 2;
    const Verdict v5 = rational_intelligent(alpha, p, q);
    const Verdict v6 = rational_intelligent_reciprocal(alpha, p, q);
    const Verdict vm = mu(Approximation(rational_model(), ints({p, q}), Target::value(alpha)), 256).verdict;
    if (v5 == Verdict::indeterminate || v5 != v6 || v5 != vm) ++mismatches;
  }
  c.require(mismatches == 0, "rational criterion mismatches: " + std::to_string(mismatches));

  // Determinant identity and convergent bound on the fixtures.
  for (std::string_view id : kConstantIds) {
    const BigReal x = constant(id, 1024);
    const BigRational xr = exact_rational(x);
    const auto pairs = convergent_pairs(cf_expand(x, 150).cf);
    for (std::size_t k = 0; k + 1 < pairs.size(); ++k) {
      const auto& [p0, q0] = pairs[k];
      const auto& [p1, q1] = pairs[k + 1];
      const BigInt det = p1 * q0 - p0 * q1;
      c.require(det == (k % 2 == 0 ? 1 : -1), std::string(id) + " determinant k=" + std::to_string(k + 1));
      BigRational err = xr - BigRational(p0, q0);
      if (err.sign() < 0) err = -err;
      c.require(err <= BigRational(BigInt(1), BigInt(q0 * q1)), std::string(id) + " bound k=" + std::to_string(k));
    }
  }

  // Search: prune soundness and worker determinism on boxes of at most 10^5 tuples.
  SearchSpec spec{parse_model("sqrt(a1)+sqrt(a2)"), Target::named("pi"), {{1, 80}, {1, 80}}, 20};
  spec.allow_negative = true;
  std::mutex lock;
  std::vector<std::vector<BigInt>> pruned;
  spec.on_pruned = [&](const std::vector<BigInt>& a) {
    std::lock_guard guard(lock);
    pruned.push_back(a);
  };
  std::vector<std::vector<BigInt>> first;
  for (unsigned w : {1u, 2u, 8u}) {
    spec.workers = w;
    pruned.clear();
    const SearchResult r = exhaustive_search(spec);
    std::vector<std::vector<BigInt>> got;
    for (const auto& h : r.hits) got.push_back(h.params);
    if (w == 1) first = got;
    c.require(got == first, "worker count " + std::to_string(w) + " changed results");
  }
  int unsound = 0;
  for (const auto& a : pruned) {
    try {
      if (mu(Approximation(spec.model, a, spec.target), 256).verdict != Verdict::naive) ++unsound;
    } catch (const Error&) {
    }
  }
  c.require(!pruned.empty() && unsound == 0, "unsound prunes: " + std::to_string(unsound));

  // Base independence to 2 ulps.
  for (const auto& row : golden::rows()) {
    const Approximation a = approx(row);
    const BigReal natural = mu(a, 256).mu;
    BigReal two_ulps(256);
    mpfr_set_ui_2exp(two_ulps.get(), 2, mpfr_get_exp(natural.get()) - 256, MPFR_RNDN);
    for (LogBase b : {LogBase::decimal, LogBase::binary}) {
      c.require(compare(abs(mu(a, 256, b).mu - natural), two_ulps) <= 0, std::string(row.label) + " base");
    }
  }
  if (c.ok) c.why << "10^4 rational criterion cases, " << kConstantIds.size() << " CF fixtures, " << pruned.size()
                  << " pruned tuples verified";
  return c;
}

Check oracles() {
  Check c;
  c.require(best_rational(constant("pi", 256), 7) == frac(22, 7), "best_rational(pi, 7)");
  c.require(best_rational(constant("pi", 256), 113) == frac(355, 113), "best_rational(pi, 113)");
  std::set<std::string> nonconv;
  bool f38 = false, f386 = false;
  for (const ScanHit& h : scan_rational_intelligent(constant("e", 256), 150, true)) {
    const std::string f = h.p.get_str() + "/" + h.q.get_str();
    if (h.reduced && !h.is_convergent) nonconv.insert(f);
    if (f == "38/14") f38 = !h.reduced && h.reduces_to_convergent;
    if (f == "386/142") f386 = !h.reduced && h.reduces_to_convergent;
  }
  c.require(nonconv == std::set<std::string>{"5/2"}, "e scan non-convergents differ from {5/2}");
  c.require(f38 && f386, "38/14 or 386/142 not flagged reducible to a convergent");
  if (c.ok) c.why << "22/7, 355/113, e scan to q = 150";
  return c;
}

Check liouville() {
  Check c;
  const auto series = liouville_mu_series(9);
  for (std::size_t k = 4; k <= 9; ++k) {
    c.require(compare(series[k - 1].mu, series[k - 2].mu) > 0, "mu not increasing at k=" + std::to_string(k));
  }
  c.require(series[8].mu.to_double() > 4.5, "mu(9) = " + series[8].mu.to_fixed(4));
  BigReal worst(0, 256);
  for (const ScanHit& h : scan_rational_intelligent(constant("sqrt2", 256), 2000, true)) {
    if (h.q >= 2 && compare(h.mu, worst) > 0) worst = h.mu;
  }
  c.require(worst.to_double() < 6.0, "sqrt2 scan max mu " + worst.to_fixed(4));
  if (c.ok) c.why << "mu(9) = " << series[8].mu.to_fixed(6) << ", sqrt2 max mu " << worst.to_fixed(6);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"1 golden mu table", golden_mu},
      {"2 error magnitudes", golden_errors},
      {"3 continued fraction engine", cf_engine},
      {"4 theorem generators self-audit", theorem_audit},
      {"5 property suites", properties},
      {"6 oracle equivalences", oracles},
      {"7 Liouville and sqrt2 scan", liouville},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    all = all && c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << name << ": " << c.why.str() << '\n';
  }
  return all ? 0 : 1;
}
