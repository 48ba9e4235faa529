#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diophant/contfrac.hpp"
#include "diophant/families.hpp"
#include "diophant/measure.hpp"
#include "diophant/search.hpp"

// One JSON object per output line. Integers of unbounded size are strings;
// mu carries 6 decimals and errors 3 significant digits.
namespace diophant::records {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline ordered_json begin(std::string_view kind) {
  ordered_json j;
  j["kind"] = kind;
  j["schema_version"] = kSchemaVersion;
  return j;
}

inline std::string mu_text(const BigReal& mu) { return mu.to_fixed(6); }
inline std::string error_text(const BigReal& err) { return err.to_scientific(3); }

inline ordered_json strings(const std::vector<BigInt>& values) {
  ordered_json out = ordered_json::array();
  for (const BigInt& v : values) out.push_back(v.get_str());
  return out;
}

inline ordered_json measure(const MeasureReport& r, Precision precision,
                            std::string_view kind = "measure") {
  ordered_json j = begin(kind);
  j["model"] = r.model;
  j["params"] = strings(r.params);
  j["target"] = r.target;
  j["measure"] = r.prime ? "mu_prime" : "mu";
  j["value"] = r.value.to_scientific(20);
  j["error"] = error_text(r.error);
  j["size"] = r.size.get_str();
  j["log_size"] = r.log_size.to_fixed(6);
  j["mu"] = mu_text(r.mu);
  j["verdict"] = to_string(r.verdict);
  j["precision"] = precision;
  return j;
}

inline ordered_json search_hit(const SearchHit& h, std::size_t rank, Precision precision) {
  ordered_json j = measure(h.report, precision, "search_hit");
  j["rank"] = rank;
  return j;
}

inline ordered_json search_summary(const SearchResult& r) {
  ordered_json j = begin("search_summary");
  j["hits"] = r.hits.size();
  j["tuples_examined"] = r.stats.examined;
  j["tuples_pruned"] = r.stats.pruned;
  j["tuples_skipped"] = r.stats.skipped;
  j["tuples_measured"] = r.stats.measured;
  ordered_json undecided = ordered_json::array();
  for (const auto& params : r.undecided) undecided.push_back(strings(params));
  j["undecided"] = std::move(undecided);
  return j;
}

inline ordered_json cf_expansion(const std::string& target, const CFExpansion& ex,
                                 Precision precision) {
  ordered_json j = begin("cf_expansion");
  j["target"] = target;
  j["terms"] = strings(ex.cf.terms());
  j["text"] = format_cf(ex.cf);
  j["reliable_count"] = ex.reliable_count;
  j["precision"] = precision;
  return j;
}

inline ordered_json convergent_list(const FiniteCF& cf) {
  ordered_json j = begin("convergents");
  j["cf"] = format_cf(cf);
  ordered_json list = ordered_json::array();
  for (const BigRational& c : convergents(cf)) list.push_back(c.to_string());
  j["convergents"] = std::move(list);
  return j;
}

inline ordered_json cf_value(const FiniteCF& cf) {
  ordered_json j = begin("cf_value");
  j["cf"] = format_cf(cf);
  j["value"] = eval_finite_cf(cf).to_string();
  return j;
}

inline ordered_json closed_form(const PeriodicCF& pcf, Precision precision) {
  const QuadraticSurd s = periodic_to_surd(pcf);
  ordered_json j = begin("closed_form");
  j["cf"] = format_cf(pcf);
  j["P"] = s.P().get_str();
  j["Q"] = s.Q().get_str();
  j["D"] = s.D().get_str();
  j["R"] = s.R().get_str();
  j["surd"] = s.to_string();
  j["surd_ascii"] = s.to_string(true);
  j["nested"] = nested_form(pcf);
  j["decimal"] = surd_eval(s, precision).to_fixed(30);
  return j;
}

inline ordered_json theorem_candidate(int theorem, const TheoremCandidate& c) {
  ordered_json j = begin("theorem_candidate");
  j["theorem"] = theorem;
  j["n"] = c.n;
  j["cf"] = format_cf(c.cf);
  j["value"] = c.value.to_string();
  j["verdict"] = to_string(c.verdict);
  j["is_convergent"] = c.is_convergent;
  j["postconditions_hold"] = c.verdict == Verdict::intelligent && !c.is_convergent;
  return j;
}

inline ordered_json family_member(const FamilyReport& r) {
  ordered_json j = begin("family_member");
  j["family"] = r.family;
  j["n"] = r.n;
  j["fraction"] = r.p.get_str() + "/" + r.q.get_str();
  j["reduced"] = r.reduced;
  j["gcd"] = gcd(r.p, r.q).get_str();
  j["measured"] = r.measured_p.get_str() + "/" + r.measured_q.get_str();
  j["mu"] = mu_text(r.mu);
  j["verdict"] = to_string(r.verdict);
  j["is_convergent"] = r.is_convergent;
  if (r.identity_ok) {
    j["identity"] = r.identity;
    j["identity_holds"] = *r.identity_ok;
  }
  return j;
}

inline ordered_json liouville(const LiouvilleEntry& e) {
  ordered_json j = begin("liouville");
  j["k"] = e.k;
  j["denominator"] = "10^" + e.denominator_digits.get_str();
  j["mu"] = mu_text(e.mu);
  j["verdict"] = to_string(e.verdict);
  return j;
}

inline ordered_json scan_hit(const ScanHit& h) {
  ordered_json j = begin("scan_hit");
  j["p"] = h.p.get_str();
  j["q"] = h.q.get_str();
  j["mu"] = mu_text(h.mu);
  j["verdict"] = to_string(h.verdict);
  j["reduced"] = h.reduced;
  j["is_convergent"] = h.is_convergent;
  j["reduces_to_convergent"] = h.reduces_to_convergent;
  return j;
}

inline ordered_json best_rational(const std::string& target, unsigned long max_q,
                                  const BigRational& r, const BigReal& error) {
  ordered_json j = begin("best_rational");
  j["target"] = target;
  j["max_q"] = max_q;
  j["value"] = r.to_string();
  j["error"] = error_text(error);
  return j;
}

}  // namespace diophant::records
