// diophant: command-line front end. Records go to stdout one JSON object per
// line (or an aligned table with --pretty); diagnostics go to stderr.
//
// Exit codes: measure 0/1/2 for Intelligent/Naive/Indeterminate, theorems 1
// when a postcondition fails, 3 for library errors, 4 for usage errors.

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "diophant/diophant.hpp"

namespace {

using namespace diophant;
using records::ordered_json;

constexpr int kExitLibraryError = 3;
constexpr int kExitUsage = 4;

// Buffered so that nothing reaches stdout when a command fails part way.
class Output {
 public:
  void record(ordered_json j) { records_.push_back(std::move(j)); }

  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void flush(std::ostream& os, bool pretty) const {
    if (!pretty) {
      for (const auto& r : records_) os << r.dump() << '\n';
      return;
    }
    std::vector<std::size_t> width;
    for (const auto& cells : rows_) {
      width.resize(std::max(width.size(), cells.size()), 0);
      for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], display_width(cells[i]));
    }
    for (const auto& cells : rows_) {
      std::string line;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        line += cells[i];
        if (i + 1 < cells.size()) line += std::string(width[i] - display_width(cells[i]) + 2, ' ');
      }
      os << line << '\n';
    }
  }

 private:
  // Code points, so that √ and μ count once.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
      return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
  }

  std::vector<ordered_json> records_;
  std::vector<std::vector<std::string>> rows_;
};

std::vector<BigInt> parse_integers(const std::string& text, const char* what) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    BigInt v;
    if (item.empty() || v.set_str(item, 10) != 0) {
      throw CLI::ValidationError(what, "'" + item + "' is not an integer");
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

std::vector<ParamRange> parse_bounds(const std::string& text, std::size_t arity) {
  std::vector<ParamRange> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':', item.front() == '-' ? 1 : 0);
    try {
      if (colon == std::string::npos) {
        const long v = std::stol(item);
        out.push_back({v, v});
      } else {
        out.push_back({std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1))});
      }
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--bounds", "'" + item + "' is not LO:HI");
    }
  }
  if (out.size() == 1 && arity > 1) out.resize(arity, out.front());
  return out;
}

Target target_from(const std::string& text, Precision precision) {
  return Target::parse(text, precision);
}

std::string join(const std::vector<BigInt>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].get_str();
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure of intelligence of approximations of real numbers"};
  app.require_subcommand(1);
  bool pretty = false;
  Precision precision = kDefaultPrecision;
  app.add_flag("--pretty", pretty, "Aligned table instead of JSON lines");
  app.add_option("--precision", precision, "Working precision in bits")
      ->check(CLI::Range(kMinPrecision, kMaxPrecision))
      ->capture_default_str();
  app.fallthrough();

  Output out;
  int status = 0;

  // measure
  auto* measure = app.add_subcommand("measure", "Compute mu (or mu') of one approximation");
  std::string model_text, params_text, target_text;
  bool prime = false;
  measure->add_option("--model", model_text, "Model expression, e.g. a1/a2")->required();
  measure->add_option("--params", params_text, "Comma-separated nonzero integers")->required()->allow_extra_args(false);
  measure->add_option("--target", target_text, "Constant id or decimal number")->required();
  measure->add_flag("--mu-prime", prime, "Use log|M(a)| in the numerator");
  measure->callback([&] {
    const Approximation a(parse_model(model_text), parse_integers(params_text, "--params"),
                          target_from(target_text, precision));
    const MeasureReport r = measure_with_retry(a, precision, prime);
    out.record(records::measure(r, precision));
    out.row({"model", "params", "target", "error", prime ? "mu'" : "mu", "verdict"});
    out.row({r.model, join(r.params), r.target, records::error_text(r.error), records::mu_text(r.mu),
             std::string(to_string(r.verdict))});
    status = r.verdict == Verdict::intelligent ? 0 : (r.verdict == Verdict::naive ? 1 : 2);
  });

  // cf
  auto* cf = app.add_subcommand("cf", "Continued fractions");
  cf->require_subcommand(1);
  auto* cf_expand_cmd = cf->add_subcommand("expand", "Reliable expansion of a target");
  std::size_t term_count = 20;
  cf_expand_cmd->add_option("--target", target_text, "Constant id or decimal number")->required();
  cf_expand_cmd->add_option("--terms", term_count, "Maximum number of terms")->capture_default_str();
  cf_expand_cmd->callback([&] {
    const Target t = target_from(target_text, precision);
    const CFExpansion ex = cf_expand(t.at(precision), term_count);
    out.record(records::cf_expansion(t.label(), ex, precision));
    out.row({"target", "expansion", "reliable"});
    out.row({t.label(), format_cf(ex.cf), std::to_string(ex.reliable_count)});
  });

  auto* cf_conv = cf->add_subcommand("convergents", "Convergents of a CF or of a target");
  std::string cf_text, terms_text;
  cf_conv->add_option("--cf", cf_text, "Finite CF, e.g. \"[3; 7, 15, 1]\"");
  cf_conv->add_option("--target", target_text, "Constant id or decimal number");
  cf_conv->add_option("--terms", term_count, "Number of terms when expanding a target");
  cf_conv->callback([&] {
    FiniteCF f{0};
    if (!cf_text.empty()) {
      auto parsed = parse_cf(cf_text);
      if (!std::holds_alternative<FiniteCF>(parsed)) throw CLI::ValidationError("--cf", "expected a finite CF");
      f = std::get<FiniteCF>(parsed);
    } else if (!target_text.empty()) {
      f = cf_expand(target_from(target_text, precision).at(precision), term_count).cf;
    } else {
      throw CLI::ValidationError("convergents", "give --cf or --target");
    }
    out.record(records::convergent_list(f));
    out.row({"k", "a_k", "p_k/q_k"});
    const auto cs = convergents(f);
    for (std::size_t k = 0; k < cs.size(); ++k) out.row({std::to_string(k), f[k].get_str(), cs[k].to_string()});
  });

  auto* cf_eval = cf->add_subcommand("eval", "Exact value of a finite CF");
  cf_eval->add_option("--terms", terms_text, "Comma-separated partial quotients, e.g. 2,1,1");
  cf_eval->add_option("--cf", cf_text, "Finite CF text");
  cf_eval->callback([&] {
    FiniteCF f{0};
    if (!terms_text.empty()) {
      f = FiniteCF(parse_integers(terms_text, "--terms"));
    } else if (!cf_text.empty()) {
      auto parsed = parse_cf(cf_text);
      if (!std::holds_alternative<FiniteCF>(parsed)) throw CLI::ValidationError("--cf", "expected a finite CF");
      f = std::get<FiniteCF>(parsed);
    } else {
      throw CLI::ValidationError("eval", "give --terms or --cf");
    }
    out.record(records::cf_value(f));
    out.row({"cf", "value"});
    out.row({format_cf(f), eval_finite_cf(f).to_string()});
  });

  auto* cf_closed = cf->add_subcommand("closed-form", "Closed form of a periodic CF");
  std::string pre_text, period_text;
  cf_closed->add_option("--pre", pre_text, "Preperiod terms, e.g. 3,7");
  cf_closed->add_option("--period", period_text, "Period terms, e.g. 16");
  cf_closed->add_option("--cf", cf_text, "Periodic CF text, e.g. \"[3; 7, (16)]\"");
  cf_closed->callback([&] {
    std::optional<PeriodicCF> p;
    if (!period_text.empty()) {
      p.emplace(pre_text.empty() ? std::vector<BigInt>{} : parse_integers(pre_text, "--pre"),
                parse_integers(period_text, "--period"));
    } else if (!cf_text.empty()) {
      auto parsed = parse_cf(cf_text);
      if (!std::holds_alternative<PeriodicCF>(parsed)) throw CLI::ValidationError("--cf", "expected a periodic CF");
      p.emplace(std::get<PeriodicCF>(parsed));
    } else {
      throw CLI::ValidationError("closed-form", "give --period (and --pre) or --cf");
    }
    const ordered_json j = records::closed_form(*p, precision);
    out.row({"cf", "closed form", "nested", "decimal"});
    out.row({j["cf"], j["surd"], j["nested"], j["decimal"]});
    out.record(j);
  });

  // search
  auto* search = app.add_subcommand("search", "Exhaustive search of a parameter box");
  std::string bounds_text;
  std::size_t top_k = 10;
  double min_mu = 1.0;
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
  std::optional<bool> allow_negative;
  search->add_option("--model", model_text, "Model expression")->required();
  search->add_option("--target", target_text, "Constant id or decimal number")->required();
  search->add_option("--bounds", bounds_text, "LO:HI per parameter, comma-separated (one range applies to all)")->required();
  search->add_option("--top-k", top_k, "Number of results kept")->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--min-mu", min_mu, "Threshold on mu")->capture_default_str();
  search->add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--budget", budget, "Maximum number of tuples")->capture_default_str();
  search->add_flag("--allow-negative,!--no-negative", allow_negative,
                   "Also try -v for each bound value (default: off for a1/a2, on otherwise)");
  search->callback([&] {
    SearchSpec spec{parse_model(model_text), target_from(target_text, precision), {}};
    spec.bounds = parse_bounds(bounds_text, spec.model.arity());
    spec.top_k = top_k;
    spec.min_mu = min_mu;
    spec.allow_negative = allow_negative;
    spec.precision = precision;
    spec.workers = workers;
    spec.budget = budget;
    const SearchResult r = exhaustive_search(spec);
    out.row({"rank", "params", "error", "mu", "verdict"});
    for (std::size_t i = 0; i < r.hits.size(); ++i) {
      out.record(records::search_hit(r.hits[i], i + 1, precision));
      const MeasureReport& m = r.hits[i].report;
      out.row({std::to_string(i + 1), join(r.hits[i].params), records::error_text(m.error),
               records::mu_text(m.mu), std::string(to_string(m.verdict))});
    }
    out.record(records::search_summary(r));
    out.row({"examined " + std::to_string(r.stats.examined), "pruned " + std::to_string(r.stats.pruned),
             "skipped " + std::to_string(r.stats.skipped), "undecided " + std::to_string(r.undecided.size())});
  });

  // scan
  auto* scan = app.add_subcommand("scan", "All intelligent rationals p/q with q <= max-q");
  unsigned long max_q = 100;
  bool include_reducible = false;
  scan->add_option("--target", target_text, "Constant id or decimal number")->required();
  scan->add_option("--max-q", max_q, "Largest denominator")->capture_default_str()->check(CLI::PositiveNumber);
  scan->add_flag("--include-reducible", include_reducible, "Also list fractions not in lowest terms");
  scan->callback([&] {
    const BigReal x = target_from(target_text, precision).at(precision);
    out.row({"p/q", "mu", "verdict", "reduced", "convergent", "reduces to convergent"});
    for (const ScanHit& h : scan_rational_intelligent(x, max_q, include_reducible)) {
      out.record(records::scan_hit(h));
      out.row({h.p.get_str() + "/" + h.q.get_str(), records::mu_text(h.mu), std::string(to_string(h.verdict)),
               yes_no(h.reduced), yes_no(h.is_convergent), yes_no(h.reduces_to_convergent)});
    }
  });

  // best-rational
  auto* best = app.add_subcommand("best-rational", "Closest p/q with 1 <= q <= max-q");
  best->add_option("--target", target_text, "Constant id or decimal number")->required();
  best->add_option("--max-q", max_q, "Largest denominator")->required()->check(CLI::PositiveNumber);
  best->callback([&] {
    const Target t = target_from(target_text, precision);
    const BigReal x = t.at(precision);
    const BigRational r = best_rational(x, max_q);
    const BigReal err = abs(x - to_big_real(r, precision));
    out.record(records::best_rational(t.label(), max_q, r, err));
    out.row({"target", "max q", "best", "error"});
    out.row({t.label(), std::to_string(max_q), r.to_string(), records::error_text(err)});
  });

  // families
  auto* families = app.add_subcommand("families", "Approximation families for sqrt(5) and sqrt(2)");
  std::string family;
  unsigned long max_n = 12;
  families->add_option("family", family, "sqrt5 or sqrt2")->required()->check(CLI::IsMember({"sqrt5", "sqrt2"}));
  families->add_option("--max-n", max_n, "Largest index")->capture_default_str();
  families->callback([&] {
    const auto rows = family == "sqrt5" ? sqrt5_family(max_n, precision) : sqrt2_family(max_n, precision);
    out.row({"n", "fraction", "gcd", "measured", "mu", "verdict", "convergent", "identity"});
    for (const FamilyReport& r : rows) {
      out.record(records::family_member(r));
      out.row({std::to_string(r.n), r.p.get_str() + "/" + r.q.get_str(), gcd(r.p, r.q).get_str(),
               r.measured_p.get_str() + "/" + r.measured_q.get_str(), records::mu_text(r.mu),
               std::string(to_string(r.verdict)), yes_no(r.is_convergent),
               r.identity_ok ? r.identity + (*r.identity_ok ? " holds" : " FAILS") : ""});
    }
  });

  // liouville
  auto* liouville = app.add_subcommand("liouville", "mu of truncations of sum 10^(-j!)");
  unsigned long k_max = 9;
  liouville->add_option("--k-max", k_max, "Deepest truncation (at most 12)")->capture_default_str();
  liouville->callback([&] {
    out.row({"k", "denominator", "mu", "verdict"});
    for (const LiouvilleEntry& e : liouville_mu_series(k_max, precision)) {
      out.record(records::liouville(e));
      out.row({std::to_string(e.k), "10^" + e.denominator_digits.get_str(), records::mu_text(e.mu),
               std::string(to_string(e.verdict))});
    }
  });

  // theorems
  auto* theorems = app.add_subcommand("theorems", "Non-convergent intelligent approximants from CF rules");
  std::size_t theorem_max_n = 7;
  theorems->add_option("--target", target_text, "Constant id or decimal number")->required();
  theorems->add_option("--max-n", theorem_max_n, "Largest index n")->capture_default_str();
  theorems->callback([&] {
    const Target t = target_from(target_text, precision);
    const BigReal x = t.at(precision);
    std::size_t total = 0, failures = 0;
    out.row({"theorem", "n", "cf", "value", "verdict", "convergent", "ok"});
    for (int which : {1, 2}) {
      const auto cands = which == 1 ? theorem1_candidates(x, theorem_max_n) : theorem2_candidates(x, theorem_max_n);
      for (const TheoremCandidate& c : cands) {
        const bool ok = c.verdict == Verdict::intelligent && !c.is_convergent;
        ++total;
        if (!ok) ++failures;
        out.record(records::theorem_candidate(which, c));
        out.row({std::to_string(which), std::to_string(c.n), format_cf(c.cf), c.value.to_string(),
                 std::string(to_string(c.verdict)), yes_no(c.is_convergent), ok ? "ok" : "FAIL"});
      }
    }
    ordered_json summary = records::begin("theorems_summary");
    summary["target"] = t.label();
    summary["max_n"] = theorem_max_n;
    summary["candidates"] = total;
    summary["failures"] = failures;
    out.record(std::move(summary));
    if (failures > 0) {
      std::cerr << "theorems: " << failures << " candidate(s) violate a postcondition\n";
      status = 1;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLibraryError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLibraryError;
  }
  out.flush(std::cout, pretty);
  return status;
}
