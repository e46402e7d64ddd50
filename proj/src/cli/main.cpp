// Command line front end.  All the substance lives in suites.cpp; this file
// parses arguments into a RunConfig, renders reports as text or JSON, and
// maps outcomes to exit codes: 0 all checks pass, 1 at least one check
// failed, 2 the request itself was invalid.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "gkv/errors.hpp"
#include "suites.hpp"

using nlohmann::ordered_json;

namespace {

// GKV_WORKERS caps the OpenMP team size.  Results are identical for any
// worker count, only the wall time moves.
void apply_worker_env() {
#ifdef _OPENMP
  if (const char* w = std::getenv("GKV_WORKERS")) {
    char* end = nullptr;
    long n = std::strtol(w, &end, 10);
    if (end != w && *end == '\0' && n > 0)
      omp_set_num_threads(static_cast<int>(n));
  }
#endif
}

ordered_json verify_to_json(const std::vector<gkv::cli::SuiteReport>& reports,
                            bool timings) {
  ordered_json out;
  out["suites"] = ordered_json::array();
  for (const gkv::cli::SuiteReport& s : reports) {
    ordered_json js;
    js["suite"] = s.suite;
    js["checks"] = ordered_json::array();
    for (const gkv::cli::CheckResult& c : s.checks) {
      ordered_json jc;
      jc["check_id"] = c.check_id;
      jc["paper_anchor"] = c.paper_anchor;
      jc["status"] = c.status;
      jc["detail"] = c.detail;
      js["checks"].push_back(std::move(jc));
    }
    if (timings) js["wall_ms"] = s.wall_ms;
    out["suites"].push_back(std::move(js));
  }
  return out;
}

void print_verify_text(const std::vector<gkv::cli::SuiteReport>& reports,
                       bool timings) {
  for (const gkv::cli::SuiteReport& s : reports) {
    std::printf("suite %s\n", s.suite.c_str());
    int passed = 0, failed = 0, skipped = 0;
    for (const gkv::cli::CheckResult& c : s.checks) {
      std::printf("  %-4s  %-24s [%s]  %s\n", c.status.c_str(),
                  c.check_id.c_str(), c.paper_anchor.c_str(),
                  c.detail.c_str());
      if (c.status == "pass")
        ++passed;
      else if (c.status == "fail")
        ++failed;
      else
        ++skipped;
    }
    std::printf("  %d passed, %d failed, %d skipped", passed, failed, skipped);
    if (timings) std::printf("  (%.1f ms)", s.wall_ms);
    std::printf("\n");
  }
}

ordered_json periods_to_json(const gkv::cli::PeriodsResult& r) {
  ordered_json out;
  out["curve"] = r.curve;
  out["conductor"] = r.conductor;
  ordered_json jp;
  jp["omega1"] = r.periods.omega1;
  jp["omega2_im"] = r.periods.omega2_im;
  jp["eta1"] = r.periods.eta1;
  jp["eta2_im"] = r.periods.eta2_im;
  jp["legendre_residual"] = r.periods.legendre_residual;
  out["periods"] = std::move(jp);
  out["twists"] = ordered_json::array();
  for (const gkv::cli::TwistRow& t : r.twists) {
    ordered_json jt;
    jt["d"] = t.d;
    jt["sign_pred"] = t.sign_pred;
    jt["L"] = t.L;
    jt["note"] = t.note;
    out["twists"].push_back(std::move(jt));
  }
  out["reports"] = ordered_json::array();
  for (const gkv::cli::ReportRow& rr : r.reports) {
    ordered_json jr;
    jr["name"] = rr.name;
    jr["raw"] = rr.raw;
    if (rr.has_detected) {
      ordered_json jd;
      jd["num"] = rr.num;
      jd["den"] = rr.den;
      jr["detected"] = std::move(jd);
    } else {
      jr["detected"] = nullptr;
    }
    jr["residual"] = rr.residual;
    out["reports"].push_back(std::move(jr));
  }
  return out;
}

void print_periods_text(const gkv::cli::PeriodsResult& r) {
  std::printf("curve %s  conductor %ld\n", r.curve.c_str(), r.conductor);
  std::printf("omega1 %.15g  omega2_im %.15g\n", r.periods.omega1,
              r.periods.omega2_im);
  std::printf("eta1 %.15g  eta2_im %.15g  legendre residual %.2e\n",
              r.periods.eta1, r.periods.eta2_im, r.periods.legendre_residual);
  for (const gkv::cli::TwistRow& t : r.twists) {
    std::printf("twist d %+ld  predicted sign %+d  L %.15g%s%s\n", t.d,
                t.sign_pred, t.L, t.note.empty() ? "" : "  ",
                t.note.c_str());
  }
  for (const gkv::cli::ReportRow& rr : r.reports) {
    if (rr.has_detected)
      std::printf("report %s  raw %.15g  detected %ld/%ld  residual %.2e\n",
                  rr.name.c_str(), rr.raw, rr.num, rr.den, rr.residual);
    else
      std::printf("report %s  raw %.15g  detected none  (%s)\n",
                  rr.name.c_str(), rr.raw, rr.detail.c_str());
  }
}

int do_verify(const gkv::cli::RunConfig& cfg) {
  std::vector<gkv::cli::SuiteReport> reports = gkv::cli::run_verify(cfg);
  if (cfg.format == "json")
    std::printf("%s\n", verify_to_json(reports, cfg.timings).dump(2).c_str());
  else
    print_verify_text(reports, cfg.timings);

  std::vector<std::string> anchors;
  for (const gkv::cli::SuiteReport& s : reports)
    for (const std::string& a : s.failing_anchors())
      if (std::find(anchors.begin(), anchors.end(), a) == anchors.end())
        anchors.push_back(a);
  if (anchors.empty()) return 0;
  std::string joined;
  for (const std::string& a : anchors) {
    if (!joined.empty()) joined += ", ";
    joined += a;
  }
  std::fprintf(stderr, "failed checks at: %s\n", joined.c_str());
  return 1;
}

int do_periods(const gkv::cli::RunConfig& cfg) {
  gkv::cli::PeriodsResult r = gkv::cli::run_periods(cfg);
  if (cfg.format == "json")
    std::printf("%s\n", periods_to_json(r).dump(2).c_str());
  else
    print_periods_text(r);
  if (r.all_pass()) return 0;
  for (const gkv::cli::ReportRow& rr : r.reports)
    if (rr.status == "fail")
      std::fprintf(stderr, "report %s failed: %s\n", rr.name.c_str(),
                   rr.detail.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numeric verification of the period identities"};
  app.require_subcommand(1);
  gkv::cli::RunConfig cfg;
  std::string verify_format = "text";
  std::string curve_format = "json";

  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", cfg.suite,
                     "gk-real, gk-complex, quat-invariants, gauss, whittaker, "
                     "appendix-a or all")
      ->required();
  verify->add_option("--k", cfg.weights, "weights for gk-real");
  verify->add_option("--p", cfg.primes, "primes for gauss and whittaker");
  verify->add_option("--n", cfg.cond_exp, "largest conductor exponent");
  verify->add_option("--trials", cfg.trials,
                     "random characters or vectors per case");
  verify->add_option("--seed", cfg.seed, "base seed for randomized checks");
  verify->add_option("--samples", cfg.samples, "appendix samples per seed");
  verify->add_option("--nseeds", cfg.nseeds, "appendix seed count");
  verify->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_flag("--timings", cfg.timings, "report wall times per suite");

  CLI::App* periods =
      app.add_subcommand("periods", "periods and rationality reports");
  CLI::App* oda =
      app.add_subcommand("oda", "rationality of a twist pair against both "
                                "period lines");
  for (CLI::App* sub : {periods, oda}) {
    sub->add_option("--curve", cfg.curve, "coefficients a1,a2,a3,a4,a6")
        ->required();
    sub->add_option("--conductor", cfg.conductor,
                    "level, omit for table lookup");
    sub->add_option("--terms", cfg.terms, "series length override");
    sub->add_option("--dplus", cfg.dplus, "positive twist discriminant");
    sub->add_option("--dminus", cfg.dminus, "negative twist discriminant");
    sub->add_option("--max-den", cfg.max_den,
                    "largest denominator to search");
    sub->add_flag("--auto-twists", cfg.auto_twists,
                  "search for the negative twist");
    sub->add_option("--format", curve_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  }
  periods->add_option("--report", cfg.report, "bsd or all")
      ->check(CLI::IsMember({"bsd", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  apply_worker_env();
  try {
    if (verify->parsed()) {
      cfg.format = verify_format;
      return do_verify(cfg);
    }
    cfg.format = curve_format;
    if (oda->parsed()) cfg.report = "all";
    return do_periods(cfg);
  } catch (const gkv::BadInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gkv::BadModel& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gkv::NotCoprime& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gkv::HypothesisViolated& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const gkv::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
