#pragma once

#include <string>
#include <vector>

#include "gkv/periods.hpp"

// Verification suites behind the command line driver.  Each check bundles one
// verifiable statement into a pass/fail row carrying the anchor id of the
// statement it tests; suites group the rows the way the subcommands expose
// them.  The acceptance runner reuses the same check functions with its own
// stopwatches, so everything here is deterministic for a fixed seed and does
// its own exception containment.

namespace gkv::cli {

struct CheckResult {
  std::string check_id;
  std::string paper_anchor;
  std::string status;  // "pass", "fail", "skip"
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double wall_ms = 0;

  bool all_pass() const;
  std::vector<std::string> failing_anchors() const;
};

// Everything the subcommands can configure, validated before dispatch.
// Defaults match the acceptance grid: weights {2,4,6,8}, Gauss primes
// {3,5,7,13} with conductor exponents up to 3 and 10 characters each,
// Whittaker primes {5,7}, 100 appendix samples over 3 seeds.
struct RunConfig {
  std::string suite;            // verify target, one of the six or "all"
  std::vector<int> weights;     // --k
  std::vector<long> primes;     // --p
  int cond_exp = 3;             // --n, largest conductor exponent
  int trials = 10;              // random characters per (p, exponent)
  unsigned seed = 1;            // --seed
  int samples = 100;            // appendix draws per seed
  int nseeds = 3;               // appendix seed count

  std::string curve;            // a1,a2,a3,a4,a6
  long conductor = 0;           // 0 means table lookup
  std::string report = "bsd";   // bsd | all
  long terms = 0;               // 0 means suggested_terms
  bool auto_twists = false;
  long dplus = 0;               // 0 means automatic
  long dminus = 0;
  long max_den = 1000;

  std::string format = "text";  // text | json
  bool timings = false;
};

// Individual checks.  Anchors name the statement ids the checks pin down.
CheckResult check_real_cocycle(int k);
CheckResult check_real_cup(int k);
CheckResult check_complex_recurrence(unsigned seed, int trials);
CheckResult check_complex_psi();
CheckResult check_complex_delta_s();
CheckResult check_complex_pv();
CheckResult check_complex_cup3();
std::vector<CheckResult> check_quat_algebra(const std::string& tag, long b);
CheckResult check_gauss(const std::vector<long>& primes, int max_exp,
                        int trials, unsigned seed);
CheckResult check_whittaker(const std::vector<long>& primes);
CheckResult check_periods_bsd();
CheckResult check_oda_ratio();
CheckResult check_root_numbers();
CheckResult check_appendix_dets(int samples, unsigned seed, int nseeds);
CheckResult check_appendix_conjugation();

// Suite assembly for the verify subcommand.  BadInput on an unknown suite
// name or invalid parameters; "all" expands to every suite at the default
// grids.
std::vector<SuiteReport> run_verify(const RunConfig& config);

// The periods pipeline behind the periods and oda subcommands, results in
// the shape of the JSON report schema.
struct TwistRow {
  long d = 0;
  int sign_pred = 0;
  double L = 0;
  std::string note;
};

struct ReportRow {
  std::string name;
  double raw = 0;
  bool has_detected = false;
  long num = 0;
  long den = 1;
  double residual = 0;
  std::string status = "pass";
  std::string detail;
};

struct PeriodsResult {
  std::string curve;  // normalized a1,a2,a3,a4,a6
  long conductor = 0;
  PeriodPair periods{};
  std::vector<TwistRow> twists;
  std::vector<ReportRow> reports;

  bool all_pass() const;
};

PeriodsResult run_periods(const RunConfig& config);

}  // namespace gkv::cli
