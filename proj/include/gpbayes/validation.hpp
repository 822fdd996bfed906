#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gpbayes/approximation.hpp"
#include "gpbayes/gp_model.hpp"
#include "gpbayes/posterior.hpp"

namespace gpbayes {

// Distances between the exact posterior and one discretized approximation on
// a common support k = k_min..k_max. KL is taken from the exact posterior to
// the approximation, KL(exact || approx).
struct ComparisonReport {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double m = 0.0;
  long x = 0;
  ApproxKind kind = ApproxKind::theorem1;
  long k_min = 0;
  long k_max = 0;

  double tv = 0.0;
  double kl = 0.0;
  double sup_abs = 0.0;

  double mean_exact = 0.0;
  double var_exact = 0.0;
  // Moments of the discretized, renormalized approximation.
  double mean_approx = 0.0;
  double var_approx = 0.0;

  double shape = 0.0;
  double scale = 0.0;
  // Approximation mass on the window before renormalization.
  double raw_total = 0.0;

  // Second Lerch term of the normalizer relative to the first; zero at x = 0.
  double dropped_term_ratio = 0.0;
  bool inequality_holds = false;
  double inequality_lhs = 0.0;
  double inequality_rhs = 0.0;
};

// Metric core: fills k window, tv, kl, sup_abs and the moment columns.
// Throws UsageError unless both pmfs share the window and approx is
// renormalized.
ComparisonReport compare(const PosteriorTable& exact, const DiscretePmf& approx);

// Full report for one approximation: discretizes `gamma` on the exact
// table's window, compares, and fills the parameter echo and diagnostics.
ComparisonReport compare_approximation(const ModelParams& params, const PosteriorTable& exact,
                                       const GammaApprox& gamma,
                                       double epsilon_ineq = kDefaultInequalityEpsilon);

// (w - 1) x Phi(z, -(x-1), w x) / Phi(z, -x, w x) with z = exp(-b sqrt(m)).
double dropped_term_ratio(const ModelParams& params, long x);

// |denominator_lerch - direct sum| / direct sum.
double verify_lerch_denominator(const ModelParams& params, long x);

// Right side of the Lerch-Bernoulli expansion
//   Phi(z, -h, v) = h! z^-v ln(1/z)^-(h+1)
//                   - z^-v sum_{r<terms} B_{h+r+1}(v) (ln z)^r / (r! (h+r+1)),
// valid for |ln z| < 2 pi.
long double lerch_bernoulli_expansion(double z, int h, double v, int terms);

// Relative deviation of the expansion (z = exp(-b sqrt(m)), h = x, v = w x)
// from lerch_phi. Requires 1 <= x <= 20 and x + terms <= 60.
double verify_bernoulli_expansion(const ModelParams& params, long x, int terms);

// |(B_{n+1}(upper) - b_{n+1})/(n+1) - power_sum(n, upper)| relative to
// max(|power_sum|, 1).
double verify_power_sum(int n, long upper);

struct SweepPoint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  long x = 0;
};

// One row of a sweep. `report` is empty when the point failed, in which case
// `error` carries the message.
struct SweepRecord {
  std::size_t index = 0;
  SweepPoint point;
  ApproxKind kind = ApproxKind::theorem1;
  std::optional<ComparisonReport> report;
  std::string error;
};

// Two records per grid point (theorem1, then moment_matched), in input order.
// Points are evaluated on up to `threads` workers (0 = hardware concurrency).
std::vector<SweepRecord> sweep(const std::vector<SweepPoint>& grid,
                               double eps_tail = kDefaultEpsTail,
                               double epsilon_ineq = kDefaultInequalityEpsilon,
                               unsigned threads = 0);

// One pinned golden value: a, b, c, x, kind, metric, value.
struct FixtureRecord {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  long x = 0;
  std::string kind;
  std::string metric;
  double value = 0.0;
};

// "a,b,c,x,kind,metric,value" with every real at 12 significant digits.
std::string format_fixture(const FixtureRecord& record);
void write_fixtures(std::ostream& os, const std::vector<FixtureRecord>& records);
// Skips blank lines and lines starting with '#'. Throws UsageError naming the
// line number on malformed input.
std::vector<FixtureRecord> read_fixtures(std::istream& is);

// Rendering shared by the fixtures file and the CLI: %.12g.
std::string format_real(double value);

struct VerificationRow {
  std::string check;
  std::string params;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

enum class VerifySuite { lerch, bernoulli, powersum, all };

// Runs the identity checks over the built-in grid: the two reference
// parameter sets (a=1.5, c=-0.05, b in {0.1, 0.5}) for the Lerch and
// Bernoulli checks, n <= 20 and upper in [1, 30] for power sums.
std::vector<VerificationRow> run_verification(VerifySuite suite);

}  // namespace gpbayes
