#include "gpbayes/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "gpbayes/errors.hpp"
#include "gpbayes/special_fn.hpp"

namespace gpbayes {

namespace {

constexpr double kKlFloor = 1e-300;
constexpr double kIdentityEps = 1e-15;

struct PmfMoments {
  double mean = 0.0;
  double variance = 0.0;
};

PmfMoments window_moments(long k_min, const std::vector<double>& probs) {
  long double mass = 0.0L;
  long double first = 0.0L;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    mass += probs[i];
    first += static_cast<long double>(k_min + static_cast<long>(i)) * probs[i];
  }
  if (mass <= 0.0L) return {};
  const long double mean = first / mass;
  long double second = 0.0L;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const long double d = (k_min + static_cast<long>(i)) - mean;
    second += d * d * probs[i];
  }
  return {static_cast<double>(mean), static_cast<double>(second / mass)};
}

std::string describe(double a, double b, double c, long x) {
  return "a=" + format_real(a) + " b=" + format_real(b) + " c=" + format_real(c) +
         " x=" + std::to_string(x);
}

const ModelParams& reference_set(int which) {
  static const ModelParams small_b = derive_params(1.5, 0.1, -0.05);
  static const ModelParams large_b = derive_params(1.5, 0.5, -0.05);
  return which == 0 ? small_b : large_b;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ComparisonReport compare(const PosteriorTable& exact, const DiscretePmf& approx) {
  if (approx.k_min != exact.k_min || approx.probs.size() != exact.probs.size()) {
    throw UsageError("compare requires the approximation on the exact posterior's window k=" +
                     std::to_string(exact.k_min) + ".." + std::to_string(exact.k_max));
  }
  if (!approx.renormalized) {
    throw UsageError("compare requires a renormalized approximation");
  }
  ComparisonReport r;
  r.x = exact.x;
  r.k_min = exact.k_min;
  r.k_max = exact.k_max;
  r.raw_total = approx.raw_total;

  long double l1 = 0.0L;
  long double kl = 0.0L;
  double sup = 0.0;
  for (std::size_t i = 0; i < exact.probs.size(); ++i) {
    const double p = exact.probs[i];
    const double q = approx.probs[i];
    const double diff = std::fabs(p - q);
    l1 += diff;
    sup = std::max(sup, diff);
    if (p > 0.0) kl += p * std::log(p / std::max(q, kKlFloor));
  }
  r.tv = std::min(1.0, static_cast<double>(l1 / 2.0L));
  r.kl = std::max(0.0, static_cast<double>(kl));
  r.sup_abs = sup;

  const PmfMoments me = window_moments(exact.k_min, exact.probs);
  const PmfMoments ma = window_moments(approx.k_min, approx.probs);
  r.mean_exact = me.mean;
  r.var_exact = me.variance;
  r.mean_approx = ma.mean;
  r.var_approx = ma.variance;
  return r;
}

ComparisonReport compare_approximation(const ModelParams& params, const PosteriorTable& exact,
                                       const GammaApprox& gamma, double epsilon_ineq) {
  const DiscretePmf pmf = discretize_gamma(gamma, exact.k_min, exact.k_max, true);
  ComparisonReport r = compare(exact, pmf);
  r.a = params.a();
  r.b = params.b();
  r.c = params.c();
  r.m = params.m();
  r.kind = gamma.kind;
  r.shape = gamma.shape;
  r.scale = gamma.scale;
  r.dropped_term_ratio = dropped_term_ratio(params, exact.x);
  if (exact.x >= 1) {
    const InequalityResult ineq = inequality_check(params, exact.x, epsilon_ineq);
    r.inequality_holds = ineq.holds;
    r.inequality_lhs = ineq.lhs;
    r.inequality_rhs = ineq.rhs;
  } else {
    // x = 0: floor(0) = 0 against exp(ln epsilon) = epsilon.
    r.inequality_holds = 0.0 < epsilon_ineq;
    r.inequality_lhs = 0.0;
    r.inequality_rhs = epsilon_ineq;
  }
  return r;
}

double dropped_term_ratio(const ModelParams& params, long x) {
  if (x < 1) return 0.0;
  const double coeff = (params.w() - 1.0) * static_cast<double>(x);
  if (coeff == 0.0) return 0.0;
  const double z = std::exp(-params.rate());
  const double v = params.w() * static_cast<double>(x);
  const long double lead = lerch_phi_ld(z, static_cast<int>(-x), v, kIdentityEps);
  const long double second = lerch_phi_ld(z, static_cast<int>(-(x - 1)), v, kIdentityEps);
  return static_cast<double>(coeff * second / lead);
}

double verify_lerch_denominator(const ModelParams& params, long x) {
  const long double lerch = denominator_lerch(params, x, kIdentityEps);
  const long double direct = denominator_direct(params, x, 1e-14);
  return static_cast<double>(std::fabs(lerch - direct) / direct);
}

long double lerch_bernoulli_expansion(double z, int h, double v, int terms) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("expansion requires 0 < z < 1");
  if (h < 0) throw DomainError("expansion requires h >= 0");
  if (terms < 1) throw DomainError("expansion requires at least one term");
  if (h + terms > kMaxBernoulliOrder) {
    throw UnsupportedOrderError("expansion needs Bernoulli order " + std::to_string(h + terms) +
                                " > " + std::to_string(kMaxBernoulliOrder));
  }
  const long double log_z = std::log(static_cast<long double>(z));
  if (std::fabs(log_z) >= 2.0L * std::numbers::pi_v<long double>) {
    throw DomainError("expansion requires |ln z| < 2 pi");
  }
  const long double z_pow_neg_v = std::exp(-static_cast<long double>(v) * log_z);
  long double h_factorial = 1.0L;
  for (int i = 2; i <= h; ++i) h_factorial *= i;
  const long double leading = h_factorial * z_pow_neg_v * std::pow(-log_z, -(h + 1));

  long double series = 0.0L;
  long double log_z_pow = 1.0L;
  long double r_factorial = 1.0L;
  for (int r = 0; r < terms; ++r) {
    if (r > 0) {
      log_z_pow *= log_z;
      r_factorial *= r;
    }
    const int order = h + r + 1;
    series += bernoulli_polynomial_ld(order, v) * log_z_pow / (r_factorial * order);
  }
  return leading - z_pow_neg_v * series;
}

double verify_bernoulli_expansion(const ModelParams& params, long x, int terms) {
  if (x < 1 || x > 20) throw DomainError("verify_bernoulli_expansion requires 1 <= x <= 20");
  if (terms < 1) throw DomainError("verify_bernoulli_expansion requires terms >= 1");
  if (x + terms > kMaxBernoulliOrder) {
    throw UnsupportedOrderError("Bernoulli order " + std::to_string(x + terms) + " exceeds " +
                                std::to_string(kMaxBernoulliOrder));
  }
  const double z = std::exp(-params.rate());
  const double v = params.w() * static_cast<double>(x);
  const long double series = lerch_bernoulli_expansion(z, static_cast<int>(x), v, terms);
  const long double direct = lerch_phi_ld(z, static_cast<int>(-x), v, kIdentityEps);
  return static_cast<double>(std::fabs(series - direct) / std::fabs(direct));
}

double verify_power_sum(int n, long upper) {
  const long double b_next = bernoulli_polynomial_ld(n + 1, 0.0L);
  const long double lhs =
      (bernoulli_polynomial_ld(n + 1, static_cast<long double>(upper)) - b_next) / (n + 1);
  const long double rhs = power_sum(n, upper);
  return static_cast<double>(std::fabs(lhs - rhs) / std::max(std::fabs(rhs), 1.0L));
}

std::vector<SweepRecord> sweep(const std::vector<SweepPoint>& grid, double eps_tail,
                               double epsilon_ineq, unsigned threads) {
  constexpr ApproxKind kKinds[] = {ApproxKind::theorem1, ApproxKind::moment_matched};
  std::vector<SweepRecord> out(grid.size() * 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      SweepRecord& rec = out[2 * i + j];
      rec.index = i;
      rec.point = grid[i];
      rec.kind = kKinds[j];
    }
  }

  auto run_point = [&](std::size_t i) {
    const SweepPoint& pt = grid[i];
    try {
      const ModelParams params = derive_params(pt.a, pt.b, pt.c);
      const PosteriorTable table = exact_posterior(params, pt.x, eps_tail);
      const PosteriorMoments mom = posterior_moments(table);
      out[2 * i].report =
          compare_approximation(params, table, theorem1_gamma(params, pt.x), epsilon_ineq);
      out[2 * i + 1].report = compare_approximation(
          params, table, moment_matched_gamma(mom.mean, mom.variance), epsilon_ineq);
    } catch (const std::exception& e) {
      for (std::size_t j = 0; j < 2; ++j) {
        out[2 * i + j].report.reset();
        out[2 * i + j].error = e.what();
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_point(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) run_point(i);
    });
  }
  pool.clear();
  return out;
}

std::string format_fixture(const FixtureRecord& r) {
  return format_real(r.a) + "," + format_real(r.b) + "," + format_real(r.c) + "," +
         std::to_string(r.x) + "," + r.kind + "," + r.metric + "," + format_real(r.value);
}

void write_fixtures(std::ostream& os, const std::vector<FixtureRecord>& records) {
  os << "# a,b,c,x,kind,metric,value\n";
  for (const auto& r : records) os << format_fixture(r) << '\n';
}

std::vector<FixtureRecord> read_fixtures(std::istream& is) {
  std::vector<FixtureRecord> records;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw UsageError("fixtures line " + std::to_string(lineno) + ": expected 7 fields");
    }
    try {
      std::size_t pos = 0;
      FixtureRecord r;
      r.a = std::stod(fields[0]);
      r.b = std::stod(fields[1]);
      r.c = std::stod(fields[2]);
      r.x = std::stol(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument("x");
      r.kind = fields[4];
      r.metric = fields[5];
      r.value = std::stod(fields[6]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw UsageError("fixtures line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return records;
}

std::vector<VerificationRow> run_verification(VerifySuite suite) {
  std::vector<VerificationRow> rows;
  const bool all = suite == VerifySuite::all;

  if (all || suite == VerifySuite::lerch) {
    constexpr double kTol = 1e-8;
    for (int set = 0; set < 2; ++set) {
      const ModelParams& p = reference_set(set);
      for (long x = 1; x <= 15; ++x) {
        const double err = verify_lerch_denominator(p, x);
        rows.push_back({"lerch_denominator", describe(p.a(), p.b(), p.c(), x), err, kTol,
                        err < kTol});
      }
    }
  }

  if (all || suite == VerifySuite::bernoulli) {
    constexpr int kFewTerms = 2;
    constexpr int kManyTerms = 16;
    constexpr double kTol = 1e-10;
    for (int set = 0; set < 2; ++set) {
      const ModelParams& p = reference_set(set);
      for (long x : {1L, 2L, 3L, 5L, 8L}) {
        const std::string where = describe(p.a(), p.b(), p.c(), x);
        const double few = verify_bernoulli_expansion(p, x, kFewTerms);
        const double many = verify_bernoulli_expansion(p, x, kManyTerms);
        rows.push_back({"bernoulli_expansion", where + " terms=" + std::to_string(kManyTerms),
                        many, kTol, many < kTol});
        // More terms must not move the expansion away from the direct sum.
        rows.push_back({"bernoulli_convergence",
                        where + " terms=" + std::to_string(kFewTerms) + "->" +
                            std::to_string(kManyTerms),
                        many, few, many <= few});
      }
    }
  }

  if (all || suite == VerifySuite::powersum) {
    constexpr double kTol = 1e-9;
    for (int n = 0; n <= 20; ++n) {
      for (long upper = 1; upper <= 30; ++upper) {
        const double err = verify_power_sum(n, upper);
        rows.push_back({"power_sum",
                        "n=" + std::to_string(n) + " upper=" + std::to_string(upper), err, kTol,
                        err < kTol});
      }
    }
  }
  return rows;
}

}  // namespace gpbayes
