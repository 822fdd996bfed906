#include "gpbayes/posterior.hpp"

#include <cmath>
#include <sstream>

#include "gpbayes/errors.hpp"
#include "gpbayes/special_fn.hpp"

namespace gpbayes {

namespace {

void check_posterior_args(const ModelParams& params, long x) {
  if (x < 0) throw DomainError("observed count x must be non-negative");
  if (x > 0 && !(params.w() > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "posterior requires w = 1 + (1 - sqrt(m))/(b sqrt(m)) > 0 for x > 0, got w="
       << params.w();
    throw DomainError(os.str());
  }
}

// ln of the unnormalized likelihood term at k (k >= x).
class LogWeight {
 public:
  LogWeight(const ModelParams& params, long x)
      : x_(x), rate_(params.rate()), g_(params.g(x)) {}

  double operator()(long k) const {
    const double kd = static_cast<double>(k);
    if (x_ == 0) return -rate_ * kd;
    return std::log(kd) + static_cast<double>(x_ - 1) * std::log(kd + g_) - rate_ * kd;
  }

 private:
  long x_;
  double rate_;
  double g_;
};

// Normalizing over the truncated support inflates every entry by up to the
// omitted relative mass, so truncation aims well below the requested bound.
constexpr double kTailSafety = 1e-4;

}  // namespace

PosteriorTable exact_posterior(const ModelParams& params, long x, double eps_tail) {
  if (!(eps_tail > 0.0 && eps_tail <= 1e-3)) {
    throw DomainError("eps_tail must lie in (0, 1e-3]");
  }
  check_posterior_args(params, x);

  const LogWeight log_weight(params, x);
  PosteriorTable table;
  table.x = x;
  table.k_min = x;

  // Running log-sum-exp: total = exp(shift) * scaled.
  long double shift = log_weight(x);
  long double scaled = 0.0L;
  double current = log_weight(x);
  double bound = 0.0;
  for (long k = x;; ++k) {
    if (k - x >= kPosteriorMaxTerms) {
      std::ostringstream os;
      os << "posterior truncation exceeded " << kPosteriorMaxTerms
         << " terms; achieved tail bound " << bound << " (requested " << eps_tail << ")";
      throw NumericError(os.str());
    }
    table.log_weights.push_back(current);
    if (current > shift) {
      scaled = scaled * std::exp(shift - current) + 1.0L;
      shift = current;
    } else {
      scaled += std::exp(static_cast<long double>(current) - shift);
    }

    const double next = log_weight(k + 1);
    // The log ratio of consecutive terms decreases in k (k + g(x) > 0 on the
    // support), so once it is negative it bounds every later ratio and the
    // tail is dominated by a geometric series.
    const double log_ratio = next - current;
    if (log_ratio < 0.0) {
      const long double ratio = std::exp(static_cast<long double>(log_ratio));
      const long double log_total = shift + std::log(scaled);
      const long double rel_term = std::exp(current - log_total);
      const long double rel_tail = rel_term * ratio / (1.0L - ratio);
      bound = static_cast<double>(rel_tail);
      if (rel_tail < eps_tail * kTailSafety) {
        table.k_max = k;
        table.tail_bound = bound;
        table.log_normalizer = static_cast<double>(log_total);
        break;
      }
    }
    current = next;
  }

  table.probs.reserve(table.log_weights.size());
  const long double log_total = table.log_normalizer;
  for (double lw : table.log_weights) {
    table.probs.push_back(static_cast<double>(std::exp(lw - log_total)));
  }
  return table;
}

PosteriorMoments posterior_moments(const PosteriorTable& table) {
  if (table.tail_bound > 1e-6) {
    std::ostringstream os;
    os << "posterior tail bound " << table.tail_bound
       << " exceeds 1e-6; recompute the table with a smaller eps_tail";
    throw PrecisionError(os.str());
  }
  if (table.probs.empty()) throw UsageError("posterior table is empty");
  long double mass = 0.0L;
  long double first = 0.0L;
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    const long double k = table.k_min + static_cast<long>(i);
    mass += table.probs[i];
    first += k * table.probs[i];
  }
  const long double mean = first / mass;
  long double second = 0.0L;
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    const long double d = (table.k_min + static_cast<long>(i)) - mean;
    second += d * d * table.probs[i];
  }
  return {static_cast<double>(mean), static_cast<double>(second / mass)};
}

long double denominator_lerch(const ModelParams& params, long x, double eps) {
  if (x < 1) throw DomainError("denominator_lerch requires x >= 1");
  const double a = params.w() * static_cast<double>(x);
  if (!(a > 0.0)) {
    throw DomainError("denominator_lerch requires w x > 0");
  }
  const double z = std::exp(-params.rate());
  const long double zx = std::exp(-static_cast<long double>(params.rate()) * x);
  const long double lead = lerch_phi_ld(z, static_cast<int>(-x), a, eps);
  const long double coeff = (static_cast<long double>(params.w()) - 1.0L) * x;
  if (coeff == 0.0L) return zx * lead;
  const long double second = lerch_phi_ld(z, static_cast<int>(-(x - 1)), a, eps);
  return zx * lead - coeff * zx * second;
}

long double denominator_direct(const ModelParams& params, long x, double eps) {
  const PosteriorTable table = exact_posterior(params, x, eps);
  return std::exp(static_cast<long double>(table.log_normalizer));
}

}  // namespace gpbayes
