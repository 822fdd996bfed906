#pragma once

#include <vector>

#include "gpbayes/gp_model.hpp"

namespace gpbayes {

inline constexpr double kDefaultEpsTail = 1e-10;
inline constexpr long kPosteriorMaxTerms = 10'000'000;

// Exact posterior P(k | X = x) under the improper uniform prior on k,
// supported on k = x..k_max. Entry i of log_weights/probs belongs to
// k = k_min + i.
struct PosteriorTable {
  long x = 0;
  long k_min = 0;
  long k_max = 0;
  // Unnormalized ln of k (k + g(x))^(x-1) exp(-b sqrt(m) k); -b sqrt(m) k at x = 0.
  std::vector<double> log_weights;
  std::vector<double> probs;
  // Upper bound on the normalized mass beyond k_max.
  double tail_bound = 0.0;
  // ln of the truncated normalizing sum over k = k_min..k_max.
  double log_normalizer = 0.0;

  std::size_t size() const { return probs.size(); }
};

struct PosteriorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// eps_tail must lie in (0, 1e-3]. Requires params.w() > 0 when x > 0.
PosteriorTable exact_posterior(const ModelParams& params, long x,
                               double eps_tail = kDefaultEpsTail);

// Refuses tables whose tail bound exceeds 1e-6.
PosteriorMoments posterior_moments(const PosteriorTable& table);

// The posterior normalizer sum_{j>=x} j (j + g(x))^(x-1) exp(-b sqrt(m) j)
// written through the Lerch transcendent:
//   z^x Phi(z, -x, w x) - (w - 1) x z^x Phi(z, -(x - 1), w x),  z = exp(-b sqrt(m)).
long double denominator_lerch(const ModelParams& params, long x, double eps);

// The same normalizer summed term by term (the posterior engine's own sum).
long double denominator_direct(const ModelParams& params, long x, double eps);

}  // namespace gpbayes
