#pragma once

#include <string_view>
#include <vector>

#include "gpbayes/gp_model.hpp"

namespace gpbayes {

inline constexpr double kDefaultInequalityEpsilon = 0.01;

enum class ApproxKind { theorem1, moment_matched };

std::string_view to_string(ApproxKind kind);

// Gamma distribution with shape alpha and scale beta (mean alpha*beta,
// variance alpha*beta^2), tagged by how the parameters were obtained.
struct GammaApprox {
  double shape = 0.0;
  double scale = 0.0;
  ApproxKind kind = ApproxKind::theorem1;

  double mean() const { return shape * scale; }
  double variance() const { return shape * scale * scale; }
};

// pmf over k = k_min .. k_min + probs.size() - 1.
struct DiscretePmf {
  long k_min = 0;
  std::vector<double> probs;
  bool renormalized = false;
  // Mass of the window before any renormalization.
  double raw_total = 0.0;

  long k_max() const { return k_min + static_cast<long>(probs.size()) - 1; }
};

struct InequalityResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// shape x + 1, scale 1 / (b sqrt(m)).
GammaApprox theorem1_gamma(const ModelParams& params, long x);

// shape mu^2 / var, scale var / mu.
GammaApprox moment_matched_gamma(double mu_post, double var_post);

// Integrates the gamma density over [k - 1/2, k + 1/2] for every k in the
// window (the k = 0 window starts at 0), via regularized incomplete gamma
// differences.
DiscretePmf discretize_gamma(const GammaApprox& g, long k_min, long k_max, bool renormalize);

// floor((1 - sqrt(m) + b sqrt(m)) x) < exp((ln x! + ln epsilon) / (x + 1)).
InequalityResult inequality_check(const ModelParams& params, long x,
                                  double epsilon = kDefaultInequalityEpsilon);

}  // namespace gpbayes
