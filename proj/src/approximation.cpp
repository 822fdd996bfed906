#include "gpbayes/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpbayes/errors.hpp"
#include "gpbayes/special_fn.hpp"

namespace gpbayes {

namespace {

// Mass of the gamma(shape, 1) law on [lo, hi]. Differences are taken on the
// upper tail Q once both ends are past the bulk, where P is close to one.
double window_mass(double shape, double lo, double hi) {
  if (lo >= shape + 1.0) {
    return std::max(0.0, reg_upper_inc_gamma(shape, lo) - reg_upper_inc_gamma(shape, hi));
  }
  return std::max(0.0, reg_lower_inc_gamma(shape, hi) - reg_lower_inc_gamma(shape, lo));
}

}  // namespace

std::string_view to_string(ApproxKind kind) {
  switch (kind) {
    case ApproxKind::theorem1:
      return "theorem1";
    case ApproxKind::moment_matched:
      return "moment_matched";
  }
  return "unknown";
}

GammaApprox theorem1_gamma(const ModelParams& params, long x) {
  if (x < 0) throw DomainError("observed count x must be non-negative");
  return {static_cast<double>(x) + 1.0, 1.0 / params.rate(), ApproxKind::theorem1};
}

GammaApprox moment_matched_gamma(double mu_post, double var_post) {
  if (!(mu_post > 0.0) || !(var_post > 0.0) || !std::isfinite(mu_post) ||
      !std::isfinite(var_post)) {
    std::ostringstream os;
    os.precision(17);
    os << "moment matching requires positive finite moments (mu=" << mu_post
       << ", var=" << var_post << ")";
    throw DomainError(os.str());
  }
  return {mu_post * mu_post / var_post, var_post / mu_post, ApproxKind::moment_matched};
}

DiscretePmf discretize_gamma(const GammaApprox& g, long k_min, long k_max, bool renormalize) {
  if (k_min < 0 || k_max < k_min) {
    throw DomainError("discretize_gamma requires 0 <= k_min <= k_max");
  }
  if (!(g.shape > 0.0) || !(g.scale > 0.0)) {
    throw DomainError("gamma shape and scale must be positive");
  }
  DiscretePmf pmf;
  pmf.k_min = k_min;
  pmf.probs.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  long double total = 0.0L;
  for (long k = k_min; k <= k_max; ++k) {
    const double lo = std::max(0.0, (static_cast<double>(k) - 0.5) / g.scale);
    const double hi = (static_cast<double>(k) + 0.5) / g.scale;
    const double mass = window_mass(g.shape, lo, hi);
    pmf.probs.push_back(mass);
    total += mass;
  }
  pmf.raw_total = static_cast<double>(total);
  if (renormalize && total > 0.0L) {
    for (double& p : pmf.probs) p = static_cast<double>(p / total);
    pmf.renormalized = true;
  }
  return pmf;
}

InequalityResult inequality_check(const ModelParams& params, long x, double epsilon) {
  if (x < 1) throw DomainError("inequality_check requires x >= 1");
  if (!(epsilon > 0.0)) throw DomainError("inequality_check requires epsilon > 0");
  const double xd = static_cast<double>(x);
  InequalityResult r;
  r.lhs = std::floor((1.0 - params.sqrt_m() + params.rate()) * xd);
  r.rhs = std::exp((log_gamma(xd + 1.0) + std::log(epsilon)) / (xd + 1.0));
  r.holds = r.lhs < r.rhs;
  return r;
}

}  // namespace gpbayes
