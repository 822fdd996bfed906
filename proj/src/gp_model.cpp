#include "gpbayes/gp_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gpbayes/errors.hpp"
#include "gpbayes/special_fn.hpp"

namespace gpbayes {

ModelParams derive_params(double a, double b, double c) {
  std::ostringstream os;
  os.precision(17);
  if (!std::isfinite(a) || !std::isfinite(c)) {
    os << "a and c must be finite (a=" << a << ", c=" << c << ")";
    throw DomainError(os.str());
  }
  if (!(b > 0.0 && b < 1.0)) {
    os << "constraint 0 < b < 1 violated (b=" << b << ")";
    throw DomainError(os.str());
  }
  const double m = std::exp(a * b + c);
  if (!(m > 0.0 && m < 4.0)) {
    os << "constraint |lambda2| < 1 violated: m = exp(ab + c) = " << m
       << " must lie in (0, 4)";
    throw DispersionRangeError(os.str());
  }
  ModelParams p;
  p.a_ = a;
  p.b_ = b;
  p.c_ = c;
  p.m_ = m;
  p.sqrt_m_ = std::sqrt(m);
  p.lambda2_ = 1.0 - p.sqrt_m_;
  p.rate_ = b * p.sqrt_m_;
  p.w_ = 1.0 + (1.0 - p.sqrt_m_) / p.rate_;
  return p;
}

double gp_log_pmf(const ModelParams& params, long k, long x) {
  if (k < 0 || x < 0) {
    throw DomainError("gp_log_pmf requires non-negative k and x");
  }
  if (k == 0) {
    return x == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double lambda1 = params.lambda1(k);
  const double xd = static_cast<double>(x);
  const double base = lambda1 + xd * params.lambda2();
  if (!(base > 0.0)) throw SupportError(k, x, base);
  return std::log(lambda1) + (xd - 1.0) * std::log(base) - base - log_gamma(xd + 1.0);
}

GpMoments gp_moments(const ModelParams& params, long k) {
  const double mean = static_cast<double>(k) * params.b();
  return {mean, mean / params.m()};
}

}  // namespace gpbayes
