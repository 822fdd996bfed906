#pragma once

namespace gpbayes {

// Known constants (a, b, c) of the Generalized Poisson model
//
//   P(X = x | lambda1, lambda2) = lambda1 (lambda1 + x lambda2)^(x-1)
//                                 exp(-(lambda1 + x lambda2)) / x!
//
// with lambda2 = 1 - sqrt(m), lambda1 = k b sqrt(m) and m = exp(a b + c).
// Instances only come out of derive_params(), which enforces 0 < b < 1 and
// |lambda2| < 1.
class ModelParams {
 public:
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double m() const { return m_; }
  double sqrt_m() const { return sqrt_m_; }
  double lambda2() const { return lambda2_; }
  // b * sqrt(m): the exponential rate of the posterior in k.
  double rate() const { return rate_; }
  // 1 + (1 - sqrt(m)) / (b sqrt(m)). x * w is the base k + g(x) at k = x.
  double w() const { return w_; }

  // g(x) = ((1 - sqrt(m)) / (b sqrt(m))) x.
  double g(long x) const { return (w_ - 1.0) * static_cast<double>(x); }

  // lambda1 = k b sqrt(m).
  double lambda1(long k) const { return static_cast<double>(k) * rate_; }

 private:
  friend ModelParams derive_params(double a, double b, double c);
  ModelParams() = default;

  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double m_ = 0.0;
  double sqrt_m_ = 0.0;
  double lambda2_ = 0.0;
  double rate_ = 0.0;
  double w_ = 0.0;
};

struct GpMoments {
  double mean = 0.0;
  double variance = 0.0;
};

ModelParams derive_params(double a, double b, double c);

// ln P(X = x | k), evaluated entirely in log space. P(X = 0 | k = 0) = 1 and
// P(X = x | k = 0) = 0 for x >= 1 (the lambda1 -> 0 limit), so the latter
// returns -infinity.
double gp_log_pmf(const ModelParams& params, long k, long x);

// E(X | k) = k b and Var(X | k) = k b / m.
GpMoments gp_moments(const ModelParams& params, long k);

}  // namespace gpbayes
