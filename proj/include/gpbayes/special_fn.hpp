#pragma once

#include <cstddef>
#include <vector>

namespace gpbayes {

// Largest Bernoulli order the double-precision recurrence is trusted for.
inline constexpr int kMaxBernoulliOrder = 60;

// Iteration cap shared by the incomplete gamma series and continued fraction.
inline constexpr int kIncGammaMaxIter = 500;

// Bernoulli numbers b_0..b_max_order with the b_1 = -1/2 convention, so that
// B_n(0) = b_n.
struct BernoulliTable {
  int max_order = 0;
  std::vector<double> values;

  double operator[](std::size_t n) const { return values[n]; }
};

// ln Gamma(u) for u > 0.
double log_gamma(double u);

// Regularized lower incomplete gamma P(u, v) = gamma(u, v) / Gamma(u).
double reg_lower_inc_gamma(double u, double v);

// Regularized upper incomplete gamma Q(u, v) = 1 - P(u, v), computed without
// the cancellation of 1 - P when P is close to one.
double reg_upper_inc_gamma(double u, double v);

BernoulliTable bernoulli_numbers(int max_order);

// B_n(x) = sum_{j=0}^{n} C(n, j) b_{n-j} x^j.
double bernoulli_polynomial(int n, double x);

// Long-double variant used by the identity checks, where the alternating
// terms of B_n(x) cancel heavily.
long double bernoulli_polynomial_ld(int n, long double x);

// sum_{r=0}^{upper-1} r^n, with 0^0 = 1.
double power_sum(int n, long upper);

// Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (a + k)^s for
// 0 < z < 1, integer s <= 0 and a > 0. Summation stops once a rigorous
// geometric bound on the remaining tail drops below eps times the partial sum.
double lerch_phi(double z, int s, double a, double eps);
long double lerch_phi_ld(double z, int s, double a, double eps);

}  // namespace gpbayes
