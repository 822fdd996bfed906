#include "gpbayes/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gpbayes/errors.hpp"

namespace gpbayes {

namespace {

constexpr long kLerchMaxTerms = 10'000'000;

std::string describe_inc_gamma(const char* what, double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (u=" << u << ", v=" << v << ")";
  return os.str();
}

void check_inc_gamma_args(double u, double v) {
  if (!(u > 0.0) || !std::isfinite(u) || std::isnan(v) || v < 0.0) {
    throw DomainError(
        describe_inc_gamma("incomplete gamma requires u > 0 finite and v >= 0", u, v));
  }
}

// exp(-v + u ln v - ln Gamma(u)), the common prefactor of both expansions.
long double inc_gamma_prefactor(long double u, long double v) {
  return std::exp(-v + u * std::log(v) - boost::math::lgamma(u));
}

// Power series for P(u, v); converges quickly for v < u + 1.
long double lower_series(double u, double v) {
  const long double eps = std::numeric_limits<long double>::epsilon();
  long double ap = u;
  long double term = 1.0L / u;
  long double sum = term;
  for (int n = 0; n < kIncGammaMaxIter; ++n) {
    ap += 1.0L;
    term *= static_cast<long double>(v) / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * eps) {
      return sum * inc_gamma_prefactor(u, v);
    }
  }
  throw NumericError(describe_inc_gamma("incomplete gamma series did not converge", u, v));
}

// Modified Lentz evaluation of the continued fraction for Q(u, v); converges
// quickly for v >= u + 1.
long double upper_fraction(double u, double v) {
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double tiny = std::numeric_limits<long double>::min() / eps;
  long double b = static_cast<long double>(v) + 1.0L - u;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i <= kIncGammaMaxIter; ++i) {
    const long double an = -static_cast<long double>(i) * (i - static_cast<long double>(u));
    b += 2.0L;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < eps) {
      return h * inc_gamma_prefactor(u, v);
    }
  }
  throw NumericError(
      describe_inc_gamma("incomplete gamma continued fraction did not converge", u, v));
}

// Bernoulli numbers up to kMaxBernoulliOrder in long double, built once.
// Even orders come from Boost's table; the classical recurrence loses most
// significant digits by order 60.
const std::array<long double, kMaxBernoulliOrder + 1>& bernoulli_ld() {
  static const auto table = [] {
    std::array<long double, kMaxBernoulliOrder + 1> b{};
    b[0] = 1.0L;
    b[1] = -0.5L;
    for (int n = 2; n <= kMaxBernoulliOrder; n += 2) {
      b[n] = boost::math::bernoulli_b2n<long double>(n / 2);
    }
    return b;
  }();
  return table;
}

long double binomial_ld(int n, int k) {
  long double c = 1.0L;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

}  // namespace

double log_gamma(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    std::ostringstream os;
    os << "log_gamma requires a finite positive argument, got " << u;
    throw DomainError(os.str());
  }
  return boost::math::lgamma(u);
}

double reg_lower_inc_gamma(double u, double v) {
  check_inc_gamma_args(u, v);
  if (v == 0.0) return 0.0;
  if (std::isinf(v)) return 1.0;
  if (v < u + 1.0) return static_cast<double>(lower_series(u, v));
  return static_cast<double>(1.0L - upper_fraction(u, v));
}

double reg_upper_inc_gamma(double u, double v) {
  check_inc_gamma_args(u, v);
  if (v == 0.0) return 1.0;
  if (std::isinf(v)) return 0.0;
  if (v < u + 1.0) return static_cast<double>(1.0L - lower_series(u, v));
  return static_cast<double>(upper_fraction(u, v));
}

BernoulliTable bernoulli_numbers(int max_order) {
  if (max_order < 0 || max_order > kMaxBernoulliOrder) {
    throw UnsupportedOrderError("Bernoulli numbers are supported for orders 0.." +
                                std::to_string(kMaxBernoulliOrder) + ", requested " +
                                std::to_string(max_order));
  }
  const auto& b = bernoulli_ld();
  BernoulliTable table;
  table.max_order = max_order;
  table.values.reserve(max_order + 1);
  for (int n = 0; n <= max_order; ++n) table.values.push_back(static_cast<double>(b[n]));
  return table;
}

long double bernoulli_polynomial_ld(int n, long double x) {
  if (n < 0 || n > kMaxBernoulliOrder) {
    throw UnsupportedOrderError("Bernoulli polynomial order must be in 0.." +
                                std::to_string(kMaxBernoulliOrder) + ", requested " +
                                std::to_string(n));
  }
  const auto& b = bernoulli_ld();
  long double sum = 0.0L;
  long double xj = 1.0L;
  for (int j = 0; j <= n; ++j) {
    sum += binomial_ld(n, j) * b[n - j] * xj;
    xj *= x;
  }
  return sum;
}

double bernoulli_polynomial(int n, double x) {
  return static_cast<double>(bernoulli_polynomial_ld(n, x));
}

double power_sum(int n, long upper) {
  long double sum = 0.0L;
  for (long r = 0; r < upper; ++r) {
    sum += (n == 0) ? 1.0L : std::pow(static_cast<long double>(r), n);
  }
  return static_cast<double>(sum);
}

long double lerch_phi_ld(double z, int s, double a, double eps) {
  if (!(z > 0.0 && z < 1.0)) {
    throw DomainError("lerch_phi requires 0 < z < 1, got z=" + std::to_string(z));
  }
  if (s > 0) {
    throw DomainError("lerch_phi supports only s <= 0, got s=" + std::to_string(s));
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("lerch_phi requires a > 0, got a=" + std::to_string(a));
  }
  if (!(eps > 0.0)) {
    throw DomainError("lerch_phi requires eps > 0");
  }
  const int h = -s;
  const long double zl = z;
  const long double r = (1.0L + zl) / 2.0L;
  long double zk = 1.0L;
  long double sum = 0.0L;
  for (long k = 0; k < kLerchMaxTerms; ++k) {
    const long double base = static_cast<long double>(a) + k;
    const long double term = zk * std::pow(base, h);
    sum += term;
    // term ratios z*((base+1)/base)^h decrease in k, so the current one
    // bounds every later ratio.
    const long double ratio = zl * std::pow((base + 1.0L) / base, h);
    if (ratio < r) {
      const long double tail = term * ratio / (1.0L - ratio);
      if (tail < eps * sum) return sum;
    }
    zk *= zl;
  }
  std::ostringstream os;
  os << "lerch_phi did not converge within " << kLerchMaxTerms << " terms (z=" << z
     << ", s=" << s << ", a=" << a << ")";
  throw NumericError(os.str());
}

double lerch_phi(double z, int s, double a, double eps) {
  return static_cast<double>(lerch_phi_ld(z, s, a, eps));
}

}  // namespace gpbayes
