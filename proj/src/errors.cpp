#include "gpbayes/errors.hpp"

#include <sstream>

namespace gpbayes {

namespace {

std::string support_message(long k, long x, double base) {
  std::ostringstream os;
  os.precision(17);
  os << "GP pmf undefined: lambda1 + x*lambda2 = " << base << " <= 0 at k=" << k
     << ", x=" << x;
  return os.str();
}

}  // namespace

SupportError::SupportError(long k, long x, double base)
    : DomainError(support_message(k, x, base)), k_(k), x_(x), base_(base) {}

}  // namespace gpbayes
