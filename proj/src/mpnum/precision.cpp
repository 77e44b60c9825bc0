#include "superosc/mpnum/precision.hpp"

#include <algorithm>
#include <cmath>

#include "superosc/errors.hpp"

namespace superosc {

namespace {

// Leading-order smallest eigenvalue with mu = 1 and delta = mu_delta.
BigReal eigen_asymptote(long n, const BigReal& d) {
  Precision p = d.precision();
  const long k = n - 1;
  BigReal value = pow(d, 2 * k) * ldexp(BigReal(1, p), 2 * k) * pow(factorial(k, p), 6) /
                  (BigReal((2 * k + 1) * (2 * k + 1), p) * pow(factorial(2 * k, p), 4));
  for (long j = -k; j <= k; ++j) value *= (n - j);
  return value;
}

// sqrt(pi) (pi d)^{2N-1} (N-1)^{3/2} / (2^{4N-4} (2N-1))
BigReal energy_bound_asymptote(long n, const BigReal& d) {
  Precision p = d.precision();
  BigReal pi_p = pi(p);
  BigReal nm1(n - 1, p);
  return sqrt(pi_p) * pow(pi_p * d, 2 * n - 1) * nm1 * sqrt(nm1) /
         (ldexp(BigReal(1, p), 4 * n - 4) * (2 * n - 1));
}

}  // namespace

Precision required_precision(long n, const BigReal& mu_delta) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "required_precision: N must be >= 1");
  if (mu_delta.sign() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "required_precision: mu*delta must be positive");
  }
  if (n == 1) return Precision(kPrecisionFloorBits);
  BigReal d = mu_delta.rounded_to(Precision(128));
  BigReal condition = BigReal(n, d.precision()) / eigen_asymptote(n, d);
  double bits = std::max(0.0, log2(condition).to_double());
  BigReal bound = energy_bound_asymptote(n, d);
  if (bound.sign() > 0) bits = std::max(bits, -log2(bound).to_double());
  long total = static_cast<long>(std::ceil(bits)) + kGuardBits;
  return Precision(std::max(total, kPrecisionFloorBits));
}

}  // namespace superosc
