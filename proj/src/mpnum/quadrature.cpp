#include "superosc/mpnum/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace superosc {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, const BigReal& x, BigReal& value, BigReal& derivative) {
  Precision p = x.precision();
  BigReal prev(1, p);
  BigReal curr = x;
  for (int k = 1; k < n; ++k) {
    BigReal next = ((2 * k + 1) * x * curr - k * prev) / (k + 1);
    prev = std::move(curr);
    curr = std::move(next);
  }
  value = curr;
  derivative = n * (x * curr - prev) / (x * x - 1);
}

GaussLegendreRule build_rule(int n, Precision precision) {
  GaussLegendreRule rule;
  rule.nodes.assign(n, BigReal(precision));
  rule.weights.assign(n, BigReal(precision));
  const BigReal tol = ldexp(BigReal(1, precision), -(precision.bits() - 4));
  BigReal value(precision), derivative(precision);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double guess = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    BigReal x = BigReal::from_double(guess, precision);
    for (int iter = 0; iter < 200; ++iter) {
      legendre(n, x, value, derivative);
      BigReal dx = value / derivative;
      x -= dx;
      if (abs(dx) <= tol) break;
    }
    legendre(n, x, value, derivative);
    BigReal w = 2 / ((1 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = BigReal(precision);
  return rule;
}

BigReal sample(const RealFunction& f, const BigReal& x) {
  BigReal y = f(x);
  if (!y.is_finite()) {
    throw Error(ErrorKind::NonFiniteValue, "integrand is not finite at x = " + x.to_string(20));
  }
  return y;
}

BigReal apply_rule(const RealFunction& f, const BigReal& a, const BigReal& b, int level,
                   Precision p, BigReal& magnitude) {
  auto rule = gauss_legendre_rule(level, p);
  BigReal half = (b - a) / 2;
  BigReal mid = (b + a) / 2;
  BigReal acc(p);
  for (int i = 0; i < level; ++i) {
    BigReal y = sample(f, mid + half * rule->nodes[i]);
    magnitude = max(magnitude, abs(y));
    acc += rule->weights[i] * y;
  }
  return acc * half;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre_rule(int points, Precision precision) {
  if (points < 1) throw Error(ErrorKind::InvalidArgument, "quadrature level must be positive");
  static std::mutex mutex;
  static std::map<std::pair<int, long>, std::shared_ptr<const GaussLegendreRule>> cache;
  const auto key = std::make_pair(points, precision.bits());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussLegendreRule>(build_rule(points, precision));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

QuadratureResult integrate(const RealFunction& f, const BigReal& a, const BigReal& b, int level) {
  return integrate_composite(f, a, b, 1, level);
}

QuadratureResult integrate_composite(const RealFunction& f, const BigReal& a, const BigReal& b,
                                     int panels, int level) {
  if (panels < 1 || level < 1) {
    throw Error(ErrorKind::InvalidArgument, "quadrature needs at least one panel and one node");
  }
  Precision p = max(a.precision(), b.precision());
  const int coarse = level > 1 ? level / 2 : 2;
  BigReal width = (b - a) / panels;
  BigReal fine_sum(p), coarse_sum(p), magnitude(p);
  for (int k = 0; k < panels; ++k) {
    BigReal lo = a + width * k;
    BigReal hi = k + 1 == panels ? b.rounded_to(p) : a + width * (k + 1);
    fine_sum += apply_rule(f, lo, hi, level, p, magnitude);
    coarse_sum += apply_rule(f, lo, hi, coarse, p, magnitude);
  }
  BigReal floor_term = ldexp(abs(b - a) * magnitude, -(p.bits() - 8));
  return {fine_sum, abs(fine_sum - coarse_sum) + floor_term};
}

}  // namespace superosc
