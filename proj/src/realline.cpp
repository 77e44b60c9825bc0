#include "superosc/realline.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace superosc::realline {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": lengths " + std::to_string(a) +
                                                  " and " + std::to_string(b) + " differ");
  }
}

}  // namespace

PointSet PointSet::create(RealVector times, RealVector amplitudes) {
  check_lengths(times.size(), amplitudes.size(), "point set");
  if (times.empty()) throw Error(ErrorKind::InvalidArgument, "point set must not be empty");

  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  RealVector t, a;
  t.reserve(order.size());
  a.reserve(order.size());
  for (auto i : order) {
    if (!times[i].is_finite() || !amplitudes[i].is_finite()) {
      throw Error(ErrorKind::NonFiniteValue, "point " + std::to_string(i) + " is not finite");
    }
    t.push_back(std::move(times[i]));
    a.push_back(std::move(amplitudes[i]));
  }

  Precision p = precision_of(t);
  BigReal scale(p);
  for (const auto& x : t) scale = max(scale, abs(x));
  BigReal guard = ldexp(scale, -p.bits() / 4);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] - t[i - 1] <= guard) {
      throw Error(ErrorKind::DuplicateTimes, "prescribed times " + t[i - 1].to_string(12) + " and " +
                                                 t[i].to_string(12) + " coincide");
    }
  }
  return PointSet(std::move(t), std::move(a));
}

PointSet PointSet::equispaced(std::size_t n, const BigReal& delta, const BigReal& offset,
                              RealVector amplitudes) {
  RealVector times;
  times.reserve(n);
  for (std::size_t i = 0; i < n; ++i) times.push_back((BigReal(static_cast<long>(i), delta.precision()) - offset) * delta);
  return create(std::move(times), std::move(amplitudes));
}

Precision PointSet::precision() const { return max(precision_of(times_), precision_of(amplitudes_)); }

BigReal PointSet::max_spacing() const {
  BigReal gap(precision());
  for (std::size_t i = 1; i < times_.size(); ++i) gap = max(gap, times_[i] - times_[i - 1]);
  return gap;
}

Bandlimit Bandlimit::create(BigReal mu) {
  if (!(mu.sign() > 0)) throw Error(ErrorKind::InvalidArgument, "bandlimit mu must be positive");
  return Bandlimit{std::move(mu)};
}

BigReal sinc(const BigReal& x) {
  const Precision p = x.precision();
  BigReal ax = abs(x);
  // Below 2^{-bits/4}, 1 - x^2/6 + x^4/120 is exact to working precision.
  if (ax < ldexp(BigReal(1, p), -p.bits() / 4)) {
    BigReal x2 = x * x;
    return 1 - x2 / 6 + x2 * x2 / 120;
  }
  return sin(x) / x;
}

RealMatrix prolate_matrix(std::span<const BigReal> times, const Bandlimit& bandlimit) {
  const std::size_t n = times.size();
  Precision p = max(precision_of(times), bandlimit.mu.precision());
  RealMatrix rho(n, n, BigReal(p));
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = bandlimit.mu.rounded_to(p);
    for (std::size_t j = 0; j < i; ++j) {
      BigReal v = bandlimit.mu * sinc(bandlimit.mu * (times[i] - times[j]));
      rho(j, i) = v;
      rho(i, j) = std::move(v);
    }
  }
  return rho;
}

RealMatrix prolate_matrix(const PointSet& points, const Bandlimit& bandlimit) {
  return prolate_matrix(points.times(), bandlimit);
}

RealLineSignal min_energy_signal(const PointSet& points, const Bandlimit& bandlimit) {
  RealMatrix rho = prolate_matrix(points, bandlimit);
  RealVector x = solve_spd(rho, points.amplitudes());
  return RealLineSignal{bandlimit, points.times(), std::move(x), points.amplitudes()};
}

BigReal evaluate(const RealLineSignal& signal, const BigReal& t) {
  const BigReal& mu = signal.bandlimit.mu;
  Precision p = max(precision_of(signal.coefficients), t.precision());
  BigReal acc(p);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    acc += signal.coefficients[i] * sinc(mu * (t - signal.nodes[i]));
  }
  return mu * acc;
}

RealVector sample(const RealLineSignal& signal, std::span<const BigReal> grid, Execution execution) {
  return parallel_map<BigReal>(
      grid.size(), [&](std::size_t i) { return evaluate(signal, grid[i]); }, execution);
}

BigReal energy(const RealLineSignal& signal) { return dot(signal.amplitudes, signal.coefficients); }

BigReal asymptotic_lambda(long n, const BigReal& mu, const BigReal& delta, long k) {
  if (k < 0 || k > n - 1) {
    throw Error(ErrorKind::InvalidArgument, "asymptotic_lambda: k must lie in [0, N-1]");
  }
  Precision p = max(mu.precision(), delta.precision());
  BigReal dm = delta * mu;
  BigReal value = pow(dm, 2 * k + 1) / delta;
  value *= ldexp(BigReal(1, p), 2 * k) * pow(factorial(k, p), 6);
  value /= BigReal((2 * k + 1) * (2 * k + 1), p) * pow(factorial(2 * k, p), 4);
  for (long j = -k; j <= k; ++j) value *= (n - j);
  return value;
}

BigReal eigen_ratio_asymptotic(long n, const BigReal& delta_mu, long k) {
  if (k < 0 || k > n - 2) {
    throw Error(ErrorKind::InvalidArgument, "eigen_ratio_asymptotic: k must lie in [0, N-2]");
  }
  Precision p = delta_mu.precision();
  BigReal k1(k + 1, p);
  BigReal numerator = 4 * pow(k1, 6);
  BigReal denominator = pow(BigReal(2 * k + 3, p), 2) * pow(BigReal(2 * k + 1, p), 2) *
                        pow(BigReal(2 * k + 2, p), 4);
  return delta_mu * delta_mu * numerator / denominator * (n * n - (k + 1) * (k + 1));
}

BigReal energy_upper_bound(std::span<const BigReal> amplitudes, const BigReal& lambda_star) {
  if (!(lambda_star.sign() > 0)) {
    throw Error(ErrorKind::InvalidArgument, "energy_upper_bound: lambda* must be positive");
  }
  return dot(amplitudes, amplitudes) / lambda_star;
}

SensitivityReport propagate_perturbation(const RealMatrix& rho, std::span<const BigReal> delta_c,
                                         std::span<const BigReal> a, std::span<const BigReal> c) {
  check_lengths(rho.rows(), delta_c.size(), "perturbation");
  check_lengths(rho.rows(), a.size(), "amplitudes");
  check_lengths(rho.rows(), c.size(), "coefficients");
  SensitivityReport report;
  report.delta_a = multiply(rho, delta_c);
  report.relative_magnitude = norm2(report.delta_a) / norm2(a);
  report.threshold = eigen_symmetric(rho).smallest();
  return report;
}

BigReal leading_subspace_fraction(const EigenDecomposition& eigen, std::span<const BigReal> v,
                                  std::size_t count) {
  check_lengths(eigen.size(), v.size(), "subspace projection");
  count = std::min(count, eigen.size());
  BigReal total = dot(v, v);
  BigReal captured(total.precision());
  for (std::size_t k = 0; k < count; ++k) {
    BigReal proj = dot(eigen.vector(k), v);
    captured += proj * proj;
  }
  return captured / total;
}

RealLineSignal representative_signal(std::span<const BigReal> times, const Bandlimit& bandlimit) {
  PointSet sorted = PointSet::create(RealVector(times.begin(), times.end()),
                                     RealVector(times.size(), BigReal(precision_of(times))));
  RealMatrix rho = prolate_matrix(sorted, bandlimit);
  EigenDecomposition eigen = eigen_symmetric(rho);
  RealVector v = eigen.vector(eigen.size() - 1);
  RealVector x = Cholesky(rho).solve(v);
  return RealLineSignal{bandlimit, sorted.times(), std::move(x), std::move(v)};
}

BigReal shape_deviation_from_samples(std::span<const BigReal> f_values,
                                     std::span<const BigReal> f_tilde_values,
                                     const BigReal& projection) {
  check_lengths(f_values.size(), f_tilde_values.size(), "shape deviation samples");
  Precision p = max(precision_of(f_values), projection.precision());
  BigReal peak(p);
  for (const auto& v : f_values) peak = max(peak, abs(v));
  const BigReal guard = peak / kZeroGuardDenominator;
  BigReal worst(p);
  bool any = false;
  for (std::size_t i = 0; i < f_values.size(); ++i) {
    BigReal mag = abs(f_values[i]);
    if (mag < guard || mag.is_zero()) continue;
    any = true;
    worst = max(worst, abs(projection * f_tilde_values[i] - f_values[i]) / mag);
  }
  if (!any) {
    throw Error(ErrorKind::EmptyGridAfterZeroGuard,
                "every grid sample lies below the zero guard of shape_deviation");
  }
  return worst;
}

BigReal shape_deviation(const RealLineSignal& f, const RealLineSignal& f_tilde,
                        std::span<const BigReal> a, std::span<const BigReal> grid,
                        Execution execution) {
  check_lengths(f.size(), f_tilde.size(), "shape deviation nodes");
  BigReal projection = dot(a, f_tilde.amplitudes);
  RealVector fv = sample(f, grid, execution);
  RealVector ftv = sample(f_tilde, grid, execution);
  return shape_deviation_from_samples(fv, ftv, projection);
}

}  // namespace superosc::realline
