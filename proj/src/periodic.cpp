#include "superosc/periodic.hpp"

#include <string>

namespace superosc::periodic {

namespace {

void require_capacity(std::size_t n, const PeriodicBandlimit& bandlimit) {
  if (static_cast<long>(n) > bandlimit.dimension()) {
    throw Error(ErrorKind::TooManyPoints,
                std::to_string(n) + " points exceed the N <= 2M+1 = " +
                    std::to_string(bandlimit.dimension()) + " bound for M = " +
                    std::to_string(bandlimit.m));
  }
}

}  // namespace

PeriodicPointSet PeriodicPointSet::create(RealVector times, RealVector amplitudes) {
  if (times.size() != amplitudes.size()) {
    throw Error(ErrorKind::DimensionMismatch, "periodic point set: lengths " +
                                                  std::to_string(times.size()) + " and " +
                                                  std::to_string(amplitudes.size()) + " differ");
  }
  if (times.empty()) throw Error(ErrorKind::InvalidArgument, "point set must not be empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!times[i].is_finite() || !amplitudes[i].is_finite()) {
      throw Error(ErrorKind::NonFiniteValue, "point " + std::to_string(i) + " is not finite");
    }
  }
  Precision p = precision_of(times);
  const BigReal pi_p = pi(p);
  const BigReal two_pi = 2 * pi_p;
  for (auto& t : times) {
    BigReal k = floor((pi_p - t) / two_pi);
    if (!k.is_zero()) t += two_pi * k;
  }
  const BigReal guard = ldexp(pi_p, -p.bits() / 4);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      BigReal d = abs(times[i] - times[j]);
      if (min(d, two_pi - d) <= guard) {
        throw Error(ErrorKind::DuplicateTimes, "prescribed times " + times[j].to_string(12) +
                                                   " and " + times[i].to_string(12) +
                                                   " coincide modulo 2pi");
      }
    }
  }
  return PeriodicPointSet(std::move(times), std::move(amplitudes));
}

Precision PeriodicPointSet::precision() const {
  return max(precision_of(times_), precision_of(amplitudes_));
}

PeriodicBandlimit PeriodicBandlimit::create(long m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "bandlimit M must be at least 1");
  return PeriodicBandlimit{m};
}

long column_harmonic(std::size_t j) {
  if (j == 0) return 0;
  long h = static_cast<long>((j + 1) / 2);
  return j % 2 == 1 ? h : -h;
}

BigReal dirichlet_kernel(long m, const BigReal& t) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "dirichlet_kernel: M must be >= 0");
  const Precision p = t.precision();
  const BigReal two_pi = 2 * pi(p);
  BigReal r = t - two_pi * round(t / two_pi);
  if (abs(r) < ldexp(BigReal(1, p), -p.bits() / 4)) {
    BigReal sum(1, p);
    for (long n = 1; n <= m; ++n) sum += 2 * cos(r * n);
    return sum;
  }
  BigReal half = ldexp(r, -1);
  return sin(r * (2 * m + 1) / 2) / sin(half);
}

ComplexMatrix exponential_matrix(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit) {
  const std::size_t cols = static_cast<std::size_t>(bandlimit.dimension());
  Precision p = points.precision();
  ComplexMatrix t(points.size(), cols, BigComplex(p));
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t j = 0; j < cols; ++j) {
      t(k, j) = BigComplex::unit(points.times()[k] * column_harmonic(j));
    }
  }
  return t;
}

RealMatrix kernel_matrix(std::span<const BigReal> times, const PeriodicBandlimit& bandlimit) {
  const std::size_t n = times.size();
  Precision p = precision_of(times);
  RealMatrix s(n, n, BigReal(p));
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = BigReal(bandlimit.dimension(), p);
    for (std::size_t j = 0; j < i; ++j) {
      BigReal v = dirichlet_kernel(bandlimit.m, times[i] - times[j]);
      s(j, i) = v;
      s(i, j) = std::move(v);
    }
  }
  return s;
}

RealMatrix kernel_matrix(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit) {
  return kernel_matrix(points.times(), bandlimit);
}

PeriodicSignal min_energy_periodic(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit) {
  require_capacity(points.size(), bandlimit);
  RealMatrix s = kernel_matrix(points, bandlimit);
  RealVector x = solve_spd(s, points.amplitudes());
  Precision p = max(points.precision(), precision_of(x));
  ComplexVector c;
  c.reserve(static_cast<std::size_t>(bandlimit.dimension()));
  for (long n = -bandlimit.m; n <= bandlimit.m; ++n) {
    BigComplex acc(p);
    for (std::size_t k = 0; k < points.size(); ++k) {
      acc += BigComplex::unit(-(points.times()[k] * n)) * x[k];
    }
    c.push_back(std::move(acc));
  }
  return PeriodicSignal{bandlimit, std::move(c), std::move(x), points.times()};
}

BigComplex evaluate_periodic(const PeriodicSignal& signal, const BigReal& t) {
  Precision p = t.precision();
  if (!signal.fourier_coefficients.empty()) p = max(p, signal.fourier_coefficients.front().precision());
  BigComplex acc(p);
  for (long n = -signal.bandlimit.m; n <= signal.bandlimit.m; ++n) {
    acc += signal.coefficient(n) * BigComplex::unit(t * n);
  }
  return acc;
}

BigReal evaluate_periodic_kernel(const PeriodicSignal& signal, const BigReal& t) {
  Precision p = max(t.precision(), precision_of(signal.kernel_coefficients));
  BigReal acc(p);
  for (std::size_t k = 0; k < signal.times.size(); ++k) {
    acc += signal.kernel_coefficients[k] * dirichlet_kernel(signal.bandlimit.m, t - signal.times[k]);
  }
  return acc;
}

ComplexVector sample_periodic(const PeriodicSignal& signal, std::span<const BigReal> grid,
                              Execution execution) {
  return parallel_map<BigComplex>(
      grid.size(), [&](std::size_t i) { return evaluate_periodic(signal, grid[i]); }, execution);
}

BigReal energy_periodic(const PeriodicSignal& signal, const PeriodicPointSet& points) {
  return dot(points.amplitudes(), signal.kernel_coefficients);
}

BigReal coefficient_energy(const PeriodicSignal& signal) {
  Precision p = signal.fourier_coefficients.empty() ? Precision(64)
                                                    : signal.fourier_coefficients.front().precision();
  BigReal sum(p);
  for (const auto& c : signal.fourier_coefficients) sum += c.norm();
  return sum;
}

RankReport rank_check(std::span<const BigReal> times, const PeriodicBandlimit& bandlimit) {
  require_capacity(times.size(), bandlimit);
  RealMatrix s = kernel_matrix(times, bandlimit);
  EigenDecomposition eigen = eigen_symmetric(s);
  const BigReal& largest = eigen.values.front();
  const BigReal& smallest = eigen.smallest();
  bool full = smallest > half_precision_epsilon(precision_of(times)) * largest;
  return RankReport{full, smallest};
}

RankReport rank_check(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit) {
  return rank_check(points.times(), bandlimit);
}

}  // namespace superosc::periodic
