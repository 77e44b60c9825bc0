#pragma once

// Minimum-energy 2pi-periodic interpolation by trigonometric polynomials of
// degree M: exponential matrix T, Dirichlet kernel matrix S = T T^dagger and the
// minimum-norm coefficients c = T^dagger S^{-1} a.

#include <span>

#include "superosc/mpnum/big_complex.hpp"
#include "superosc/mpnum/linalg.hpp"
#include "superosc/parallel.hpp"

namespace superosc::periodic {

class PeriodicPointSet {
 public:
  /// Canonicalizes every time into (-pi, pi] and rejects pairs that are
  /// closer than 2^{-bits/4} * pi on the circle (Error DuplicateTimes).
  /// Order is preserved.
  static PeriodicPointSet create(RealVector times, RealVector amplitudes);

  std::size_t size() const noexcept { return times_.size(); }
  const RealVector& times() const noexcept { return times_; }
  const RealVector& amplitudes() const noexcept { return amplitudes_; }
  Precision precision() const;

 private:
  PeriodicPointSet(RealVector times, RealVector amplitudes)
      : times_(std::move(times)), amplitudes_(std::move(amplitudes)) {}

  RealVector times_;
  RealVector amplitudes_;
};

struct PeriodicBandlimit {
  long m = 1;

  /// Error InvalidArgument unless m >= 1.
  static PeriodicBandlimit create(long m);
  long dimension() const noexcept { return 2 * m + 1; }
};

/// Harmonic carried by column `j` of T: 0, 1, -1, 2, -2, ...
long column_harmonic(std::size_t j);

struct PeriodicSignal {
  PeriodicBandlimit bandlimit;
  /// c_n for n = -M..M (index n + M).
  ComplexVector fourier_coefficients;
  /// x_k with f(t) = sum_k x_k D_M(t - t_k).
  RealVector kernel_coefficients;
  RealVector times;

  const BigComplex& coefficient(long n) const {
    return fourier_coefficients[static_cast<std::size_t>(n + bandlimit.m)];
  }
};

/// sin((M + 1/2) t) / sin(t/2); the exponential sum near multiples of 2pi.
BigReal dirichlet_kernel(long m, const BigReal& t);

/// N x (2M+1), row k = (1, e^{i t_k}, e^{-i t_k}, ..., e^{i M t_k}, e^{-i M t_k}).
ComplexMatrix exponential_matrix(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit);

/// S_jk = D_M(t_j - t_k).
RealMatrix kernel_matrix(std::span<const BigReal> times, const PeriodicBandlimit& bandlimit);
RealMatrix kernel_matrix(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit);

/// x = S^{-1} a, c = T^dagger x. Error TooManyPoints when N > 2M+1.
PeriodicSignal min_energy_periodic(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit);

/// Fourier series sum_n c_n e^{i n t}.
BigComplex evaluate_periodic(const PeriodicSignal& signal, const BigReal& t);

/// Kernel form sum_k x_k D_M(t - t_k); real by construction.
BigReal evaluate_periodic_kernel(const PeriodicSignal& signal, const BigReal& t);

ComplexVector sample_periodic(const PeriodicSignal& signal, std::span<const BigReal> grid,
                              Execution execution = Execution::Parallel);

/// a^T S^{-1} a = a^T x.
BigReal energy_periodic(const PeriodicSignal& signal, const PeriodicPointSet& points);

/// sum_n |c_n|^2.
BigReal coefficient_energy(const PeriodicSignal& signal);

struct RankReport {
  bool full_rank = false;
  BigReal smallest_eigenvalue;
};

/// S is declared numerically positive definite when its smallest eigenvalue
/// exceeds 2^{-bits/2} times its largest. Accepts raw times so that repeated
/// abscissae can be diagnosed. Error TooManyPoints when N > 2M+1.
RankReport rank_check(std::span<const BigReal> times, const PeriodicBandlimit& bandlimit);
RankReport rank_check(const PeriodicPointSet& points, const PeriodicBandlimit& bandlimit);

}  // namespace superosc::periodic
