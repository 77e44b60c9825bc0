#pragma once

// Minimum-energy bandlimited interpolation on the real line: prolate matrix,
// sinc-superposition signals, eigen asymptotics, perturbation propagation and
// the representative-shape approximation.
//
// Convention: sinc(x) = sin(x)/x. A signal with bandlimit mu has kernel
// mu*sinc(mu*t), so consecutive prescribed times closer than pi/mu are
// superoscillatory. Energies are reported in the reproducing-kernel norm
// a^T rho^{-1} a, which equals (1/pi) * integral of f^2 over the real line.

#include <span>
#include <vector>

#include "superosc/mpnum/linalg.hpp"
#include "superosc/parallel.hpp"

namespace superosc::realline {

/// Prescribed (time, amplitude) pairs, sorted by strictly increasing time.
class PointSet {
 public:
  /// Sorts by time and rejects times closer than 2^{-bits/4} * max|t|
  /// (Error DuplicateTimes) or mismatched lengths (DimensionMismatch).
  static PointSet create(RealVector times, RealVector amplitudes);

  /// t_i = (i - offset) * delta for i in [0, n).
  static PointSet equispaced(std::size_t n, const BigReal& delta, const BigReal& offset,
                             RealVector amplitudes);

  std::size_t size() const noexcept { return times_.size(); }
  const RealVector& times() const noexcept { return times_; }
  const RealVector& amplitudes() const noexcept { return amplitudes_; }
  Precision precision() const;
  /// Largest gap between consecutive times (0 for a single point).
  BigReal max_spacing() const;

 private:
  PointSet(RealVector times, RealVector amplitudes)
      : times_(std::move(times)), amplitudes_(std::move(amplitudes)) {}

  RealVector times_;
  RealVector amplitudes_;
};

/// Signals occupy the band [-mu, mu] in angular frequency.
struct Bandlimit {
  BigReal mu;

  /// Error InvalidArgument unless mu > 0.
  static Bandlimit create(BigReal mu);
};

struct RealLineSignal {
  Bandlimit bandlimit;
  RealVector nodes;
  RealVector coefficients;
  /// Amplitudes the signal was fitted through.
  RealVector amplitudes;

  std::size_t size() const noexcept { return nodes.size(); }
};

struct SensitivityReport {
  RealVector delta_a;
  BigReal relative_magnitude;
  /// lambda*: the perturbation ratio |dc|/|c| must stay well below this.
  BigReal threshold;
};

/// sin(x)/x, with a series branch near 0.
BigReal sinc(const BigReal& x);

/// rho_ij = mu * sinc(mu (t_i - t_j)).
RealMatrix prolate_matrix(std::span<const BigReal> times, const Bandlimit& bandlimit);
RealMatrix prolate_matrix(const PointSet& points, const Bandlimit& bandlimit);

/// Solves a = rho x. Error NotPositiveDefinite if the factorization fails.
RealLineSignal min_energy_signal(const PointSet& points, const Bandlimit& bandlimit);

/// f(t) = mu * sum_i x_i sinc(mu (t - t_i)).
BigReal evaluate(const RealLineSignal& signal, const BigReal& t);

/// Evaluates at every grid point; Parallel and Serial return identical values.
RealVector sample(const RealLineSignal& signal, std::span<const BigReal> grid,
                  Execution execution = Execution::Parallel);

/// a^T rho^{-1} a = x^T rho x.
BigReal energy(const RealLineSignal& signal);

/// Leading-order k-th eigenvalue of the equispaced prolate matrix as delta -> 0:
/// ((delta mu)^{2k+1}/delta) * 2^{2k} (k!)^6 / ((2k+1)^2 ((2k)!)^4) * prod_{j=-k..k}(N-j).
BigReal asymptotic_lambda(long n, const BigReal& mu, const BigReal& delta, long k);

/// lambda_{k+1}/lambda_k of the expression above:
/// (delta mu)^2 * 4 (k+1)^6 / ((2k+3)^2 (2k+1)^2 (2k+2)^4) * (N^2 - (k+1)^2).
BigReal eigen_ratio_asymptotic(long n, const BigReal& delta_mu, long k);

/// |a|^2 / lambda*.
BigReal energy_upper_bound(std::span<const BigReal> amplitudes, const BigReal& lambda_star);

/// Delta a = rho Delta c and its size relative to a.
SensitivityReport propagate_perturbation(const RealMatrix& rho, std::span<const BigReal> delta_c,
                                         std::span<const BigReal> a, std::span<const BigReal> c);

/// Fraction of |v|^2 carried by the span of the `count` leading eigenvectors.
BigReal leading_subspace_fraction(const EigenDecomposition& eigen, std::span<const BigReal> v,
                                  std::size_t count);

/// Minimum-energy signal through the unit eigenvector of the smallest
/// eigenvalue of rho (the most expensive unit-amplitude signal).
RealLineSignal representative_signal(std::span<const BigReal> times, const Bandlimit& bandlimit);

/// Samples with |f| below (grid maximum)/kZeroGuardDenominator are skipped by
/// shape_deviation.
inline constexpr long kZeroGuardDenominator = 1000;

/// max over guarded grid points of |<a, v> f_tilde(t) - f(t)| / |f(t)|, with v
/// the amplitude vector of f_tilde. Error EmptyGridAfterZeroGuard if every
/// sample is guarded out.
BigReal shape_deviation(const RealLineSignal& f, const RealLineSignal& f_tilde,
                        std::span<const BigReal> a, std::span<const BigReal> grid,
                        Execution execution = Execution::Parallel);

/// Same quantity from pre-sampled values.
BigReal shape_deviation_from_samples(std::span<const BigReal> f_values,
                                     std::span<const BigReal> f_tilde_values,
                                     const BigReal& projection);

}  // namespace superosc::realline
