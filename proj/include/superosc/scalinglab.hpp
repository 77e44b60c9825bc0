#pragma once

// Scaling study of the smallest kernel eigenvalue: real-line prolate matrix
// with mu = M against the periodic Dirichlet kernel matrix, both over M
// equispaced points, swept over (M, delta).

#include <span>
#include <utility>
#include <vector>

#include "superosc/mpnum/linalg.hpp"
#include "superosc/parallel.hpp"

namespace superosc::scalinglab {

/// Extra bits given to periodic cells on top of required_precision.
inline constexpr long kPeriodicMarginBits = 16;

/// Relative change between the last two ratio estimates tolerated by ratio_limit.
inline constexpr double kCauchyTolerance = 0.01;

/// Working precision for every cell of a given M: required_precision at the
/// smallest M*delta plus the periodic margin.
Precision sweep_precision(long m, const BigReal& smallest_m_delta);

/// Smallest eigenvalue of the M x M prolate matrix, mu = M, times i*delta.
BigReal lambda_star_real(long m, const BigReal& delta);
BigReal lambda_star_real(long m, const BigReal& delta, Precision precision);

/// Smallest eigenvalue of the M x M Dirichlet kernel matrix, bandlimit M,
/// times i*delta.
BigReal lambda_star_periodic(long m, const BigReal& delta);
BigReal lambda_star_periodic(long m, const BigReal& delta, Precision precision);

struct SweepSpec {
  std::vector<long> m_values;
  /// Products M*delta, descending; delta = product / M for each M.
  RealVector m_delta_products;

  /// M in {5, 7, ..., 25}, M*delta in {0.4, 0.2, 0.1, 0.05}.
  static SweepSpec standard();
};

struct SweepRow {
  long m = 0;
  BigReal delta;
  BigReal lambda_star;
  BigReal lambda_star_per;
  /// lambda_star_per / lambda_star
  BigReal ratio;
};

/// Rows ordered by ascending M then descending delta, independent of how the
/// cells were scheduled.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, Execution execution = Execution::Parallel);

struct RatioLimit {
  long m = 0;
  /// Ratio at the smallest delta.
  BigReal value;
  /// |r_last - r_prev| / |r_last|
  BigReal relative_change;
};

/// Limit of rows' ratio column as delta shrinks. The rows must share one M and
/// be ordered by descending delta (at least 3). Error NotConverged when the
/// last two estimates differ by more than kCauchyTolerance.
RatioLimit ratio_limit(std::span<const SweepRow> rows);

/// Runs the M-column of a sweep and takes its limit.
RatioLimit ratio_limit(long m, std::span<const BigReal> deltas,
                       Execution execution = Execution::Parallel);

struct FitResult {
  BigReal slope;
  BigReal intercept;
  BigReal residual_rms;
};

/// Ordinary least squares of ln C against M. Error DegenerateFit with fewer
/// than 4 points or a single distinct M; InvalidArgument for C <= 0.
FitResult fit_log_c(std::span<const std::pair<long, BigReal>> points);

/// lambda*/lambda*_per: the factor by which periodicity raises the worst-case
/// energy. This is the C(M) whose logarithm is fitted.
BigReal periodic_energy_penalty(const RatioLimit& limit);

/// 0.157 (1.093)^M sqrt(pi) (pi M delta)^{2M-1} (M-1)^{3/2} / (2^{4M-4} (2M-1)).
BigReal conjectured_lambda_per(long m, const BigReal& delta);

struct ScalingStudy {
  std::vector<SweepRow> rows;
  std::vector<RatioLimit> limits;
  FitResult fit;
};

/// run_sweep, one ratio_limit per M, and fit_log_c of the energy penalties.
ScalingStudy run_scaling_study(const SweepSpec& spec, Execution execution = Execution::Parallel);

}  // namespace superosc::scalinglab
