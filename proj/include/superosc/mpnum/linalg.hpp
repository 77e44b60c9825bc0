#pragma once

#include <span>

#include "superosc/mpnum/matrix.hpp"

namespace superosc {

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
class Cholesky {
 public:
  /// Throws Error(NotPositiveDefinite) when a pivot is not strictly positive,
  /// Error(DimensionMismatch) for a non-square input.
  explicit Cholesky(const RealMatrix& a);

  RealVector solve(std::span<const BigReal> b) const;
  /// Product of the eigenvalues, as the squared product of the pivots.
  BigReal determinant() const;
  std::size_t size() const noexcept { return factor_.rows(); }

 private:
  RealMatrix factor_;
};

/// Solves A x = b for symmetric positive-definite A.
RealVector solve_spd(const RealMatrix& a, std::span<const BigReal> b);

struct EigenDecomposition {
  /// Sorted descending.
  RealVector values;
  /// Orthonormal; column k pairs with values[k]. Each column is signed so its
  /// largest-magnitude entry is positive.
  RealMatrix vectors;

  std::size_t size() const noexcept { return values.size(); }
  RealVector vector(std::size_t k) const { return vectors.column(k); }
  const BigReal& smallest() const { return values.back(); }
};

struct JacobiOptions {
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Rotations are skipped once |a_pq| <= tol * sqrt(|a_pp a_qq|) with tol a few
/// ulps of the working precision; iteration stops after a sweep with no
/// rotation. Throws Error(NoConvergence) after `max_sweeps`.
EigenDecomposition eigen_symmetric(const RealMatrix& a, const JacobiOptions& options = {});

}  // namespace superosc
