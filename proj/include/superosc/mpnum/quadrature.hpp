#pragma once

#include <functional>
#include <memory>

#include "superosc/mpnum/matrix.hpp"

namespace superosc {

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  RealVector nodes;
  RealVector weights;
};

/// Rules are computed once per (points, precision) and shared read-only.
std::shared_ptr<const GaussLegendreRule> gauss_legendre_rule(int points, Precision precision);

struct QuadratureResult {
  BigReal value;
  /// |Q_level - Q_{level/2}| plus a rounding floor; an upper estimate of the
  /// change produced by doubling the level once the rule has converged.
  BigReal error_estimate;
};

using RealFunction = std::function<BigReal(const BigReal&)>;

/// Gauss-Legendre quadrature of f over [a, b] with `level` nodes, evaluated at
/// the larger of the endpoint precisions. Exact for polynomials of degree up to
/// 2*level - 1. Throws Error(NonFiniteValue) if f returns NaN or infinity.
QuadratureResult integrate(const RealFunction& f, const BigReal& a, const BigReal& b, int level);

/// Sum of `panels` equal-width Gauss-Legendre panels.
QuadratureResult integrate_composite(const RealFunction& f, const BigReal& a, const BigReal& b,
                                     int panels, int level);

}  // namespace superosc
