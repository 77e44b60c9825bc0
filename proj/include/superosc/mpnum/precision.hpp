#pragma once

#include "superosc/mpnum/big_real.hpp"

namespace superosc {

inline constexpr long kGuardBits = 96;
inline constexpr long kPrecisionFloorBits = 128;

/// Working precision for an N-point equispaced prolate problem with spacing
/// times bandwidth `mu_delta`: bits of the estimated inverse smallest
/// eigenvalue (and condition number) plus kGuardBits, never below
/// kPrecisionFloorBits.
Precision required_precision(long n, const BigReal& mu_delta);

}  // namespace superosc
