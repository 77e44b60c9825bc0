#pragma once

#include "superosc/mpnum/big_real.hpp"

namespace superosc {

/// Complex number with real and imaginary parts at a common precision.
class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(Precision precision) : re_(precision), im_(precision) {}
  explicit BigComplex(BigReal re);
  BigComplex(BigReal re, BigReal im);

  /// e^{i theta}
  static BigComplex unit(const BigReal& theta);

  const BigReal& real() const noexcept { return re_; }
  const BigReal& imag() const noexcept { return im_; }
  Precision precision() const noexcept { return re_.precision(); }

  BigComplex conj() const { return BigComplex(re_, -im_); }
  /// |z|^2
  BigReal norm() const;
  BigReal abs() const;

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& a, BigComplex b) { return b *= a; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

 private:
  BigReal re_;
  BigReal im_;
};

}  // namespace superosc
