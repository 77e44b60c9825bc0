#include "superosc/mpnum/big_complex.hpp"

#include <utility>

namespace superosc {

BigComplex::BigComplex(BigReal re) : re_(std::move(re)), im_(re_.precision()) {}

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
  Precision p = max(re_.precision(), im_.precision());
  if (re_.precision() != p) re_ = re_.rounded_to(p);
  if (im_.precision() != p) im_ = im_.rounded_to(p);
}

BigComplex BigComplex::unit(const BigReal& theta) {
  BigComplex out(theta.precision());
  sin_cos(theta, out.im_, out.re_);
  return out;
}

BigReal BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigReal BigComplex::abs() const { return sqrt(norm()); }

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigReal d = b.norm();
  BigComplex num = a * b.conj();
  return BigComplex(num.real() / d, num.imag() / d);
}

}  // namespace superosc
