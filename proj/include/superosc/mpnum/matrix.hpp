#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "superosc/errors.hpp"
#include "superosc/mpnum/big_complex.hpp"
#include "superosc/mpnum/big_real.hpp"

namespace superosc {

using RealVector = std::vector<BigReal>;
using ComplexVector = std::vector<BigComplex>;

/// Dense row-major matrix of BigReal or BigComplex entries.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  /// True iff A(i,j) == A(j,i) bit-for-bit.
  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<BigReal>;
using ComplexMatrix = DenseMatrix<BigComplex>;

inline bool operator==(const BigComplex& a, const BigComplex& b) {
  return a.real() == b.real() && a.imag() == b.imag();
}

RealMatrix identity(std::size_t n, Precision precision);

RealVector multiply(const RealMatrix& a, std::span<const BigReal> x);
RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
RealMatrix transpose(const RealMatrix& a);

ComplexVector multiply(const ComplexMatrix& a, std::span<const BigComplex> x);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

BigReal dot(std::span<const BigReal> a, std::span<const BigReal> b);
BigReal norm2(std::span<const BigReal> a);
/// Largest |a_ij|.
BigReal max_abs(const RealMatrix& a);
/// Frobenius norm.
BigReal frobenius(const RealMatrix& a);

Precision precision_of(std::span<const BigReal> values);

}  // namespace superosc
