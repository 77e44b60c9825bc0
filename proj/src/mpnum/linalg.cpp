#include "superosc/mpnum/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace superosc {

Precision precision_of(std::span<const BigReal> values) {
  Precision p(Precision::kMinimumBits);
  for (const auto& v : values) p = max(p, v.precision());
  return p;
}

namespace {

Precision matrix_precision(const RealMatrix& a) {
  Precision p(Precision::kMinimumBits);
  for (std::size_t i = 0; i < a.rows(); ++i) p = max(p, precision_of(a.row(i)));
  return p;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

}  // namespace

RealMatrix identity(std::size_t n, Precision precision) {
  RealMatrix out(n, n, BigReal(precision));
  for (std::size_t i = 0; i < n; ++i) out(i, i) = BigReal(1, precision);
  return out;
}

RealVector multiply(const RealMatrix& a, std::span<const BigReal> x) {
  require(a.cols() == x.size(), "matrix-vector product: " + std::to_string(a.cols()) +
                                    " columns vs vector of length " + std::to_string(x.size()));
  Precision p = max(matrix_precision(a), precision_of(x));
  RealVector out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigReal acc(p);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out.push_back(std::move(acc));
  }
  return out;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
  Precision p = max(matrix_precision(a), matrix_precision(b));
  RealMatrix out(a.rows(), b.cols(), BigReal(p));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

RealMatrix transpose(const RealMatrix& a) {
  RealMatrix out(a.cols(), a.rows(), BigReal());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const BigComplex> x) {
  require(a.cols() == x.size(), "complex matrix-vector product: dimensions differ");
  ComplexVector out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigComplex acc(a.rows() ? a(i, 0).precision() : Precision(64));
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out.push_back(std::move(acc));
  }
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows(), "complex matrix product: inner dimensions differ");
  Precision p = a.rows() && a.cols() ? a(0, 0).precision() : Precision(64);
  ComplexMatrix out(a.rows(), b.cols(), BigComplex(p));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows(), BigComplex());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j).conj();
  return out;
}

BigReal dot(std::span<const BigReal> a, std::span<const BigReal> b) {
  require(a.size() == b.size(), "dot product: lengths differ");
  BigReal acc(max(precision_of(a), precision_of(b)));
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

BigReal norm2(std::span<const BigReal> a) { return sqrt(dot(a, a)); }

BigReal max_abs(const RealMatrix& a) {
  BigReal m(matrix_precision(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& v : a.row(i)) m = max(m, abs(v));
  return m;
}

BigReal frobenius(const RealMatrix& a) {
  BigReal acc(matrix_precision(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& v : a.row(i)) acc += v * v;
  return sqrt(acc);
}

Cholesky::Cholesky(const RealMatrix& a) {
  require(a.rows() == a.cols(), "Cholesky: matrix is not square");
  const std::size_t n = a.rows();
  Precision p = matrix_precision(a);
  factor_ = RealMatrix(n, n, BigReal(p));
  for (std::size_t j = 0; j < n; ++j) {
    BigReal diag = a(j, j).rounded_to(p);
    for (std::size_t k = 0; k < j; ++k) diag -= factor_(j, k) * factor_(j, k);
    if (diag.sign() <= 0) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(j) + " is " + diag.to_string(6) +
                      "; matrix is not positive definite at " + std::to_string(p.bits()) +
                      " bits (duplicate times or insufficient precision)");
    }
    factor_(j, j) = sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      BigReal s = a(i, j).rounded_to(p);
      for (std::size_t k = 0; k < j; ++k) s -= factor_(i, k) * factor_(j, k);
      factor_(i, j) = s / factor_(j, j);
    }
  }
}

RealVector Cholesky::solve(std::span<const BigReal> b) const {
  const std::size_t n = size();
  require(b.size() == n, "solve: right-hand side has length " + std::to_string(b.size()) +
                             ", matrix is " + std::to_string(n) + "x" + std::to_string(n));
  Precision p = max(factor_.rows() ? factor_(0, 0).precision() : Precision(64), precision_of(b));
  RealVector y(n, BigReal(p));
  for (std::size_t i = 0; i < n; ++i) {
    BigReal s = b[i].rounded_to(p);
    for (std::size_t k = 0; k < i; ++k) s -= factor_(i, k) * y[k];
    y[i] = s / factor_(i, i);
  }
  RealVector x(n, BigReal(p));
  for (std::size_t ii = n; ii-- > 0;) {
    BigReal s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= factor_(k, ii) * x[k];
    x[ii] = s / factor_(ii, ii);
  }
  return x;
}

BigReal Cholesky::determinant() const {
  BigReal d(1, factor_.rows() ? factor_(0, 0).precision() : Precision(64));
  for (std::size_t i = 0; i < size(); ++i) d *= factor_(i, i) * factor_(i, i);
  return d;
}

RealVector solve_spd(const RealMatrix& a, std::span<const BigReal> b) {
  require(a.rows() == b.size(), "solve_spd: matrix has " + std::to_string(a.rows()) +
                                    " rows, right-hand side has " + std::to_string(b.size()));
  return Cholesky(a).solve(b);
}

namespace {

/// Temporaries for one Jacobi rotation, allocated once per decomposition.
struct RotationScratch {
  mpfr_t theta, t, c, s, tau, tmp, x, y;
  explicit RotationScratch(mpfr_prec_t p) {
    for (mpfr_ptr v : {theta, t, c, s, tau, tmp, x, y}) mpfr_init2(v, p);
  }
  ~RotationScratch() {
    for (mpfr_ptr v : {theta, t, c, s, tau, tmp, x, y}) mpfr_clear(v);
  }
  RotationScratch(const RotationScratch&) = delete;
  RotationScratch& operator=(const RotationScratch&) = delete;
};

// x' = x - s (y + tau x); y' = y + s (x - tau y)
void rotate_pair(mpfr_ptr x, mpfr_ptr y, RotationScratch& w) {
  mpfr_set(w.x, x, MPFR_RNDN);
  mpfr_set(w.y, y, MPFR_RNDN);
  mpfr_fma(w.tmp, w.tau, w.x, w.y, MPFR_RNDN);
  mpfr_mul(w.tmp, w.tmp, w.s, MPFR_RNDN);
  mpfr_sub(x, w.x, w.tmp, MPFR_RNDN);
  mpfr_fms(w.tmp, w.tau, w.y, w.x, MPFR_RNDN);
  mpfr_mul(w.tmp, w.tmp, w.s, MPFR_RNDN);
  mpfr_sub(y, w.y, w.tmp, MPFR_RNDN);
}

}  // namespace

EigenDecomposition eigen_symmetric(const RealMatrix& input, const JacobiOptions& options) {
  require(input.rows() == input.cols(), "eigen_symmetric: matrix is not square");
  const std::size_t n = input.rows();
  const Precision p = matrix_precision(input);

  RealMatrix a(n, n, BigReal(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = input(i, j).rounded_to(p);
  RealMatrix v = identity(n, p);

  const BigReal tol = ldexp(BigReal(1, p), -(p.bits() - 10));
  const BigReal absolute_floor = tol * frobenius(a);
  RotationScratch w(p.bits());
  BigReal scale(p);

  bool converged = n <= 1;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t pi = 0; pi + 1 < n; ++pi) {
      for (std::size_t qi = pi + 1; qi < n; ++qi) {
        const BigReal& apq = a(pi, qi);
        if (apq.is_zero()) continue;
        BigReal mag = abs(apq);
        if (mag <= absolute_floor) continue;
        scale = sqrt(abs(a(pi, pi) * a(qi, qi)));
        if (mag <= tol * scale) continue;
        rotated = true;

        // theta = (a_qq - a_pp) / (2 a_pq); t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
        mpfr_sub(w.theta, a(qi, qi).get(), a(pi, pi).get(), MPFR_RNDN);
        mpfr_div(w.theta, w.theta, apq.get(), MPFR_RNDN);
        mpfr_div_2ui(w.theta, w.theta, 1, MPFR_RNDN);
        mpfr_hypot(w.tmp, w.theta, BigReal(1, p).get(), MPFR_RNDN);
        mpfr_abs(w.t, w.theta, MPFR_RNDN);
        mpfr_add(w.t, w.t, w.tmp, MPFR_RNDN);
        mpfr_ui_div(w.t, 1, w.t, MPFR_RNDN);
        if (mpfr_sgn(w.theta) < 0) mpfr_neg(w.t, w.t, MPFR_RNDN);
        mpfr_hypot(w.c, w.t, BigReal(1, p).get(), MPFR_RNDN);
        mpfr_ui_div(w.c, 1, w.c, MPFR_RNDN);
        mpfr_mul(w.s, w.t, w.c, MPFR_RNDN);
        mpfr_add_ui(w.tau, w.c, 1, MPFR_RNDN);
        mpfr_div(w.tau, w.s, w.tau, MPFR_RNDN);

        mpfr_mul(w.tmp, w.t, apq.get(), MPFR_RNDN);
        mpfr_sub(a(pi, pi).get(), a(pi, pi).get(), w.tmp, MPFR_RNDN);
        mpfr_add(a(qi, qi).get(), a(qi, qi).get(), w.tmp, MPFR_RNDN);
        mpfr_set_zero(a(pi, qi).get(), 1);
        mpfr_set_zero(a(qi, pi).get(), 1);

        for (std::size_t r = 0; r < n; ++r) {
          if (r == pi || r == qi) continue;
          rotate_pair(a(r, pi).get(), a(r, qi).get(), w);
          mpfr_set(a(pi, r).get(), a(r, pi).get(), MPFR_RNDN);
          mpfr_set(a(qi, r).get(), a(r, qi).get(), MPFR_RNDN);
        }
        for (std::size_t r = 0; r < n; ++r) rotate_pair(v(r, pi).get(), v(r, qi).get(), w);
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                    " sweeps at " + std::to_string(p.bits()) + " bits");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors = RealMatrix(n, n, BigReal(p));
  const BigReal tie = BigReal(1, p) - half_precision_epsilon(p);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values.push_back(a(src, src));
    BigReal biggest(p);
    for (std::size_t r = 0; r < n; ++r) biggest = max(biggest, abs(v(r, src)));
    int sign = 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (abs(v(r, src)) >= biggest * tie) {
        sign = v(r, src).sign() < 0 ? -1 : 1;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = sign < 0 ? -v(r, src) : v(r, src);
  }
  return out;
}

}  // namespace superosc
