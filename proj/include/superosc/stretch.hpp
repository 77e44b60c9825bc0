#pragma once

// Local analysis of the superoscillatory stretch [x_1, x_N]: least-degree
// interpolating polynomials, sup-norm comparison with the signal, the delta^2
// error law, Chebyshev nodes, Taylor polynomials and closed-form truncated
// Fourier transforms of polynomials.

#include <span>
#include <utility>

#include "superosc/mpnum/big_complex.hpp"
#include "superosc/realline.hpp"

namespace superosc::stretch {

/// Coefficients in ascending degree order; trailing exact zeros are trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RealVector coefficients);

  const RealVector& coefficients() const noexcept { return coefficients_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coefficients_.size()) - 1; }
  bool is_zero() const noexcept { return coefficients_.empty(); }

  /// Horner evaluation.
  BigReal operator()(const BigReal& x) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const BigReal& s, const Polynomial& p);

 private:
  RealVector coefficients_;
};

/// x^k scaled by `scale`.
Polynomial monomial(long k, const BigReal& scale);

/// The polynomial q(x) = p(x - shift), expanded in monomials of x.
Polynomial shift_argument(const Polynomial& p, const BigReal& shift);

/// Newton divided differences through the points, converted to monomial form.
Polynomial least_degree_interpolant(const realline::PointSet& points);

struct StretchReport {
  BigReal sup_error;
  std::pair<BigReal, BigReal> interval;
  std::size_t samples = 0;
  /// Largest consecutive node spacing.
  BigReal delta;
};

/// Default grid density for stretch sup-norms.
inline constexpr std::size_t kSamplesPerGap = 512;

/// max over a uniform grid of `grid_size` points on [x_1, x_N] of |f - p|.
/// Error InvalidArgument if grid_size < 100.
StretchReport stretch_sup_error(const realline::RealLineSignal& signal, const Polynomial& poly,
                                std::size_t grid_size, Execution execution = Execution::Parallel);

/// Least-squares slope of log(ys) against log(xs). Error DegenerateFit when
/// fewer than two distinct abscissae are supplied.
BigReal log_log_slope(std::span<const BigReal> xs, std::span<const BigReal> ys);

/// Rescales the template's times so the largest gap equals each delta, fits the
/// minimum-energy signal and its least-degree interpolant, and returns the
/// log-log slope of the stretch sup error against delta.
BigReal delta_scaling_exponent(const realline::PointSet& points_template,
                               const realline::Bandlimit& bandlimit,
                               std::span<const BigReal> deltas,
                               Execution execution = Execution::Parallel);

/// The n roots of the degree-n Chebyshev polynomial mapped onto [a, b],
/// increasing.
RealVector chebyshev_nodes(long n, const BigReal& a, const BigReal& b);

/// Degree-`degree` Taylor polynomial of the signal at `center`, expanded in
/// monomials of t.
Polynomial taylor_polynomial(const realline::RealLineSignal& signal, const BigReal& center,
                             long degree);

/// Member n of the A, B, C, D families that express truncated monomial
/// Fourier transforms in closed form.
struct RecursionQuad {
  Polynomial a, b, c, d;
};

RecursionQuad recursion_quad(long n, Precision precision);

/// integral_{-L}^{L} x^power e^{-i t x} dx. Even powers are real, odd powers
/// purely imaginary. For |L t| below 2^{-bits/8} a Maclaurin series is summed
/// instead of the closed form, and the closed form itself is evaluated with
/// enough extra bits to absorb its cancellation.
BigComplex monomial_truncated_ft(long power, const BigReal& half_width, const BigReal& t);

/// The two branches of monomial_truncated_ft, usable at any t (the closed form
/// requires t != 0).
BigComplex monomial_truncated_ft_series(long power, const BigReal& half_width, const BigReal& t);
BigComplex monomial_truncated_ft_closed(long power, const BigReal& half_width, const BigReal& t);

/// Linear combination of monomial transforms.
BigComplex polynomial_truncated_ft(const Polynomial& poly, const BigReal& half_width,
                                   const BigReal& t);

}  // namespace superosc::stretch
