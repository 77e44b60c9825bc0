#include "superosc/stretch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "superosc/mpnum/precision.hpp"

namespace superosc::stretch {

namespace {

BigReal binomial(long n, long k, Precision p) {
  BigReal r(1, p);
  for (long j = 1; j <= k; ++j) {
    r *= (n - k + j);
    r /= j;
  }
  return r;
}

RealVector rounded(const RealVector& v, Precision p) {
  RealVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.rounded_to(p));
  return out;
}

}  // namespace

Polynomial::Polynomial(RealVector coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

BigReal Polynomial::operator()(const BigReal& x) const {
  if (coefficients_.empty()) return BigReal(x.precision());
  BigReal acc = coefficients_.back().rounded_to(max(x.precision(), precision_of(coefficients_)));
  for (std::size_t k = coefficients_.size() - 1; k-- > 0;) {
    acc *= x;
    acc += coefficients_[k];
  }
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  Precision p = max(precision_of(ca), precision_of(cb));
  RealVector out(std::max(ca.size(), cb.size()), BigReal(p));
  for (std::size_t k = 0; k < ca.size(); ++k) out[k] += ca[k];
  for (std::size_t k = 0; k < cb.size(); ++k) out[k] += cb[k];
  return Polynomial(std::move(out));
}

Polynomial operator*(const BigReal& s, const Polynomial& p) {
  RealVector out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(s * c);
  return Polynomial(std::move(out));
}

Polynomial monomial(long k, const BigReal& scale) {
  RealVector c(static_cast<std::size_t>(k + 1), BigReal(scale.precision()));
  c.back() = scale;
  return Polynomial(std::move(c));
}

Polynomial shift_argument(const Polynomial& p, const BigReal& shift) {
  const auto& c = p.coefficients();
  if (c.empty()) return p;
  Precision prec = max(precision_of(c), shift.precision());
  const long n = static_cast<long>(c.size());
  RealVector out(c.size(), BigReal(prec));
  BigReal neg = -shift;
  for (long k = 0; k < n; ++k) {
    // (x - s)^k = sum_j C(k, j) x^j (-s)^{k-j}
    for (long j = 0; j <= k; ++j) {
      out[j] += c[k] * binomial(k, j, prec) * pow(neg, k - j);
    }
  }
  return Polynomial(std::move(out));
}

Polynomial least_degree_interpolant(const realline::PointSet& points) {
  const auto& t = points.times();
  const std::size_t n = points.size();
  Precision p = points.precision();
  RealVector dd = rounded(points.amplitudes(), p);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (t[i] - t[i - j]);
    }
  }
  // Nested form: p = dd[n-1]; p = p * (x - t_k) + dd[k].
  RealVector c{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    RealVector next(c.size() + 1, BigReal(p));
    for (std::size_t m = 0; m < c.size(); ++m) {
      next[m + 1] += c[m];
      next[m] -= c[m] * t[k];
    }
    next[0] += dd[k];
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

StretchReport stretch_sup_error(const realline::RealLineSignal& signal, const Polynomial& poly,
                                std::size_t grid_size, Execution execution) {
  if (grid_size < 100) {
    throw Error(ErrorKind::InvalidArgument, "stretch_sup_error: grid_size must be at least 100");
  }
  if (signal.size() == 0) throw Error(ErrorKind::InvalidArgument, "stretch_sup_error: empty signal");
  const BigReal& lo = signal.nodes.front();
  const BigReal& hi = signal.nodes.back();
  Precision p = max(precision_of(signal.coefficients), precision_of(signal.nodes));
  BigReal step = (hi - lo) / static_cast<long>(grid_size - 1);
  RealVector grid;
  grid.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) grid.push_back(lo + step * static_cast<long>(i));
  RealVector f = realline::sample(signal, grid, execution);
  BigReal worst(p);
  for (std::size_t i = 0; i < grid_size; ++i) worst = max(worst, abs(f[i] - poly(grid[i])));

  BigReal delta(p);
  for (std::size_t i = 1; i < signal.size(); ++i) {
    delta = max(delta, signal.nodes[i] - signal.nodes[i - 1]);
  }
  return StretchReport{std::move(worst), {lo, hi}, grid_size, std::move(delta)};
}

BigReal log_log_slope(std::span<const BigReal> xs, std::span<const BigReal> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorKind::DimensionMismatch, "log_log_slope: abscissae and ordinates differ in length");
  }
  const std::size_t n = xs.size();
  Precision p = max(precision_of(xs), precision_of(ys));
  RealVector lx, ly;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i].sign() > 0) || !(ys[i].sign() > 0)) {
      throw Error(ErrorKind::InvalidArgument, "log_log_slope: values must be positive");
    }
    lx.push_back(log(xs[i].rounded_to(p)));
    ly.push_back(log(ys[i].rounded_to(p)));
  }
  BigReal mx(p), my(p);
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  if (n > 0) {
    mx /= static_cast<long>(n);
    my /= static_cast<long>(n);
  }
  BigReal sxx(p), sxy(p);
  for (std::size_t i = 0; i < n; ++i) {
    BigReal dx = lx[i] - mx;
    sxx += dx * dx;
    sxy += dx * (ly[i] - my);
  }
  if (n < 2 || sxx.is_zero()) {
    throw Error(ErrorKind::DegenerateFit, "log_log_slope: fewer than two distinct abscissae");
  }
  return sxy / sxx;
}

BigReal delta_scaling_exponent(const realline::PointSet& points_template,
                               const realline::Bandlimit& bandlimit,
                               std::span<const BigReal> deltas, Execution execution) {
  if (deltas.size() < 2) {
    throw Error(ErrorKind::DegenerateFit, "delta_scaling_exponent: need at least two deltas");
  }
  const long n = static_cast<long>(points_template.size());
  BigReal spacing = points_template.max_spacing();
  if (!(spacing.sign() > 0)) {
    throw Error(ErrorKind::InvalidArgument, "delta_scaling_exponent: template needs two or more points");
  }
  BigReal smallest = deltas.front();
  for (const auto& d : deltas) smallest = min(smallest, d);
  Precision p = max(points_template.precision(),
                    required_precision(n, bandlimit.mu * smallest));
  realline::Bandlimit band{bandlimit.mu.rounded_to(p)};
  const std::size_t grid = std::max<std::size_t>(100, kSamplesPerGap * static_cast<std::size_t>(n - 1));

  RealVector errors;
  for (const auto& d : deltas) {
    BigReal scale = d.rounded_to(p) / spacing;
    RealVector times, amps;
    for (std::size_t i = 0; i < points_template.size(); ++i) {
      times.push_back(points_template.times()[i].rounded_to(p) * scale);
      amps.push_back(points_template.amplitudes()[i].rounded_to(p));
    }
    auto points = realline::PointSet::create(std::move(times), std::move(amps));
    auto signal = realline::min_energy_signal(points, band);
    auto poly = least_degree_interpolant(points);
    errors.push_back(stretch_sup_error(signal, poly, grid, execution).sup_error);
  }
  return log_log_slope(deltas, errors);
}

RealVector chebyshev_nodes(long n, const BigReal& a, const BigReal& b) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "chebyshev_nodes: n must be positive");
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "chebyshev_nodes: empty interval");
  Precision p = max(a.precision(), b.precision());
  BigReal mid = (a + b) / 2;
  BigReal half = (b - a) / 2;
  BigReal pi_p = pi(p);
  RealVector nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  // k = n-1 gives the most negative cosine, so iterate downwards for ascending output.
  for (long k = n - 1; k >= 0; --k) {
    BigReal x = cos(pi_p * (2 * k + 1) / (2 * n));
    nodes.push_back(mid + half * x);
  }
  return nodes;
}

Polynomial taylor_polynomial(const realline::RealLineSignal& signal, const BigReal& center,
                             long degree) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "taylor_polynomial: degree must be >= 0");
  const BigReal& mu = signal.bandlimit.mu;
  Precision p = max(max(precision_of(signal.coefficients), center.precision()), mu.precision());

  RealVector total(static_cast<std::size_t>(degree + 1), BigReal(p));
  for (std::size_t i = 0; i < signal.size(); ++i) {
    BigReal u0_plain = mu * (center - signal.nodes[i]);
    double mag = std::fabs(u0_plain.to_double());
    // Alternating series terms peak near e^{|u0|}; carry those bits plus a margin.
    Precision q(p.bits() + static_cast<long>(std::ceil(mag * 1.4427)) + 2 * degree + 64);
    BigReal u0 = mu.rounded_to(q) * (center.rounded_to(q) - signal.nodes[i].rounded_to(q));
    BigReal eps = ldexp(BigReal(1, q), -q.bits());
    BigReal mu_q = mu.rounded_to(q);
    for (long m = 0; m <= degree; ++m) {
      // Coefficient of s^m in sinc(u0 + mu s):
      // mu^m sum_k (-1)^k C(2k, m) u0^{2k-m} / (2k+1)!
      BigReal sum(q), scale(q);
      const double k_stop = (m + 2.0 * mag + 2.0) / 2.0;
      for (long k = (m + 1) / 2;; ++k) {
        BigReal term = binomial(2 * k, m, q) * pow(u0, 2 * k - m) / factorial(2 * k + 1, q);
        if (k % 2 != 0) term = -term;
        sum += term;
        scale = max(scale, abs(term));
        // Beyond k_stop consecutive terms shrink by at least 4x, so the tail
        // is bounded by a third of the last term.
        if (static_cast<double>(k) >= k_stop && abs(term) <= eps * scale) break;
      }
      BigReal coeff = sum * pow(mu_q, m) * signal.coefficients[i].rounded_to(q) * mu_q;
      total[static_cast<std::size_t>(m)] += coeff.rounded_to(p);
    }
  }
  return shift_argument(Polynomial(std::move(total)), center);
}

RecursionQuad recursion_quad(long n, Precision precision) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "recursion_quad: n must be >= 0");
  BigReal one(1, precision);
  RecursionQuad q{Polynomial(RealVector{one}), Polynomial(), Polynomial(RealVector{-one}),
                  monomial(1, one)};
  for (long j = 1; j <= n; ++j) {
    BigReal f_even(2 * j * (2 * j - 1), precision);
    BigReal f_odd((2 * j + 1) * (2 * j), precision);
    RecursionQuad next;
    next.a = monomial(2 * j, one) + (-f_even) * q.a;
    next.b = monomial(2 * j - 1, BigReal(2 * j, precision)) + (-f_even) * q.b;
    next.c = monomial(2 * j, BigReal(-(2 * j + 1), precision)) + (-f_odd) * q.c;
    next.d = monomial(2 * j + 1, one) + (-f_odd) * q.d;
    q = std::move(next);
  }
  return q;
}

namespace {

void check_ft_arguments(long power, const BigReal& half_width) {
  if (power < 0) throw Error(ErrorKind::InvalidArgument, "monomial_truncated_ft: power must be >= 0");
  if (!(half_width.sign() > 0)) {
    throw Error(ErrorKind::InvalidArgument, "monomial_truncated_ft: L must be positive");
  }
}

}  // namespace

BigComplex monomial_truncated_ft_series(long power, const BigReal& half_width, const BigReal& t) {
  check_ft_arguments(power, half_width);
  Precision p = max(half_width.precision(), t.precision());
  // sum_k (-i t)^k / k! * integral_{-L}^{L} x^{power+k} dx; only even power+k survive.
  BigReal re(p), im(p);
  BigReal eps = ldexp(BigReal(1, p), -p.bits() - 8);
  BigReal t_pow(1, p);
  BigReal kfact(1, p);
  BigReal peak(p);
  const double lt = std::fabs((half_width * t).to_double());
  for (long k = 0;; ++k) {
    if (k > 0) {
      t_pow *= t;
      kfact *= k;
    }
    const long e = power + k;
    if (e % 2 != 0) continue;
    BigReal term = t_pow / kfact * 2 * pow(half_width, e + 1) / (e + 1);
    // (-i)^k: 1, -i, -1, i
    switch (k % 4) {
      case 0: re += term; break;
      case 1: im -= term; break;
      case 2: re -= term; break;
      default: im += term; break;
    }
    peak = max(peak, abs(term));
    if (static_cast<double>(k) > 2 * lt + 2 && abs(term) <= eps * peak) break;
  }
  return BigComplex(std::move(re), std::move(im));
}

BigComplex monomial_truncated_ft_closed(long power, const BigReal& half_width, const BigReal& t) {
  check_ft_arguments(power, half_width);
  if (t.is_zero()) throw Error(ErrorKind::InvalidArgument, "closed-form transform needs t != 0");
  Precision p = max(half_width.precision(), t.precision());
  // The numerator cancels down to O(u^{power+1}), so evaluate it with the lost
  // bits added back.
  const long n = power / 2;
  double lu = std::log2(std::fabs((half_width * t).to_double()));
  long extra = 64 + static_cast<long>(std::ceil(std::lgamma(static_cast<double>(power + 2)) / std::log(2.0)));
  if (lu < 0) extra += static_cast<long>(std::ceil(-lu * static_cast<double>(power + 2)));
  Precision q(p.bits() + extra);
  BigReal uq = half_width.rounded_to(q) * t.rounded_to(q);
  BigReal tq = t.rounded_to(q);
  BigReal s(q), c(q);
  sin_cos(uq, s, c);
  RecursionQuad rq = recursion_quad(n, q);
  if (power % 2 == 0) {
    BigReal value = 2 * (rq.a(uq) * s + rq.b(uq) * c) / pow(tq, 2 * n + 1);
    return BigComplex(value.rounded_to(p), BigReal(p));
  }
  BigReal value = 2 * (rq.c(uq) * s + rq.d(uq) * c) / pow(tq, 2 * n + 2);
  return BigComplex(BigReal(p), value.rounded_to(p));
}

BigComplex monomial_truncated_ft(long power, const BigReal& half_width, const BigReal& t) {
  check_ft_arguments(power, half_width);
  Precision p = max(half_width.precision(), t.precision());
  if (abs(half_width * t) < ldexp(BigReal(1, p), -p.bits() / 8)) {
    return monomial_truncated_ft_series(power, half_width, t);
  }
  return monomial_truncated_ft_closed(power, half_width, t);
}

BigComplex polynomial_truncated_ft(const Polynomial& poly, const BigReal& half_width,
                                   const BigReal& t) {
  Precision p = max(half_width.precision(), t.precision());
  BigComplex acc(p);
  const auto& c = poly.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    acc += monomial_truncated_ft(static_cast<long>(k), half_width, t) * c[k];
  }
  return acc;
}

}  // namespace superosc::stretch
