#include <doctest.h>

#include "oracles.hpp"
#include "superosc/mpnum/precision.hpp"
#include "superosc/mpnum/quadrature.hpp"
#include "superosc/stretch.hpp"

using namespace superosc;
using namespace superosc::stretch;
using realline::Bandlimit;
using realline::PointSet;

namespace {

const Precision kP(256);

BigReal eps_of(Precision p) { return half_precision_epsilon(p); }

BigReal num(const char* s, Precision p = kP) { return BigReal::parse(s, p); }

PointSet points(std::initializer_list<std::pair<const char*, const char*>> pairs, Precision p = kP) {
  RealVector t, a;
  for (const auto& [ts, as] : pairs) {
    t.push_back(num(ts, p));
    a.push_back(num(as, p));
  }
  return PointSet::create(std::move(t), std::move(a));
}

PointSet figure2(Precision p) {
  return points({{"1/10", "-1"}, {"1/5", "1"}, {"3/10", "-1"}, {"2/5", "1"}, {"1/2", "-1"}}, p);
}

PointSet alternating(long n, const BigReal& delta) {
  RealVector t, a;
  for (long i = 0; i < n; ++i) {
    t.push_back(delta * i);
    a.emplace_back(i % 2 == 0 ? 1 : -1, delta.precision());
  }
  return PointSet::create(std::move(t), std::move(a));
}

void check_poly(const Polynomial& p, std::initializer_list<long> expected, const BigReal& tol) {
  REQUIRE(p.coefficients().size() == expected.size());
  std::size_t k = 0;
  for (long e : expected) CHECK(abs(p.coefficients()[k++] - e) <= tol);
}

// integral_{-L}^{L} x^power e^{-i t x} dx by composite Gauss-Legendre.
BigComplex ft_by_quadrature(long power, const BigReal& half_width, const BigReal& t) {
  auto re = integrate_composite([&](const BigReal& x) { return pow(x, power) * cos(t * x); }, -half_width,
                                half_width, 8, 48);
  auto im = integrate_composite([&](const BigReal& x) { return -(pow(x, power) * sin(t * x)); }, -half_width,
                                half_width, 8, 48);
  return BigComplex(re.value, im.value);
}

}  // namespace

TEST_CASE("least_degree_interpolant examples") {
  const BigReal tol = eps_of(kP) * eps_of(kP) * 64;
  check_poly(least_degree_interpolant(points({{"0", "1"}, {"1", "3"}})), {1, 2}, tol);
  check_poly(least_degree_interpolant(points({{"-1", "1"}, {"0", "0"}, {"1", "1"}})), {0, 0, 1}, tol);

  auto pts = figure2(kP);
  auto p = least_degree_interpolant(pts);
  CHECK(p.degree() == 4);
  RealVector ref = oracle::vandermonde_coefficients(pts.times(), pts.amplitudes());
  for (std::size_t k = 0; k < 5; ++k) CHECK(oracle::rel_diff(p.coefficients()[k], ref[k]) < eps_of(kP));
  for (std::size_t i = 0; i < 5; ++i) CHECK(abs(p(pts.times()[i]) - pts.amplitudes()[i]) < eps_of(kP));
}

TEST_CASE("interpolants rebuilt from duplicate abscissae are rejected") {
  try {
    least_degree_interpolant(points({{"0", "1"}, {"1/3", "2"}, {"1/3", "2"}}));
    FAIL("expected DuplicateTimes");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateTimes);
  }
}

TEST_CASE("polynomial helpers") {
  Polynomial p(RealVector{num("1"), num("2"), num("0")});
  CHECK(p.degree() == 1);
  CHECK(Polynomial().degree() == -1);
  // (x - 1)^2 = x^2 - 2x + 1 shifted by 3: (x - 4)^2
  Polynomial sq(RealVector{num("1"), num("-2"), num("1")});
  check_poly(shift_argument(sq, num("3")), {16, -8, 1}, eps_of(kP));
}

TEST_CASE("stretch_sup_error examples") {
  SUBCASE("single point collapses the interval") {
    auto pts = points({{"0", "1"}});
    auto f = realline::min_energy_signal(pts, Bandlimit::create(num("1")));
    auto r = stretch_sup_error(f, least_degree_interpolant(pts), 100);
    CHECK(r.sup_error <= eps_of(kP));
    CHECK(r.interval.first == r.interval.second);
  }
  SUBCASE("figure 2: interpolant beats Taylor, error quarters with delta") {
    const Precision p = required_precision(5, num("1/20"));
    auto band = Bandlimit::create(BigReal(1, p));
    auto pts = figure2(p);
    auto f = realline::min_energy_signal(pts, band);
    auto poly = least_degree_interpolant(pts);
    auto r = stretch_sup_error(f, poly, 4 * kSamplesPerGap);
    CHECK(r.sup_error < num("1/10", p));
    CHECK(abs(r.delta - BigReal::rational(1, 10, p)) < eps_of(p) * eps_of(p));
    CHECK(r.interval.first == BigReal::rational(1, 10, p));
    CHECK(r.interval.second == BigReal::rational(1, 2, p));
    auto taylor = taylor_polynomial(f, BigReal::rational(3, 10, p), 4);
    CHECK(r.sup_error < stretch_sup_error(f, taylor, 4 * kSamplesPerGap).sup_error);

    RealVector t, a;
    for (std::size_t i = 0; i < 5; ++i) {
      t.push_back(pts.times()[i] / 2);
      a.push_back(pts.amplitudes()[i]);
    }
    auto half = PointSet::create(t, a);
    auto fh = realline::min_energy_signal(half, band);
    auto rh = stretch_sup_error(fh, least_degree_interpolant(half), 4 * kSamplesPerGap);
    BigReal ratio = r.sup_error / rh.sup_error;
    CAPTURE(ratio.to_double());
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);

    // Doubling the grid moves the estimate by under 1%.
    auto fine = stretch_sup_error(f, poly, 8 * kSamplesPerGap);
    CHECK(oracle::rel_diff(fine.sup_error, r.sup_error) < num("1/100", p));

    // L2 bridge: ||f - p||_2 on I <= sqrt(|I|) sup_I |f - p|.
    auto l2 = integrate_composite(
        [&](const BigReal& x) {
          BigReal d = realline::evaluate(f, x) - poly(x);
          return d * d;
        },
        r.interval.first, r.interval.second, 8, 24);
    CHECK(sqrt(l2.value) <= sqrt(r.interval.second - r.interval.first) * r.sup_error);
  }
  SUBCASE("grid too coarse") {
    auto pts = points({{"0", "1"}, {"1", "2"}});
    auto f = realline::min_energy_signal(pts, Bandlimit::create(num("1")));
    CHECK_THROWS_AS(stretch_sup_error(f, least_degree_interpolant(pts), 99), Error);
  }
}

TEST_CASE("log_log_slope fitter") {
  RealVector xs, ys;
  for (auto s : {"1/10", "1/20", "1/40", "1/80"}) {
    xs.push_back(num(s));
    ys.push_back(num(s) * num(s) * 7);
  }
  CHECK(abs(log_log_slope(xs, ys) - 2) < eps_of(kP));
  RealVector same(4, num("1/10"));
  try {
    log_log_slope(same, ys);
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFit);
  }
}

TEST_CASE("delta^2 law and monotonicity for N = 3, 4, 5") {
  RealVector deltas{num("1/10"), num("1/20"), num("1/40"), num("1/80")};
  auto band = Bandlimit::create(num("1"));
  for (long n : {3L, 4L, 5L}) {
    CAPTURE(n);
    BigReal slope = delta_scaling_exponent(alternating(n, num("1")), band, deltas);
    CAPTURE(slope.to_double());
    CHECK(slope >= num("1.7"));
    CHECK(slope <= num("2.3"));

    BigReal previous(kP);
    bool first = true;
    for (const auto& d : deltas) {
      const Precision p = required_precision(n, d);
      auto pts = alternating(n, d.rounded_to(p));
      auto f = realline::min_energy_signal(pts, Bandlimit::create(BigReal(1, p)));
      auto err = stretch_sup_error(f, least_degree_interpolant(pts), kSamplesPerGap * (n - 1)).sup_error;
      if (!first) CHECK(err <= previous);
      previous = err;
      first = false;
    }
  }
}

TEST_CASE("chebyshev_nodes") {
  auto one = chebyshev_nodes(1, num("-1"), num("1"));
  REQUIRE(one.size() == 1);
  CHECK(abs(one[0]) < eps_of(kP) * eps_of(kP) * 16);
  auto two = chebyshev_nodes(2, num("-1"), num("1"));
  BigReal h = sqrt(num("2")) / 2;
  CHECK(abs(two[0] + h) < eps_of(kP) * eps_of(kP) * 16);
  CHECK(abs(two[1] - h) < eps_of(kP) * eps_of(kP) * 16);
  auto four = chebyshev_nodes(4, num("0"), num("1"));
  for (long k = 0; k < 4; ++k) {
    BigReal expected = (1 + cos(pi(kP) * (2 * (3 - k) + 1) / 8)) / 2;
    CHECK(abs(four[k] - expected) < eps_of(kP) * eps_of(kP) * 16);
    if (k > 0) CHECK(four[k - 1] < four[k]);
  }
  CHECK_THROWS_AS(chebyshev_nodes(0, num("0"), num("1")), Error);
}

TEST_CASE("taylor_polynomial") {
  SUBCASE("sinc at the origin") {
    auto pts = points({{"0", "1"}});
    auto f = realline::min_energy_signal(pts, Bandlimit::create(num("1")));
    auto t2 = taylor_polynomial(f, num("0"), 2);
    REQUIRE(t2.coefficients().size() == 3);
    CHECK(abs(t2.coefficients()[0] - 1) < eps_of(kP) * eps_of(kP));
    CHECK(t2.coefficients()[1].is_zero());
    CHECK(abs(t2.coefficients()[2] + BigReal::rational(1, 6, kP)) < eps_of(kP) * eps_of(kP));
  }
  SUBCASE("degree 0 is the value at the centre") {
    auto f = realline::min_energy_signal(figure2(kP), Bandlimit::create(num("1")));
    auto t0 = taylor_polynomial(f, num("7/20"), 0);
    CHECK(oracle::rel_diff(t0(num("0")), realline::evaluate(f, num("7/20"))) < eps_of(kP));
  }
  SUBCASE("local error is O(h^{d+1}), d = 3, even for distant nodes") {
    // Nodes 30 units from the centre exercise the cancelling series.
    auto pts = points({{"-30", "1"}, {"0", "-2"}, {"31/2", "1/2"}});
    auto f = realline::min_energy_signal(pts, Bandlimit::create(num("2")));
    BigReal c = num("1/3");
    auto t3 = taylor_polynomial(f, c, 3);
    BigReal e1 = abs(realline::evaluate(f, c + num("1e-3")) - t3(c + num("1e-3")));
    BigReal e2 = abs(realline::evaluate(f, c + num("5e-4")) - t3(c + num("5e-4")));
    BigReal ratio = e1 / e2;
    CAPTURE(ratio.to_double());
    CHECK(ratio > 15);
    CHECK(ratio < 17);
  }
}

TEST_CASE("recursion_quad") {
  const BigReal tol = eps_of(kP) * eps_of(kP);
  auto q0 = recursion_quad(0, kP);
  check_poly(q0.a, {1}, tol);
  CHECK(q0.b.is_zero());
  check_poly(q0.c, {-1}, tol);
  check_poly(q0.d, {0, 1}, tol);
  auto q1 = recursion_quad(1, kP);
  check_poly(q1.a, {-2, 0, 1}, tol);
  check_poly(q1.b, {0, 2}, tol);
  check_poly(q1.c, {6, 0, -3}, tol);
  check_poly(q1.d, {0, -6, 0, 1}, tol);
  auto q2 = recursion_quad(2, kP);
  check_poly(q2.a, {24, 0, -12, 0, 1}, tol);
  for (long n = 1; n <= 6; ++n) {
    auto q = recursion_quad(n, kP);
    CHECK(q.a.degree() == 2 * n);
    CHECK(q.b.degree() == 2 * n - 1);
    CHECK(q.c.degree() == 2 * n);
    CHECK(q.d.degree() == 2 * n + 1);
  }
}

TEST_CASE("monomial_truncated_ft examples") {
  SUBCASE("power 0") {
    for (auto ts : {"1/3", "2", "-7"}) {
      BigReal t = num(ts), l = num("3/2");
      auto v = monomial_truncated_ft(0, l, t);
      CHECK(oracle::rel_diff(v.real(), 2 * sin(l * t) / t) < eps_of(kP) * eps_of(kP) * 64);
      CHECK(v.imag().is_zero());
    }
  }
  SUBCASE("power 1 vanishes at t = 0") {
    CHECK(monomial_truncated_ft(1, num("1"), num("0")).norm().is_zero());
    auto tiny = monomial_truncated_ft(1, num("1"), num("1e-40"));
    CHECK(abs(tiny.imag()) < num("1e-39"));
  }
  SUBCASE("power 2 against quadrature") {
    auto v = monomial_truncated_ft(2, num("1"), num("1"));
    auto q = ft_by_quadrature(2, num("1"), num("1"));
    CHECK(abs(v.real() - q.real()) < num("1e-30"));
    CHECK(abs(v.imag() - q.imag()) < num("1e-30"));
  }
  SUBCASE("value at t = 0") {
    CHECK(oracle::rel_diff(monomial_truncated_ft(4, num("2"), num("0")).real(),
                           2 * pow(num("2"), 5) / 5) < eps_of(kP) * eps_of(kP));
  }
}

TEST_CASE("monomial_truncated_ft matches quadrature over the grid") {
  for (long power = 0; power <= 8; ++power) {
    for (auto ls : {"1/2", "1", "2"}) {
      for (auto ts : {"1/10", "1", "10"}) {
        CAPTURE(power);
        CAPTURE(ls);
        CAPTURE(ts);
        BigReal l = num(ls), t = num(ts);
        auto v = monomial_truncated_ft(power, l, t);
        auto q = ft_by_quadrature(power, l, t);
        const BigReal tol = num("1e-25");
        if (power % 2 == 0) {
          CHECK(v.imag().is_zero());
          CHECK(oracle::rel_diff(v.real(), q.real()) < tol);
        } else {
          CHECK(v.real().is_zero());
          CHECK(oracle::rel_diff(v.imag(), q.imag()) < tol);
        }
      }
    }
  }
}

TEST_CASE("small-t branch is continuous with the closed form") {
  BigReal cutoff = ldexp(BigReal(1, kP), -kP.bits() / 8);
  for (long power = 0; power <= 8; ++power) {
    for (auto ls : {"1/2", "1", "2"}) {
      CAPTURE(power);
      CAPTURE(ls);
      BigReal l = num(ls);
      BigReal t = cutoff / l;
      auto series = monomial_truncated_ft_series(power, l, t);
      auto closed = monomial_truncated_ft_closed(power, l, t);
      BigReal scale = max(abs(closed.real()), abs(closed.imag()));
      CHECK(abs(series.real() - closed.real()) / scale < num("1e-25"));
      CHECK(abs(series.imag() - closed.imag()) / scale < num("1e-25"));
    }
  }
}

TEST_CASE("polynomial_truncated_ft") {
  BigReal l = num("1"), t = num("2");
  auto one = polynomial_truncated_ft(Polynomial(RealVector{num("1")}), l, t);
  CHECK(oracle::rel_diff(one.real(), 2 * sin(l * t) / t) < eps_of(kP) * eps_of(kP) * 64);
  auto sum = polynomial_truncated_ft(Polynomial(RealVector{num("1"), num("0"), num("1")}), l, t);
  auto parts = monomial_truncated_ft(0, l, t) + monomial_truncated_ft(2, l, t);
  CHECK(abs(sum.real() - parts.real()) < eps_of(kP) * eps_of(kP) * 64);

  // Centred figure 2 interpolant on its stretch.
  auto pts = figure2(kP);
  auto p = shift_argument(least_degree_interpolant(pts), num("-3/10"));
  BigReal half = num("1/5");
  for (auto ts : {"1/10", "1", "5", "20"}) {
    BigReal w = num(ts);
    auto v = polynomial_truncated_ft(p, half, w);
    auto re = integrate_composite([&](const BigReal& x) { return p(x) * cos(w * x); }, -half, half, 4, 48);
    auto im = integrate_composite([&](const BigReal& x) { return -(p(x) * sin(w * x)); }, -half, half, 4, 48);
    BigReal scale = max(abs(re.value), abs(im.value));
    CHECK(abs(v.real() - re.value) / scale < num("1e-25"));
    CHECK(abs(v.imag() - im.value) / scale < num("1e-25"));
  }
}
