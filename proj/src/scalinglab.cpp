#include "superosc/scalinglab.hpp"

#include <string>

#include "superosc/mpnum/precision.hpp"
#include "superosc/periodic.hpp"
#include "superosc/realline.hpp"

namespace superosc::scalinglab {

namespace {

void require_m(long m) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "scaling study needs M >= 2");
}

RealVector equispaced_times(long m, const BigReal& delta) {
  RealVector times;
  times.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) times.push_back(delta * i);
  return times;
}

}  // namespace

Precision sweep_precision(long m, const BigReal& smallest_m_delta) {
  return Precision(required_precision(m, smallest_m_delta).bits() + kPeriodicMarginBits);
}

BigReal lambda_star_real(long m, const BigReal& delta, Precision precision) {
  require_m(m);
  RealVector times = equispaced_times(m, delta.rounded_to(precision));
  auto rho = realline::prolate_matrix(times, realline::Bandlimit::create(BigReal(m, precision)));
  return eigen_symmetric(rho).smallest();
}

BigReal lambda_star_real(long m, const BigReal& delta) {
  return lambda_star_real(m, delta, required_precision(m, delta * m));
}

BigReal lambda_star_periodic(long m, const BigReal& delta, Precision precision) {
  require_m(m);
  RealVector times = equispaced_times(m, delta.rounded_to(precision));
  auto s = periodic::kernel_matrix(times, periodic::PeriodicBandlimit::create(m));
  return eigen_symmetric(s).smallest();
}

BigReal lambda_star_periodic(long m, const BigReal& delta) {
  return lambda_star_periodic(m, delta, sweep_precision(m, delta * m));
}

SweepSpec SweepSpec::standard() {
  SweepSpec spec;
  for (long m = 5; m <= 25; m += 2) spec.m_values.push_back(m);
  const Precision p(128);
  for (long den : {5L, 10L, 20L}) spec.m_delta_products.push_back(BigReal::rational(2, den, p));
  spec.m_delta_products.push_back(BigReal::rational(1, 20, p));
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, Execution execution) {
  if (spec.m_delta_products.empty() || spec.m_values.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs at least one M and one M*delta");
  }
  BigReal smallest = spec.m_delta_products.front();
  for (const auto& d : spec.m_delta_products) {
    if (!(d.sign() > 0)) throw Error(ErrorKind::InvalidArgument, "M*delta must be positive");
    smallest = min(smallest, d);
  }
  const std::size_t per_m = spec.m_delta_products.size();
  const std::size_t cells = spec.m_values.size() * per_m;

  // Real-line and periodic eigenproblems are independent jobs.
  std::vector<BigReal> real(cells), per(cells);
  parallel_for(
      2 * cells,
      [&](std::size_t job) {
        const std::size_t cell = job / 2;
        const long m = spec.m_values[cell / per_m];
        Precision p = sweep_precision(m, smallest);
        BigReal delta = spec.m_delta_products[cell % per_m].rounded_to(p) / m;
        if (job % 2 == 0) {
          real[cell] = lambda_star_real(m, delta, p);
        } else {
          per[cell] = lambda_star_periodic(m, delta, p);
        }
      },
      execution);

  std::vector<SweepRow> rows;
  rows.reserve(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const long m = spec.m_values[cell / per_m];
    Precision p = sweep_precision(m, smallest);
    SweepRow row;
    row.m = m;
    row.delta = spec.m_delta_products[cell % per_m].rounded_to(p) / m;
    row.ratio = per[cell] / real[cell];
    row.lambda_star = std::move(real[cell]);
    row.lambda_star_per = std::move(per[cell]);
    rows.push_back(std::move(row));
  }
  return rows;
}

RatioLimit ratio_limit(std::span<const SweepRow> rows) {
  if (rows.size() < 3) throw Error(ErrorKind::InvalidArgument, "ratio_limit needs at least 3 deltas");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].m != rows[0].m) throw Error(ErrorKind::InvalidArgument, "ratio_limit: rows mix M values");
    if (!(rows[i].delta < rows[i - 1].delta)) {
      throw Error(ErrorKind::InvalidArgument, "ratio_limit: deltas must be descending");
    }
  }
  const BigReal& last = rows.back().ratio;
  const BigReal& prev = rows[rows.size() - 2].ratio;
  RatioLimit limit{rows[0].m, last, abs(last - prev) / abs(last)};
  if (limit.relative_change.to_double() > kCauchyTolerance) {
    throw Error(ErrorKind::NotConverged, "ratio for M = " + std::to_string(limit.m) +
                                             " changed by " + limit.relative_change.to_string(6) +
                                             " between the two smallest deltas");
  }
  return limit;
}

RatioLimit ratio_limit(long m, std::span<const BigReal> deltas, Execution execution) {
  require_m(m);
  SweepSpec spec;
  spec.m_values = {m};
  for (const auto& d : deltas) spec.m_delta_products.push_back(d * m);
  auto rows = run_sweep(spec, execution);
  return ratio_limit(rows);
}

FitResult fit_log_c(std::span<const std::pair<long, BigReal>> points) {
  if (points.size() < 4) throw Error(ErrorKind::DegenerateFit, "fit_log_c needs at least 4 points");
  Precision p(64);
  for (const auto& [m, c] : points) {
    if (!(c.sign() > 0)) throw Error(ErrorKind::InvalidArgument, "fit_log_c: C must be positive");
    p = max(p, c.precision());
  }
  const long n = static_cast<long>(points.size());
  RealVector xs, ys;
  BigReal mx(p), my(p);
  for (const auto& [m, c] : points) {
    xs.emplace_back(m, p);
    ys.push_back(log(c.rounded_to(p)));
    mx += xs.back();
    my += ys.back();
  }
  mx /= n;
  my /= n;
  BigReal sxx(p), sxy(p);
  for (long i = 0; i < n; ++i) {
    BigReal dx = xs[i] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i] - my);
  }
  if (sxx.is_zero()) throw Error(ErrorKind::DegenerateFit, "fit_log_c: all M values are equal");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  BigReal ss(p);
  for (long i = 0; i < n; ++i) {
    BigReal r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual_rms = sqrt(ss / n);
  return fit;
}

BigReal periodic_energy_penalty(const RatioLimit& limit) { return 1 / limit.value; }

BigReal conjectured_lambda_per(long m, const BigReal& delta) {
  require_m(m);
  Precision p = delta.precision();
  BigReal pi_p = pi(p);
  BigReal mm1(m - 1, p);
  BigReal value = BigReal::rational(157, 1000, p) * pow(BigReal::rational(1093, 1000, p), m);
  value *= sqrt(pi_p) * pow(pi_p * delta * m, 2 * m - 1) * mm1 * sqrt(mm1);
  value /= ldexp(BigReal(2 * m - 1, p), 4 * m - 4);
  return value;
}

ScalingStudy run_scaling_study(const SweepSpec& spec, Execution execution) {
  ScalingStudy study;
  study.rows = run_sweep(spec, execution);
  const std::size_t per_m = spec.m_delta_products.size();
  std::vector<std::pair<long, BigReal>> points;
  for (std::size_t i = 0; i < spec.m_values.size(); ++i) {
    auto limit = ratio_limit(std::span<const SweepRow>(study.rows).subspan(i * per_m, per_m));
    points.emplace_back(limit.m, periodic_energy_penalty(limit));
    study.limits.push_back(std::move(limit));
  }
  study.fit = fit_log_c(points);
  return study;
}

}  // namespace superosc::scalinglab
