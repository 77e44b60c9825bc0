#include "superosc/cli/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "superosc/io/points_parser.hpp"
#include "superosc/mpnum/precision.hpp"
#include "superosc/periodic.hpp"
#include "superosc/realline.hpp"
#include "superosc/scalinglab.hpp"
#include "superosc/stretch.hpp"

namespace superosc::cli {

namespace {

constexpr std::string_view kFigure2Points = "1/10:-1, 1/5:1, 3/10:-1, 2/5:1, 1/2:-1";
constexpr std::string_view kFigure3Points =
    "-3/10:1, -1/5:-1, -1/10:1, 0:-1, 1/10:1, 1/5:-1, 3/10:1";

// Points are parsed twice: once at a provisional precision to size the
// problem, then again at the working precision.
constexpr long kProbeBits = 256;

struct NamedCommand {
  Command command;
  std::string_view name;
};

constexpr NamedCommand kCommands[] = {
    {Command::DesignReal, "design-real"},
    {Command::DesignPeriodic, "design-periodic"},
    {Command::Eigen, "eigen"},
    {Command::Sensitivity, "sensitivity"},
    {Command::Stretch, "stretch"},
    {Command::Ft, "ft"},
    {Command::Sweep, "sweep"},
    {Command::Fit, "fit"},
    {Command::ReproduceFigure, "reproduce-figure"},
};

std::optional<long> env_precision() {
  const char* value = std::getenv("SUPEROSC_PRECISION_BITS");
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  long bits = std::strtol(value, &end, 10);
  if (*end != '\0' || bits <= 0) {
    throw Error(ErrorKind::InvalidArgument,
                std::string("SUPEROSC_PRECISION_BITS is not a positive integer: ") + value);
  }
  return bits;
}

Precision resolve_precision(const RunConfig& config, Precision automatic) {
  if (config.precision_bits) return Precision(*config.precision_bits);
  if (auto bits = env_precision()) return Precision(*bits);
  return automatic;
}

BigReal min_gap(const RealVector& sorted_times) {
  BigReal gap = sorted_times.size() > 1 ? sorted_times[1] - sorted_times[0] : BigReal(1, Precision(64));
  for (std::size_t i = 1; i < sorted_times.size(); ++i) gap = min(gap, sorted_times[i] - sorted_times[i - 1]);
  return gap;
}

BigReal parse_mu(const RunConfig& config, Precision p) {
  return config.mu ? BigReal::parse(*config.mu, p) : BigReal(1, p);
}

std::string points_source(const RunConfig& config) {
  if (!config.points) throw Error(ErrorKind::InvalidArgument, "--points is required for this command");
  return *config.points;
}

struct RealProblem {
  realline::PointSet points;
  realline::Bandlimit bandlimit;
  Precision precision;
};

RealProblem real_problem(const RunConfig& config, std::string_view source) {
  Precision probe(kProbeBits);
  auto draft = io::parse_points(source, probe);
  BigReal mu = parse_mu(config, probe);
  Precision automatic = required_precision(static_cast<long>(draft.size()),
                                           mu * min_gap(draft.times()));
  Precision p = resolve_precision(config, automatic);
  auto points = io::parse_points(source, p);
  return RealProblem{std::move(points), realline::Bandlimit::create(parse_mu(config, p)), p};
}

struct PeriodicProblem {
  periodic::PeriodicPointSet points;
  periodic::PeriodicBandlimit bandlimit;
  Precision precision;
};

PeriodicProblem periodic_problem(const RunConfig& config, std::string_view source) {
  if (!config.big_m) throw Error(ErrorKind::InvalidArgument, "--big-m is required for this command");
  auto bandlimit = periodic::PeriodicBandlimit::create(*config.big_m);
  Precision probe(kProbeBits);
  auto raw = io::load_points(source, probe);
  RealVector sorted = raw.times;
  std::sort(sorted.begin(), sorted.end(), [](const BigReal& a, const BigReal& b) { return a < b; });
  BigReal gap = min_gap(sorted);
  Precision automatic(kPrecisionFloorBits);
  if (gap.sign() > 0) {
    automatic = scalinglab::sweep_precision(static_cast<long>(sorted.size()), gap * bandlimit.m);
  }
  Precision p = resolve_precision(config, automatic);
  return PeriodicProblem{io::parse_periodic_points(source, p), bandlimit, p};
}

RealVector make_grid(const Sampling& sampling, Precision p) {
  if (sampling.count < 2) throw Error(ErrorKind::InvalidArgument, "--sample count must be at least 2");
  BigReal lo = BigReal::parse(sampling.t_min, p);
  BigReal hi = BigReal::parse(sampling.t_max, p);
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "--sample needs t_min < t_max");
  RealVector grid;
  grid.reserve(static_cast<std::size_t>(sampling.count));
  for (long i = 0; i < sampling.count; ++i) grid.push_back(lo + (hi - lo) * i / (sampling.count - 1));
  return grid;
}

RealVector uniform_grid(const BigReal& lo, const BigReal& hi, long count) {
  RealVector grid;
  for (long i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
  return grid;
}

io::SignalDump new_dump(std::string_view command, Precision p) {
  io::SignalDump dump;
  dump.add_meta("command", std::string(command));
  dump.add_meta("precision_bits", std::to_string(p.bits()));
  dump.add_meta("version", std::string(io::kArtifactVersion));
  return dump;
}

std::string fmt(const BigReal& v, Precision p) { return io::format_value(v, p); }

void emit(const RunConfig& config, const io::SignalDump& dump) {
  io::write_dump(dump, config.format, config.out);
}

// --- real line -----------------------------------------------------------

io::SignalDump design_real(const RunConfig& config, std::string_view source,
                           const std::optional<Sampling>& fallback) {
  auto problem = real_problem(config, source);
  const Precision p = problem.precision;
  auto signal = realline::min_energy_signal(problem.points, problem.bandlimit);
  Sampling sampling = config.sample ? *config.sample : fallback.value_or(Sampling{"-10", "10", 201});
  RealVector grid = make_grid(sampling, p);
  RealVector values = realline::sample(signal, grid);

  auto dump = new_dump("design-real", p);
  dump.add_meta("mu", fmt(problem.bandlimit.mu, p));
  dump.add_meta("points", std::to_string(problem.points.size()));
  dump.add_meta("energy", fmt(realline::energy(signal), p));
  dump.columns = {"t", "value"};
  for (std::size_t i = 0; i < grid.size(); ++i) dump.add_row({fmt(grid[i], p), fmt(values[i], p)});
  return dump;
}

realline::PointSet eigen_points(const RunConfig& config, Precision p) {
  if (config.points) return io::parse_points(*config.points, p);
  if (!config.n || !config.delta) {
    throw Error(ErrorKind::InvalidArgument, "eigen needs --points or both --n and --delta");
  }
  RealVector amps(static_cast<std::size_t>(*config.n), BigReal(1, p));
  return realline::PointSet::equispaced(static_cast<std::size_t>(*config.n),
                                        BigReal::parse(*config.delta, p), BigReal(p), std::move(amps));
}

io::SignalDump eigen(const RunConfig& config) {
  Precision probe(kProbeBits);
  auto draft = eigen_points(config, probe);
  Precision automatic = required_precision(static_cast<long>(draft.size()),
                                           parse_mu(config, probe) * min_gap(draft.times()));
  Precision p = resolve_precision(config, automatic);
  auto points = eigen_points(config, p);
  auto bandlimit = realline::Bandlimit::create(parse_mu(config, p));
  auto decomposition = eigen_symmetric(realline::prolate_matrix(points, bandlimit));

  auto dump = new_dump("eigen", p);
  dump.add_meta("mu", fmt(bandlimit.mu, p));
  dump.add_meta("points", std::to_string(points.size()));
  const bool equispaced = !config.points;
  dump.columns = {"k", "lambda"};
  if (equispaced) dump.columns.push_back("lambda_asymptotic");
  const long n = static_cast<long>(points.size());
  for (long k = 0; k < n; ++k) {
    std::vector<std::string> row{std::to_string(k), fmt(decomposition.values[k], p)};
    if (equispaced) {
      row.push_back(fmt(realline::asymptotic_lambda(n, bandlimit.mu, points.max_spacing(), k), p));
    }
    dump.add_row(std::move(row));
  }
  return dump;
}

io::SignalDump sensitivity(const RunConfig& config) {
  auto problem = real_problem(config, points_source(config));
  const Precision p = problem.precision;
  auto rho = realline::prolate_matrix(problem.points, problem.bandlimit);
  auto signal = realline::min_energy_signal(problem.points, problem.bandlimit);
  auto decomposition = eigen_symmetric(rho);
  RealVector dc = decomposition.vector(0);
  for (auto& v : dc) v *= BigReal::parse("1e-6", p);
  auto report = realline::propagate_perturbation(rho, dc, problem.points.amplitudes(), signal.coefficients);

  auto dump = new_dump("sensitivity", p);
  dump.add_meta("mu", fmt(problem.bandlimit.mu, p));
  dump.add_meta("perturbation", "1e-6 * v_0");
  dump.columns = {"quantity", "value"};
  dump.add_row({"energy", fmt(realline::energy(signal), p)});
  dump.add_row({"energy_upper_bound",
                fmt(realline::energy_upper_bound(problem.points.amplitudes(), decomposition.smallest()), p)});
  dump.add_row({"lambda_0", fmt(decomposition.values.front(), p)});
  dump.add_row({"lambda_star", fmt(decomposition.smallest(), p)});
  dump.add_row({"threshold", fmt(report.threshold, p)});
  dump.add_row({"relative_magnitude", fmt(report.relative_magnitude, p)});
  dump.add_row({"coefficient_relative_perturbation", fmt(norm2(dc) / norm2(signal.coefficients), p)});
  return dump;
}

io::SignalDump stretch_table(const RunConfig& config, std::string_view source, std::string_view command) {
  auto problem = real_problem(config, source);
  const Precision p = problem.precision;
  auto signal = realline::min_energy_signal(problem.points, problem.bandlimit);
  auto poly = stretch::least_degree_interpolant(problem.points);
  const auto& times = problem.points.times();
  BigReal center = (times.front() + times.back()) / 2;
  const long degree = static_cast<long>(problem.points.size()) - 1;
  auto taylor = stretch::taylor_polynomial(signal, center, degree);

  const std::size_t sup_grid =
      std::max<std::size_t>(100, stretch::kSamplesPerGap * static_cast<std::size_t>(std::max(1L, degree)));
  auto poly_report = stretch::stretch_sup_error(signal, poly, sup_grid);
  auto taylor_report = stretch::stretch_sup_error(signal, taylor, sup_grid);

  RealVector grid = config.sample ? make_grid(*config.sample, p) : uniform_grid(times.front(), times.back(), 201);
  RealVector values = realline::sample(signal, grid);

  auto dump = new_dump(command, p);
  dump.add_meta("mu", fmt(problem.bandlimit.mu, p));
  dump.add_meta("delta", fmt(poly_report.delta, p));
  dump.add_meta("sup_error_interpolant", fmt(poly_report.sup_error, p));
  dump.add_meta("sup_error_taylor", fmt(taylor_report.sup_error, p));
  dump.add_meta("taylor_degree", std::to_string(degree));
  dump.columns = {"t", "value", "interpolant", "taylor"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dump.add_row({fmt(grid[i], p), fmt(values[i], p), fmt(poly(grid[i]), p), fmt(taylor(grid[i]), p)});
  }
  return dump;
}

io::SignalDump ft(const RunConfig& config) {
  Precision p(kPrecisionFloorBits);
  stretch::Polynomial poly;
  BigReal half_width;
  std::string subject;
  if (config.points) {
    auto problem = real_problem(config, *config.points);
    p = problem.precision;
    const auto& times = problem.points.times();
    BigReal center = (times.front() + times.back()) / 2;
    half_width = (times.back() - times.front()) / 2;
    // Re-centre the interpolant on [-L, L].
    poly = stretch::shift_argument(stretch::least_degree_interpolant(problem.points), -center);
    subject = "centred least-degree interpolant";
  } else {
    if (!config.n) throw Error(ErrorKind::InvalidArgument, "ft needs --points or --n (monomial power)");
    p = resolve_precision(config, p);
    half_width = config.delta ? BigReal::parse(*config.delta, p) : BigReal(1, p);
    poly = stretch::monomial(*config.n, BigReal(1, p));
    subject = "x^" + std::to_string(*config.n);
  }
  if (!(half_width.sign() > 0)) throw Error(ErrorKind::InvalidArgument, "ft needs a positive half-width");
  RealVector grid = config.sample ? make_grid(*config.sample, p) : make_grid(Sampling{"1/10", "20", 200}, p);

  auto dump = new_dump("ft", p);
  dump.add_meta("polynomial", subject);
  dump.add_meta("half_width", fmt(half_width, p));
  dump.columns = {"t", "re", "im"};
  std::vector<BigComplex> values = parallel_map<BigComplex>(
      grid.size(), [&](std::size_t i) { return stretch::polynomial_truncated_ft(poly, half_width, grid[i]); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dump.add_row({fmt(grid[i], p), fmt(values[i].real(), p), fmt(values[i].imag(), p)});
  }
  return dump;
}

// --- periodic ------------------------------------------------------------

io::SignalDump design_periodic(const RunConfig& config) {
  auto problem = periodic_problem(config, points_source(config));
  const Precision p = problem.precision;
  auto signal = periodic::min_energy_periodic(problem.points, problem.bandlimit);
  RealVector grid = config.sample ? make_grid(*config.sample, p) : uniform_grid(-pi(p), pi(p), 201);
  auto values = periodic::sample_periodic(signal, grid);

  auto dump = new_dump("design-periodic", p);
  dump.add_meta("M", std::to_string(problem.bandlimit.m));
  dump.add_meta("points", std::to_string(problem.points.size()));
  dump.add_meta("energy", fmt(periodic::energy_periodic(signal, problem.points), p));
  BigReal max_imag(p);
  for (const auto& v : values) max_imag = max(max_imag, abs(v.imag()));
  dump.add_meta("max_abs_imag", fmt(max_imag, p));
  dump.columns = {"t", "value"};
  for (std::size_t i = 0; i < grid.size(); ++i) dump.add_row({fmt(grid[i], p), fmt(values[i].real(), p)});
  return dump;
}

// --- scaling study -------------------------------------------------------

scalinglab::SweepSpec sweep_spec(const RunConfig& config) {
  auto spec = scalinglab::SweepSpec::standard();
  if (config.big_m) spec.m_values = {*config.big_m};
  return spec;
}

io::SignalDump sweep_dump(const std::vector<scalinglab::SweepRow>& rows, std::string_view command) {
  Precision widest(64);
  for (const auto& row : rows) widest = max(widest, row.lambda_star.precision());
  auto dump = new_dump(command, widest);
  dump.columns = {"M", "delta", "lambda_star", "lambda_star_per", "ratio"};
  for (const auto& row : rows) {
    Precision p = row.lambda_star.precision();
    dump.add_row({std::to_string(row.m), fmt(row.delta, p), fmt(row.lambda_star, p),
                  fmt(row.lambda_star_per, p), fmt(row.ratio, p)});
  }
  return dump;
}

io::SignalDump fit_dump(const scalinglab::ScalingStudy& study) {
  const Precision p(kPrecisionFloorBits);
  auto dump = new_dump("fit", p);
  dump.add_meta("slope", fmt(study.fit.slope, p));
  dump.add_meta("intercept", fmt(study.fit.intercept, p));
  dump.add_meta("residual_rms", fmt(study.fit.residual_rms, p));
  dump.add_meta("C", "lambda_star / lambda_star_per at the smallest delta");
  dump.columns = {"M", "C", "ln_C", "relative_change"};
  for (const auto& limit : study.limits) {
    BigReal c = scalinglab::periodic_energy_penalty(limit);
    dump.add_row({std::to_string(limit.m), fmt(c, p), fmt(log(c), p), fmt(limit.relative_change, p)});
  }
  return dump;
}

// --- figures -------------------------------------------------------------

std::filesystem::path figure_dir(const RunConfig& config) {
  std::filesystem::path dir = config.out == "-" ? std::filesystem::path(".") : std::filesystem::path(config.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void reproduce_figure(const RunConfig& config) {
  if (!config.figure) throw Error(ErrorKind::InvalidArgument, "reproduce-figure needs --figure 1..4");
  const auto dir = figure_dir(config);
  const int figure = *config.figure;
  const std::string ext(io::extension(config.format));
  RunConfig local = config;
  switch (figure) {
    case 1: {
      local.mu = "1";
      auto dump = design_real(local, kFigure2Points, Sampling{"-20", "20", 801});
      dump.meta.front().second = "reproduce-figure 1";
      io::write_dump(dump, config.format, dir / ("fig1" + ext));
      return;
    }
    case 2: {
      local.mu = "1";
      if (!local.sample) local.sample = Sampling{"0", "3/5", 601};
      auto dump = stretch_table(local, kFigure2Points, "reproduce-figure 2");
      io::write_dump(dump, config.format, dir / ("fig2" + ext));
      return;
    }
    case 3: {
      local.big_m = 3;
      auto problem = periodic_problem(local, kFigure3Points);
      const Precision p = problem.precision;
      auto per = periodic::min_energy_periodic(problem.points, problem.bandlimit);
      auto real_points = io::parse_points(kFigure3Points, p);
      auto real = realline::min_energy_signal(real_points, realline::Bandlimit::create(BigReal(3, p)));
      RealVector grid = local.sample ? make_grid(*local.sample, p) : uniform_grid(-pi(p), pi(p), 801);
      auto per_values = periodic::sample_periodic(per, grid);
      auto real_values = realline::sample(real, grid);
      auto dump = new_dump("reproduce-figure 3", p);
      dump.add_meta("M", "3");
      dump.add_meta("mu", "3");
      dump.add_meta("energy_periodic", fmt(periodic::energy_periodic(per, problem.points), p));
      dump.add_meta("energy_real", fmt(realline::energy(real), p));
      dump.columns = {"t", "periodic", "real"};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dump.add_row({fmt(grid[i], p), fmt(per_values[i].real(), p), fmt(real_values[i], p)});
      }
      io::write_dump(dump, config.format, dir / ("fig3" + ext));
      return;
    }
    case 4: {
      auto study = scalinglab::run_scaling_study(sweep_spec(local));
      auto sweep = sweep_dump(study.rows, "reproduce-figure 4");
      io::write_dump(sweep, io::Format::Csv, dir / "fig4_sweep.csv");
      auto fit = fit_dump(study);
      fit.meta.front().second = "reproduce-figure 4";
      io::write_dump(fit, io::Format::Json, dir / "fig4_fit.json");
      return;
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "--figure must be 1, 2, 3 or 4");
  }
}

}  // namespace

Command parse_command(std::string_view name) {
  for (const auto& c : kCommands) {
    if (c.name == name) return c.command;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command command) {
  for (const auto& c : kCommands) {
    if (c.command == command) return c.name;
  }
  return "unknown";
}

Sampling Sampling::parse(std::string_view text) {
  auto first = text.find(':');
  auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw ParseError("expected t_min:t_max:count", 1, 1);
  }
  Sampling s{std::string(text.substr(0, first)), std::string(text.substr(first + 1, second - first - 1)), 0};
  std::string count(text.substr(second + 1));
  char* end = nullptr;
  s.count = std::strtol(count.c_str(), &end, 10);
  if (count.empty() || *end != '\0') {
    throw ParseError("sample count '" + count + "' is not an integer", 1, static_cast<int>(second) + 2);
  }
  return s;
}

void run(const RunConfig& config) {
  switch (config.command) {
    case Command::DesignReal:
      emit(config, design_real(config, points_source(config), std::nullopt));
      return;
    case Command::DesignPeriodic:
      emit(config, design_periodic(config));
      return;
    case Command::Eigen:
      emit(config, eigen(config));
      return;
    case Command::Sensitivity:
      emit(config, sensitivity(config));
      return;
    case Command::Stretch:
      emit(config, stretch_table(config, points_source(config), "stretch"));
      return;
    case Command::Ft:
      emit(config, ft(config));
      return;
    case Command::Sweep:
      emit(config, sweep_dump(scalinglab::run_sweep(sweep_spec(config)), "sweep"));
      return;
    case Command::Fit:
      emit(config, fit_dump(scalinglab::run_scaling_study(sweep_spec(config))));
      return;
    case Command::ReproduceFigure:
      reproduce_figure(config);
      return;
  }
}

std::string error_json(const std::exception& error) {
  nlohmann::ordered_json doc;
  if (const auto* e = dynamic_cast<const Error*>(&error)) {
    doc["error"] = std::string(to_string(e->kind()));
    doc["exit_code"] = exit_code(e->kind());
  } else {
    doc["error"] = "Internal";
    doc["exit_code"] = 1;
  }
  doc["message"] = error.what();
  if (const auto* e = dynamic_cast<const ParseError*>(&error)) {
    doc["line"] = e->line();
    doc["column"] = e->column();
  }
  return doc.dump();
}

int main_entry(int argc, char** argv, std::ostream& err) {
  CLI::App app{"Minimum-energy superoscillation synthesis and analysis"};
  std::string command;
  std::string format = "csv";
  std::string sample;
  RunConfig config;
  app.add_option("--command", command,
                 "design-real | design-periodic | eigen | sensitivity | stretch | ft | sweep | fit | "
                 "reproduce-figure")
      ->required();
  app.add_option("--points", config.points, "point file or inline 't:a, t:a, ...'");
  app.add_option("--mu", config.mu, "real-line bandlimit (decimal or p/q)");
  app.add_option("--big-m", config.big_m, "periodic bandlimit M");
  app.add_option("--delta", config.delta, "spacing (eigen) or half-width (ft)");
  app.add_option("--n", config.n, "point count (eigen) or monomial power (ft)");
  app.add_option("--precision-bits", config.precision_bits, "working precision; default automatic");
  app.add_option("--sample", sample, "t_min:t_max:count");
  app.add_option("--out", config.out, "output file, '-' for stdout, directory for reproduce-figure");
  app.add_option("--format", format, "csv | json");
  app.add_option("--figure", config.figure, "figure number for reproduce-figure");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    config.command = parse_command(command);
    config.format = io::parse_format(format);
    if (!sample.empty()) config.sample = Sampling::parse(sample);
    run(config);
  } catch (const std::exception& e) {
    err << error_json(e) << "\n";
    if (const auto* se = dynamic_cast<const Error*>(&e)) return exit_code(se->kind());
    return 1;
  }
  return 0;
}

}  // namespace superosc::cli
