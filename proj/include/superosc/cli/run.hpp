#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "superosc/io/signal_dump.hpp"

namespace superosc::cli {

enum class Command {
  DesignReal,
  DesignPeriodic,
  Eigen,
  Sensitivity,
  Stretch,
  Ft,
  Sweep,
  Fit,
  ReproduceFigure,
};

/// Error InvalidArgument for an unknown name.
Command parse_command(std::string_view name);
std::string_view command_name(Command command);

struct Sampling {
  std::string t_min;
  std::string t_max;
  long count = 0;

  /// "t_min:t_max:count"; Error ParseError on malformed text.
  static Sampling parse(std::string_view text);
};

struct RunConfig {
  Command command = Command::DesignReal;
  /// Unset means: SUPEROSC_PRECISION_BITS if present, else the automatic choice.
  std::optional<long> precision_bits;
  std::optional<std::string> points;
  std::optional<std::string> mu;
  std::optional<long> big_m;
  std::optional<std::string> delta;
  std::optional<long> n;
  std::optional<Sampling> sample;
  /// File, "-" for stdout, or a directory for reproduce-figure.
  std::string out = "-";
  io::Format format = io::Format::Csv;
  std::optional<int> figure;
};

/// Executes the configured pipeline. Module errors propagate as superosc::Error.
void run(const RunConfig& config);

/// Machine-readable error object written to stderr by main_entry.
std::string error_json(const std::exception& error);

/// Parses flags, runs, and maps errors to exit codes.
int main_entry(int argc, char** argv, std::ostream& err);

}  // namespace superosc::cli
