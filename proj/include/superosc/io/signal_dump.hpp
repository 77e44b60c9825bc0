#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superosc/mpnum/big_real.hpp"

namespace superosc::io {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

enum class Format { Csv, Json };

/// "csv" or "json"; Error InvalidArgument otherwise.
Format parse_format(std::string_view name);
std::string_view extension(Format format);

/// Plot-ready table with ordered metadata. Cells are already serialized.
struct SignalDump {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_meta(std::string key, std::string value);
  void add_row(std::vector<std::string> cells);
};

/// ceil(0.3 * bits) significant digits.
std::string format_value(const BigReal& value, Precision precision);

/// CSV: "# key: value" lines, a header row, then data rows.
/// JSON: {"meta": {...}, "columns": [...], "rows": [[...], ...]}.
std::string render(const SignalDump& dump, Format format);

/// Writes to `path`, or to stdout when path is "-".
void write_dump(const SignalDump& dump, Format format, const std::filesystem::path& path);

/// Inverse of the CSV rendering.
SignalDump parse_csv(std::string_view text);

}  // namespace superosc::io
