#include "superosc/io/signal_dump.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "superosc/errors.hpp"

namespace superosc::io {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string_view extension(Format format) { return format == Format::Csv ? ".csv" : ".json"; }

void SignalDump::add_meta(std::string key, std::string value) {
  meta.emplace_back(std::move(key), std::move(value));
}

void SignalDump::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw Error(ErrorKind::DimensionMismatch, "row has " + std::to_string(cells.size()) +
                                                  " cells for " + std::to_string(columns.size()) +
                                                  " columns");
  }
  rows.push_back(std::move(cells));
}

std::string format_value(const BigReal& value, Precision precision) {
  return value.to_string(precision.decimal_digits());
}

std::string render(const SignalDump& dump, Format format) {
  if (format == Format::Json) {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : dump.meta) meta[k] = v;
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    doc["columns"] = dump.columns;
    doc["rows"] = dump.rows;
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& [k, v] : dump.meta) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < dump.columns.size(); ++i) out << (i ? "," : "") << dump.columns[i];
  out << "\n";
  for (const auto& row : dump.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void write_dump(const SignalDump& dump, Format format, const std::filesystem::path& path) {
  std::string text = render(dump, format);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
  out << text;
}

SignalDump parse_csv(std::string_view text) {
  SignalDump dump;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto colon = line.find(": ");
      if (colon == std::string::npos) throw ParseError("malformed metadata line", line_no, 1);
      dump.add_meta(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!header) {
      dump.columns = split(line);
      header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != dump.columns.size()) throw ParseError("row width differs from header", line_no, 1);
    dump.rows.push_back(std::move(cells));
  }
  return dump;
}

}  // namespace superosc::io
