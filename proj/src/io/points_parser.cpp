#include "superosc/io/points_parser.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace superosc::io {

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

BigReal parse_number(std::string_view text, Precision precision, int line, int column) {
  if (text.empty()) throw ParseError("missing number", line, column);
  try {
    return BigReal::parse(text, precision);
  } catch (const ParseError& e) {
    throw ParseError(e.reason(), line, column + e.column() - 1);
  }
}

}  // namespace

RawPoints parse_point_text(std::string_view text, Precision precision) {
  RawPoints out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (is_separator(c)) {
      ++column;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    const int start_column = column;
    while (i < text.size() && !is_separator(text[i]) && text[i] != '#') {
      ++i;
      ++column;
    }
    std::string_view token = text.substr(start, i - start);
    std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 't:a' but found '" + std::string(token) + "'", line, start_column);
    }
    out.times.push_back(parse_number(token.substr(0, colon), precision, line, start_column));
    out.amplitudes.push_back(parse_number(token.substr(colon + 1), precision, line,
                                          start_column + static_cast<int>(colon) + 1));
  }
  if (out.times.empty()) throw ParseError("no points given", line, column);
  return out;
}

RawPoints load_points(std::string_view source, Precision precision) {
  std::filesystem::path path{std::string(source)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_point_text(buffer.str(), precision);
  }
  return parse_point_text(source, precision);
}

realline::PointSet parse_points(std::string_view source, Precision precision) {
  RawPoints raw = load_points(source, precision);
  return realline::PointSet::create(std::move(raw.times), std::move(raw.amplitudes));
}

periodic::PeriodicPointSet parse_periodic_points(std::string_view source, Precision precision) {
  RawPoints raw = load_points(source, precision);
  return periodic::PeriodicPointSet::create(std::move(raw.times), std::move(raw.amplitudes));
}

}  // namespace superosc::io
