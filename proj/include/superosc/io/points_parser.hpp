#pragma once

// Point lists are "t:a" tokens separated by commas, spaces or newlines. Each
// number is a decimal or p/q literal parsed exactly. '#' starts a comment.

#include <string_view>

#include "superosc/periodic.hpp"
#include "superosc/realline.hpp"

namespace superosc::io {

struct RawPoints {
  RealVector times;
  RealVector amplitudes;
};

/// Error ParseError with the 1-based line and column of the offending token.
RawPoints parse_point_text(std::string_view text, Precision precision);

/// Reads `source` as a file when one exists at that path, otherwise parses it
/// inline.
RawPoints load_points(std::string_view source, Precision precision);

realline::PointSet parse_points(std::string_view source, Precision precision);
periodic::PeriodicPointSet parse_periodic_points(std::string_view source, Precision precision);

}  // namespace superosc::io
