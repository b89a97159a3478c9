#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherestat/measure.hpp"

namespace spherestat::cli {

// Input rejected with a message naming the offending file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedPoints {
  std::vector<UnitVector> points;
  std::optional<std::vector<double>> weights;
};

// Reads sphere points from a CSV file: one point per row, coordinates
// separated by commas and/or whitespace, all rows of equal arity >= 2.
// Rows are renormalized on load. A `# weights` directive line marks a
// trailing weight column; other `#` lines are comments.
ParsedPoints parse_points(const std::string& path);

// Measure view of a parsed file: explicit weights if present, otherwise
// uniform 1/rows.
DiscreteMeasure measure_from(const ParsedPoints& parsed);

}  // namespace spherestat::cli
