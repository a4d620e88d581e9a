#pragma once

// Text formats: JSON for states and reports, CSV / JSON for tables.
// Every float is written with %.9g so output is byte-stable.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nmd/correlations.hpp"
#include "nmd/state.hpp"

namespace nmd {

struct Table {
  std::string title;
  std::vector<std::string> meta;  // "key=value" parameter records
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);

/// {"re": [[..4..] x4], "im": [[..4..] x4]}
std::string density_to_json(const DensityMatrix& rho);
/// Throws std::invalid_argument on malformed input.
DensityMatrix density_from_json(std::string_view text);

/// [c_x, c_y, c_z]
std::string bell_to_json(const BellCoefficients& c);
BellCoefficients bell_from_json(std::string_view text);

/// {"I": .., "C": .., "D": .., "lambda_max": .., "axis": "x"}
std::string report_to_json(const CorrelationReport& r);
std::string report_csv_header();  // I,C,D
std::string report_csv_row(const CorrelationReport& r);

/// "# title | key=value | ..." then the column header, then rows.
void write_csv(std::ostream& os, const Table& table);
/// {"meta": {"title": .., key: value..}, "columns": [..], "rows": [[..]..]}
void write_json(std::ostream& os, const Table& table);

}  // namespace nmd
