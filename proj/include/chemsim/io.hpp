#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "chemsim/diagnostics.hpp"
#include "chemsim/grid.hpp"

namespace chemsim {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const DiagnosticsRow& row);

/// Parses a diagnostics.csv stream, checking the header against
/// kDiagnosticsColumns. Throws std::runtime_error on malformed input.
std::vector<std::array<double, 12>> read_csv(std::istream& is);

/// Header `dim n... h... t=<time>`, then one value per line in row-major order.
void write_snapshot(std::ostream& os, const Field& f, double t);
Field read_snapshot(std::istream& is, double* t = nullptr);

}  // namespace chemsim
