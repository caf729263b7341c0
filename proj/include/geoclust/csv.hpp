#pragma once

#include <string>

#include "geoclust/geometry.hpp"

namespace geoclust {

/// Reads a points file: one point per row, d numeric columns, optional header.
/// Dimension is inferred from the first data row.
PointSet read_points_csv(const std::string& path);

/// Writes points with full round-trip precision, no header.
void write_points_csv(const std::string& path, const PointSet& points);

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);

}  // namespace geoclust
