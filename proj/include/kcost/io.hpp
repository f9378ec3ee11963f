#pragma once

#include <string>

#include "kcost/geometry.hpp"
#include "kcost/solvers.hpp"

namespace kcost {

// Dataset CSV: one point per row, comma-separated coordinates, leading
// "# dim=<d>" header. WeightedSet CSV appends a final weight column.
// Values are written with 17 significant digits so reads round-trip exactly.
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(const std::string& path, const Dataset& x);

WeightedSet read_weighted_csv(const std::string& path);
void write_weighted_csv(const std::string& path, const WeightedSet& s);

// Square distance matrix, one row per line, no header.
FiniteMetric read_metric_csv(const std::string& path);
void write_metric_csv(const std::string& path, const FiniteMetric& m);

// Header "m,cost,exact"; exact is 0/1.
void write_curve_csv(const std::string& path, const DecayCurve& c);

std::string format_double(double v);  // shortest 17-digit form, round-trips

}  // namespace kcost
