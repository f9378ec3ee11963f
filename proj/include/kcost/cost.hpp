#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kcost/geometry.hpp"

namespace kcost {

struct CostReport {
    double total = 0.0;
    CostKind kind = CostKind::means;
    std::vector<std::size_t> assignment;  // per point: index of serving center
    std::vector<double> per_center;       // cost contribution per center
};

// Sum over x of min_c distance(c, x, kind). Ties go to the lowest center index.
CostReport evaluate(const CenterSet& c, const Dataset& x, CostKind kind);

double evaluate_weighted(const CenterSet& c, const WeightedSet& s, CostKind kind);

Vec centroid(const Dataset& x);

// Weiszfeld iteration for the 1-center sum-of-distances minimizer (d >= 2).
Vec geometric_median(const Dataset& x, double rel_tol = 1e-9, int max_iters = 10000);

// Optimal 1-center cost: centroid cost for exponent 2; for exponent 1 the
// exact median in 1-d, geometric-median iteration otherwise.
double delta1(const Dataset& x, CostKind kind);

// Cells of point indices, one per center; ties to the lowest center index.
std::vector<std::vector<std::size_t>> voronoi_partition(const CenterSet& c,
                                                        const Dataset& x,
                                                        CostKind kind);

struct Clustering {
    CenterSet centers;
    std::vector<std::vector<std::size_t>> cells;
};

Clustering clustering_from_centers(const CenterSet& c, const Dataset& x, CostKind kind);

// Cost over a finite metric: centers and points are member indices.
double metric_cost(const FiniteMetric& m, std::span<const std::size_t> centers,
                   std::span<const std::size_t> ys);

}  // namespace kcost
