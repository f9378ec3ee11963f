#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kcost/geometry.hpp"

namespace kcost {

struct CoverResult {
    double radius = 0.0;  // diameter bound r; parts absorb within r/2
    std::vector<std::vector<std::size_t>> parts;

    std::size_t size() const { return parts.size(); }
};

// Greedy diameter-r cover of `subset` (global indices into m): the first
// unassigned index opens a part and absorbs everything within r/2 of it, so
// each part has diameter <= r by the triangle inequality. Greedy only ever
// over-counts the optimal cover size.
CoverResult greedy_cover(const FiniteMetric& m, std::span<const std::size_t> subset,
                         double r);
CoverResult greedy_cover(const FiniteMetric& m, double r);

double diameter(const FiniteMetric& m, std::span<const std::size_t> subset);

// Largest log2(cover size at half diameter) over the whole space plus
// sampled balls. Upper-bound flavored: greedy covers over-count.
double estimate_doubling(const FiniteMetric& m, std::size_t sample_balls,
                         std::uint64_t seed);

// Largest greedy cover size of a ball M(c, r) at scale epsilon * r, over the
// full-diameter ball plus sampled (c, r) pairs.
std::size_t gamma_estimate(const FiniteMetric& m, double epsilon,
                           std::size_t sample_balls, std::uint64_t seed);

}  // namespace kcost
