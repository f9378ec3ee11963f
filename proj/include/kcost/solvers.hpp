#pragma once

#include <cstdint>
#include <vector>

#include "kcost/cost.hpp"
#include "kcost/geometry.hpp"

namespace kcost {

enum class SolveMethod { dp1d, enumerate, lloyd_multistart };
const char* solve_method_name(SolveMethod m);
SolveMethod solve_method_from_name(const std::string& s);

struct OptimalCostResult {
    double value = 0.0;
    CenterSet centers;
    bool exact = false;
    SolveMethod method = SolveMethod::dp1d;
};

// Exact k-clustering of 1-d data: dynamic program over the sorted order
// (optimal clusters are contiguous there), interval costs from prefix sums.
OptimalCostResult exact_1d(const Dataset& x, int k, CostKind kind);

// Exact minimum over all partitions of x into <= k parts, each part served by
// its own optimal 1-center. Subset DP over the 2^n part costs; n <= 12.
OptimalCostResult enumerate_exact(const Dataset& x, int k, CostKind kind);

// Best of `restarts` runs of distance-sampled seeding + Lloyd iterations
// (assignment-stable or 200 rounds; empty clusters reseeded at the point of
// largest current cost). Heuristic: exact = false.
OptimalCostResult lloyd_multistart(const Dataset& x, int k, CostKind kind,
                                   int restarts, std::uint64_t seed);

struct LEstimate {
    int k = 0;
    double epsilon = 0.0;
    int l_hat = 0;
    bool exact = false;
    double delta_k_used = 0.0;
};

// Least m with optimal m-clustering cost <= epsilon * optimal k-clustering
// cost. Binary search over m; valid because the cost curve is non-increasing.
LEstimate estimate_L(const Dataset& x, int k, double epsilon, CostKind kind,
                     SolveMethod oracle, std::uint64_t seed = 0, int restarts = 8);

// Single oracle entry point used by estimate_L and the CLI.
OptimalCostResult solve(const Dataset& x, int k, CostKind kind, SolveMethod method,
                        std::uint64_t seed = 0, int restarts = 8);

struct DecayCurve {
    std::vector<int> m;
    std::vector<double> cost;
    bool exact = false;
};

// Cost-vs-m sweep for m = 1..m_max (default: n).
DecayCurve decay_curve(const Dataset& x, CostKind kind, SolveMethod oracle,
                       int m_max = 0, std::uint64_t seed = 0, int restarts = 8);

}  // namespace kcost
