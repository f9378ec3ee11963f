#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kcost/cost.hpp"
#include "kcost/geometry.hpp"
#include "kcost/nets.hpp"

namespace kcost {

struct Upper1d {
    std::vector<double> s;  // sorted, exact duplicates removed
    double phi0 = 0.0;      // cost of {0} on the input
    double r_scale = 0.0;   // R: mean-derived base radius
    double grid = 0.0;      // g: inner grid pitch as a fraction of R
    double ratio_r = 0.0;   // 1 + g: outer geometric ratio
    int t = 0;              // outer levels
    std::size_t size_bound = 0;  // 2(floor(1/g)+1) + 2(t+1)
};

// 1-d point set S with cost(S, xs) <= epsilon * cost({0}, xs): a uniform grid
// of pitch g*R on [-R, R] plus geometric radii R*(1+g)^i out to the data's
// reach, mirrored about the origin. xs are coordinates relative to the origin.
Upper1d build_1d_upper(std::span<const double> xs, double epsilon, CostKind kind);

// Cost of sorted 1-d center values s against coordinates xs.
double cost_1d_sorted(const std::vector<double>& s, std::span<const double> xs,
                      CostKind kind);

// Builds and caches one net per (dimension, scale); the fan uses the same
// direction net for every cell at a given precision.
class NetSource {
public:
    explicit NetSource(std::uint64_t seed = 0, std::size_t pool = 0)
        : seed_(seed), pool_(pool) {}
    const SphereNet& get(int d, double scale);

private:
    std::uint64_t seed_;
    std::size_t pool_;
    std::map<std::pair<int, long long>, SphereNet> cache_;
};

struct FanResult {
    CenterSet xi;
    double epsilon = 0.0;
    CostKind kind = CostKind::means;
    double baseline = 0.0;  // sum over cells of the 1-center cost at its center
    double cost = 0.0;      // cost of xi on x
    double ratio = 0.0;
    double net_scale = 0.0;
    std::size_t net_size = 0;
    std::size_t rays_used = 0;
    std::size_t patched_rays = 0;       // directions added to keep snapping tight
    double max_snap_ratio = 0.0;        // max ||y - y'|| / ||y - c||
    std::vector<std::size_t> per_cell_sizes;
};

// Per cluster: snap each point onto the nearest direction of a sphere net
// around the center, then replace each ray's radii by a 1-d grid at half the
// requested precision. Guarantees cost(xi, x) <= epsilon * baseline for any
// clustering. If a sampled net leaves a direction under-covered, that
// direction is added as an extra ray so the per-point snapping bound holds
// unconditionally.
FanResult build_fan_coreset(const Dataset& x, const Clustering& cl, double epsilon,
                            CostKind kind, NetSource& nets);

struct AnnuliResult {
    std::vector<std::size_t> reps;  // member indices
    double r_mean = 0.0;
    int t = 0;
    std::vector<int> annulus_of;        // per input point
    std::vector<std::size_t> rep_of;    // per input point: serving rep
    std::vector<double> rep_dist;       // per input point
    std::vector<std::size_t> annulus_sizes;
    std::vector<std::size_t> annulus_rep_counts;
    double cost = 0.0;      // cost of reps on ys
    double baseline = 0.0;  // cost of {c} on ys
    double ratio = 0.0;
};

// Metric 1-center upper bound: ring the points around c by doubling radii,
// cover each ring greedily by balls of diameter (epsilon/2) * ring radius,
// keep one representative per ball. cost(S, Y) <= epsilon * cost({c}, Y).
AnnuliResult build_metric_annuli(const FiniteMetric& m, std::span<const std::size_t> ys,
                                 std::size_t c, double epsilon);

}  // namespace kcost
