#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcost/geometry.hpp"
#include "kcost/nets.hpp"

namespace kcost {

// Hierarchical hard instances: t levels of radii r^i carrying r^{2(t-i)}
// points each, so every level contributes the same r^{2t} to the squared
// cost around the apex. r is an exact integer, which keeps every radius,
// multiplicity and certificate value integer-valued in double arithmetic.
struct LowerBoundSpec {
    double epsilon = 0.0;
    int k = 1;
    int d = 1;
    int t = 1;                 // levels per ray
    long long r = 0;           // radius ratio, ceil(1 + sqrt(32 * epsilon))
    long long eta = 0;         // points per ray
    std::size_t realized_n = 0;
    double apex_spacing = 0.0;  // gap between consecutive apexes (0 if k = 1)
    double delta_apex = 0.0;    // cost of the apex CenterSet, exact
    CostKind kind = CostKind::means;
    SphereNet directions;       // rays per apex; {-1,+1} for the 1-D family
};

// Two-sided 1-D instance around 0: r^{2(t-i)} points at +r^i and at -r^i.
// delta_apex = 2 * t * r^{2t}. Requires epsilon in (0, 1/8), t >= 1.
std::pair<Dataset, LowerBoundSpec> gen_lower_1d(double epsilon, int t);

// k apexes spaced 2 * n^2 apart on the first axis, each carrying a one-sided
// copy of the 1-D profile along every direction of `net`. The net must be a
// certified packing at sqrt(8 * epsilon) (means) or 4 * epsilon (median).
std::pair<Dataset, LowerBoundSpec> gen_lower_ddim(double epsilon, int k, int d, int t,
                                                  const SphereNet& net,
                                                  CostKind kind = CostKind::means);

// One entry per distinct populated location; disjointness certificates check
// pairwise gaps between balls of radius sqrt(2 * epsilon) * r^level (squared
// flavor) or 2 * epsilon * r^level (plain distances) around each site.
struct LowerSite {
    Vec where;
    int level = 1;  // i in 1..t, site sits at distance r^i from its apex
    int apex = 0;
    std::size_t multiplicity = 0;
};
std::vector<LowerSite> lower_sites(const LowerBoundSpec& spec);

enum class RandomKind { uniform_box, gaussian_mixture, separated_clusters };

struct RandomSpec {
    RandomKind kind = RandomKind::uniform_box;
    std::size_t n = 0;
    int d = 1;
    int k = 1;          // mixture components / cluster count
    double box_lo = 0.0;
    double box_hi = 1.0;
    double sigma = 0.0;       // intra-cluster spread
    double separation = 0.0;  // separated_clusters: min center gap in units of
                              // the max intra-cluster radius
};

// Reproducible test data. separated_clusters places centers on the first axis
// at spacing separation * max(sigma, 1), which guarantees the separation
// contract even when sigma = 0.
Dataset gen_random(const RandomSpec& spec, std::uint64_t seed);

}  // namespace kcost
