#pragma once

#include <cstdint>
#include <vector>

#include "kcost/geometry.hpp"

namespace kcost {

enum class NetKind { cover, packing, both };
const char* net_kind_name(NetKind k);

struct SphereNet {
    int dim = 0;            // ambient dimension d; points live on S^{d-1}
    double epsilon = 0.0;   // scale (chordal distance)
    NetKind kind = NetKind::both;
    Dataset points;         // unit vectors
    std::size_t pool_examined = 0;  // candidates looked at during the build
    double pool_max_gap = 0.0;      // exact max distance from any candidate to the net

    std::size_t size() const { return points.size(); }
};

// Simultaneous epsilon-packing / epsilon-cover of the unit sphere.
//   d = 1: exactly {-1, +1}.
//   d = 2: equispaced angular grid, as many points as fit at pairwise chord
//          >= epsilon (both properties then hold analytically).
//   d >= 3: greedy farthest-point packing over `candidate_pool` random unit
//          vectors (0 = default pool size), then augmentation rounds that add
//          any freshly sampled direction still >= epsilon away, so residual
//          uncovered slivers are driven to negligible measure.
SphereNet build_net(int d, double epsilon, std::size_t candidate_pool = 0,
                    std::uint64_t seed = 0);

std::size_t default_pool(int d, double epsilon);

// Max over probes of the distance to the nearest net point. d <= 2 is checked
// analytically (worst midpoint gap) instead of by sampling.
double verify_cover(const SphereNet& net, std::size_t probes, std::uint64_t seed);

// Exact min pairwise distance over the net.
double verify_packing(const SphereNet& net);

inline bool cover_pass(const SphereNet& net, double gap) { return gap <= net.epsilon; }
inline bool packing_pass(const SphereNet& net, double min_pairwise) {
    return min_pairwise >= net.epsilon - 1e-12;
}

}  // namespace kcost
