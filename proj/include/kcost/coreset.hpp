#pragma once

#include <cstdint>

#include "kcost/geometry.hpp"
#include "kcost/sampling.hpp"

namespace kcost {

// w(s) = number of points of x whose nearest point in s is s (ties to the
// lowest index). Points of s that capture nothing keep weight 0.
WeightedSet weigh(const CenterSet& s, const Dataset& x);

struct GeometricCheck {
    double phi = 0.0;      // cost of s on x
    double delta_k = 0.0;  // reference k-clustering optimum from the oracle
    double ratio = 0.0;    // phi / delta_k; 0 when both vanish, inf when only
                           // delta_k does
    bool pass = false;     // ratio <= epsilon (with relative slack 1e-9)
};

GeometricCheck check_geometric(const CenterSet& s, const Dataset& x, int k,
                               double epsilon, CostKind kind, const DeltaFn& delta);

enum class CandidateSource { random_box, lloyd, subset_centroids };
const char* candidate_source_name(CandidateSource s);

struct CoresetCertificate {
    double epsilon = 0.0;
    int trials = 0;  // candidate center sets actually evaluated
    double worst_relative_error = 0.0;
    bool pass = false;
    CandidateSource worst_source = CandidateSource::random_box;
};

// Monte-Carlo check of the weighted-coreset property for squared costs:
// candidates cycle through uniform boxes (inflated 1x/3x/10x/100x around the
// data), Lloyd runs from fresh seeds, and centroids of random subsets. The
// worst |cost(C, s, w) - cost(C, x)| / cost(C, x) over candidates with
// nonzero cost(C, x) decides the certificate.
CoresetCertificate validate_coreset(const Dataset& x, const WeightedSet& s, int k,
                                    double epsilon, int trials, std::uint64_t seed);

}  // namespace kcost
