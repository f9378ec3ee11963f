#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kcost/geometry.hpp"

namespace kcost {

struct SeedingTrace {
    std::vector<std::size_t> chosen;   // point indices in pick order
    std::vector<double> cost_after;    // cost of the prefix after each pick
    std::uint64_t rng_seed = 0;
    bool early_stop = false;           // remaining mass hit zero before m picks
};

// Adaptive distance sampling: first center uniform over X, each later center
// drawn with probability proportional to min-distance^exponent(kind) to the
// centers so far (cumulative-sum inversion). `forced_first` pins the leading
// picks; m counts them. Stops early once all remaining mass is zero.
SeedingTrace d2_sample(const Dataset& x, int m, CostKind kind, std::uint64_t seed,
                       std::span<const std::size_t> forced_first = {});

CenterSet centers_from_trace(const Dataset& x, const SeedingTrace& t);

using DeltaFn = std::function<double(const Dataset&, int)>;
using LFn = std::function<int(const Dataset&, int, double)>;

struct OverseedReport {
    int k = 0;
    double epsilon = 0.0;
    double c_const = 1.0;
    int trials = 0;
    std::uint64_t seed = 0;
    int m_used = 0;
    double delta_k = 0.0;
    bool oracle_exact = false;
    int successes = 0;
    double success_rate = 0.0;
    std::vector<double> final_costs;       // per trial
    std::vector<double> mean_cost_after;   // decay curve averaged over trials
};

// Repeated seeding at m = L(epsilon / c_const) picks; success means the
// sampled prefix already costs at most epsilon * delta_k. Oracles are
// injected so any solver (exact or heuristic) can back the experiment.
OverseedReport overseed_experiment(const Dataset& x, int k, double epsilon,
                                   double c_const, int trials, CostKind kind,
                                   std::uint64_t seed, const DeltaFn& delta_oracle,
                                   const LFn& l_oracle, bool oracle_exact);

}  // namespace kcost
