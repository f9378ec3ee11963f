#include "kcost/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcost/cost.hpp"
#include "kcost/rng.hpp"

namespace kcost {

SeedingTrace d2_sample(const Dataset& x, int m, CostKind kind, std::uint64_t seed,
                       std::span<const std::size_t> forced_first) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty dataset");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (static_cast<std::size_t>(m) > n) throw std::invalid_argument("m exceeds dataset size");
    if (forced_first.size() > static_cast<std::size_t>(m))
        throw std::invalid_argument("more forced picks than m");
    for (std::size_t idx : forced_first)
        if (idx >= n) throw std::out_of_range("forced index out of range");

    SeedingTrace t;
    t.rng_seed = seed;
    Rng rng(seed);
    std::vector<double> mass(n, 0.0);  // min-distance^exponent to chosen prefix
    double total = 0.0;

    for (int pick = 0; pick < m; ++pick) {
        std::size_t idx;
        if (static_cast<std::size_t>(pick) < forced_first.size()) {
            idx = forced_first[pick];
        } else if (pick == 0) {
            idx = static_cast<std::size_t>(rng.uniform_index(n));
        } else {
            if (total <= 0.0) {
                t.early_stop = true;
                break;
            }
            const double u = rng.uniform01() * total;
            double acc = 0.0;
            idx = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += mass[i];
                if (u < acc) {
                    idx = i;
                    break;
                }
            }
            // Guard against rounding at the tail: land on the last positive mass.
            while (mass[idx] == 0.0 && idx > 0) --idx;
        }
        t.chosen.push_back(idx);
        total = 0.0;
        auto c = x[idx];
        for (std::size_t i = 0; i < n; ++i) {
            const double d = distance(x[i], c, kind);
            if (pick == 0 || d < mass[i]) mass[i] = d;
            total += mass[i];
        }
        t.cost_after.push_back(total);
    }
    return t;
}

CenterSet centers_from_trace(const Dataset& x, const SeedingTrace& t) {
    CenterSet c(x.dim());
    for (std::size_t idx : t.chosen) c.push(x[idx]);
    return c;
}

OverseedReport overseed_experiment(const Dataset& x, int k, double epsilon,
                                   double c_const, int trials, CostKind kind,
                                   std::uint64_t seed, const DeltaFn& delta_oracle,
                                   const LFn& l_oracle, bool oracle_exact) {
    if (k < 1 || static_cast<std::size_t>(k) > x.size())
        throw std::invalid_argument("k out of range");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(c_const > 0.0)) throw std::invalid_argument("c_const must be positive");
    if (trials < 0) throw std::invalid_argument("trials must be >= 0");

    OverseedReport r;
    r.k = k;
    r.epsilon = epsilon;
    r.c_const = c_const;
    r.trials = trials;
    r.seed = seed;
    r.oracle_exact = oracle_exact;
    r.delta_k = delta_oracle(x, k);
    r.m_used = l_oracle(x, k, epsilon / c_const);

    const double threshold = epsilon * r.delta_k;
    r.mean_cost_after.assign(r.m_used, 0.0);
    for (int trial = 0; trial < trials; ++trial) {
        const SeedingTrace t = d2_sample(x, r.m_used, kind, derive_seed(seed, trial));
        const double final_cost = t.cost_after.empty() ? 0.0 : t.cost_after.back();
        r.final_costs.push_back(final_cost);
        if (final_cost <= threshold * (1.0 + 1e-12) + 1e-300) ++r.successes;
        for (int j = 0; j < r.m_used; ++j) {
            // Early-stopped traces hold their final (zero) cost for later picks.
            const double cj = static_cast<std::size_t>(j) < t.cost_after.size()
                                  ? t.cost_after[j]
                                  : final_cost;
            r.mean_cost_after[j] += cj;
        }
    }
    if (trials > 0) {
        r.success_rate = static_cast<double>(r.successes) / trials;
        for (double& v : r.mean_cost_after) v /= trials;
    }
    return r;
}

}  // namespace kcost
