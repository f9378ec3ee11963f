#include "kcost/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcost/cost.hpp"
#include "kcost/rng.hpp"
#include "kcost/solvers.hpp"

namespace kcost {

WeightedSet weigh(const CenterSet& s, const Dataset& x) {
    if (s.empty()) throw std::invalid_argument("empty coreset");
    if (!x.empty() && s.dim() != x.dim())
        throw std::invalid_argument("dimension mismatch");

    WeightedSet w;
    w.points = s;
    w.weights.assign(s.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto p = x[i];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double d2 = squared_distance(p, s[j]);
            if (d2 < best) {
                best = d2;
                best_j = j;
            }
        }
        w.weights[best_j] += 1.0;
    }
    return w;
}

GeometricCheck check_geometric(const CenterSet& s, const Dataset& x, int k,
                               double epsilon, CostKind kind, const DeltaFn& delta) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!delta) throw std::invalid_argument("missing optimum oracle");

    GeometricCheck g;
    g.phi = evaluate(s, x, kind).total;
    g.delta_k = delta(x, k);
    if (g.delta_k > 0.0) {
        g.ratio = g.phi / g.delta_k;
    } else {
        g.ratio = g.phi == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    g.pass = g.ratio <= epsilon * (1.0 + 1e-9);
    return g;
}

const char* candidate_source_name(CandidateSource s) {
    switch (s) {
        case CandidateSource::random_box: return "random";
        case CandidateSource::lloyd: return "lloyd";
        case CandidateSource::subset_centroids: return "subset-centroids";
    }
    return "?";
}

CoresetCertificate validate_coreset(const Dataset& x, const WeightedSet& s, int k,
                                    double epsilon, int trials, std::uint64_t seed) {
    if (x.empty()) throw std::invalid_argument("empty dataset");
    s.check();
    if (s.size() == 0) throw std::invalid_argument("empty coreset");
    if (x.dim() != s.points.dim()) throw std::invalid_argument("dimension mismatch");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (trials < 0) throw std::invalid_argument("trials must be >= 0");

    const int d = x.dim();
    Vec lo(d, std::numeric_limits<double>::infinity());
    Vec hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto p = x[i];
        for (int dd = 0; dd < d; ++dd) {
            lo[dd] = std::min(lo[dd], p[dd]);
            hi[dd] = std::max(hi[dd], p[dd]);
        }
    }
    Vec mid(d), half(d);
    for (int dd = 0; dd < d; ++dd) {
        mid[dd] = 0.5 * (lo[dd] + hi[dd]);
        half[dd] = std::max(0.5 * (hi[dd] - lo[dd]), 0.5);
    }

    static constexpr double kInflate[4] = {1.0, 3.0, 10.0, 100.0};
    const int k_fit = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(k), x.size()));

    CoresetCertificate cert;
    cert.epsilon = epsilon;
    int evaluated = 0;
    double worst = 0.0;
    CandidateSource worst_src = CandidateSource::random_box;

    Vec p(d);
    for (int trial = 0; trial < trials; ++trial) {
        const auto src = static_cast<CandidateSource>(trial % 3);
        const std::uint64_t tseed = derive_seed(seed, static_cast<std::uint64_t>(trial));
        CenterSet c(d);
        switch (src) {
            case CandidateSource::random_box: {
                Rng rng(tseed);
                const double f = kInflate[(trial / 3) % 4];
                for (int j = 0; j < k; ++j) {
                    for (int dd = 0; dd < d; ++dd)
                        p[dd] = mid[dd] + f * half[dd] * rng.uniform(-1.0, 1.0);
                    c.push(std::span<const double>(p));
                }
                break;
            }
            case CandidateSource::lloyd: {
                c = lloyd_multistart(x, k_fit, CostKind::means, 1, tseed).centers;
                break;
            }
            case CandidateSource::subset_centroids: {
                Rng rng(tseed);
                const std::uint64_t cap = std::min<std::uint64_t>(x.size(), 32);
                for (int j = 0; j < k; ++j) {
                    Dataset subset(d);
                    const std::uint64_t m = 1 + rng.uniform_index(cap);
                    for (std::uint64_t i = 0; i < m; ++i)
                        subset.push(x[rng.uniform_index(x.size())]);
                    const Vec cen = centroid(subset);
                    c.push(std::span<const double>(cen));
                }
                break;
            }
        }

        const double base = evaluate(c, x, CostKind::means).total;
        if (base == 0.0) continue;  // relative deviation undefined; skip
        const double approx = evaluate_weighted(c, s, CostKind::means);
        const double rel = std::abs(approx - base) / base;
        ++evaluated;
        if (rel > worst) {
            worst = rel;
            worst_src = src;
        }
    }

    cert.trials = evaluated;
    cert.worst_relative_error = worst;
    cert.worst_source = worst_src;
    cert.pass = evaluated > 0 && worst <= epsilon + 1e-9;
    return cert;
}

}  // namespace kcost
