#include "kcost/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kcost/rng.hpp"

namespace kcost {

CoverResult greedy_cover(const FiniteMetric& m, std::span<const std::size_t> subset,
                         double r) {
    if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
    for (std::size_t idx : subset)
        if (idx >= m.size()) throw std::out_of_range("subset index out of range");

    CoverResult res;
    res.radius = r;
    const double absorb = 0.5 * r;
    std::vector<char> taken(subset.size(), 0);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (taken[i]) continue;
        std::vector<std::size_t> part;
        part.push_back(subset[i]);
        taken[i] = 1;
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
            if (taken[j]) continue;
            if (m.at(subset[i], subset[j]) <= absorb) {
                part.push_back(subset[j]);
                taken[j] = 1;
            }
        }
        res.parts.push_back(std::move(part));
    }
    return res;
}

CoverResult greedy_cover(const FiniteMetric& m, double r) {
    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    return greedy_cover(m, all, r);
}

double diameter(const FiniteMetric& m, std::span<const std::size_t> subset) {
    double dia = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            dia = std::max(dia, m.at(subset[a], subset[b]));
    return dia;
}

namespace {

double log2_cover_at_half_diameter(const FiniteMetric& m,
                                   std::span<const std::size_t> subset) {
    if (subset.empty()) return 0.0;
    const double dia = diameter(m, subset);
    const auto cover = greedy_cover(m, subset, 0.5 * dia);
    return std::log2(static_cast<double>(cover.size()));
}

std::vector<std::size_t> ball_of(const FiniteMetric& m, std::size_t c, double r) {
    std::vector<std::size_t> ball;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.at(c, i) <= r) ball.push_back(i);
    return ball;
}

}  // namespace

double estimate_doubling(const FiniteMetric& m, std::size_t sample_balls,
                         std::uint64_t seed) {
    if (m.size() == 0) throw std::invalid_argument("empty metric");

    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    const double dia_all = diameter(m, all);

    double d_hat = log2_cover_at_half_diameter(m, all);
    Rng rng(derive_seed(seed, 0xD0B1ULL));
    for (std::size_t s = 0; s < sample_balls; ++s) {
        const std::size_t c = rng.uniform_index(m.size());
        const double r = rng.uniform01() * dia_all;
        const auto ball = ball_of(m, c, r);
        d_hat = std::max(d_hat, log2_cover_at_half_diameter(m, ball));
    }
    return d_hat;
}

std::size_t gamma_estimate(const FiniteMetric& m, double epsilon,
                           std::size_t sample_balls, std::uint64_t seed) {
    if (m.size() == 0) throw std::invalid_argument("empty metric");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");

    std::vector<std::size_t> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    const double dia_all = diameter(m, all);

    // The full-diameter ball around any point is the whole space.
    std::size_t gamma = greedy_cover(m, all, epsilon * dia_all).size();
    Rng rng(derive_seed(seed, 0x6A33ULL));
    for (std::size_t s = 0; s < sample_balls; ++s) {
        const std::size_t c = rng.uniform_index(m.size());
        const double r = rng.uniform01() * dia_all;
        const auto ball = ball_of(m, c, r);
        gamma = std::max(gamma, greedy_cover(m, ball, epsilon * r).size());
    }
    return gamma;
}

}  // namespace kcost
