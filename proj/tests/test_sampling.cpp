#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kcost/cost.hpp"
#include "kcost/generators.hpp"
#include "kcost/rng.hpp"
#include "kcost/sampling.hpp"
#include "kcost/solvers.hpp"

using namespace kcost;

namespace {

Dataset line(std::initializer_list<double> xs) {
    Dataset x(1);
    for (double v : xs) x.push1(v);
    return x;
}

}  // namespace

TEST_CASE("sampling input validation") {
    const Dataset x = line({0.0, 1.0, 3.0});
    CHECK_THROWS_AS(d2_sample(x, 0, CostKind::means, 1), std::invalid_argument);
    CHECK_THROWS_AS(d2_sample(x, 4, CostKind::means, 1), std::invalid_argument);
    const Dataset empty(1);
    CHECK_THROWS_AS(d2_sample(empty, 1, CostKind::means, 1), std::invalid_argument);
    const std::vector<std::size_t> bad{9};
    CHECK_THROWS_AS(d2_sample(x, 2, CostKind::means, 1, bad), std::out_of_range);
}

TEST_CASE("trace structure and determinism") {
    const Dataset x = line({0.0, 1.0, 3.0, 7.0, 20.0});
    const auto t = d2_sample(x, 4, CostKind::means, 42);
    REQUIRE(t.chosen.size() == 4);
    REQUIRE(t.cost_after.size() == 4);
    for (std::size_t i = 1; i < t.cost_after.size(); ++i)
        CHECK(t.cost_after[i] <= t.cost_after[i - 1] + 1e-12);

    const auto t2 = d2_sample(x, 4, CostKind::means, 42);
    CHECK(t.chosen == t2.chosen);
    CHECK(t.cost_after == t2.cost_after);

    const auto c = centers_from_trace(x, t);
    CHECK(c.size() == 4);
    CHECK(c[0][0] == x[t.chosen[0]][0]);
}

TEST_CASE("forced first picks are honored") {
    const Dataset x = line({0.0, 1.0, 3.0});
    const std::vector<std::size_t> forced{2, 0};
    const auto t = d2_sample(x, 3, CostKind::means, 5, forced);
    CHECK(t.chosen[0] == 2);
    CHECK(t.chosen[1] == 0);
    // Remaining mass sits entirely on index 1.
    CHECK(t.chosen[2] == 1);
}

TEST_CASE("duplicate-only data stops early") {
    Dataset x(1);
    for (int i = 0; i < 4; ++i) x.push1(2.5);
    const auto t = d2_sample(x, 3, CostKind::means, 9);
    CHECK(t.early_stop);
    CHECK(t.chosen.size() == 1);
    CHECK(t.cost_after.back() == 0.0);
}

TEST_CASE("second pick follows the distance-squared law") {
    // First pick forced to 0; remaining mass 1 on the point at 1 and 9 on
    // the point at 3, so the second pick lands on 3 with probability 9/10.
    const Dataset x = line({0.0, 1.0, 3.0});
    const std::vector<std::size_t> forced{0};
    const int trials = 100000;
    int hit3 = 0;
    for (int i = 0; i < trials; ++i) {
        const auto t = d2_sample(x, 2, CostKind::means, derive_seed(777, i), forced);
        if (t.chosen[1] == 2) ++hit3;
    }
    const double freq = static_cast<double>(hit3) / trials;
    CHECK(std::fabs(freq - 0.9) <= 0.01);

    // Median flavor: masses 1 and 3.
    int hit3_med = 0;
    for (int i = 0; i < trials; ++i) {
        const auto t = d2_sample(x, 2, CostKind::median, derive_seed(778, i), forced);
        if (t.chosen[1] == 2) ++hit3_med;
    }
    const double freq_med = static_cast<double>(hit3_med) / trials;
    CHECK(std::fabs(freq_med - 0.75) <= 0.01);
}

TEST_CASE("overseeding reaches the target cost on easy instances") {
    // sigma = 0: each cluster collapses to one repeated site, so the sampler
    // always drains the instance (positive mass only sits on uncovered sites)
    // and the target cost epsilon * delta_3 = 0 is met exactly.
    RandomSpec rs;
    rs.kind = RandomKind::separated_clusters;
    rs.n = 12;
    rs.d = 2;
    rs.k = 3;
    rs.sigma = 0.0;
    rs.separation = 500.0;
    const Dataset x = gen_random(rs, 4);

    DeltaFn delta = [](const Dataset& xx, int kk) {
        return enumerate_exact(xx, kk, CostKind::means).value;
    };
    LFn lfn = [](const Dataset& xx, int kk, double e) {
        return estimate_L(xx, kk, e, CostKind::means, SolveMethod::enumerate).l_hat;
    };
    const auto rep = overseed_experiment(x, 3, 0.5, 1.0, 30, CostKind::means, 123,
                                         delta, lfn, true);
    CHECK(rep.oracle_exact);
    CHECK(rep.m_used == 3);
    CHECK(rep.delta_k == 0.0);
    CHECK(rep.success_rate == 1.0);
    REQUIRE(rep.final_costs.size() == 30);
    for (double c : rep.final_costs) CHECK(c == 0.0);
    REQUIRE(rep.mean_cost_after.size() == static_cast<std::size_t>(rep.m_used));
    for (std::size_t i = 1; i < rep.mean_cost_after.size(); ++i)
        CHECK(rep.mean_cost_after[i] <= rep.mean_cost_after[i - 1] + 1e-12);

    // Same seed, same report.
    const auto rep2 = overseed_experiment(x, 3, 0.5, 1.0, 30, CostKind::means, 123,
                                          delta, lfn, true);
    CHECK(rep.final_costs == rep2.final_costs);
}
