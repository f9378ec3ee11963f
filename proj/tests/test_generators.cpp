#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kcost/cost.hpp"
#include "kcost/generators.hpp"
#include "kcost/nets.hpp"
#include "kcost/solvers.hpp"

using namespace kcost;

TEST_CASE("hierarchical line instance at one thirty-second") {
    const auto [x, spec] = gen_lower_1d(1.0 / 32.0, 2);
    CHECK(spec.r == 2);
    CHECK(spec.eta == 5);
    CHECK(spec.realized_n == 10);
    CHECK(x.size() == 10);
    CHECK(spec.delta_apex == 64.0);
    CHECK(spec.kind == CostKind::means);
    CHECK(spec.directions.size() == 2);

    CenterSet origin(1);
    origin.push({0.0});
    CHECK(evaluate(origin, x, CostKind::means).total == 64.0);

    // Multiplicities: 4 points at each of +-2, 1 point at each of +-4.
    std::multiset<double> vals;
    for (std::size_t i = 0; i < x.size(); ++i) vals.insert(x[i][0]);
    CHECK(vals.count(2.0) == 4);
    CHECK(vals.count(-2.0) == 4);
    CHECK(vals.count(4.0) == 1);
    CHECK(vals.count(-4.0) == 1);
}

TEST_CASE("line instance certifies that few centers stay expensive") {
    // The marginal value of additional centers decays so slowly that the
    // least m with cost_m <= eps * cost_1 exceeds the level count t.
    for (double eps : {1.0 / 32.0, 1.0 / 16.0}) {
        for (int t : {1, 2, 3}) {
            const auto [x, spec] = gen_lower_1d(eps, t);
            const double d1 = exact_1d(x, 1, CostKind::means).value;
            CHECK(d1 == spec.delta_apex);
            const int l = estimate_L(x, 1, eps, CostKind::means, SolveMethod::dp1d).l_hat;
            CHECK(l > t);
        }
    }
}

TEST_CASE("ratio steps with the precision request") {
    CHECK(gen_lower_1d(1.0 / 32.0, 1).second.r == 2);
    CHECK(gen_lower_1d(0.12, 1).second.r == 3);
}

TEST_CASE("lower instance argument validation") {
    CHECK_THROWS_AS(gen_lower_1d(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_lower_1d(0.125, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_lower_1d(0.01, 0), std::invalid_argument);
    // Too many levels overflow the exact-integer budget.
    CHECK_THROWS(gen_lower_1d(0.01, 64));
}

TEST_CASE("multi-apex instance reduces to the line family") {
    const double eps = 1.0 / 32.0;
    const auto net = build_net(1, std::sqrt(8.0 * eps));
    const auto [xd, specd] = gen_lower_ddim(eps, 1, 1, 2, net);
    const auto [x1, spec1] = gen_lower_1d(eps, 2);
    REQUIRE(xd.size() == x1.size());
    CHECK(specd.delta_apex == spec1.delta_apex);

    std::vector<double> a, b;
    for (std::size_t i = 0; i < xd.size(); ++i) {
        a.push_back(xd[i][0]);
        b.push_back(x1[i][0]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("planar two-apex instance") {
    const double eps = 1.0 / 32.0;
    const auto net = build_net(2, std::sqrt(8.0 * eps));
    const auto [x, spec] = gen_lower_ddim(eps, 2, 2, 1, net, CostKind::means);

    const std::size_t rays = net.size();
    CHECK(spec.realized_n == 2 * rays * spec.eta);
    CHECK(spec.eta == 1);
    const double n2 = static_cast<double>(spec.realized_n) * spec.realized_n;
    CHECK(spec.apex_spacing == 2.0 * n2);

    // Apex cost is exact: every site sits at distance r from its apex.
    CenterSet apexes(2);
    apexes.push({0.0, 0.0});
    apexes.push({spec.apex_spacing, 0.0});
    const double direct = evaluate(apexes, x, CostKind::means).total;
    CHECK(direct == doctest::Approx(spec.delta_apex).epsilon(1e-12));
    CHECK(spec.delta_apex ==
          static_cast<double>(2 * rays) * std::pow(static_cast<double>(spec.r), 2));
}

TEST_CASE("apex spacing dominates the instance diameter") {
    const double eps = 1.0 / 32.0;
    const auto net = build_net(2, std::sqrt(8.0 * eps));
    const auto [x, spec] = gen_lower_ddim(eps, 3, 2, 2, net);
    const double n_hat = static_cast<double>(spec.realized_n);
    CHECK(spec.apex_spacing == 2.0 * n_hat * n_hat);
    // Max site radius is r^t, far below the gap between apexes.
    const double reach = std::pow(static_cast<double>(spec.r), spec.t);
    CHECK(spec.apex_spacing > 2.0 * reach * n_hat);

    // Voronoi around the apexes splits the sites into k equal groups.
    CenterSet apexes(2);
    for (int a = 0; a < 3; ++a) apexes.push({spec.apex_spacing * a, 0.0});
    const auto cells = voronoi_partition(apexes, x, CostKind::means);
    REQUIRE(cells.size() == 3);
    for (const auto& cell : cells) CHECK(cell.size() == spec.realized_n / 3);
}

TEST_CASE("sites are disjoint at the certificate radius") {
    const double eps = 1.0 / 32.0;
    for (CostKind kind : {CostKind::means, CostKind::median}) {
        const double scale =
            kind == CostKind::means ? std::sqrt(8.0 * eps) : 4.0 * eps;
        const auto net = build_net(2, scale);
        const auto [x, spec] = gen_lower_ddim(eps, 2, 2, 2, net, kind);
        const auto sites = lower_sites(spec);

        std::size_t mass = 0;
        for (const auto& s : sites) mass += s.multiplicity;
        CHECK(mass == spec.realized_n);

        // Balls around distinct sites never overlap at the certificate
        // radius, which is what makes every center leave most sites paying.
        const double ball =
            kind == CostKind::means ? std::sqrt(2.0 * eps) : 2.0 * eps;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            for (std::size_t j = i + 1; j < sites.size(); ++j) {
                double d2 = 0.0;
                for (std::size_t t = 0; t < sites[i].where.size(); ++t) {
                    const double diff = sites[i].where[t] - sites[j].where[t];
                    d2 += diff * diff;
                }
                const double ri = ball * std::pow(static_cast<double>(spec.r),
                                                  sites[i].level);
                const double rj = ball * std::pow(static_cast<double>(spec.r),
                                                  sites[j].level);
                CHECK(std::sqrt(d2) > ri + rj);
            }
        }

        // Sites enumerate exactly the distinct rows of the dataset.
        std::set<std::vector<double>> from_sites, from_data;
        for (const auto& s : sites)
            from_sites.insert(std::vector<double>(s.where.begin(), s.where.end()));
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto row = x[i];
            from_data.insert(std::vector<double>(row.begin(), row.end()));
        }
        CHECK(from_sites == from_data);
    }
}

TEST_CASE("multi-apex argument validation") {
    const double eps = 1.0 / 32.0;
    const auto net2 = build_net(2, std::sqrt(8.0 * eps));
    CHECK_THROWS_AS(gen_lower_ddim(eps, 0, 2, 1, net2), std::invalid_argument);
    CHECK_THROWS_AS(gen_lower_ddim(eps, 1, 3, 1, net2), std::invalid_argument);
    // A net packed tighter than the required separation is rejected.
    const auto fine = build_net(2, 0.1);
    CHECK_THROWS_AS(gen_lower_ddim(1.0 / 32.0, 1, 2, 1, fine), std::invalid_argument);
}

TEST_CASE("random data is reproducible and respects its parameters") {
    RandomSpec rs;
    rs.kind = RandomKind::uniform_box;
    rs.n = 64;
    rs.d = 3;
    rs.box_lo = -2.0;
    rs.box_hi = 5.0;
    const Dataset a = gen_random(rs, 11);
    const Dataset b = gen_random(rs, 11);
    const Dataset c = gen_random(rs, 12);
    CHECK(a.flat() == b.flat());
    CHECK(a.flat() != c.flat());
    REQUIRE(a.size() == 64);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int t = 0; t < 3; ++t) {
            CHECK(a[i][t] >= -2.0);
            CHECK(a[i][t] <= 5.0);
        }
}

TEST_CASE("separated clusters keep their promised gap") {
    RandomSpec rs;
    rs.kind = RandomKind::separated_clusters;
    rs.n = 50;
    rs.d = 2;
    rs.k = 4;
    rs.sigma = 0.5;
    rs.separation = 10.0;
    const Dataset x = gen_random(rs, 3);
    REQUIRE(x.size() == 50);

    // Cluster of a point is recoverable from its first coordinate.
    const double gap = rs.separation * std::max(rs.sigma, 1.0);
    std::vector<std::size_t> count(4, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double axis = x[i][0];
        const auto cidx = static_cast<long long>(std::llround(axis / gap));
        REQUIRE(cidx >= 0);
        REQUIRE(cidx < 4);
        ++count[static_cast<std::size_t>(cidx)];
        // Within sigma of its center in every coordinate.
        CHECK(std::fabs(axis - gap * static_cast<double>(cidx)) <= rs.sigma);
        CHECK(std::fabs(x[i][1]) <= rs.sigma);
    }
    // 50 = 4 * 12 + 2: two clusters get the extra point.
    std::sort(count.begin(), count.end());
    CHECK(count == std::vector<std::size_t>{12, 12, 13, 13});
}

TEST_CASE("degenerate spread collapses clusters to their centers") {
    RandomSpec rs;
    rs.kind = RandomKind::separated_clusters;
    rs.n = 9;
    rs.d = 1;
    rs.k = 3;
    rs.sigma = 0.0;
    rs.separation = 2.0;
    const Dataset x = gen_random(rs, 8);
    CHECK(x.distinct_count() == 3);
}

TEST_CASE("random spec validation") {
    RandomSpec rs;
    rs.n = 0;
    CHECK_THROWS_AS(gen_random(rs, 1), std::invalid_argument);
    rs.n = 5;
    rs.d = 0;
    CHECK_THROWS_AS(gen_random(rs, 1), std::invalid_argument);
    rs.d = 1;
    rs.box_lo = 2.0;
    rs.box_hi = 1.0;
    CHECK_THROWS_AS(gen_random(rs, 1), std::invalid_argument);
    rs.box_hi = 3.0;
    rs.sigma = -1.0;
    CHECK_THROWS_AS(gen_random(rs, 1), std::invalid_argument);
}
