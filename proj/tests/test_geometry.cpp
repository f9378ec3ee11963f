#include <stdexcept>

#include "doctest.h"
#include "kcost/generators.hpp"
#include "kcost/geometry.hpp"
#include "kcost/rng.hpp"

using namespace kcost;

TEST_CASE("distance exponents") {
    const Vec a{0.0, 0.0};
    const Vec b{3.0, 4.0};
    CHECK(distance(a, b, CostKind::means) == 25.0);
    CHECK(distance(a, b, CostKind::median) == 5.0);
    CHECK(distance(a, a, CostKind::means) == 0.0);
    CHECK(distance(a, a, CostKind::median) == 0.0);

    const Vec c{1.0};
    CHECK_THROWS_AS(distance(a, c, CostKind::means), std::invalid_argument);
}

TEST_CASE("squared distance matches exponent-1 distance squared") {
    Rng rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        Vec a(3), b(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.uniform(-5.0, 5.0);
            b[i] = rng.uniform(-5.0, 5.0);
        }
        const double d1 = distance(a, b, CostKind::median);
        const double d2 = distance(a, b, CostKind::means);
        CHECK(d2 == doctest::Approx(d1 * d1).epsilon(1e-12));
    }
}

TEST_CASE("dataset storage and cap") {
    Dataset x(2);
    x.push({1.0, 2.0});
    x.push({1.0, 2.0});
    x.push({3.0, 4.0});
    CHECK(x.size() == 3);
    CHECK(x.dim() == 2);
    CHECK(x[1][1] == 2.0);
    CHECK(x.distinct_count() == 2);

    Dataset y(1);
    const double v[1] = {0.5};
    CHECK_THROWS_AS(y.append_n(v, Dataset::kMaxPoints + 1), std::length_error);
}

TEST_CASE("cost kind parsing") {
    CHECK(cost_kind_from_int(1) == CostKind::median);
    CHECK(cost_kind_from_int(2) == CostKind::means);
    CHECK_THROWS_AS(cost_kind_from_int(3), std::invalid_argument);
    CHECK(std::string(cost_kind_name(CostKind::means)) == "means");
    CHECK(std::string(cost_kind_name(CostKind::median)) == "median");
}

TEST_CASE("metric validation distinguishes violations") {
    SUBCASE("two-point metric is fine") {
        FiniteMetric m(2, {0, 1, 1, 0});
        CHECK(!validate_metric(m));
    }
    SUBCASE("asymmetry") {
        FiniteMetric m(2, {0, 1, 2, 0});
        const auto v = validate_metric(m);
        REQUIRE(v.has_value());
        CHECK(v->kind == MetricViolation::Kind::asymmetry);
        CHECK(v->i == 0);
        CHECK(v->j == 1);
    }
    SUBCASE("triangle violation") {
        FiniteMetric m(3, {0, 1, 5, 1, 0, 1, 5, 1, 0});
        const auto v = validate_metric(m);
        REQUIRE(v.has_value());
        CHECK(v->kind == MetricViolation::Kind::triangle);
        CHECK(v->lhs == 5.0);
        CHECK(v->rhs == doctest::Approx(2.0));
    }
    SUBCASE("nonzero diagonal") {
        FiniteMetric m(2, {0.5, 1, 1, 0});
        const auto v = validate_metric(m);
        REQUIRE(v.has_value());
        CHECK(v->kind == MetricViolation::Kind::nonzero_diagonal);
    }
    SUBCASE("negative entry") {
        FiniteMetric m(2, {0, -1, -1, 0});
        const auto v = validate_metric(m);
        REQUIRE(v.has_value());
        CHECK(v->kind == MetricViolation::Kind::negative_entry);
    }
}

TEST_CASE("euclidean-derived matrices always validate") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomSpec rs;
        rs.kind = RandomKind::uniform_box;
        rs.n = 40;
        rs.d = 3;
        rs.box_lo = -2.0;
        rs.box_hi = 2.0;
        const Dataset x = gen_random(rs, seed);
        CHECK(!validate_metric(metric_from_dataset(x)));
    }
}

TEST_CASE("weighted set checks") {
    WeightedSet s;
    s.points = Dataset(1);
    s.points.push1(1.0);
    s.weights = {2.0};
    CHECK_NOTHROW(s.check());
    s.weights = {-1.0};
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
    s.weights = {1.0, 2.0};
    CHECK_THROWS_AS(s.check(), std::invalid_argument);
}
