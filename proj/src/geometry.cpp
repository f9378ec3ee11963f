#include "kcost/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kcost {

CostKind cost_kind_from_int(int e) {
    if (e == 1) return CostKind::median;
    if (e == 2) return CostKind::means;
    throw std::invalid_argument("cost exponent must be 1 or 2");
}

const char* cost_kind_name(CostKind k) {
    return k == CostKind::means ? "means" : "median";
}

Dataset::Dataset(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("dataset dimension must be >= 1");
}

Dataset::Dataset(int dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
    if (dim < 1) throw std::invalid_argument("dataset dimension must be >= 1");
    if (data_.size() % dim_ != 0)
        throw std::invalid_argument("flat data length not a multiple of dim");
    for (double v : data_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
}

void Dataset::push(std::span<const double> p) {
    if (dim_ == 0) dim_ = static_cast<int>(p.size());
    if (p.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("point dimension mismatch");
    for (double v : p)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
    data_.insert(data_.end(), p.begin(), p.end());
}

void Dataset::push(std::initializer_list<double> p) {
    push(std::span<const double>(p.begin(), p.size()));
}

void Dataset::push1(double x) { push(std::span<const double>(&x, 1)); }

void Dataset::append_n(std::span<const double> p, std::size_t count) {
    if (size() + count > kMaxPoints)
        throw std::length_error("dataset exceeds point cap");
    for (std::size_t i = 0; i < count; ++i) push(p);
}

std::size_t Dataset::distinct_count() const {
    const std::size_t n = size();
    if (n == 0) return 0;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    const int d = dim_;
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(
            data_.begin() + a * d, data_.begin() + (a + 1) * d,
            data_.begin() + b * d, data_.begin() + (b + 1) * d);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n; ++i)
        if (less(idx[i - 1], idx[i])) ++distinct;
    return distinct;
}

void WeightedSet::check() const {
    if (weights.size() != points.size())
        throw std::invalid_argument("weight count != point count");
    for (double w : weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("weights must be finite and nonnegative");
}

FiniteMetric::FiniteMetric(std::size_t n, std::vector<double> flat)
    : n_(n), d_(std::move(flat)) {
    if (d_.size() != n * n) throw std::invalid_argument("metric matrix must be n*n");
}

std::string MetricViolation::describe() const {
    char buf[160];
    switch (kind) {
        case Kind::negative_entry:
            std::snprintf(buf, sizeof buf, "negative entry at (%zu,%zu): %g", i, j, lhs);
            break;
        case Kind::nonzero_diagonal:
            std::snprintf(buf, sizeof buf, "nonzero diagonal at (%zu,%zu): %g", i, i, lhs);
            break;
        case Kind::asymmetry:
            std::snprintf(buf, sizeof buf, "asymmetry at (%zu,%zu): %g vs %g", i, j, lhs, rhs);
            break;
        case Kind::triangle:
            std::snprintf(buf, sizeof buf,
                          "triangle violation: d(%zu,%zu)=%g > d(%zu,%zu)+d(%zu,%zu)=%g",
                          i, k, lhs, i, j, j, k, rhs);
            break;
    }
    return buf;
}

std::optional<MetricViolation> validate_metric(const FiniteMetric& m, double rel_tol) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) != 0.0)
            return MetricViolation{MetricViolation::Kind::nonzero_diagonal, i, i, i,
                                   m.at(i, i), 0.0};
        for (std::size_t j = 0; j < n; ++j)
            if (m.at(i, j) < 0.0)
                return MetricViolation{MetricViolation::Kind::negative_entry, i, j, j,
                                       m.at(i, j), 0.0};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = m.at(i, j), b = m.at(j, i);
            if (std::abs(a - b) > rel_tol * std::max({std::abs(a), std::abs(b), 1.0}))
                return MetricViolation{MetricViolation::Kind::asymmetry, i, j, j, a, b};
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double lhs = m.at(i, k);
                const double rhs = m.at(i, j) + m.at(j, k);
                if (lhs > rhs + rel_tol * std::max(rhs, 1.0))
                    return MetricViolation{MetricViolation::Kind::triangle, i, j, k, lhs, rhs};
            }
        }
    return std::nullopt;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b, CostKind kind) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    const double s2 = squared_distance(a, b);
    return kind == CostKind::means ? s2 : std::sqrt(s2);
}

FiniteMetric metric_from_dataset(const Dataset& x) {
    const std::size_t n = x.size();
    FiniteMetric m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(squared_distance(x[i], x[j]));
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    return m;
}

}  // namespace kcost
