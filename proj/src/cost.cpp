#include "kcost/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kcost {

namespace {

std::size_t nearest_center(const CenterSet& c, std::span<const double> p, double* best_out) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double d = squared_distance(c[j], p);
        if (d < best) {
            best = d;
            arg = j;
        }
    }
    *best_out = best;
    return arg;
}

}  // namespace

CostReport evaluate(const CenterSet& c, const Dataset& x, CostKind kind) {
    if (c.empty()) throw std::invalid_argument("empty center set");
    if (x.empty()) throw std::invalid_argument("empty dataset");
    if (c.dim() != x.dim()) throw std::invalid_argument("dimension mismatch");
    CostReport r;
    r.kind = kind;
    r.assignment.resize(x.size());
    r.per_center.assign(c.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d2;
        const std::size_t j = nearest_center(c, x[i], &d2);
        const double cost = kind == CostKind::means ? d2 : std::sqrt(d2);
        r.assignment[i] = j;
        r.per_center[j] += cost;
        r.total += cost;
    }
    return r;
}

double evaluate_weighted(const CenterSet& c, const WeightedSet& s, CostKind kind) {
    if (c.empty()) throw std::invalid_argument("empty center set");
    s.check();
    if (s.size() > 0 && c.dim() != s.points.dim())
        throw std::invalid_argument("dimension mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.weights[i] == 0.0) continue;
        double d2;
        nearest_center(c, s.points[i], &d2);
        total += s.weights[i] * (kind == CostKind::means ? d2 : std::sqrt(d2));
    }
    return total;
}

Vec centroid(const Dataset& x) {
    if (x.empty()) throw std::invalid_argument("empty dataset");
    Vec m(x.dim(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto p = x[i];
        for (int d = 0; d < x.dim(); ++d) m[d] += p[d];
    }
    for (double& v : m) v /= static_cast<double>(x.size());
    return m;
}

Vec geometric_median(const Dataset& x, double rel_tol, int max_iters) {
    if (x.empty()) throw std::invalid_argument("empty dataset");
    const std::size_t n = x.size();
    const int dim = x.dim();
    Vec y = centroid(x);
    Vec num(dim), dir(dim);
    for (int it = 0; it < max_iters; ++it) {
        std::fill(num.begin(), num.end(), 0.0);
        std::fill(dir.begin(), dir.end(), 0.0);
        double denom = 0.0;
        double at_y = 0.0;  // multiplicity of data points coinciding with y
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto p = x[i];
            const double d = std::sqrt(squared_distance(p, std::span<const double>(y)));
            scale = std::max(scale, d);
            if (d < 1e-14 * (1.0 + std::abs(y[0]))) {
                at_y += 1.0;
                continue;
            }
            const double w = 1.0 / d;
            denom += w;
            for (int k = 0; k < dim; ++k) {
                num[k] += p[k] * w;
                dir[k] += (p[k] - y[k]) * w;
            }
        }
        if (denom == 0.0) return y;  // every point coincides with y
        // Vardi-Zhang step handles iterates that land on a data point.
        double rnorm = 0.0;
        for (int k = 0; k < dim; ++k) rnorm += dir[k] * dir[k];
        rnorm = std::sqrt(rnorm);
        if (at_y > 0.0 && rnorm <= at_y) return y;  // subgradient optimality
        const double step = at_y > 0.0 ? std::max(0.0, 1.0 - at_y / rnorm) : 1.0;
        double shift = 0.0;
        for (int k = 0; k < dim; ++k) {
            const double next = (1.0 - step) * y[k] + step * (num[k] / denom);
            shift += (next - y[k]) * (next - y[k]);
            y[k] = next;
        }
        if (std::sqrt(shift) <= rel_tol * std::max(scale, 1e-300)) break;
    }
    return y;
}

double delta1(const Dataset& x, CostKind kind) {
    if (x.empty()) throw std::invalid_argument("empty dataset");
    if (kind == CostKind::means) {
        CenterSet c(x.dim());
        c.push(std::span<const double>(centroid(x)));
        return evaluate(c, x, kind).total;
    }
    if (x.dim() == 1) {
        std::vector<double> v(x.flat());
        std::sort(v.begin(), v.end());
        const double med = v[(v.size() - 1) / 2];  // lower median
        double total = 0.0;
        for (double t : v) total += std::abs(t - med);
        return total;
    }
    CenterSet c(x.dim());
    c.push(std::span<const double>(geometric_median(x)));
    return evaluate(c, x, kind).total;
}

std::vector<std::vector<std::size_t>> voronoi_partition(const CenterSet& c,
                                                        const Dataset& x,
                                                        CostKind kind) {
    const CostReport r = evaluate(c, x, kind);
    std::vector<std::vector<std::size_t>> cells(c.size());
    for (std::size_t i = 0; i < r.assignment.size(); ++i)
        cells[r.assignment[i]].push_back(i);
    return cells;
}

Clustering clustering_from_centers(const CenterSet& c, const Dataset& x, CostKind kind) {
    return Clustering{c, voronoi_partition(c, x, kind)};
}

double metric_cost(const FiniteMetric& m, std::span<const std::size_t> centers,
                   std::span<const std::size_t> ys) {
    if (centers.empty()) throw std::invalid_argument("empty center set");
    double total = 0.0;
    for (std::size_t y : ys) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c : centers) best = std::min(best, m.at(y, c));
        total += best;
    }
    return total;
}

}  // namespace kcost
