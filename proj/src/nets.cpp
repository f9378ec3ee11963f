#include "kcost/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kcost/rng.hpp"

namespace kcost {

const char* net_kind_name(NetKind k) {
    switch (k) {
        case NetKind::cover: return "cover";
        case NetKind::packing: return "packing";
        case NetKind::both: return "both";
    }
    return "?";
}

std::size_t default_pool(int d, double epsilon) {
    const double bound = 200.0 * std::pow(1.0 + 2.0 / epsilon, d);
    const double clamped = std::min(std::max(bound, 1e4), 1e6);
    return static_cast<std::size_t>(clamped);
}

namespace {

double min_dist_to(const Dataset& pts, const double* v, int d) {
    double best = std::numeric_limits<double>::infinity();
    const double* base = pts.flat().data();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        double s = 0.0;
        const double* p = base + j * d;
        for (int t = 0; t < d; ++t) {
            const double diff = p[t] - v[t];
            s += diff * diff;
        }
        best = std::min(best, s);
    }
    return std::sqrt(best);
}

// True iff some net point lies within `eps` of v (early exit).
bool covered_by(const Dataset& pts, const double* v, int d, double eps) {
    const double e2 = eps * eps;
    const double* base = pts.flat().data();
    for (std::size_t j = 0; j < pts.size(); ++j) {
        double s = 0.0;
        const double* p = base + j * d;
        for (int t = 0; t < d; ++t) {
            const double diff = p[t] - v[t];
            s += diff * diff;
        }
        if (s <= e2) return true;
    }
    return false;
}

}  // namespace

SphereNet build_net(int d, double epsilon, std::size_t candidate_pool, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");

    SphereNet net;
    net.dim = d;
    net.epsilon = epsilon;
    net.kind = NetKind::both;
    net.points = Dataset(d);

    if (d == 1) {
        net.points.push({-1.0});
        net.points.push({1.0});
        return net;
    }

    if (d == 2) {
        // Largest equispaced grid that keeps adjacent chords >= epsilon; the
        // worst midpoint gap is then below epsilon as well.
        const double step = 2.0 * std::asin(epsilon / 2.0);
        const std::size_t m = static_cast<std::size_t>(std::floor(2.0 * std::numbers::pi / step));
        for (std::size_t i = 0; i < m; ++i) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / m;
            net.points.push({std::cos(a), std::sin(a)});
        }
        return net;
    }

    const std::size_t pool_n = candidate_pool > 0 ? candidate_pool : default_pool(d, epsilon);
    Rng rng(derive_seed(seed, 0xD1CE));
    std::vector<double> pool(pool_n * d);
    for (std::size_t i = 0; i < pool_n; ++i) rng.unit_vector(d, pool.data() + i * d);

    // Gonzalez sweep: repeatedly take the pool point farthest from the net
    // until everything in the pool sits strictly inside epsilon.
    std::vector<double> mind(pool_n, std::numeric_limits<double>::infinity());
    std::size_t next = 0;
    while (true) {
        const double* v = pool.data() + next * d;
        net.points.push(std::span<const double>(v, static_cast<std::size_t>(d)));
        double far_val = 0.0;
        std::size_t far_idx = 0;
        for (std::size_t i = 0; i < pool_n; ++i) {
            double s = 0.0;
            const double* p = pool.data() + i * d;
            for (int t = 0; t < d; ++t) {
                const double diff = p[t] - v[t];
                s += diff * diff;
            }
            mind[i] = std::min(mind[i], std::sqrt(s));
            if (mind[i] > far_val) {
                far_val = mind[i];
                far_idx = i;
            }
        }
        if (far_val < epsilon) break;
        next = far_idx;
    }
    net.pool_examined = pool_n;

    // Augmentation: fresh random directions still >= epsilon away from the
    // net witness uncovered slivers; adding them keeps the packing property
    // while shrinking the uncovered set. Stop after several clean batches.
    const std::size_t batch = 100000;
    const int need_clean = 3, max_batches = 40;
    int clean = 0, batches = 0;
    std::vector<double> v(d);
    while (clean < need_clean && batches < max_batches) {
        bool added = false;
        for (std::size_t i = 0; i < batch; ++i) {
            rng.unit_vector(d, v.data());
            if (!covered_by(net.points, v.data(), d, epsilon)) {
                net.points.push(std::span<const double>(v.data(), static_cast<std::size_t>(d)));
                added = true;
            }
        }
        net.pool_examined += batch;
        ++batches;
        clean = added ? 0 : clean + 1;
    }

    // Exact cover check of the original pool (augmentation only adds points,
    // so earlier distances can only shrink).
    double worst = 0.0;
    for (std::size_t i = 0; i < pool_n; ++i)
        worst = std::max(worst, min_dist_to(net.points, pool.data() + i * d, d));
    net.pool_max_gap = worst;
    return net;
}

double verify_packing(const SphereNet& net) {
    const std::size_t n = net.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::min(best, squared_distance(net.points[i], net.points[j]));
    return std::sqrt(best);
}

double verify_cover(const SphereNet& net, std::size_t probes, std::uint64_t seed) {
    if (net.size() == 0) throw std::invalid_argument("empty net");
    const int d = net.dim;

    if (d == 1) {
        // S^0 = {-1, +1}: exact.
        double worst = 0.0;
        for (double probe : {-1.0, 1.0}) {
            const double p[1] = {probe};
            worst = std::max(worst, min_dist_to(net.points, p, 1));
        }
        return worst;
    }

    if (d == 2) {
        // Exact: the worst probe sits at the angular midpoint of an adjacent
        // pair (wrap-around included).
        std::vector<double> ang(net.size());
        for (std::size_t i = 0; i < net.size(); ++i)
            ang[i] = std::atan2(net.points[i][1], net.points[i][0]);
        std::sort(ang.begin(), ang.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < ang.size(); ++i) {
            const double next =
                i + 1 < ang.size() ? ang[i + 1] : ang[0] + 2.0 * std::numbers::pi;
            const double half = (next - ang[i]) / 2.0;
            worst = std::max(worst, 2.0 * std::sin(half / 2.0));
        }
        return worst;
    }

    Rng rng(derive_seed(seed, 0xC0FE));
    std::vector<double> v(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        rng.unit_vector(d, v.data());
        const double g = min_dist_to(net.points, v.data(), d);
        worst = std::max(worst, g);
    }
    return worst;
}

}  // namespace kcost
