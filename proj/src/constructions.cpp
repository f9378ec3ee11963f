#include "kcost/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcost/rng.hpp"

namespace kcost {

double cost_1d_sorted(const std::vector<double>& s, std::span<const double> xs,
                      CostKind kind) {
    if (s.empty()) throw std::invalid_argument("empty center set");
    double total = 0.0;
    for (double x : xs) {
        auto it = std::lower_bound(s.begin(), s.end(), x);
        double best = std::numeric_limits<double>::infinity();
        if (it != s.end()) best = *it - x;
        if (it != s.begin()) best = std::min(best, x - *(it - 1));
        total += kind == CostKind::means ? best * best : best;
    }
    return total;
}

Upper1d build_1d_upper(std::span<const double> xs, double epsilon, CostKind kind) {
    if (xs.empty()) throw std::invalid_argument("empty input");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1]");

    const int p = exponent(kind);
    const std::size_t n = xs.size();
    Upper1d u;
    double reach = 0.0;
    for (double x : xs) {
        const double a = std::abs(x);
        reach = std::max(reach, a);
        u.phi0 += p == 2 ? x * x : a;
    }
    if (u.phi0 == 0.0) {
        u.s = {0.0};
        u.size_bound = 1;
        return u;
    }

    const double r_base = p == 2 ? std::sqrt(u.phi0) / static_cast<double>(n)
                                 : u.phi0 / static_cast<double>(n);
    const double g = p == 2 ? std::sqrt(epsilon / 2.0) : epsilon / 2.0;
    u.r_scale = r_base;
    u.grid = g;
    u.ratio_r = 1.0 + g;

    std::vector<double> s;
    const auto inner = static_cast<long long>(std::floor(1.0 / g));
    s.push_back(0.0);
    for (long long i = 1; i <= inner; ++i) {
        const double v = static_cast<double>(i) * g * r_base;
        s.push_back(v);
        s.push_back(-v);
    }

    int t = n > 1 ? static_cast<int>(std::ceil(std::log(static_cast<double>(n)) /
                                               std::log(u.ratio_r)))
                  : 0;
    // The outermost radius must reach every |x| (|x| <= n * R always).
    while (std::pow(u.ratio_r, t) * r_base < reach && t < 1 << 24) ++t;
    u.t = t;
    for (int i = 0; i <= t; ++i) {
        const double v = std::pow(u.ratio_r, i) * r_base;
        s.push_back(v);
        s.push_back(-v);
    }

    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    u.s = std::move(s);
    u.size_bound = static_cast<std::size_t>(2 * (inner + 1) + 2 * (t + 1));

    const double achieved = cost_1d_sorted(u.s, xs, kind);
    if (achieved > epsilon * u.phi0 * (1.0 + 1e-9))
        throw std::logic_error("1-d upper bound construction missed its guarantee");
    return u;
}

const SphereNet& NetSource::get(int d, double scale) {
    const auto key = std::make_pair(d, std::llround(scale * 1e12));
    auto it = cache_.find(key);
    if (it == cache_.end())
        it = cache_.emplace(key, build_net(d, scale, pool_, derive_seed(seed_, key.second)))
                 .first;
    return it->second;
}

FanResult build_fan_coreset(const Dataset& x, const Clustering& cl, double epsilon,
                            CostKind kind, NetSource& nets) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (cl.centers.size() != cl.cells.size())
        throw std::invalid_argument("centers/cells size mismatch");
    if (cl.centers.dim() != x.dim()) throw std::invalid_argument("dimension mismatch");

    const int d = x.dim();
    const int p = exponent(kind);
    const double scale = p == 2 ? std::sqrt(epsilon / 2.0) : epsilon / 2.0;
    const SphereNet& net = nets.get(d, scale);

    FanResult f;
    f.epsilon = epsilon;
    f.kind = kind;
    f.net_scale = scale;
    f.net_size = net.size();
    f.xi = CenterSet(d);

    std::vector<double> v(d);
    for (std::size_t ci = 0; ci < cl.cells.size(); ++ci) {
        const auto& cell = cl.cells[ci];
        if (cell.empty()) {
            f.per_cell_sizes.push_back(0);
            continue;
        }
        const auto c = cl.centers[ci];
        Dataset cell_pts(d);
        for (std::size_t idx : cell) cell_pts.push(x[idx]);
        {
            CenterSet one(d);
            one.push(c);
            f.baseline += evaluate(one, cell_pts, kind).total;
        }

        // Ray id: [0, net.size()) are net directions, patches appended after.
        std::vector<Vec> extra;
        std::map<std::size_t, std::vector<double>> radii;
        for (std::size_t idx : cell) {
            auto y = x[idx];
            double nv2 = 0.0;
            for (int tdim = 0; tdim < d; ++tdim) {
                v[tdim] = y[tdim] - c[tdim];
                nv2 += v[tdim] * v[tdim];
            }
            const double nv = std::sqrt(nv2);
            if (nv == 0.0) continue;  // sits on the center; covered by c itself

            double best_dot = -std::numeric_limits<double>::infinity();
            std::size_t best_ray = 0;
            for (std::size_t j = 0; j < net.size(); ++j) {
                auto uvec = net.points[j];
                double dot = 0.0;
                for (int tdim = 0; tdim < d; ++tdim) dot += uvec[tdim] * v[tdim];
                if (dot > best_dot) {
                    best_dot = dot;
                    best_ray = j;
                }
            }
            for (std::size_t j = 0; j < extra.size(); ++j) {
                double dot = 0.0;
                for (int tdim = 0; tdim < d; ++tdim) dot += extra[j][tdim] * v[tdim];
                if (dot > best_dot) {
                    best_dot = dot;
                    best_ray = net.size() + j;
                }
            }

            double s = std::max(0.0, best_dot);
            double err2 = std::max(0.0, nv2 - s * s);  // ||y - c - s*u||^2 for unit u
            if (std::sqrt(err2) > scale * nv * (1.0 + 1e-9)) {
                // Sampled net left this direction under-covered: add the
                // direction itself as a ray so the snapping bound is exact.
                Vec dir(d);
                for (int tdim = 0; tdim < d; ++tdim) dir[tdim] = v[tdim] / nv;
                extra.push_back(std::move(dir));
                best_ray = net.size() + extra.size() - 1;
                s = nv;
                err2 = 0.0;
                ++f.patched_rays;
            }
            const double snap_ratio = std::sqrt(err2) / nv;
            f.max_snap_ratio = std::max(f.max_snap_ratio, snap_ratio);
            radii[best_ray].push_back(s);
        }

        std::size_t cell_size = 0;
        // Every nonempty cell contributes its center (the 0 entry of each
        // per-ray grid collapses to it).
        f.xi.push(c);
        ++cell_size;
        for (auto& [ray, rs] : radii) {
            const Upper1d grid = build_1d_upper(rs, epsilon / 2.0, kind);
            std::span<const double> uvec =
                ray < net.size() ? net.points[ray]
                                 : std::span<const double>(extra[ray - net.size()]);
            ++f.rays_used;
            for (double sval : grid.s) {
                if (sval <= 0.0) continue;  // one-sided: radii are nonnegative
                Vec pt(d);
                for (int tdim = 0; tdim < d; ++tdim) pt[tdim] = c[tdim] + sval * uvec[tdim];
                f.xi.push(std::span<const double>(pt));
                ++cell_size;
            }
        }
        f.per_cell_sizes.push_back(cell_size);
    }

    if (f.xi.empty()) throw std::invalid_argument("clustering covers no points");
    f.cost = evaluate(f.xi, x, kind).total;
    f.ratio = f.baseline > 0.0 ? f.cost / f.baseline : 0.0;
    if (f.cost > epsilon * f.baseline * (1.0 + 1e-9))
        throw std::logic_error("fan construction missed its guarantee");
    return f;
}

AnnuliResult build_metric_annuli(const FiniteMetric& m, std::span<const std::size_t> ys,
                                 std::size_t c, double epsilon) {
    if (ys.empty()) throw std::invalid_argument("empty subset");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (c >= m.size()) throw std::invalid_argument("center index out of range");
    for (std::size_t y : ys)
        if (y >= m.size()) throw std::invalid_argument("member index out of range");

    const std::size_t n = ys.size();
    AnnuliResult a;
    a.annulus_of.assign(n, 0);
    a.rep_of.assign(n, c);
    a.rep_dist.assign(n, 0.0);

    double sum = 0.0;
    for (std::size_t y : ys) sum += m.at(y, c);
    a.r_mean = sum / static_cast<double>(n);
    a.baseline = sum;

    if (a.r_mean == 0.0) {  // every point coincides with c
        a.reps = {c};
        a.t = 0;
        a.annulus_sizes = {n};
        a.annulus_rep_counts = {1};
        return a;
    }

    a.t = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
    const int t = a.t;
    a.annulus_sizes.assign(t + 1, 0);
    a.annulus_rep_counts.assign(t + 1, 0);

    std::vector<std::vector<std::size_t>> ring(t + 1);  // positions into ys
    for (std::size_t i = 0; i < n; ++i) {
        const double dist = m.at(ys[i], c);
        int j = 0;
        while (dist > std::ldexp(a.r_mean, j) && j < t) ++j;
        if (dist > std::ldexp(a.r_mean, j))
            throw std::logic_error("point beyond outermost annulus");
        a.annulus_of[i] = j;
        ring[j].push_back(i);
        ++a.annulus_sizes[j];
    }

    for (int j = 0; j <= t; ++j) {
        // Balls of diameter (epsilon/2) * 2^j * R: absorb within half that.
        const double absorb = (epsilon / 4.0) * std::ldexp(a.r_mean, j);
        std::vector<bool> done(ring[j].size(), false);
        for (std::size_t pi = 0; pi < ring[j].size(); ++pi) {
            if (done[pi]) continue;
            const std::size_t rep = ys[ring[j][pi]];
            a.reps.push_back(rep);
            ++a.annulus_rep_counts[j];
            for (std::size_t qi = pi; qi < ring[j].size(); ++qi) {
                if (done[qi]) continue;
                const double dq = m.at(rep, ys[ring[j][qi]]);
                if (dq <= absorb) {
                    done[qi] = true;
                    a.rep_of[ring[j][qi]] = rep;
                    a.rep_dist[ring[j][qi]] = dq;
                }
            }
        }
    }

    a.cost = metric_cost(m, a.reps, ys);
    a.ratio = a.baseline > 0.0 ? a.cost / a.baseline : 0.0;
    if (a.cost > epsilon * a.baseline * (1.0 + 1e-9))
        throw std::logic_error("annuli construction missed its guarantee");
    return a;
}

}  // namespace kcost
