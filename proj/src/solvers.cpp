#include "kcost/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcost/rng.hpp"
#include "kcost/sampling.hpp"

namespace kcost {

const char* solve_method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::dp1d: return "dp1d";
        case SolveMethod::enumerate: return "enumerate";
        case SolveMethod::lloyd_multistart: return "lloyd-multistart";
    }
    return "?";
}

SolveMethod solve_method_from_name(const std::string& s) {
    if (s == "dp1d") return SolveMethod::dp1d;
    if (s == "enumerate") return SolveMethod::enumerate;
    if (s == "lloyd" || s == "lloyd-multistart") return SolveMethod::lloyd_multistart;
    throw std::invalid_argument("unknown solve method: " + s);
}

namespace {

struct Prefix1d {
    std::vector<double> xs;  // sorted
    std::vector<double> s1;  // prefix sums
    std::vector<double> s2;  // prefix sums of squares (means only)

    explicit Prefix1d(const Dataset& x, CostKind kind) {
        xs = x.flat();
        std::sort(xs.begin(), xs.end());
        const std::size_t n = xs.size();
        s1.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) s1[i + 1] = s1[i] + xs[i];
        if (kind == CostKind::means) {
            s2.assign(n + 1, 0.0);
            for (std::size_t i = 0; i < n; ++i) s2[i + 1] = s2[i] + xs[i] * xs[i];
        }
    }

    // Optimal 1-center cost of sorted block [i, j].
    double block(std::size_t i, std::size_t j, CostKind kind) const {
        const double len = static_cast<double>(j - i + 1);
        if (kind == CostKind::means) {
            const double sum = s1[j + 1] - s1[i];
            const double cost = (s2[j + 1] - s2[i]) - sum * sum / len;
            return cost > 0.0 ? cost : 0.0;
        }
        const std::size_t mid = i + (j - i) / 2;  // lower median
        const double med = xs[mid];
        const double right = (s1[j + 1] - s1[mid + 1]) - static_cast<double>(j - mid) * med;
        const double left = static_cast<double>(mid - i + 1) * med - (s1[mid + 1] - s1[i]);
        return right + left;
    }

    double block_center(std::size_t i, std::size_t j, CostKind kind) const {
        if (kind == CostKind::means)
            return (s1[j + 1] - s1[i]) / static_cast<double>(j - i + 1);
        return xs[i + (j - i) / 2];
    }
};

// backtrack (if non-null) records, per (m, j), the start index of the last
// block of an optimal m-clustering of the sorted prefix [0, j].
double dp1d_value(const Prefix1d& p, int k, CostKind kind, std::vector<int>* backtrack) {
    const std::size_t n = p.xs.size();
    std::vector<double> prev(n), cur(n);
    for (std::size_t j = 0; j < n; ++j) prev[j] = p.block(0, j, kind);
    if (backtrack) {
        backtrack->assign(static_cast<std::size_t>(k) * n, 0);
        for (std::size_t j = 0; j < n; ++j) (*backtrack)[j] = 0;
    }
    for (int m = 2; m <= k; ++m) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j + 1 <= static_cast<std::size_t>(m)) {
                cur[j] = 0.0;  // at most one point per block
                if (backtrack) (*backtrack)[(m - 1) * n + j] = static_cast<int>(j);
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            int arg = m - 1;
            for (std::size_t i = m - 1; i <= j; ++i) {
                const double v = prev[i - 1] + p.block(i, j, kind);
                if (v < best) {
                    best = v;
                    arg = static_cast<int>(i);
                }
            }
            cur[j] = best;
            if (backtrack) (*backtrack)[(m - 1) * n + j] = arg;
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

double exact_1d_value(const Dataset& x, int k, CostKind kind) {
    const Prefix1d p(x, kind);
    return dp1d_value(p, k, kind, nullptr);
}

}  // namespace

OptimalCostResult exact_1d(const Dataset& x, int k, CostKind kind) {
    if (x.dim() != 1) throw std::invalid_argument("exact_1d needs 1-d data");
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty dataset");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw std::invalid_argument("k out of range");

    const Prefix1d p(x, kind);
    std::vector<int> bt;
    const double value = dp1d_value(p, k, kind, &bt);

    OptimalCostResult r;
    r.value = value;
    r.exact = true;
    r.method = SolveMethod::dp1d;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t j = n - 1;
    for (int m = k; m >= 1; --m) {
        const std::size_t i = m == 1 ? 0 : static_cast<std::size_t>(bt[(m - 1) * n + j]);
        blocks.emplace_back(i, j);
        if (i == 0) break;
        j = i - 1;
    }
    std::reverse(blocks.begin(), blocks.end());
    CenterSet centers(1);
    for (auto [i, jj] : blocks) centers.push1(p.block_center(i, jj, kind));
    r.centers = std::move(centers);
    return r;
}

OptimalCostResult enumerate_exact(const Dataset& x, int k, CostKind kind) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty dataset");
    if (n > 12) throw std::invalid_argument("enumerate_exact limited to n <= 12");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw std::invalid_argument("k out of range");

    const std::size_t full = (std::size_t{1} << n) - 1;
    const int dim = x.dim();

    // Optimal 1-center cost (and center) of every nonempty subset.
    std::vector<double> cost1(full + 1, 0.0);
    std::vector<Vec> center1(full + 1);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        Dataset sub(dim);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) sub.push(x[i]);
        if (kind == CostKind::median && dim == 1) {
            std::vector<double> v(sub.flat());
            std::sort(v.begin(), v.end());
            const double med = v[(v.size() - 1) / 2];
            double t = 0.0;
            for (double vv : v) t += std::abs(vv - med);
            cost1[mask] = t;
            center1[mask] = Vec{med};
        } else {
            center1[mask] = kind == CostKind::means ? centroid(sub) : geometric_median(sub);
            CenterSet c(dim);
            c.push(std::span<const double>(center1[mask]));
            cost1[mask] = evaluate(c, sub, kind).total;
        }
    }

    // best[j][mask]: optimal cost of covering `mask` with <= j parts. Each
    // candidate part contains the lowest set bit of mask, so every partition
    // is enumerated exactly once across the submask sweep.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best(k + 1, std::vector<double>(full + 1, inf));
    std::vector<std::vector<std::size_t>> part(k + 1, std::vector<std::size_t>(full + 1, 0));
    best[0][0] = 0.0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        best[1][mask] = cost1[mask];
        part[1][mask] = mask;
    }
    best[1][0] = 0.0;
    for (int j = 2; j <= k; ++j) {
        best[j][0] = 0.0;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            double b = best[j - 1][mask];
            std::size_t arg = part[j - 1][mask];
            const std::size_t low = mask & (~mask + 1);
            for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
                if (!(sub & low)) continue;
                const std::size_t rest = mask ^ sub;
                const double v = cost1[sub] + (rest ? best[j - 1][rest] : 0.0);
                if (v < b) {
                    b = v;
                    arg = sub;
                }
            }
            best[j][mask] = b;
            part[j][mask] = arg;
        }
    }

    OptimalCostResult r;
    r.value = best[k][full];
    r.exact = true;
    r.method = SolveMethod::enumerate;
    CenterSet centers(dim);
    std::size_t mask = full;
    int j = k;
    while (mask) {
        const std::size_t p = part[j][mask];
        centers.push(std::span<const double>(center1[p]));
        mask ^= p;
        if (j > 1) --j;
    }
    r.centers = std::move(centers);
    return r;
}

namespace {

OptimalCostResult lloyd_once(const Dataset& x, int k, CostKind kind, std::uint64_t seed) {
    const std::size_t n = x.size();
    const int dim = x.dim();
    CenterSet c = centers_from_trace(x, d2_sample(x, k, kind, seed));
    std::vector<std::size_t> assign(n, n), prev_assign;

    for (int round = 0; round < 200; ++round) {
        CostReport rep = evaluate(c, x, kind);
        // Reseed empty clusters at the points currently paying the most.
        std::vector<std::size_t> cell_count(c.size(), 0);
        for (std::size_t a : rep.assignment) ++cell_count[a];
        bool any_empty = false;
        for (std::size_t j = 0; j < c.size(); ++j) any_empty |= cell_count[j] == 0;
        if (any_empty) {
            std::vector<double> contrib(n);
            for (std::size_t i = 0; i < n; ++i)
                contrib[i] = distance(x[i], c[rep.assignment[i]], kind);
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return contrib[a] > contrib[b] || (contrib[a] == contrib[b] && a < b);
            });
            CenterSet fixed(dim);
            std::size_t next_take = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (cell_count[j] == 0 && next_take < n) {
                    fixed.push(x[order[next_take++]]);
                } else {
                    fixed.push(c[j]);
                }
            }
            c = std::move(fixed);
            rep = evaluate(c, x, kind);
        }
        prev_assign = std::move(assign);
        assign = rep.assignment;
        if (assign == prev_assign) break;

        CenterSet updated(dim);
        for (std::size_t j = 0; j < c.size(); ++j) {
            Dataset cell(dim);
            for (std::size_t i = 0; i < n; ++i)
                if (assign[i] == j) cell.push(x[i]);
            if (cell.empty()) {
                updated.push(c[j]);
            } else if (kind == CostKind::means) {
                updated.push(std::span<const double>(centroid(cell)));
            } else if (dim == 1) {
                std::vector<double> v(cell.flat());
                std::sort(v.begin(), v.end());
                updated.push1(v[(v.size() - 1) / 2]);
            } else {
                updated.push(std::span<const double>(geometric_median(cell)));
            }
        }
        c = std::move(updated);
    }

    OptimalCostResult r;
    r.value = evaluate(c, x, kind).total;
    r.centers = std::move(c);
    r.exact = false;
    r.method = SolveMethod::lloyd_multistart;
    return r;
}

}  // namespace

OptimalCostResult lloyd_multistart(const Dataset& x, int k, CostKind kind,
                                   int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (k < 1 || static_cast<std::size_t>(k) > x.size())
        throw std::invalid_argument("k out of range");
    OptimalCostResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        OptimalCostResult cur = lloyd_once(x, k, kind, derive_seed(seed, r));
        if (cur.value < best.value) best = std::move(cur);  // ties keep lowest r
    }
    return best;
}

OptimalCostResult solve(const Dataset& x, int k, CostKind kind, SolveMethod method,
                        std::uint64_t seed, int restarts) {
    switch (method) {
        case SolveMethod::dp1d: return exact_1d(x, k, kind);
        case SolveMethod::enumerate: return enumerate_exact(x, k, kind);
        case SolveMethod::lloyd_multistart:
            return lloyd_multistart(x, k, kind, restarts, seed);
    }
    throw std::logic_error("unreachable");
}

namespace {

double solve_value(const Dataset& x, int k, CostKind kind, SolveMethod method,
                   std::uint64_t seed, int restarts) {
    if (method == SolveMethod::dp1d) {
        if (x.dim() != 1) throw std::invalid_argument("dp1d oracle needs 1-d data");
        if (k < 1 || static_cast<std::size_t>(k) > x.size())
            throw std::invalid_argument("k out of range");
        return exact_1d_value(x, k, kind);
    }
    return solve(x, k, kind, method, seed, restarts).value;
}

}  // namespace

LEstimate estimate_L(const Dataset& x, int k, double epsilon, CostKind kind,
                     SolveMethod oracle, std::uint64_t seed, int restarts) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty dataset");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw std::invalid_argument("k out of range");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    LEstimate e;
    e.k = k;
    e.epsilon = epsilon;
    e.exact = oracle != SolveMethod::lloyd_multistart;
    e.delta_k_used = solve_value(x, k, kind, oracle, derive_seed(seed, 0), restarts);
    const double target = epsilon * e.delta_k_used;

    int lo = 1, hi = static_cast<int>(n);  // cost at m = n is 0 <= target
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        const double v = solve_value(x, mid, kind, oracle, derive_seed(seed, mid), restarts);
        if (v <= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    e.l_hat = lo;
    return e;
}

DecayCurve decay_curve(const Dataset& x, CostKind kind, SolveMethod oracle,
                       int m_max, std::uint64_t seed, int restarts) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty dataset");
    if (m_max <= 0 || static_cast<std::size_t>(m_max) > n) m_max = static_cast<int>(n);
    DecayCurve c;
    c.exact = oracle != SolveMethod::lloyd_multistart;
    for (int m = 1; m <= m_max; ++m) {
        c.m.push_back(m);
        c.cost.push_back(solve_value(x, m, kind, oracle, derive_seed(seed, m), restarts));
    }
    return c;
}

}  // namespace kcost
