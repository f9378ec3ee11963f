#include "kcost/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "kcost/rng.hpp"

namespace kcost {
namespace {

// All certificate arithmetic stays below 2^52 so doubles remain exact.
constexpr unsigned long long kExactLimit = 1ULL << 52;

unsigned long long checked_pow(long long base, int exp) {
    unsigned long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > kExactLimit / static_cast<unsigned long long>(base))
            throw std::overflow_error("r^(2t) exceeds the exact-integer range");
        v *= static_cast<unsigned long long>(base);
    }
    return v;
}

long long ratio_for(double epsilon) {
    return static_cast<long long>(std::ceil(1.0 + std::sqrt(32.0 * epsilon)));
}

struct ProfileSums {
    unsigned long long eta = 0;        // points per ray
    unsigned long long phi_means = 0;  // per-ray squared cost to the apex
    unsigned long long phi_median = 0;  // per-ray absolute cost to the apex
};

ProfileSums profile_sums(long long r, int t) {
    ProfileSums s;
    for (int i = 1; i <= t; ++i) {
        const unsigned long long mult = checked_pow(r, 2 * (t - i));
        const unsigned long long rad = checked_pow(r, i);
        s.eta += mult;
        s.phi_means += mult * rad * rad;  // = r^{2t} per level
        if (s.phi_median > kExactLimit - mult * rad)
            throw std::overflow_error("profile cost exceeds the exact-integer range");
        s.phi_median += mult * rad;
    }
    return s;
}

void check_lower_args(double epsilon, int t) {
    if (!(epsilon > 0.0) || !(epsilon < 0.125))
        throw std::invalid_argument("epsilon must lie in (0, 1/8)");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
}

}  // namespace

std::pair<Dataset, LowerBoundSpec> gen_lower_1d(double epsilon, int t) {
    check_lower_args(epsilon, t);
    const long long r = ratio_for(epsilon);
    const ProfileSums sums = profile_sums(r, t);

    const unsigned long long n = 2 * sums.eta;
    if (n > Dataset::kMaxPoints)
        throw std::length_error("instance exceeds the point cap");

    Dataset x(1);
    for (int i = 1; i <= t; ++i) {
        const unsigned long long mult = checked_pow(r, 2 * (t - i));
        const double radius = static_cast<double>(checked_pow(r, i));
        const double plus[1] = {radius};
        const double minus[1] = {-radius};
        x.append_n(plus, mult);
        x.append_n(minus, mult);
    }

    LowerBoundSpec spec;
    spec.epsilon = epsilon;
    spec.k = 1;
    spec.d = 1;
    spec.t = t;
    spec.r = r;
    spec.eta = static_cast<long long>(sums.eta);
    spec.realized_n = x.size();
    spec.apex_spacing = 0.0;
    spec.delta_apex = 2.0 * static_cast<double>(sums.phi_means);
    spec.kind = CostKind::means;
    spec.directions = build_net(1, std::sqrt(8.0 * epsilon));
    return {std::move(x), std::move(spec)};
}

std::pair<Dataset, LowerBoundSpec> gen_lower_ddim(double epsilon, int k, int d, int t,
                                                  const SphereNet& net, CostKind kind) {
    check_lower_args(epsilon, t);
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (net.dim != d) throw std::invalid_argument("net dimension mismatch");
    if (net.size() == 0) throw std::invalid_argument("net is empty");

    const double required_scale =
        kind == CostKind::means ? std::sqrt(8.0 * epsilon) : 4.0 * epsilon;
    if (net.size() > 1 && verify_packing(net) < required_scale - 1e-12)
        throw std::invalid_argument("net is not a packing at the required scale");

    const long long r = ratio_for(epsilon);
    const ProfileSums sums = profile_sums(r, t);

    const unsigned long long rays =
        static_cast<unsigned long long>(k) * net.size();
    if (sums.eta > Dataset::kMaxPoints / rays)
        throw std::length_error("instance exceeds the point cap");
    const unsigned long long n = rays * sums.eta;

    const double spacing = k > 1 ? 2.0 * static_cast<double>(n) * static_cast<double>(n)
                                 : 0.0;

    Dataset x(d);
    Vec site(d);
    for (int a = 0; a < k; ++a) {
        const double apex0 = spacing * a;
        for (std::size_t j = 0; j < net.size(); ++j) {
            const auto u = net.points[j];
            for (int i = 1; i <= t; ++i) {
                const unsigned long long mult = checked_pow(r, 2 * (t - i));
                const double radius = static_cast<double>(checked_pow(r, i));
                for (int dd = 0; dd < d; ++dd) site[dd] = radius * u[dd];
                site[0] += apex0;
                x.append_n(site, mult);
            }
        }
    }

    const unsigned long long per_ray =
        kind == CostKind::means ? sums.phi_means : sums.phi_median;
    if (per_ray > kExactLimit / rays)
        throw std::overflow_error("apex cost exceeds the exact-integer range");

    LowerBoundSpec spec;
    spec.epsilon = epsilon;
    spec.k = k;
    spec.d = d;
    spec.t = t;
    spec.r = r;
    spec.eta = static_cast<long long>(sums.eta);
    spec.realized_n = x.size();
    spec.apex_spacing = spacing;
    spec.delta_apex = static_cast<double>(rays * per_ray);
    spec.kind = kind;
    spec.directions = net;
    return {std::move(x), std::move(spec)};
}

std::vector<LowerSite> lower_sites(const LowerBoundSpec& spec) {
    std::vector<LowerSite> sites;
    for (int a = 0; a < spec.k; ++a) {
        const double apex0 = spec.apex_spacing * a;
        for (std::size_t j = 0; j < spec.directions.size(); ++j) {
            const auto u = spec.directions.points[j];
            for (int i = 1; i <= spec.t; ++i) {
                LowerSite s;
                s.where.assign(spec.d, 0.0);
                double radius = 1.0;
                for (int p = 0; p < i; ++p) radius *= static_cast<double>(spec.r);
                for (int dd = 0; dd < spec.d; ++dd) s.where[dd] = radius * u[dd];
                s.where[0] += apex0;
                s.level = i;
                s.apex = a;
                double mult = 1.0;
                for (int p = 0; p < 2 * (spec.t - i); ++p)
                    mult *= static_cast<double>(spec.r);
                s.multiplicity = static_cast<std::size_t>(mult);
                sites.push_back(std::move(s));
            }
        }
    }
    return sites;
}

Dataset gen_random(const RandomSpec& spec, std::uint64_t seed) {
    if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
    if (spec.n > Dataset::kMaxPoints)
        throw std::length_error("instance exceeds the point cap");
    if (spec.d < 1) throw std::invalid_argument("d must be >= 1");
    if (spec.k < 1) throw std::invalid_argument("k must be >= 1");
    if (spec.box_hi < spec.box_lo) throw std::invalid_argument("empty box");
    if (spec.sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (spec.separation < 0.0) throw std::invalid_argument("separation must be >= 0");

    Rng rng(derive_seed(seed, 0x9E3779B9ULL));
    Dataset x(spec.d);
    Vec p(spec.d);

    switch (spec.kind) {
        case RandomKind::uniform_box: {
            for (std::size_t i = 0; i < spec.n; ++i) {
                for (int dd = 0; dd < spec.d; ++dd)
                    p[dd] = rng.uniform(spec.box_lo, spec.box_hi);
                x.push(std::span<const double>(p));
            }
            break;
        }
        case RandomKind::gaussian_mixture: {
            Dataset centers(spec.d);
            for (int c = 0; c < spec.k; ++c) {
                for (int dd = 0; dd < spec.d; ++dd)
                    p[dd] = rng.uniform(spec.box_lo, spec.box_hi);
                centers.push(std::span<const double>(p));
            }
            for (std::size_t i = 0; i < spec.n; ++i) {
                const auto c = centers[i % spec.k];
                for (int dd = 0; dd < spec.d; ++dd)
                    p[dd] = c[dd] + rng.gaussian(0.0, spec.sigma);
                x.push(std::span<const double>(p));
            }
            break;
        }
        case RandomKind::separated_clusters: {
            // Centers on the first axis at spacing separation * max(sigma, 1):
            // the gap over intra radius stays >= separation even at sigma = 0.
            const double gap = spec.separation * std::max(spec.sigma, 1.0);
            const std::size_t base = spec.n / static_cast<std::size_t>(spec.k);
            std::size_t extra = spec.n % static_cast<std::size_t>(spec.k);
            Vec off(spec.d);
            for (int c = 0; c < spec.k; ++c) {
                const std::size_t count =
                    base + (static_cast<std::size_t>(c) < extra ? 1 : 0);
                for (std::size_t i = 0; i < count; ++i) {
                    if (spec.sigma > 0.0) {
                        rng.ball_point(spec.d, off.data());
                    } else {
                        std::fill(off.begin(), off.end(), 0.0);
                    }
                    for (int dd = 0; dd < spec.d; ++dd) p[dd] = spec.sigma * off[dd];
                    p[0] += gap * c;
                    x.push(std::span<const double>(p));
                }
            }
            break;
        }
    }
    return x;
}

}  // namespace kcost
