#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace kcost {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable per-trial stream derivation: trials and sub-tasks get independent
// engines from (seed, stream) so reruns with the same seed reproduce exactly.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x51ed270b75b3cc4dULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    std::uint64_t uniform_index(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
    }
    double gaussian(double mean = 0.0, double sigma = 1.0) {
        return std::normal_distribution<double>(mean, sigma)(eng_);
    }

    // Uniform direction on the unit sphere in R^d.
    void unit_vector(int d, double* out) {
        while (true) {
            double norm2 = 0.0;
            for (int i = 0; i < d; ++i) {
                out[i] = gaussian();
                norm2 += out[i] * out[i];
            }
            if (norm2 > 1e-300) {
                const double inv = 1.0 / std::sqrt(norm2);
                for (int i = 0; i < d; ++i) out[i] *= inv;
                return;
            }
        }
    }

    // Uniform point in the unit ball of R^d (rejection-free via radius power).
    void ball_point(int d, double* out) {
        unit_vector(d, out);
        const double r = std::pow(uniform01(), 1.0 / d);
        for (int i = 0; i < d; ++i) out[i] *= r;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace kcost
