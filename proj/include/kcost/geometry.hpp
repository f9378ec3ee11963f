#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kcost {

// Distance exponent: 1 = sum of distances (median-type objectives),
// 2 = sum of squared distances (means-type objectives).
enum class CostKind : int { median = 1, means = 2 };

inline int exponent(CostKind k) { return static_cast<int>(k); }
CostKind cost_kind_from_int(int e);
const char* cost_kind_name(CostKind k);

using Vec = std::vector<double>;

// Point set with flat row-major storage. Duplicates are stored explicitly;
// generators that emit multiplicities enforce the kMaxPoints cap.
class Dataset {
public:
    static constexpr std::size_t kMaxPoints = 1000000;

    Dataset() = default;
    explicit Dataset(int dim);
    Dataset(int dim, std::vector<double> flat);

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
    bool empty() const { return data_.empty(); }

    std::span<const double> operator[](std::size_t i) const {
        return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& flat() const { return data_; }

    void push(std::span<const double> p);
    void push(std::initializer_list<double> p);
    void push1(double x);  // 1-d convenience
    void append_n(std::span<const double> p, std::size_t count);

    std::size_t distinct_count() const;

private:
    int dim_ = 0;
    std::vector<double> data_;
};

// Ordered list of candidate centers; same layout and semantics as Dataset.
using CenterSet = Dataset;

struct WeightedSet {
    Dataset points;
    std::vector<double> weights;  // nonnegative, parallel to points

    std::size_t size() const { return points.size(); }
    void check() const;  // throws on negative weight / length mismatch
};

// Symmetric nonnegative distance matrix with zero diagonal.
class FiniteMetric {
public:
    FiniteMetric() = default;
    explicit FiniteMetric(std::size_t n) : n_(n), d_(n * n, 0.0) {}
    FiniteMetric(std::size_t n, std::vector<double> flat);

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
    const std::vector<double>& flat() const { return d_; }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

struct MetricViolation {
    enum class Kind { negative_entry, nonzero_diagonal, asymmetry, triangle };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;
    double lhs = 0.0, rhs = 0.0;
    std::string describe() const;
};

// nullopt iff the matrix is a metric (triangle checked with relative slack).
std::optional<MetricViolation> validate_metric(const FiniteMetric& m,
                                               double rel_tol = 1e-9);

double squared_distance(std::span<const double> a, std::span<const double> b);

// Euclidean distance raised to exponent(kind). Throws on dimension mismatch.
double distance(std::span<const double> a, std::span<const double> b, CostKind kind);

// Pairwise plain Euclidean distances of X.
FiniteMetric metric_from_dataset(const Dataset& x);

}  // namespace kcost
