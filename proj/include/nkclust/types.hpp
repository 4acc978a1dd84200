#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nkclust {

// Single RNG engine used everywhere; every stochastic routine takes one
// explicitly so a fixed seed reproduces a run bit-for-bit.
using Rng = std::mt19937_64;

// Cluster label. 0 is reserved for noise; clusters use positive labels,
// which need not be contiguous.
using Label = std::int32_t;

// Dense real-valued dataset, row-major. Immutable after construction.
class Dataset {
public:
    Dataset() = default;

    Dataset(std::vector<double> values, std::size_t n, std::size_t dims)
        : values_(std::move(values)), n_(n), dims_(dims) {
        if (n_ < 2)
            throw std::invalid_argument("Dataset: need at least 2 objects, got " +
                                        std::to_string(n_));
        if (dims_ < 1)
            throw std::invalid_argument("Dataset: need at least 1 dimension");
        if (values_.size() != n_ * dims_)
            throw std::invalid_argument("Dataset: value buffer size does not match n*dims");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::invalid_argument("Dataset: non-finite attribute value");
    }

    static Dataset from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty())
            throw std::invalid_argument("Dataset: no rows");
        const std::size_t dims = rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * dims);
        for (const auto& r : rows) {
            if (r.size() != dims)
                throw std::invalid_argument("Dataset: ragged rows");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return Dataset(std::move(flat), rows.size(), dims);
    }

    std::size_t n() const { return n_; }
    std::size_t dims() const { return dims_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dims_, dims_};
    }
    double at(std::size_t i, std::size_t d) const { return values_[i * dims_ + d]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
    std::size_t n_ = 0;
    std::size_t dims_ = 0;
};

// A labelling of the dataset's objects. labels[i] == 0 means object i is
// flagged as noise/background.
struct Partition {
    std::vector<Label> labels;

    Partition() = default;
    explicit Partition(std::vector<Label> l) : labels(std::move(l)) {}
    explicit Partition(std::size_t n, Label fill = 0) : labels(n, fill) {}

    std::size_t size() const { return labels.size(); }
    Label& operator[](std::size_t i) { return labels[i]; }
    Label operator[](std::size_t i) const { return labels[i]; }
    bool operator==(const Partition& other) const = default;
};

// Throws if the partition cannot label a dataset of n objects.
inline void validate_partition(const Partition& p, std::size_t n) {
    if (p.size() != n)
        throw std::invalid_argument("Partition: has " + std::to_string(p.size()) +
                                    " labels for " + std::to_string(n) + " objects");
    for (Label l : p.labels)
        if (l < 0)
            throw std::invalid_argument("Partition: negative label");
}

inline double squared_euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_euclidean(a, b));
}

} // namespace nkclust
