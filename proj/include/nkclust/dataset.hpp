#pragma once

#include <optional>
#include <string>

#include "nkclust/types.hpp"

namespace nkclust {

// How the generator distributes the non-noise objects over clusters.
enum class BalanceLevel {
    Equal,      // sizes differ by at most 1
    First10Pct, // first cluster gets 10% of the objects, rest split evenly
    First60Pct, // first cluster gets 60% of the objects, rest split evenly
};

std::string to_string(BalanceLevel b);
BalanceLevel balance_from_string(const std::string& s);

struct GaussianModelConfig {
    int n_clusters = 2;
    int dims = 2;
    int n_objects = 800;          // total, noise included
    BalanceLevel balance = BalanceLevel::Equal;
    double noise_fraction = 0.0;  // in [0, 1)
    std::uint64_t seed = 1;
};

struct GeneratedData {
    Dataset data;
    Partition truth; // 1..n_clusters, 0 for noise
    GaussianModelConfig config;
};

// Draws axis-aligned truncated-Gaussian clusters inside [0,100]^dims.
// Cluster boxes may overlap in the first dimension only; every other
// dimension is re-drawn until the boxes are pairwise disjoint (up to 100
// retries, then the call fails). Noise objects are uniform over the union
// bounding box of the cluster boxes.
GeneratedData generate_gaussian_model(const GaussianModelConfig& cfg);

struct CsvData {
    Dataset data;
    std::optional<Partition> labels;
};

// Reads a headerless numeric CSV; when label_column is true the last column
// is parsed as integer labels. Rejects ragged rows, non-numeric fields and
// non-finite values with a message naming the offending line.
CsvData load_csv(const std::string& path, bool label_column = false);

// Writes one row per object; when labels is non-null a trailing label column
// is appended. Roundtrips through load_csv.
void write_csv(const std::string& path, const Dataset& ds, const Partition* labels = nullptr);

// Single-column label file (one integer per line).
void write_labels_csv(const std::string& path, const Partition& p);
Partition load_labels_csv(const std::string& path);

} // namespace nkclust
