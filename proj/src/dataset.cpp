#include "nkclust/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace nkclust {

std::string to_string(BalanceLevel b) {
    switch (b) {
    case BalanceLevel::Equal: return "equal";
    case BalanceLevel::First10Pct: return "first10pct";
    case BalanceLevel::First60Pct: return "first60pct";
    }
    return "equal";
}

BalanceLevel balance_from_string(const std::string& s) {
    if (s == "equal") return BalanceLevel::Equal;
    if (s == "first10pct") return BalanceLevel::First10Pct;
    if (s == "first60pct") return BalanceLevel::First60Pct;
    throw std::invalid_argument("unknown balance level '" + s +
                                "' (expected equal|first10pct|first60pct)");
}

namespace {

// Split n_clustered objects into k cluster sizes according to the balance
// level. Every cluster receives at least one object.
std::vector<int> cluster_sizes(int n_clustered, int k, BalanceLevel balance) {
    std::vector<int> sizes(k, 0);
    auto spread_evenly = [](std::vector<int>& out, int from, int total) {
        const int m = static_cast<int>(out.size()) - from;
        const int base = total / m;
        const int rem = total % m;
        for (int c = from; c < static_cast<int>(out.size()); ++c)
            out[c] = base + (c - from < rem ? 1 : 0);
    };

    if (balance == BalanceLevel::Equal || k == 1) {
        spread_evenly(sizes, 0, n_clustered);
    } else {
        const double frac = balance == BalanceLevel::First10Pct ? 0.10 : 0.60;
        int first = static_cast<int>(std::llround(frac * n_clustered));
        first = std::clamp(first, 1, n_clustered - (k - 1));
        sizes[0] = first;
        spread_evenly(sizes, 1, n_clustered - first);
    }
    return sizes;
}

} // namespace

GeneratedData generate_gaussian_model(const GaussianModelConfig& cfg) {
    if (cfg.n_clusters < 1)
        throw std::invalid_argument("generate_gaussian_model: n_clusters must be >= 1");
    if (cfg.dims < 1)
        throw std::invalid_argument("generate_gaussian_model: dims must be >= 1");
    if (cfg.n_objects < 2)
        throw std::invalid_argument("generate_gaussian_model: need at least 2 objects");
    if (!(cfg.noise_fraction >= 0.0 && cfg.noise_fraction < 1.0))
        throw std::invalid_argument("generate_gaussian_model: noise_fraction must be in [0,1)");

    const int n_noise = static_cast<int>(std::llround(cfg.noise_fraction * cfg.n_objects));
    const int n_clustered = cfg.n_objects - n_noise;
    if (n_clustered < cfg.n_clusters)
        throw std::invalid_argument(
            "generate_gaussian_model: fewer non-noise objects than clusters");

    Rng rng(cfg.seed);
    // Box half-lengths are sized so that a few hundred objects per cluster
    // give dense interiors (sparse cluster rims read as noise to
    // density-based methods, which is the regime reserved for noise_fraction).
    std::uniform_real_distribution<double> center_dist(0.0, 100.0);
    std::uniform_real_distribution<double> half_dist(2.0, 6.0);

    const int k = cfg.n_clusters;
    // center[c*dims+d], half[c*dims+d]: box of cluster c is
    // [center-half, center+half] per dimension.
    std::vector<double> center(static_cast<std::size_t>(k) * cfg.dims);
    std::vector<double> half(static_cast<std::size_t>(k) * cfg.dims);

    // Gaps between boxes are generous relative to the box widths: the
    // dataset-scale distance thresholds used downstream are driven by the
    // cross-cluster density-attractor edge, and separation has to dominate
    // the rim spacing of a cluster or loose boundary objects become
    // indistinguishable from noise.
    std::uniform_real_distribution<double> gap_dist(30.0, 60.0);
    for (int d = 0; d < cfg.dims; ++d) {
        if (d == 0) {
            // Overlap is allowed in the first dimension: free placement.
            for (int c = 0; c < k; ++c) {
                center[static_cast<std::size_t>(c) * cfg.dims + d] = center_dist(rng);
                half[static_cast<std::size_t>(c) * cfg.dims + d] = half_dist(rng);
            }
            continue;
        }
        // Every other dimension needs pairwise-disjoint boxes, so they are
        // laid out constructively: a random cluster order, random box widths
        // and random inter-box gaps stacked end to end. Works for any cluster
        // count, where rejection inside a fixed range would starve.
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        double cursor = 0.0;
        for (int r = 0; r < k; ++r) {
            const int c = order[r];
            const double h = half_dist(rng);
            cursor += gap_dist(rng);
            center[static_cast<std::size_t>(c) * cfg.dims + d] = cursor + h;
            half[static_cast<std::size_t>(c) * cfg.dims + d] = h;
            cursor += 2.0 * h;
        }
    }

    const std::vector<int> sizes = cluster_sizes(n_clustered, k, cfg.balance);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(cfg.n_objects) * cfg.dims);
    std::vector<Label> labels;
    labels.reserve(cfg.n_objects);

    // Truncated-normal samples: sigma is a third of the center-to-boundary
    // length, so the box edge sits at 3 sigma. Rejection with a bounded retry
    // count, clamped as a last resort.
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    for (int c = 0; c < k; ++c) {
        for (int obj = 0; obj < sizes[c]; ++obj) {
            for (int d = 0; d < cfg.dims; ++d) {
                const double mu = center[static_cast<std::size_t>(c) * cfg.dims + d];
                const double h = half[static_cast<std::size_t>(c) * cfg.dims + d];
                const double sigma = h / 3.0;
                double v = mu;
                bool accepted = false;
                for (int t = 0; t < 1000; ++t) {
                    v = mu + sigma * unit_normal(rng);
                    if (std::abs(v - mu) <= h) {
                        accepted = true;
                        break;
                    }
                }
                if (!accepted)
                    v = std::clamp(v, mu - h, mu + h);
                values.push_back(v);
            }
            labels.push_back(static_cast<Label>(c + 1));
        }
    }

    // Noise: uniform over the union bounding box of the cluster boxes.
    for (int i = 0; i < n_noise; ++i) {
        for (int d = 0; d < cfg.dims; ++d) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double mu = center[static_cast<std::size_t>(c) * cfg.dims + d];
                const double h = half[static_cast<std::size_t>(c) * cfg.dims + d];
                lo = std::min(lo, mu - h);
                hi = std::max(hi, mu + h);
            }
            values.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
        }
        labels.push_back(0);
    }

    GeneratedData out;
    out.data = Dataset(std::move(values), cfg.n_objects, cfg.dims);
    out.truth = Partition(std::move(labels));
    out.config = cfg;
    return out;
}

namespace {

double parse_double_field(const std::string& field, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                 ": bad numeric field '" + field + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        out.push_back("");
    return out;
}

bool all_numeric(const std::vector<std::string>& fields) {
    for (const auto& f : fields) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(f.c_str(), &end);
        if (end == f.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
            return false;
    }
    return true;
}

} // namespace

CsvData load_csv(const std::string& path, bool label_column) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");

    std::vector<double> values;
    std::vector<Label> labels;
    std::size_t n = 0, width = 0, line_no = 0;
    bool first_row = true;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(line);
        if (first_row) {
            first_row = false;
            // A non-numeric leading row is a header, provided data follows —
            // a file that is nothing but one unparsable row stays an error.
            if (!all_numeric(fields) && in.peek() != std::char_traits<char>::eof())
                continue;
        }
        if (width == 0) {
            width = fields.size();
            if (label_column && width < 2)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": need at least 2 columns with a label column");
        } else if (fields.size() != width) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(width) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        const std::size_t attrs = label_column ? width - 1 : width;
        for (std::size_t d = 0; d < attrs; ++d)
            values.push_back(parse_double_field(fields[d], line_no));
        if (label_column) {
            const double lv = parse_double_field(fields.back(), line_no);
            const auto li = static_cast<long long>(std::llround(lv));
            if (static_cast<double>(li) != lv || li < 0)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": label must be a non-negative integer, got '" +
                                         fields.back() + "'");
            labels.push_back(static_cast<Label>(li));
        }
        ++n;
    }
    if (n == 0)
        throw std::runtime_error("CSV '" + path + "': no data rows");

    CsvData out{Dataset(std::move(values), n, label_column ? width - 1 : width), std::nullopt};
    if (label_column)
        out.labels = Partition(std::move(labels));
    return out;
}

void write_csv(const std::string& path, const Dataset& ds, const Partition* labels) {
    if (labels)
        validate_partition(*labels, ds.n());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t d = 0; d < ds.dims(); ++d) {
            if (d) out << ',';
            out << ds.at(i, d);
        }
        if (labels)
            out << ',' << (*labels)[i];
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

void write_labels_csv(const std::string& path, const Partition& p) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    for (Label l : p.labels)
        out << l << '\n';
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

Partition load_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::vector<Label> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const double lv = parse_double_field(t, line_no);
        const auto li = static_cast<long long>(std::llround(lv));
        if (static_cast<double>(li) != lv || li < 0)
            throw std::runtime_error("label file line " + std::to_string(line_no) +
                                     ": expected a non-negative integer, got '" + t + "'");
        labels.push_back(static_cast<Label>(li));
    }
    if (labels.empty())
        throw std::runtime_error("label file '" + path + "' is empty");
    return Partition(std::move(labels));
}

} // namespace nkclust
