#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "support.hpp"

using namespace nkclust;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        path = std::filesystem::temp_directory_path() /
               ("nkclust_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".csv");
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    static inline int counter = 0;
};

} // namespace

TEST_CASE("load_csv parses plain numeric rows") {
    TempFile f("0,0\n1,1\n2,2\n");
    const CsvData d = load_csv(f.path.string());
    CHECK(d.data.n() == 3);
    CHECK(d.data.dims() == 2);
    CHECK(d.data.at(2, 1) == 2.0);
    CHECK(!d.labels.has_value());
}

TEST_CASE("load_csv parses a trailing label column") {
    TempFile f("0,0,1\n1,1,1\n9,9,2\n");
    const CsvData d = load_csv(f.path.string(), true);
    CHECK(d.data.n() == 3);
    CHECK(d.data.dims() == 2);
    REQUIRE(d.labels.has_value());
    CHECK(d.labels->labels == std::vector<Label>{1, 1, 2});
}

TEST_CASE("load_csv rejects bad input") {
    SUBCASE("non-numeric data row") {
        TempFile f("0,0\na,b\n");
        CHECK_THROWS(load_csv(f.path.string()));
    }
    SUBCASE("single unparsable row is not silently a header") {
        TempFile f("a,b\n");
        CHECK_THROWS(load_csv(f.path.string()));
    }
    SUBCASE("ragged rows") {
        TempFile f("0,0\n1\n");
        CHECK_THROWS(load_csv(f.path.string()));
    }
    SUBCASE("negative label") {
        TempFile f("0,0,-1\n1,1,1\n");
        CHECK_THROWS(load_csv(f.path.string(), true));
    }
    SUBCASE("missing file") { CHECK_THROWS(load_csv("/nonexistent/nowhere.csv")); }
}

TEST_CASE("load_csv skips a header row") {
    TempFile f("x,y,label\n0,0,1\n1,1,2\n");
    const CsvData d = load_csv(f.path.string(), true);
    CHECK(d.data.n() == 2);
    CHECK(d.labels->labels == std::vector<Label>{1, 2});
}

TEST_CASE("csv roundtrip preserves values and labels") {
    Rng rng(7);
    const Dataset ds = testsupport::random_dataset(23, 3, rng);
    const Partition p = testsupport::random_partition(23, 4, rng, 0);

    const auto path = std::filesystem::temp_directory_path() / "nkclust_roundtrip.csv";
    write_csv(path.string(), ds, &p);
    const CsvData back = load_csv(path.string(), true);
    std::filesystem::remove(path);

    REQUIRE(back.data.n() == ds.n());
    REQUIRE(back.data.dims() == ds.dims());
    for (std::size_t i = 0; i < ds.n(); ++i)
        for (std::size_t d = 0; d < ds.dims(); ++d)
            CHECK(back.data.at(i, d) == ds.at(i, d));
    CHECK(back.labels->labels == p.labels);
}

TEST_CASE("label file roundtrip") {
    Rng rng(8);
    const Partition p = testsupport::random_partition(31, 5, rng, 0);
    const auto path = std::filesystem::temp_directory_path() / "nkclust_labels.csv";
    write_labels_csv(path.string(), p);
    const Partition back = load_labels_csv(path.string());
    std::filesystem::remove(path);
    CHECK(back.labels == p.labels);
}

TEST_CASE("Dataset validates its invariants") {
    CHECK_THROWS(Dataset({1.0}, 1, 1));                       // n < 2
    CHECK_THROWS(Dataset({}, 0, 0));                          // empty
    CHECK_THROWS(Dataset({1.0, std::nan("")}, 2, 1));         // non-finite
    CHECK_THROWS(Dataset::from_rows({{1.0, 2.0}, {3.0}}));    // ragged
    CHECK_NOTHROW(Dataset({1.0, 2.0}, 2, 1));
}

TEST_CASE("generator: sizes, labels and determinism") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 2;
    cfg.dims = 2;
    cfg.n_objects = 800;
    cfg.seed = 42;

    const GeneratedData g = generate_gaussian_model(cfg);
    CHECK(g.data.n() == 800);
    CHECK(g.data.dims() == 2);

    std::size_t c1 = 0, c2 = 0;
    for (Label l : g.truth.labels) {
        REQUIRE((l == 1 || l == 2));
        (l == 1 ? c1 : c2)++;
    }
    CHECK(c1 == 400);
    CHECK(c2 == 400);

    const GeneratedData again = generate_gaussian_model(cfg);
    CHECK(again.data.values() == g.data.values());
    CHECK(again.truth.labels == g.truth.labels);

    cfg.seed = 43;
    const GeneratedData other = generate_gaussian_model(cfg);
    CHECK(other.data.values() != g.data.values());
}

TEST_CASE("generator: first-cluster balance and noise counts") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 5;
    cfg.dims = 2;
    cfg.n_objects = 800;
    cfg.balance = BalanceLevel::First10Pct;
    cfg.noise_fraction = 0.01;
    cfg.seed = 3;

    const GeneratedData g = generate_gaussian_model(cfg);
    std::size_t noise = 0, first = 0;
    for (Label l : g.truth.labels) {
        if (l == 0) ++noise;
        if (l == 1) ++first;
    }
    CHECK(noise == 8); // 1% of 800
    // 10% of the 792 non-noise objects, rounded.
    CHECK(first == 79);

    cfg.balance = BalanceLevel::First60Pct;
    const GeneratedData g2 = generate_gaussian_model(cfg);
    std::size_t first2 = 0;
    for (Label l : g2.truth.labels)
        if (l == 1)
            ++first2;
    CHECK(first2 == 475); // round(0.6 * 792)
}

TEST_CASE("generator: equal balance is within one object") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 3;
    cfg.n_objects = 100;
    cfg.seed = 11;
    const GeneratedData g = generate_gaussian_model(cfg);
    std::array<std::size_t, 3> sizes{};
    for (Label l : g.truth.labels)
        sizes[l - 1]++;
    const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*mx - *mn <= 1);
}

TEST_CASE("generator: non-first dimensions do not overlap across clusters") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 4;
    cfg.dims = 3;
    cfg.n_objects = 400;
    cfg.seed = 19;
    const GeneratedData g = generate_gaussian_model(cfg);

    for (int d = 1; d < cfg.dims; ++d) {
        // Sampled per-cluster intervals must be pairwise disjoint: samples
        // live inside the cluster boxes, and the boxes are disjoint here.
        std::vector<double> lo(cfg.n_clusters, 1e18), hi(cfg.n_clusters, -1e18);
        for (std::size_t i = 0; i < g.data.n(); ++i) {
            const int c = g.truth[i] - 1;
            lo[c] = std::min(lo[c], g.data.at(i, d));
            hi[c] = std::max(hi[c], g.data.at(i, d));
        }
        for (int a = 0; a < cfg.n_clusters; ++a)
            for (int b = a + 1; b < cfg.n_clusters; ++b)
                CHECK((hi[a] < lo[b] || hi[b] < lo[a]));
    }
}

TEST_CASE("generator: single cluster in one dimension") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 1;
    cfg.dims = 1;
    cfg.n_objects = 10;
    cfg.seed = 5;
    const GeneratedData g = generate_gaussian_model(cfg);
    CHECK(g.data.n() == 10);
    for (Label l : g.truth.labels)
        CHECK(l == 1);
    // Truncation: everything within the box, which is at most 40 units wide.
    double lo = 1e18, hi = -1e18;
    for (std::size_t i = 0; i < 10; ++i) {
        lo = std::min(lo, g.data.at(i, 0));
        hi = std::max(hi, g.data.at(i, 0));
    }
    CHECK(hi - lo <= 40.0);
}

TEST_CASE("generator: invalid configs are rejected") {
    GaussianModelConfig cfg;
    cfg.n_clusters = 0;
    CHECK_THROWS(generate_gaussian_model(cfg));
    cfg.n_clusters = 5;
    cfg.n_objects = 4;
    CHECK_THROWS(generate_gaussian_model(cfg));
    cfg.n_objects = 100;
    cfg.noise_fraction = 1.0;
    CHECK_THROWS(generate_gaussian_model(cfg));
    cfg.noise_fraction = 0.0;
    cfg.dims = 0;
    CHECK_THROWS(generate_gaussian_model(cfg));
}
