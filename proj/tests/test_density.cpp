#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace nkclust;

TEST_CASE("pairwise distances: 3-4-5 triangle and diagonal") {
    const Dataset ds = Dataset::from_rows({{0, 0}, {3, 4}});
    const DistanceMatrix dm = pairwise_distances(ds);
    CHECK(dm.at(0, 1) == doctest::Approx(5.0));
    CHECK(dm.at(1, 0) == doctest::Approx(5.0));
    CHECK(dm.at(0, 0) == 0.0);
    CHECK(dm.at(1, 1) == 0.0);
}

TEST_CASE("pairwise distances: collinear points") {
    const Dataset ds = Dataset::from_rows({{0.0}, {1.0}, {3.0}});
    const DistanceMatrix dm = pairwise_distances(ds);
    CHECK(dm.at(0, 1) == doctest::Approx(1.0));
    CHECK(dm.at(0, 2) == doctest::Approx(3.0));
    CHECK(dm.at(1, 2) == doctest::Approx(2.0));
}

TEST_CASE("pairwise distances: symmetry and triangle inequality on random data") {
    Rng rng(101);
    const Dataset ds = testsupport::random_dataset(25, 3, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    for (std::size_t i = 0; i < 25; ++i)
        for (std::size_t j = 0; j < 25; ++j) {
            CHECK(dm.at(i, j) == dm.at(j, i));
            for (std::size_t k = 0; k < 25; ++k)
                CHECK(dm.at(i, j) <= dm.at(i, k) + dm.at(k, j) + 1e-9);
        }
}

namespace {

// Independent oracle: full sort of the off-diagonal distances.
double cutoff_by_sort(const DistanceMatrix& dm, double fraction) {
    std::vector<double> pairs;
    for (std::size_t i = 0; i < dm.n(); ++i)
        for (std::size_t j = i + 1; j < dm.n(); ++j)
            pairs.push_back(dm.at(i, j));
    std::sort(pairs.begin(), pairs.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(pairs.size())));
    return pairs[std::clamp<std::size_t>(rank, 1, pairs.size()) - 1];
}

} // namespace

TEST_CASE("cutoff distance matches a full-sort oracle") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const Dataset ds = testsupport::random_dataset(40 + rep * 7, 2, rng);
        const DistanceMatrix dm = pairwise_distances(ds);
        for (double f : {0.02, 0.1, 0.5}) {
            CHECK(cutoff_distance(dm, f) == doctest::Approx(cutoff_by_sort(dm, f)));
        }
    }
}

TEST_CASE("cutoff distance: boundaries and degenerate data") {
    SUBCASE("two points -> their distance") {
        const Dataset ds = Dataset::from_rows({{0, 0}, {3, 4}});
        CHECK(cutoff_distance(pairwise_distances(ds), 0.02) == doctest::Approx(5.0));
    }
    SUBCASE("fraction near 1 -> max distance") {
        Rng rng(3);
        const Dataset ds = testsupport::random_dataset(30, 2, rng);
        const DistanceMatrix dm = pairwise_distances(ds);
        double mx = 0;
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = i + 1; j < 30; ++j)
                mx = std::max(mx, dm.at(i, j));
        CHECK(cutoff_distance(dm, 1.0 - 1e-12) == doctest::Approx(mx));
    }
    SUBCASE("duplicates fall back to smallest positive distance") {
        const Dataset ds = Dataset::from_rows({{0, 0}, {0, 0}, {0, 0}, {7, 0}});
        CHECK(cutoff_distance(pairwise_distances(ds), 0.02) == doctest::Approx(7.0));
    }
    SUBCASE("all-duplicate dataset is rejected") {
        const Dataset ds = Dataset::from_rows({{1, 1}, {1, 1}, {1, 1}});
        CHECK_THROWS_WITH_AS(cutoff_distance(pairwise_distances(ds), 0.02),
                             doctest::Contains("duplicate-only"), std::runtime_error);
    }
}

TEST_CASE("cutoff distance: 2% rule yields ~2% neighbourhood mass") {
    Rng rng(11);
    const Dataset ds = testsupport::random_dataset(100, 2, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    const double eps = cutoff_distance(dm, 0.02);

    // Brute-force flat neighbour count (self excluded).
    double mean = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < 100; ++j)
            if (j != i && dm.at(i, j) < eps)
                ++c;
        mean += static_cast<double>(c);
    }
    mean /= 100.0;
    CHECK(mean >= 1.0);
    CHECK(mean <= 3.0);
}

TEST_CASE("gaussian densities: exact small cases") {
    SUBCASE("two coincident points have rho=2") {
        const Dataset ds = Dataset::from_rows({{0, 0}, {0, 0}, {5, 0}});
        const DistanceMatrix dm = pairwise_distances(ds);
        const auto rho = local_densities(dm, 5.0, Kernel::Gaussian);
        const double far = std::exp(-25.0 / 50.0);
        CHECK(rho[0] == doctest::Approx(2.0 + far));
        CHECK(rho[1] == doctest::Approx(2.0 + far));
        CHECK(rho[2] == doctest::Approx(1.0 + 2.0 * far));
    }
    SUBCASE("isolated point tends to 1") {
        const Dataset ds = Dataset::from_rows({{0, 0}, {1000, 0}, {1001, 1}});
        const DistanceMatrix dm = pairwise_distances(ds);
        const auto rho = local_densities(dm, 1.0, Kernel::Gaussian);
        CHECK(rho[0] == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("flat densities equal a brute-force count") {
    Rng rng(23);
    const Dataset ds = testsupport::random_dataset(10, 2, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    const double eps = cutoff_distance(dm, 0.3);
    const auto rho = local_densities(dm, eps, Kernel::Flat);
    for (std::size_t i = 0; i < 10; ++i) {
        double count = 0;
        for (std::size_t j = 0; j < 10; ++j)
            count += dm.at(i, j) < eps ? 1 : 0;
        CHECK(rho[i] == count);
        CHECK(rho[i] >= 1.0); // self always counts
    }
}

TEST_CASE("flat-kernel mean under the 2% cutoff stays near 2% of N") {
    Rng rng(29);
    for (int rep = 0; rep < 3; ++rep) {
        const std::size_t n = 150;
        const Dataset ds = testsupport::random_dataset(n, 2, rng);
        const DistanceMatrix dm = pairwise_distances(ds);
        const double f = 0.02;
        const auto rho = local_densities(dm, cutoff_distance(dm, f), Kernel::Flat);
        double mean = 0.0;
        for (double r : rho)
            mean += r - 1.0; // neighbours excluding self
        mean /= static_cast<double>(n);
        CHECK(mean >= 0.5 * f * static_cast<double>(n));
        CHECK(mean <= 2.0 * f * static_cast<double>(n));
    }
}

TEST_CASE("gaussian rho is permutation invariant") {
    Rng rng(31);
    const Dataset ds = testsupport::random_dataset(20, 2, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    const double eps = cutoff_distance(dm, 0.1);
    const auto rho = local_densities(dm, eps, Kernel::Gaussian);

    // Reverse the object order and recompute.
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < 20; ++i) {
        const auto r = ds.row(19 - i);
        rows.emplace_back(r.begin(), r.end());
    }
    const DistanceMatrix dm2 = pairwise_distances(Dataset::from_rows(rows));
    const auto rho2 = local_densities(dm2, eps, Kernel::Gaussian);
    for (std::size_t i = 0; i < 20; ++i)
        CHECK(rho[i] == doctest::Approx(rho2[19 - i]));
}

TEST_CASE("nearest higher density: forced small example") {
    // Points on a line at 0, 1, 2 with densities 3 > 2 > 1.
    const Dataset ds = Dataset::from_rows({{0.0}, {1.0}, {2.0}});
    const DistanceMatrix dm = pairwise_distances(ds);
    const std::vector<double> rho = {3.0, 2.0, 1.0};
    const NearestHigher nh = nearest_higher_density(dm, rho);
    CHECK(nh.nhd == std::vector<std::int32_t>{1, 0, 1});
    CHECK(nh.delta[1] == doctest::Approx(1.0));
    CHECK(nh.delta[2] == doctest::Approx(1.0));
    // Global maximum: delta is the diameter, nhd the nearest object.
    CHECK(nh.delta[0] == doctest::Approx(2.0));
}

TEST_CASE("nearest higher density: equal densities chain by index") {
    const Dataset ds = Dataset::from_rows({{0.0}, {1.0}, {2.0}, {3.0}});
    const DistanceMatrix dm = pairwise_distances(ds);
    const std::vector<double> rho = {1.0, 1.0, 1.0, 1.0};
    const NearestHigher nh = nearest_higher_density(dm, rho);
    // Lower index counts as "denser"; everyone points at the nearest lower
    // index, and index 0 (the tie-broken maximum) at its nearest neighbour.
    CHECK(nh.nhd == std::vector<std::int32_t>{1, 0, 1, 2});
}

TEST_CASE("nearest higher density matches property-based oracle on random data") {
    Rng rng(37);
    const Dataset ds = testsupport::random_dataset(20, 2, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    const auto rho = local_densities(dm, cutoff_distance(dm, 0.1), Kernel::Gaussian);
    const NearestHigher nh = nearest_higher_density(dm, rho);

    // Identify the total-order maximum.
    std::size_t top = 0;
    for (std::size_t i = 1; i < 20; ++i)
        if (denser(i, top, rho))
            top = i;

    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(nh.nhd[i] != static_cast<std::int32_t>(i)); // no self references
        const auto a = static_cast<std::size_t>(nh.nhd[i]);
        if (i == top) {
            // Nearest object of any density.
            for (std::size_t j = 0; j < 20; ++j)
                if (j != i)
                    CHECK(dm.at(i, a) <= dm.at(i, j));
        } else {
            CHECK(denser(a, i, rho));
            CHECK(nh.delta[i] == doctest::Approx(dm.at(i, a)));
            // No strictly-denser object is closer.
            for (std::size_t j = 0; j < 20; ++j)
                if (j != i && denser(j, i, rho))
                    CHECK(dm.at(i, a) <= dm.at(i, j));
        }
        CHECK(nh.delta[i] > 0.0);
    }
}

TEST_CASE("density profile bundles epsilon, rho and the lookup") {
    Rng rng(41);
    const Dataset ds = testsupport::random_dataset(30, 2, rng);
    const DistanceMatrix dm = pairwise_distances(ds);
    const DensityProfile prof = DensityProfile::build(dm, 0.02);
    CHECK(prof.epsilon == doctest::Approx(cutoff_distance(dm, 0.02)));
    CHECK(prof.rho.size() == 30);
    CHECK(prof.nhd.size() == 30);
    for (double r : prof.rho)
        CHECK(r >= 1.0);
}
