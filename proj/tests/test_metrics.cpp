#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "test_support.hpp"
#include "tropix/error.hpp"
#include "tropix/metrics.hpp"
#include "tropix/tropical.hpp"

using namespace tropix;
using testsup::bc;

namespace {

barcode small_random_pairaware(testsup::splitmix64& rng, std::size_t max_bars) {
    return testsup::random_barcode(rng, max_bars, 1.5, 0.05, 0.6);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("interval distance follows the (x, d) sup formula") {
    CHECK(interval_dist({1, 2}, {1, 3}) == 1.0);
    CHECK(interval_dist({7, 0.25}, {7, 0.25}) == 0.0);
    CHECK(interval_dist({0, 1}, {2, 1}) == 2.0);
}

TEST_CASE("interval distance is exactly symmetric") {
    testsup::splitmix64 rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        interval a{rng.uniform(0, 3), rng.uniform(0, 2)};
        interval b{rng.uniform(0, 3), rng.uniform(0, 2)};
        CHECK(interval_dist(a, b) == interval_dist(b, a));
    }
}

TEST_CASE("diagonal distance is half the length") {
    CHECK(diagonal_dist({3, 1}) == 0.5);
    CHECK(diagonal_dist({9, 0}) == 0.0);
    CHECK(diagonal_dist({0, 4}) == 2.0);
}

TEST_CASE("bottleneck distance on pinned pairs") {
    barcode b1 = bc({{1, 2}, {3, 1}});
    barcode b2 = bc({{2, 2}});
    CHECK(bottleneck_distance(b1, b1) == 0.0);
    CHECK(bottleneck_distance(bc({{1, 2}}), bc({})) == 1.0);
    CHECK(bottleneck_distance(b1, b2) == 1.0);
    CHECK(bottleneck_distance(bc({}), bc({})) == 0.0);
}

TEST_CASE("wasserstein distance on pinned pairs") {
    barcode b = bc({{1, 2}, {3, 1}});
    CHECK(wasserstein_distance(b, b, 2) == 0.0);
    CHECK(wasserstein_distance(bc({{1, 2}}), bc({{1, 3}}), 1) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wasserstein_distance(bc({{0, 2}}), bc({}), 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("p outside [1, 16] is rejected") {
    barcode b = bc({{1, 2}});
    CHECK_THROWS_AS(wasserstein_distance(b, b, 0.5), invalid_p_error);
    CHECK_THROWS_AS(wasserstein_distance(b, b, 17.0), invalid_p_error);
    CHECK_THROWS_AS(wasserstein_bruteforce(b, b, 0.0), invalid_p_error);
    CHECK_THROWS_AS(pairwise_matrix(std::vector<barcode>{b, b}, metric_kind::wasserstein, -1),
                    invalid_p_error);
}

TEST_CASE("oracles reject more than 8 bars in total") {
    barcode five = bc({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    barcode four = bc({{0, 1}, {1, 1}, {2, 1}, {3, 1}});
    CHECK_THROWS_AS(bottleneck_bruteforce(five, four), oracle_size_error);
    CHECK_THROWS_AS(wasserstein_bruteforce(five, four, 2), oracle_size_error);
}

TEST_CASE("solvers agree with exhaustive enumeration") {
    testsup::splitmix64 rng(111);
    for (int trial = 0; trial < 300; ++trial) {
        barcode b1 = testsup::random_barcode(rng, 4);
        barcode b2 = testsup::random_barcode(rng, 4);
        CHECK(std::abs(bottleneck_distance(b1, b2) - bottleneck_bruteforce(b1, b2)) <= 1e-9);
        for (double p : {1.0, 2.0})
            CHECK(std::abs(wasserstein_distance(b1, b2, p) -
                           wasserstein_bruteforce(b1, b2, p)) <= 1e-9);
    }
}

TEST_CASE("metric axioms hold on random barcodes") {
    testsup::splitmix64 rng(121);
    for (int trial = 0; trial < 200; ++trial) {
        barcode a = testsup::random_barcode(rng, 6);
        barcode b = testsup::random_barcode(rng, 6);
        barcode c = testsup::random_barcode(rng, 6);

        CHECK(bottleneck_distance(a, b) == bottleneck_distance(b, a));
        CHECK(wasserstein_distance(a, b, 2) == wasserstein_distance(b, a, 2));

        CHECK(bottleneck_distance(a, a) == 0.0);
        CHECK(wasserstein_distance(a, a, 1) == 0.0);
        if (!(a == b)) {
            CHECK(bottleneck_distance(a, b) > 0.0);
            CHECK(wasserstein_distance(a, b, 2) > 0.0);
        }

        CHECK(bottleneck_distance(a, c) <=
              bottleneck_distance(a, b) + bottleneck_distance(b, c) + 1e-9);
        CHECK(wasserstein_distance(a, c, 2) <=
              wasserstein_distance(a, b, 2) + wasserstein_distance(b, c, 2) + 1e-9);
    }
}

TEST_CASE("wasserstein decreases toward bottleneck as p grows") {
    testsup::splitmix64 rng(131);
    for (int trial = 0; trial < 200; ++trial) {
        barcode b1 = small_random_pairaware(rng, 4);
        barcode b2 = small_random_pairaware(rng, 4);
        double bot = bottleneck_distance(b1, b2);
        double prev = wasserstein_distance(b1, b2, 1);
        for (double p : {2.0, 4.0, 8.0, 16.0}) {
            double cur = wasserstein_distance(b1, b2, p);
            CHECK(cur <= prev + 1e-9);
            CHECK(cur >= bot - 1e-9);
            prev = cur;
        }
        CHECK(std::abs(prev - bot) <= 0.05);
    }
}

TEST_CASE("a single unit bar keeps bottleneck 1/2 from the empty barcode") {
    for (double x : {0.0, 1.0, 10.0, 100.0})
        CHECK(bottleneck_distance(bc({{x, 1}}), bc({})) == 0.5);
}

TEST_CASE("pairwise matrix is symmetric with zero diagonal") {
    barcode b1 = bc({{1, 2}, {3, 1}});
    barcode b2 = bc({{2, 2}});

    distance_matrix same = pairwise_matrix(std::vector<barcode>{b1, b1}, metric_kind::bottleneck);
    CHECK(same.entries == std::vector<double>{0, 0, 0, 0});

    distance_matrix dm = pairwise_matrix(std::vector<barcode>{b1, b2}, metric_kind::bottleneck);
    CHECK(dm.at(0, 1) == 1.0);
    CHECK(dm.at(1, 0) == 1.0);

    CHECK_THROWS_AS(pairwise_matrix(std::vector<barcode>{b1}, metric_kind::bottleneck),
                    empty_dataset_error);

    testsup::splitmix64 rng(141);
    std::vector<barcode> set;
    for (int k = 0; k < 5; ++k) set.push_back(testsup::random_barcode(rng, 5));
    distance_matrix w = pairwise_matrix(set, metric_kind::wasserstein, 2.0);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(w.at(i, i) == 0.0);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(w.at(i, j) == w.at(j, i));
            for (std::size_t l = 0; l < 5; ++l)
                CHECK(w.at(i, j) <= w.at(i, l) + w.at(l, j) + 1e-9);
        }
    }
}

TEST_CASE("pairwise matrix does not depend on the thread count") {
    testsup::splitmix64 rng(151);
    std::vector<barcode> set;
    for (int k = 0; k < 8; ++k) set.push_back(testsup::random_barcode(rng, 5));
    setenv("TROPIX_THREADS", "1", 1);
    distance_matrix serial = pairwise_matrix(set, metric_kind::wasserstein, 2.0);
    setenv("TROPIX_THREADS", "8", 1);
    distance_matrix parallel = pairwise_matrix(set, metric_kind::wasserstein, 2.0);
    unsetenv("TROPIX_THREADS");
    CHECK(serial.entries == parallel.entries);
}

TEST_CASE("coordinate change is bounded by a multiple of bottleneck change") {
    testsup::splitmix64 rng(161);
    regularized_spec spec{5, 4.0};
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t count = 1 + rng.index(5);
        std::vector<std::pair<double, double>> raw, moved;
        for (std::size_t k = 0; k < count; ++k) {
            double d = rng.uniform(0.5, 2.0);
            double x = rng.uniform(0.0, 0.8 * d);
            raw.emplace_back(x, d);
            double nx = std::max(0.0, x + rng.uniform(-0.05, 0.05));
            moved.emplace_back(nx, d + rng.uniform(-0.05, 0.05));
        }
        barcode b = bc(raw);
        barcode bp = bc(moved);
        double delta = bottleneck_distance(b, bp);
        if (delta == 0.0) continue;
        tropical_vector v = tropicalize(b, spec);
        tropical_vector vp = tropicalize(bp, spec);
        double diff = 0.0;
        for (std::size_t k = 0; k < v.values.size(); ++k)
            diff = std::max(diff, std::abs(v.values[k] - vp.values[k]));
        worst = std::max(worst, diff / delta);
    }
    MESSAGE("largest observed coordinate/bottleneck ratio: ", worst);
    // sum of at most n terms, each moving by at most 2*(m+1) per unit of
    // bottleneck displacement
    CHECK(worst <= 2.0 * 5 * (4.0 + 1.0));
}

}  // TEST_SUITE
