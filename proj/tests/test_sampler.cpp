#include "areatrap/sampler.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace areatrap;
using namespace areatrap::sampler;

TEST_CASE("splitmix64 matches the published reference outputs") {
    SplitMix64 s0(0);
    CHECK(s0.next_u64() == 0xE220A8397B1DCDAFULL);
    CHECK(s0.next_u64() == 0x6E789E6AA1B965F4ULL);
    CHECK(s0.next_u64() == 0x06C45D188009454FULL);

    SplitMix64 s42(42);
    CHECK(s42.next_u64() == 0xBDD732262FEB6E95ULL);
    CHECK(s42.next_u64() == 0x28EFE333B266F103ULL);

    // seed derivation is the (word+1)-th output of the master stream
    SplitMix64 master(0);
    CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    CHECK(derive_seed(0, 2) == 0x06C45D188009454FULL);
}

TEST_CASE("sampling is a pure function of (n, master_seed, trial_index)") {
    const SeedSpec seed{42, 0};
    const PointCloud a = sample_poisson_square(10.0, seed);
    const PointCloud b = sample_poisson_square(10.0, seed);
    REQUIRE(a.count() == b.count());
    for (std::size_t i = 0; i < a.count(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
    }
    // different trials give different clouds
    const PointCloud c = sample_poisson_square(10.0, SeedSpec{42, 1});
    CHECK(c.count() != a.count() ? true : c.points[0].x != a.points[0].x);
}

TEST_CASE("edge cases and validation") {
    CHECK(sample_poisson_square(0.0, SeedSpec{1, 0}).count() == 0);
    CHECK_THROWS_AS(sample_poisson_square(-1.0, SeedSpec{1, 0}), Error);

    const PointCloud cloud = sample_poisson_square(5.0, SeedSpec{7, 3});
    for (const auto& p : cloud.points) {
        CHECK(p.x > 0.0);
        CHECK(p.x < 5.0);
        CHECK(p.y > 0.0);
        CHECK(p.y < 5.0);
    }
    for (std::size_t i = 1; i < cloud.count(); ++i) {
        const bool sorted = cloud.points[i - 1].x < cloud.points[i].x ||
                            (cloud.points[i - 1].x == cloud.points[i].x &&
                             cloud.points[i - 1].y <= cloud.points[i].y);
        CHECK(sorted);
    }
}

TEST_CASE("count statistics: mean at n=30 over 2000 seeds") {
    // Poisson(900): sample mean should sit within 3*sqrt(900/2000) of 900
    double sum = 0.0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t)
        sum += static_cast<double>(sample_poisson_square(30.0, SeedSpec{1234, (std::uint64_t)t}).count());
    const double mean = sum / trials;
    CHECK(std::abs(mean - 900.0) <= 3.0 * std::sqrt(900.0 / trials));
}

TEST_CASE("count statistics: chi-square goodness of fit at n=3") {
    // lambda = 9; bins {<=3},{4},...,{14},{>=15}; df = 12;0.999 quantile 32.909
    const int trials = 4000;
    std::vector<int> observed(13, 0);
    for (int t = 0; t < trials; ++t) {
        const std::size_t k = sample_poisson_square(3.0, SeedSpec{99, (std::uint64_t)t}).count();
        if (k <= 3)
            ++observed[0];
        else if (k >= 15)
            ++observed[12];
        else
            ++observed[k - 3];
    }
    std::vector<double> pmf(15, 0.0);
    pmf[0] = std::exp(-9.0);
    for (int k = 1; k < 15; ++k) pmf[k] = pmf[k - 1] * 9.0 / k;
    std::vector<double> expected(13, 0.0);
    expected[0] = pmf[0] + pmf[1] + pmf[2] + pmf[3];
    for (int k = 4; k <= 14; ++k) expected[k - 3] = pmf[k];
    double tail = 1.0;
    for (int k = 0; k < 15; ++k) tail -= pmf[k];
    expected[12] = tail;

    double stat = 0.0;
    for (int b = 0; b < 13; ++b) {
        const double e = expected[b] * trials;
        stat += (observed[b] - e) * (observed[b] - e) / e;
    }
    CHECK(stat < 32.909);
}

TEST_CASE("count statistics: transformed-rejection regime moments") {
    // n = 40 puts the mean at 1600, beyond the inversion boundary
    const int trials = 300;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double k =
            static_cast<double>(sample_poisson_square(40.0, SeedSpec{321, (std::uint64_t)t}).count());
        sum += k;
        sum2 += k * k;
    }
    const double mean = sum / trials;
    const double var = sum2 / trials - mean * mean;
    CHECK(std::abs(mean - 1600.0) <= 5.0 * std::sqrt(1600.0 / trials));
    CHECK(var > 1000.0);
    CHECK(var < 2300.0);
}

TEST_CASE("cloud files round-trip bitwise") {
    const PointCloud cloud = sample_poisson_square(10.0, SeedSpec{5, 1});
    const std::string text = cloud_to_string(cloud);
    const PointCloud back = cloud_from_string(text, "mem");
    REQUIRE(back.count() == cloud.count());
    CHECK(back.n == cloud.n);
    CHECK(back.seed == cloud.seed);
    for (std::size_t i = 0; i < cloud.count(); ++i) {
        CHECK(back.points[i].x == cloud.points[i].x);
        CHECK(back.points[i].y == cloud.points[i].y);
    }
}

TEST_CASE("cloud file validation") {
    // empty cloud with a header is fine
    const PointCloud empty = cloud_from_string(
        "# areatrap-cloud v1\n# n=5 seed=9 count=0\nx,y\n", "mem");
    CHECK(empty.count() == 0);
    CHECK(empty.n == 5.0);

    // boundary points load (never generated, but fixtures may use them)
    CHECK(cloud_from_string("# areatrap-cloud v1\n# n=5 seed=0 count=1\nx,y\n0,3\n", "mem")
              .count() == 1);

    // out-of-box point
    CHECK_THROWS_WITH_AS(
        cloud_from_string("# areatrap-cloud v1\n# n=5 seed=0 count=1\nx,y\n6,0\n", "mem"),
        doctest::Contains("outside"), Error);

    // unsorted points
    CHECK_THROWS_WITH_AS(
        cloud_from_string("# areatrap-cloud v1\n# n=5 seed=0 count=2\nx,y\n2,1\n1,1\n", "mem"),
        doctest::Contains("sorted"), Error);

    // malformed rows carry a line number
    try {
        cloud_from_string("# areatrap-cloud v1\n# n=5 seed=0 count=1\nx,y\noops\n", "mem");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
        CHECK(std::string(e.what()).find(":4") != std::string::npos);
    }

    // count mismatch
    CHECK_THROWS_AS(
        cloud_from_string("# areatrap-cloud v1\n# n=5 seed=0 count=2\nx,y\n1,1\n", "mem"), Error);

    // bad magic
    CHECK_THROWS_AS(cloud_from_string("# wrong\n# n=5 seed=0 count=0\nx,y\n", "mem"), Error);
}
