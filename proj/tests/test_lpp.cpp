#include "areatrap/lpp.hpp"

#include "areatrap/errors.hpp"
#include "areatrap/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace areatrap;
using namespace areatrap::lpp;
using testutil::uniform_cloud;

namespace {

sampler::PointCloud cloud_of(double n, std::vector<geometry::Point> pts) {
    sampler::PointCloud c;
    c.n = n;
    c.points = std::move(pts);
    std::sort(c.points.begin(), c.points.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return c;
}

} // namespace

TEST_CASE("lpp_length fixtures") {
    const auto chain = cloud_of(4.0, {{1, 1}, {2, 2}, {3, 3}});
    CHECK(lpp_length(chain, {0, 0}, {4, 4}) == 3);

    const auto anti = cloud_of(3.0, {{1, 2}, {2, 1}});
    CHECK(lpp_length(anti, {0, 0}, {3, 3}) == 1);

    CHECK_THROWS_AS(lpp_length(chain, {2, 2}, {1, 3}), Error);
}

TEST_CASE("topmost geodesic fixtures") {
    const auto chain = cloud_of(4.0, {{1, 1}, {2, 2}, {3, 3}});
    const auto geo = topmost_geodesic(chain, {0, 0}, {4, 4});
    CHECK(geo.length == 3);
    REQUIRE(geo.path.vertices.size() == 5);
    CHECK(geo.path.vertices[1].x == 1.0);

    // among the two singleton optima, (1,2) dominates under the topmost rule
    const auto anti = cloud_of(3.0, {{1, 2}, {2, 1}});
    const auto top = topmost_geodesic(anti, {0, 0}, {3, 3});
    REQUIRE(top.length == 1);
    CHECK(top.path.vertices[1].x == 1.0);
    CHECK(top.path.vertices[1].y == 2.0);

    // empty rectangle: straight segment
    const auto empty = cloud_of(3.0, {});
    const auto none = topmost_geodesic(empty, {0, 0}, {3, 3});
    CHECK(none.length == 0);
    CHECK(none.path.vertices.size() == 2);
}

TEST_CASE("lpp_length equals brute force on random instances") {
    SplitMix64 rng(8001);
    for (int trial = 0; trial < 300; ++trial) {
        const auto cloud = uniform_cloud(4.0, static_cast<int>(rng.next_u64() % 11), rng);
        const Point u{0, 0}, v{4, 4};
        CHECK(lpp_length(cloud, u, v) == oracle::brute_lpp(cloud, u, v));
    }
}

TEST_CASE("geodesic reconstruction is consistent") {
    SplitMix64 rng(8002);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cloud = uniform_cloud(6.0, 40, rng);
        const auto geo = topmost_geodesic(cloud, {0, 0}, {6, 6});
        geometry::validate_path(geo.path, false);
        CHECK(static_cast<std::int64_t>(geo.path.length()) == geo.length);
        CHECK(geo.length == lpp_length(cloud, {0, 0}, {6, 6}));
        // every interior vertex is an environment point
        for (std::size_t i = 1; i + 1 < geo.path.vertices.size(); ++i) {
            const Point& p = geo.path.vertices[i];
            bool found = false;
            for (const Point& q : cloud.points)
                if (q.x == p.x && q.y == p.y) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("adding a point never decreases lpp_length") {
    SplitMix64 rng(8003);
    for (int trial = 0; trial < 100; ++trial) {
        auto cloud = uniform_cloud(5.0, 15, rng);
        const auto before = lpp_length(cloud, {0, 0}, {5, 5});
        cloud.points.push_back({5.0 * rng.next_open01(), 5.0 * rng.next_open01()});
        std::sort(cloud.points.begin(), cloud.points.end(), [](const Point& a, const Point& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        CHECK(lpp_length(cloud, {0, 0}, {5, 5}) >= before);
    }
}

TEST_CASE("transversal fluctuation") {
    IncreasingPath path;
    path.n = 2.0;
    path.vertices = {{0, 0}, {1, 1}, {2, 2}};
    CHECK(transversal_fluctuation(path, {0, 0}, {2, 2}) == doctest::Approx(0.0));

    path.vertices = {{0, 0}, {1, 0}, {2, 2}};
    CHECK(transversal_fluctuation(path, {0, 0}, {2, 2}) == doctest::Approx(1.0));

    CHECK_THROWS_AS(transversal_fluctuation(path, {1, 0}, {1, 2}), Error);

    // independent recomputation on random geodesics
    SplitMix64 rng(8004);
    for (int trial = 0; trial < 30; ++trial) {
        const auto cloud = uniform_cloud(8.0, 60, rng);
        const auto geo = topmost_geodesic(cloud, {0, 0}, {8, 8});
        double expect = 0.0;
        for (const Point& p : geo.path.vertices) expect = std::max(expect, std::abs(p.x - p.y));
        CHECK(transversal_fluctuation(geo.path, {0, 0}, {8, 8}) == doctest::Approx(expect));
    }
}

TEST_CASE("lpp_above_chord") {
    // every point strictly below the chord: nothing to collect
    const auto below = cloud_of(4.0, {{1, 0.2}, {2, 0.5}, {3, 1.0}});
    CHECK(lpp_above_chord(below, {0, 0}, {4, 4}).length == 0);

    // all above: the restriction is inactive
    const auto above = cloud_of(4.0, {{0.5, 1}, {1, 2}, {2, 3}});
    CHECK(lpp_above_chord(above, {0, 0}, {4, 4}).length == lpp_length(above, {0, 0}, {4, 4}));

    SplitMix64 rng(8005);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cloud = uniform_cloud(4.0, static_cast<int>(rng.next_u64() % 11), rng);
        CHECK(lpp_above_chord(cloud, {0, 0}, {4, 4}).length ==
              oracle::brute_above_chord(cloud, {0, 0}, {4, 4}));
    }

    // restriction bound
    for (int trial = 0; trial < 50; ++trial) {
        const auto cloud = uniform_cloud(5.0, 30, rng);
        CHECK(lpp_above_chord(cloud, {0, 0}, {5, 5}).length <= lpp_length(cloud, {0, 0}, {5, 5}));
    }
}

TEST_CASE("lpp_in_convex_region") {
    SplitMix64 rng(8006);
    const auto cloud = uniform_cloud(4.0, 25, rng);
    const Point u{0, 0}, v{4, 4};

    // bounding rectangle leaves the problem unchanged
    const std::vector<Point> box{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    CHECK(lpp_in_convex_region(cloud, u, v, box).length == lpp_length(cloud, u, v));

    // a sliver around the diagonal excludes everything off the line
    const std::vector<Point> sliver{{-0.001, -0.0011}, {4, 3.9999}, {4.001, 4.0011}, {0, 0.0001}};
    CHECK(lpp_in_convex_region(cloud, u, v, sliver).length == 0);

    // validation
    const std::vector<Point> bowtie{{0, 0}, {4, 4}, {4, 0}, {0, 4}};
    CHECK_THROWS_AS(lpp_in_convex_region(cloud, u, v, bowtie), Error);
    const std::vector<Point> far{{10, 10}, {12, 10}, {12, 12}, {10, 12}};
    CHECK_THROWS_AS(lpp_in_convex_region(cloud, u, v, far), Error);

    // brute agreement over random parallelograms
    for (int trial = 0; trial < 150; ++trial) {
        const auto small = uniform_cloud(4.0, static_cast<int>(rng.next_u64() % 11), rng);
        const double below = 4.0 * (0.2 + rng.next_open01());
        const double above = 4.0 * (0.2 + rng.next_open01());
        const std::vector<Point> region{{-0.5, -0.5 - below},
                                        {4.5, 4.5 - below},
                                        {4.5, 4.5 + above},
                                        {-0.5, -0.5 + above}};
        CHECK(lpp_in_convex_region(small, u, v, region).length ==
              oracle::brute_in_region(small, u, v, region));
        CHECK(lpp_in_convex_region(small, u, v, region).length <= lpp_length(small, u, v));
    }
}
