#include <doctest.h>

#include <cmath>

#include "opgeo/errors.hpp"
#include "opgeo/rng.hpp"
#include "opgeo/space.hpp"
#include "oracles.hpp"

using namespace opgeo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<Vec> kSquare{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

SpaceSpec square_space() { return SpaceSpec::polyhedral2d(kSquare); }

SpaceSpec hexagon_space() {
    const double h = std::sqrt(3.0) / 2.0;
    return SpaceSpec::polyhedral2d({{1, 0}, {0.5, h}, {-0.5, h}, {-1, 0}, {-0.5, -h}, {0.5, -h}});
}

}  // namespace

TEST_CASE("norm closed forms") {
    CHECK(norm(SpaceSpec::lp(3, 2), {1, 1}) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
    CHECK(norm(SpaceSpec::euclidean(2), {3, 4}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(norm(SpaceSpec::lp(1, 2), {1, -2}) == doctest::Approx(3.0));
    CHECK(norm(SpaceSpec::lp(std::numeric_limits<double>::infinity(), 3), {1, -2, 0.5}) ==
          doctest::Approx(2.0));
    CHECK(norm(SpaceSpec::euclidean(2), {0, 0}) == 0.0);
}

TEST_CASE("square gauge agrees with the boundary-scaling oracle") {
    const SpaceSpec sq = square_space();
    std::vector<std::vector<double>> poly;
    for (const Vec& v : kSquare) poly.push_back({v[0], v[1]});

    const double expected = oracle::gauge_by_boundary_scaling(poly, 0.5, -0.25);
    CHECK(expected == doctest::Approx(0.5).epsilon(1e-9));  // frozen
    CHECK(norm(sq, {0.5, -0.25}) == doctest::Approx(0.5).epsilon(1e-12));

    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec v{rng.gaussian(), rng.gaussian()};
        CHECK(norm(sq, v) ==
              doctest::Approx(oracle::gauge_by_boundary_scaling(poly, v[0], v[1]))
                  .epsilon(1e-9));
    }
}

TEST_CASE("norm axioms sampled") {
    const auto spaces = {SpaceSpec::euclidean(3), SpaceSpec::lp(1, 3),
                         SpaceSpec::lp(2.5, 3)};
    for (const SpaceSpec& s : spaces) {
        SplitMix64 rng(7);
        for (int i = 0; i < 1000; ++i) {
            Vec u(3), v(3);
            for (double& x : u) x = rng.gaussian();
            for (double& x : v) x = rng.gaussian();
            const double c = 4.0 * rng.gaussian();
            CHECK(norm(s, scaled(u, c)) == doctest::Approx(std::abs(c) * norm(s, u)).epsilon(1e-10));
            CHECK(norm(s, vadd(u, v)) <= norm(s, u) + norm(s, v) + 1e-10);
        }
    }
    SplitMix64 rng(13);
    const SpaceSpec sq = square_space();
    for (int i = 0; i < 1000; ++i) {
        Vec u{rng.gaussian(), rng.gaussian()}, v{rng.gaussian(), rng.gaussian()};
        const double c = 4.0 * rng.gaussian();
        CHECK(norm(sq, scaled(u, c)) == doctest::Approx(std::abs(c) * norm(sq, u)).epsilon(1e-10));
        CHECK(norm(sq, vadd(u, v)) <= norm(sq, u) + norm(sq, v) + 1e-10);
    }
}

TEST_CASE("square polyhedral norm equals the sup norm") {
    const SpaceSpec sq = square_space();
    const SpaceSpec linf = SpaceSpec::lp(std::numeric_limits<double>::infinity(), 2);
    SplitMix64 rng(19);
    for (int i = 0; i < 1000; ++i) {
        const Vec v{rng.gaussian(), rng.gaussian()};
        CHECK(norm(sq, v) == doctest::Approx(norm(linf, v)).epsilon(1e-10));
    }
}

TEST_CASE("strict convexity flags") {
    CHECK(is_strictly_convex(SpaceSpec::euclidean(3)));
    CHECK(is_strictly_convex(SpaceSpec::lp(1.5, 2)));
    CHECK_FALSE(is_strictly_convex(SpaceSpec::lp(1, 2)));
    CHECK_FALSE(is_strictly_convex(SpaceSpec::lp(std::numeric_limits<double>::infinity(), 2)));
    CHECK_FALSE(is_strictly_convex(hexagon_space()));
}

TEST_CASE("unit ball extreme points") {
    const ExtremePoints sq = unit_ball_extreme_points(square_space());
    REQUIRE(sq.points.size() == 4);
    CHECK_FALSE(sq.all_of_sphere);

    CHECK(unit_ball_extreme_points(SpaceSpec::lp(2, 2)).all_of_sphere);

    const ExtremePoints l1 = unit_ball_extreme_points(SpaceSpec::lp(1, 2));
    REQUIRE(l1.points.size() == 4);
    CHECK(l1.points[0] == Vec{1, 0});

    const ExtremePoints li =
        unit_ball_extreme_points(SpaceSpec::lp(std::numeric_limits<double>::infinity(), 2));
    REQUIRE(li.points.size() == 4);
    CHECK(li.points[0] == Vec{1, 1});

    CHECK_THROWS_AS(
        unit_ball_extreme_points(SpaceSpec::lp(std::numeric_limits<double>::infinity(), 20)),
        InvalidInput);
}

TEST_CASE("is_extreme_point") {
    const SpaceSpec linf = SpaceSpec::lp(std::numeric_limits<double>::infinity(), 2);
    // (1, 0.3) is the midpoint of the unit-ball segment between (1,1) and
    // (1,-0.4); exhibit it before trusting the verdict.
    const Vec a{1, 1}, b{1, -0.4};
    CHECK(norm(linf, a) == doctest::Approx(1.0));
    CHECK(norm(linf, b) == doctest::Approx(1.0));
    const Vec mid = scaled(vadd(a, b), 0.5);
    CHECK(mid == Vec{1, 0.3});
    CHECK_FALSE(is_extreme_point(linf, mid));
    CHECK(is_extreme_point(linf, {1, 1}));
    CHECK(is_extreme_point(SpaceSpec::euclidean(2), {0.6, 0.8}));
    CHECK_THROWS_AS(is_extreme_point(linf, {0.5, 0.2}), InvalidInput);

    // Consistency: listed extreme points pass, polygon edge midpoints fail.
    for (const SpaceSpec& s : {square_space(), hexagon_space(), SpaceSpec::lp(1, 2),
                               SpaceSpec::lp(kInf, 2)}) {
        const ExtremePoints ext = unit_ball_extreme_points(s);
        for (const Vec& v : ext.points) CHECK(is_extreme_point(s, v));
        for (std::size_t i = 0; i < ext.points.size(); ++i) {
            const Vec m = scaled(
                vadd(ext.points[i], ext.points[(i + 1) % ext.points.size()]), 0.5);
            if (norm(s, m) < 0.999) continue;  // not an edge of the cycle order
            CHECK_FALSE(is_extreme_point(s, scaled(m, 1.0 / norm(s, m))));
        }
    }
}

TEST_CASE("find_flat_segment") {
    const SpaceSpec linf = SpaceSpec::lp(std::numeric_limits<double>::infinity(), 2);
    const auto seg = find_flat_segment(linf);
    REQUIRE(seg.has_value());
    CHECK(seg->interior_point == Vec{1, 0});
    CHECK(seg->direction == Vec{0, 1});
    CHECK(seg->lambda1 == doctest::Approx(-1.0));
    CHECK(seg->lambda2 == doctest::Approx(1.0));

    CHECK_FALSE(find_flat_segment(SpaceSpec::lp(1.5, 2)).has_value());

    const auto hexseg = find_flat_segment(hexagon_space());
    REQUIRE(hexseg.has_value());
    // Edge between (1,0) and (1/2, sqrt(3)/2).
    const Vec v1 = vadd(hexseg->interior_point, scaled(hexseg->direction, hexseg->lambda1));
    const Vec v2 = vadd(hexseg->interior_point, scaled(hexseg->direction, hexseg->lambda2));
    CHECK(is_extreme_point(hexagon_space(), v1));
    CHECK(is_extreme_point(hexagon_space(), v2));
    CHECK(hexseg->interior_point[0] == doctest::Approx(0.75));

    CHECK_THROWS_AS(find_flat_segment(SpaceSpec::euclidean(3)), InvalidInput);

    // Segment invariants: unit norm along the sampled segment.
    for (const SpaceSpec& s : {linf, SpaceSpec::lp(1, 2), hexagon_space(), square_space()}) {
        const auto fs = find_flat_segment(s);
        REQUIRE(fs.has_value());
        for (int i = 0; i <= 20; ++i) {
            const double t = fs->lambda1 + (fs->lambda2 - fs->lambda1) * i / 20.0;
            CHECK(norm(s, vadd(fs->interior_point, scaled(fs->direction, t))) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(fs->lambda1 < 0.0);
        CHECK(fs->lambda2 > 0.0);
    }

    // Existence iff not strictly convex, over the built-in plane kinds.
    for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        const SpaceSpec s = SpaceSpec::lp(p, 2);
        CHECK(find_flat_segment(s).has_value() == !is_strictly_convex(s));
    }
    CHECK_FALSE(find_flat_segment(SpaceSpec::euclidean(2)).has_value());
    CHECK(find_flat_segment(square_space()).has_value());
}

TEST_CASE("sphere_sample determinism and normalization") {
    for (const SpaceSpec& s :
         {SpaceSpec::euclidean(2), SpaceSpec::lp(1, 2), SpaceSpec::lp(3, 4), square_space()}) {
        const auto a = sphere_sample(s, 7, 3);
        const auto b = sphere_sample(s, 7, 3);
        REQUIRE(a.size() == 3);
        CHECK(a == b);  // bit-for-bit
        for (const Vec& v : a) CHECK(std::abs(norm(s, v) - 1.0) <= 1e-12);
        CHECK(sphere_sample(s, 8, 3) != a);
    }
    const auto one = sphere_sample(SpaceSpec::lp(1, 2), 1, 1);
    CHECK(std::abs(std::abs(one[0][0]) + std::abs(one[0][1]) - 1.0) <= 1e-12);
}

TEST_CASE("space validation errors") {
    CHECK_THROWS_AS(SpaceSpec::lp(0.5, 2), InvalidInput);
    CHECK_THROWS_AS(SpaceSpec::lp(std::nan(""), 2), InvalidInput);
    CHECK_THROWS_AS(norm(SpaceSpec::euclidean(2), {1, 2, 3}), InvalidInput);
    // Asymmetric polygon is rejected, not symmetrized.
    CHECK_THROWS_AS(SpaceSpec::polyhedral2d({{1, 0}, {0, 1}, {-1, 0}, {0.2, -1}}), InvalidInput);
    // Clockwise order rejected.
    CHECK_THROWS_AS(SpaceSpec::polyhedral2d({{1, -1}, {-1, -1}, {-1, 1}, {1, 1}}), InvalidInput);
    // Non-convex list rejected.
    CHECK_THROWS_AS(
        SpaceSpec::polyhedral2d({{1, 0}, {0.1, 0.1}, {0, 1}, {-1, 0}, {-0.1, -0.1}, {0, -1}}),
        InvalidInput);
    // Gram must be SPD.
    Mat g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = -1.0;
    CHECK_THROWS_AS(SpaceSpec::euclidean_gram(g), InvalidInput);
}

TEST_CASE("gram-weighted euclidean norm") {
    Mat g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = 4.0;
    const SpaceSpec s = SpaceSpec::euclidean_gram(g);
    CHECK(norm(s, {1, 1}) == doctest::Approx(std::sqrt(5.0)));
    CHECK(inner(s, {2, 1}, {2, -1}) == doctest::Approx(0.0));
}
