#include <doctest.h>

#include <cmath>

#include "gff2d/error.hpp"
#include "gff2d/geometry.hpp"
#include "gff2d/rng.hpp"

using namespace gff2d;

TEST_CASE("box_vn matches the centered-box definition") {
    LatticeBox b4 = box_vn(4);
    CHECK(b4.corner == Point{-2, -2});
    CHECK(b4.vertex_count() == 25);

    LatticeBox b1 = box_vn(1);
    CHECK(b1.vertex_count() == 1);
    CHECK(b1.corner == Point{0, 0});

    LatticeBox b2 = box_vn(2);
    CHECK(b2.corner == Point{-1, -1});
    CHECK(b2.width == 3);

    CHECK_THROWS_AS(box_vn(0), config_error);
}

TEST_CASE("box_vl is the L-infinity ball") {
    CHECK(box_vl({0, 0}, 2.0).vertex_count() == 9);
    LatticeBox single = box_vl({5, 5}, 0.5);
    CHECK(single.vertex_count() == 1);
    CHECK(single.corner == Point{5, 5});
    CHECK(box_vl({0, 0}, 8.0).width == 9);
}

TEST_CASE("box_of picks the unique tile") {
    CHECK(box_of({0, 0}, 4).index == Point{0, 0});
    CHECK(box_of({-1, 0}, 4).index == Point{-1, 0});
    CHECK(box_of({3, 3}, 4).index == Point{0, 0});
}

TEST_CASE("tiling covers every point exactly once") {
    Rng rng(20240601);
    for (int trial = 0; trial < 10000; ++trial) {
        std::int64_t r = std::int64_t(1) + std::int64_t(rng.next_below(16));
        Point p{std::int64_t(rng.next_below(4001)) - 2000,
                std::int64_t(rng.next_below(4001)) - 2000};
        BoxId id = box_of(p, r);
        // the closed region [ar-1/2,(a+1)r-1/2]^2 contains p
        CHECK(double(id.index.x * r) - 0.5 <= double(p.x));
        CHECK(double(p.x) <= double((id.index.x + 1) * r) - 0.5);
        CHECK(box_lattice(id).contains(p));
        // the next tile east starts right after this one
        BoxId east{r, {id.index.x + 1, id.index.y}};
        CHECK(!box_lattice(id).intersects(box_lattice(east)));
        CHECK(box_lattice(id).max_corner().x + 1 == box_lattice(east).corner.x);
    }
}

TEST_CASE("end_boxes enumerates tiles meeting V_N") {
    CHECK(end_boxes(2, 4, 8).size() == 81);  // side-1 tiles, one per vertex
    auto tiles = end_boxes(3, 4, 8);
    CHECK(tiles.size() == 9);
    for (const auto& t : tiles) CHECK(t.scale == 4);
    CHECK(end_boxes(3, 4, 0).empty());
}

TEST_CASE("parallelogram anchors follow the floor formula") {
    Parallelogram flat = make_parallelogram(0, 0, 160, 0, 10);
    CHECK(flat.angle() == doctest::Approx(0.0));
    CHECK(flat.anchor() == Point{80, -80});
    CHECK(flat.good());

    Parallelogram steep = make_parallelogram(0, 0, 160, 160, 10);
    CHECK(steep.angle() == doctest::Approx(3.14159265358979 / 4.0));
    CHECK(steep.good());
    // sin^2 = 1/2, sin cos = 1/2
    CHECK(steep.anchor() == Point{std::int64_t(std::floor((160.0 + 160.0 - 35.0) / 2.0)),
                                  std::int64_t(std::floor((160.0 - 160.0 + 35.0) / 2.0))});

    CHECK_THROWS_AS(make_parallelogram(0, 0, 160, 0, 5), config_error);
    CHECK_THROWS_AS(make_parallelogram(0, 0, 8, 0, 10), config_error);
    CHECK_THROWS_AS(make_parallelogram(0, 0, 160, 200, 10), config_error);
}

TEST_CASE("anchor stays on the lattice for fractional corners") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        double w = 10.0 + double(rng.next_below(30));
        double l = 16.0 * w;
        double h = double(rng.next_below(std::uint64_t(l)));
        double a = double(rng.next_below(100)) - 50.0 + 0.25 * double(rng.next_below(4));
        double b = double(rng.next_below(100)) - 50.0 + 0.125 * double(rng.next_below(8));
        Parallelogram d = make_parallelogram(a, b, l, h, w);
        Point v0 = d.anchor();
        // base-relative floor formula, so translates of D carry their anchor along
        double s2 = h * h / (l * l + h * h);
        double sc = h * l / (l * l + h * h);
        CHECK(v0.x == std::int64_t(std::floor(a + (h + l - 7.0 * w * s2) / 2.0)));
        CHECK(v0.y == std::int64_t(std::floor(b + (h - l + 7.0 * w * sc) / 2.0)));
        // integer translations move the anchor rigidly
        Parallelogram moved = make_parallelogram(a + 6, b - 4, l, h, w);
        CHECK(moved.anchor() == v0 + Point{6, -4});
    }
}

TEST_CASE("parallelogram membership is closed and exact on integers") {
    Parallelogram d = make_parallelogram(0, 0, 160, 0, 10);
    CHECK(d.contains(Point{0, 0}));
    CHECK(d.contains(Point{160, 10}));
    CHECK(!d.contains(Point{0, -1}));
    CHECK(!d.contains(Point{161, 5}));
    CHECK(d.left_side_points().size() == 11);
    CHECK(d.right_side_points().size() == 11);

    Parallelogram tilted = make_parallelogram(0, 0, 160, 80, 10);
    // lower edge has slope 1/2
    CHECK(tilted.contains(Point{20, 10}));
    CHECK(!tilted.contains(Point{20, 9}));
    CHECK(tilted.contains(Point{20, 20}));
    CHECK(!tilted.contains(Point{20, 21}));
}

TEST_CASE("rotate_and_assemble produces a surrounding ring") {
    Annulus ann = rotate_and_assemble(make_parallelogram(0, 0, 160, 0, 10));
    CHECK(ann.center == Point{80, -80});
    CHECK(ann.inner_box == box_vl({80, -80}, 20.0));
    CHECK(ann.outer_box == box_vl({80, -80}, 640.0));

    // quarter-turn copies permute cyclically
    for (int i = 0; i < 4; ++i) {
        const auto& c0 = ann.copy_corners[std::size_t(i)];
        const auto& c1 = ann.copy_corners[std::size_t((i + 1) % 4)];
        for (int k = 0; k < 4; ++k) {
            RealPoint rot{double(ann.center.x) - (c0[std::size_t(k)].y - double(ann.center.y)),
                          double(ann.center.y) + (c0[std::size_t(k)].x - double(ann.center.x))};
            CHECK(rot.x == doctest::Approx(c1[std::size_t(k)].x));
            CHECK(rot.y == doctest::Approx(c1[std::size_t(k)].y));
        }
    }

    // the half-turn copy is the point reflection of the base
    for (int k = 0; k < 4; ++k) {
        RealPoint base = ann.copy_corners[0][std::size_t(k)];
        RealPoint mirrored{2.0 * double(ann.center.x) - base.x,
                           2.0 * double(ann.center.y) - base.y};
        bool found = false;
        for (int t = 0; t < 4; ++t) {
            const auto& c = ann.copy_corners[2][std::size_t(t)];
            found =
                found || (std::abs(c.x - mirrored.x) < 1e-9 && std::abs(c.y - mirrored.y) < 1e-9);
        }
        CHECK(found);
    }

    CHECK_THROWS_AS(rotate_and_assemble(make_parallelogram(0.5, 0, 160, 0, 10)), config_error);
    // the 45-degree case also surrounds
    CHECK_NOTHROW(rotate_and_assemble(make_parallelogram(0, 0, 160, 160, 10)));
}

TEST_CASE("crossing geometry at a feasible scale") {
    const std::int64_t k = std::int64_t(1) << 22;

    SUBCASE("axis-aligned pair gives a horizontal slab") {
        BoxId b{1, {0, 0}}, b2{1, {k, 0}};
        CrossingGeometry geo = crossing_geometry(b, b2, 1, k);
        CHECK(geo.subs.size() == 256);
        CHECK(geo.slab.h == doctest::Approx(0.0));
        for (const auto& sub : geo.subs) {
            CHECK(sub.good());
            CHECK(sub.w == doctest::Approx(20.0));
            CHECK(sub.l == doctest::Approx(320.0));
        }
        CHECK(geo.around.size() == geo.subs.size());
        for (std::size_t i = 0; i < geo.around.size(); ++i) {
            CHECK(geo.hull.contains_box(geo.around[i]));
            for (std::size_t j = i + 1; j < geo.around.size(); ++j)
                CHECK(!geo.around[i].intersects(geo.around[j]));
        }
    }

    SUBCASE("diagonal pair stays feasible") {
        BoxId b{1, {0, 0}}, b2{1, {2965821, 2965821}};
        CrossingGeometry geo = crossing_geometry(b, b2, 1, k);
        CHECK(geo.subs.size() == 256);
        CHECK(geo.slab.angle() == doctest::Approx(3.14159265358979 / 4.0).epsilon(1e-6));
    }

    SUBCASE("too-small K is rejected") {
        BoxId b{1, {0, 0}}, b2{1, {16, 0}};
        CHECK_THROWS_AS(crossing_geometry(b, b2, 1, 16), config_error);
        BoxId c2{1, {64, 0}};
        CHECK_THROWS_AS(crossing_geometry(b, c2, 1, 64), config_error);
    }

    SUBCASE("unreachable pairs are rejected") {
        BoxId b{1, {0, 0}}, far{1, {3 * k, 0}};
        CHECK_THROWS_AS(crossing_geometry(b, far, 1, k), config_error);
        BoxId reversed{1, {-k, 0}};
        CHECK_THROWS_AS(crossing_geometry(b, reversed, 1, k), config_error);
    }
}
