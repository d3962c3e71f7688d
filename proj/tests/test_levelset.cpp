#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gff2d/error.hpp"
#include "gff2d/field.hpp"
#include "gff2d/levelset.hpp"
#include "gff2d/rng.hpp"
#include "support.hpp"

using namespace gff2d;
using namespace gff2d::testing;

namespace {

OpenMask mask_from_bits(const LatticeBox& box, const std::vector<std::string>& rows) {
    // rows given top-to-bottom for readability
    OpenMask m;
    m.box = box;
    m.open.assign(std::size_t(box.vertex_count()), 0);
    REQUIRE(std::int64_t(rows.size()) == box.height);
    for (std::int64_t y = 0; y < box.height; ++y) {
        REQUIRE(std::int64_t(rows[std::size_t(y)].size()) == box.width);
        for (std::int64_t x = 0; x < box.width; ++x)
            if (rows[std::size_t(box.height - 1 - y)][std::size_t(x)] == '1')
                m.open[std::size_t(y * box.width + x)] = 1;
    }
    return m;
}

AnnulusRegion test_ring() {
    return AnnulusRegion::box_ring({{0, 0}, 9, 9}, {{3, 3}, 3, 3});
}

}  // namespace

TEST_CASE("open_mask applies the two-sided threshold") {
    FieldSample s = sample_spectral({{0, 0}, 8, 8}, 4);
    OpenMask everything = open_mask(s, 1e300, 0.0);
    for (auto v : everything.open) CHECK(v == 1);

    OpenMask zero = open_mask(s, 0.0, 0.0);
    for (std::int64_t i = 0; i < s.box.vertex_count(); ++i) {
        Point p = s.box.point_at(i);
        CHECK(zero.is_open(p) == (s.value(p) == 0.0));  // only the Dirichlet ring
    }
    CHECK(zero.is_open({0, 0}));

    // a shift tuned to one vertex opens it
    Point v{3, 3};
    OpenMask shifted = open_mask(s, 0.5, -s.value(v));
    CHECK(shifted.is_open(v));

    CHECK_THROWS_AS(open_mask(s, -1.0, 0.0), config_error);

    OpenMask one = one_sided_mask(s, -0.5);
    for (std::int64_t i = 0; i < s.box.vertex_count(); ++i) {
        Point p = s.box.point_at(i);
        CHECK(one.is_open(p) == (s.value(p) >= -0.5));
    }
}

TEST_CASE("mask monotone in lambda; crossing and distance follow") {
    FieldSample s = sample_spectral(box_vn(24), 17);
    LatticeBox band{{-6, -6}, 12, 12};
    std::vector<Point> left, right;
    for (std::int64_t y = band.corner.y; y <= band.max_corner().y; ++y) {
        left.push_back({band.corner.x, y});
        right.push_back({band.max_corner().x, y});
    }
    double lambdas[] = {0.3, 0.8, 1.5, 2.5, 4.0};
    std::optional<std::int64_t> prev_dist;
    bool prev_cross = false;
    for (double lam : lambdas) {
        OpenMask m = open_mask(s, lam, 0.0);
        OpenMask m_prev = open_mask(s, lam * 0.999, 0.0);
        for (std::int64_t i = 0; i < m.box.vertex_count(); ++i)
            if (m_prev.open[std::size_t(i)]) CHECK(m.open[std::size_t(i)]);
        auto dist = chemical_distance(m, left, right, band);
        bool cross = dist.has_value();
        if (prev_cross) CHECK(cross);  // monotone
        if (prev_dist && dist) CHECK(*dist <= *prev_dist);
        prev_dist = dist;
        prev_cross = cross;
    }
}

TEST_CASE("crossing matches a brute-force search on random masks") {
    Parallelogram d = make_parallelogram(0, 0, 20, 0, 10);
    LatticeBox box{{-2, -2}, 26, 16};
    Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        OpenMask m = random_mask(box, 0.55, rng.next_u64());
        bool got = crossing_exists(m, d);
        // oracle: flood from the open left-side vertices within the region
        std::vector<Point> stack;
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (Point p : d.left_side_points())
            if (m.is_open(p)) {
                stack.push_back(p);
                seen.insert({p.x, p.y});
            }
        bool expect = false;
        while (!stack.empty()) {
            Point p = stack.back();
            stack.pop_back();
            if (p.x == 20) expect = true;
            const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y},
                                   {p.x, p.y - 1}};
            for (Point q : nbrs)
                if (d.contains(q) && m.is_open(q) && !seen.count({q.x, q.y})) {
                    seen.insert({q.x, q.y});
                    stack.push_back(q);
                }
        }
        CHECK(got == expect);
    }
}

TEST_CASE("a closed column kills the crossing") {
    Parallelogram d = make_parallelogram(0, 0, 20, 0, 10);
    LatticeBox box{{-2, -2}, 26, 16};
    OpenMask m = random_mask(box, 1.1, 1);  // all open
    CHECK(crossing_exists(m, d));
    for (std::int64_t y = -2; y <= 13; ++y) m.set({10, y}, false);
    CHECK(!crossing_exists(m, d));
    OpenMask closed = random_mask(box, -0.1, 1);  // all closed
    CHECK(!crossing_exists(closed, d));
}

TEST_CASE("all-open and all-closed rings") {
    AnnulusRegion region = test_ring();
    OpenMask all = random_mask({{0, 0}, 9, 9}, 1.1, 1);
    CHECK(open_circuit_exists(all, region));
    auto contour = outermost_open_contour(all, region);
    REQUIRE(contour.has_value());
    // the outermost circuit in a fully open ring is the world boundary ring
    CHECK(contour->cycle.size() == 33);  // 32 boundary vertices, closed
    CHECK(contour->enclosed.size() == 49);

    OpenMask none = random_mask({{0, 0}, 9, 9}, -0.1, 1);
    CHECK(!open_circuit_exists(none, region));
    CHECK(!outermost_open_contour(none, region).has_value());
}

TEST_CASE("a radial cut removes every circuit") {
    AnnulusRegion region = test_ring();
    OpenMask m = random_mask({{0, 0}, 9, 9}, 1.1, 1);
    for (std::int64_t x = 6; x <= 8; ++x) m.set({x, 4}, false);  // east cut
    CHECK(!open_circuit_exists(m, region));
}

TEST_CASE("nested circuits resolve to the outer one") {
    LatticeBox world{{0, 0}, 9, 9};
    AnnulusRegion region = test_ring();
    std::vector<std::string> rows = {
        "111111111",
        "100000001",
        "101111101",
        "101000101",
        "101000101",
        "101000101",
        "101111101",
        "100000001",
        "111111111",
    };
    OpenMask m = mask_from_bits(world, rows);
    auto contour = outermost_open_contour(m, region);
    REQUIRE(contour.has_value());
    CHECK(contour->enclosed.size() == 49);  // the outer ring wins
    // and the inner ring alone still surrounds
    for (std::int64_t i = 0; i < world.vertex_count(); ++i) {
        Point p = world.point_at(i);
        if (p.x == 0 || p.x == 8 || p.y == 0 || p.y == 8) m.set(p, false);
    }
    auto inner = outermost_open_contour(m, region);
    REQUIRE(inner.has_value());
    CHECK(inner->enclosed.size() == 25);
}

TEST_CASE("eight-connected staircases are not circuits") {
    LatticeBox world{{0, 0}, 9, 9};
    AnnulusRegion region = test_ring();
    // a diagonal 8-connected ring of isolated cells blocks 4-floods around
    // the hole but contains no 4-circuit
    std::vector<std::string> rows = {
        "010101010",
        "101000101",
        "010000010",
        "100000001",
        "010000010",
        "100000001",
        "010000010",
        "101000101",
        "010101010",
    };
    OpenMask m = mask_from_bits(world, rows);
    CHECK(!open_circuit_exists(m, region));
    CHECK(!outermost_open_contour(m, region).has_value());
    auto oracle = contour_oracle(m, region);
    CHECK(!oracle.exists);
}

TEST_CASE("random masks agree with the exhaustive oracle") {
    AnnulusRegion region = test_ring();
    LatticeBox world{{0, 0}, 9, 9};
    Rng rng(90210);
    int with_contour = 0;
    for (int trial = 0; trial < 300; ++trial) {
        double p = trial % 3 == 0 ? 0.35 : (trial % 3 == 1 ? 0.45 : 0.55);
        OpenMask m = random_mask(world, p, rng.next_u64());
        auto got = outermost_open_contour(m, region);
        auto oracle = contour_oracle(m, region);
        REQUIRE(got.has_value() == oracle.exists);
        CHECK(open_circuit_exists(m, region) == oracle.exists);
        if (!got) continue;
        ++with_contour;
        // the contour itself is a valid open in-band simple cycle
        REQUIRE(got->cycle.size() >= 5);
        CHECK(got->cycle.front() == got->cycle.back());
        for (std::size_t i = 0; i + 1 < got->cycle.size(); ++i) {
            Point a = got->cycle[i], b = got->cycle[i + 1];
            CHECK(std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1);
            CHECK(m.is_open(a));
            CHECK(region.in_band(a));
        }
        std::vector<Point> dedup(got->cycle.begin(), got->cycle.end() - 1);
        std::sort(dedup.begin(), dedup.end(), row_major_less);
        CHECK(std::adjacent_find(dedup.begin(), dedup.end()) == dedup.end());  // simple
        // identical maximal interior
        CHECK(got->enclosed == oracle.enclosed);
    }
    CHECK(with_contour > 20);  // the comparison actually exercised contours
}

TEST_CASE("contour depends only on the mask outside its interior") {
    AnnulusRegion region = test_ring();
    LatticeBox world{{0, 0}, 9, 9};
    Rng rng(777);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 40; ++trial) {
        OpenMask m = random_mask(world, 0.5, rng.next_u64());
        auto got = outermost_open_contour(m, region);
        if (!got) continue;
        ++tested;
        OpenMask altered = m;
        for (Point p : got->enclosed)
            if (rng.next_unit() < 0.5) altered.set(p, !altered.is_open(p));
        auto again = outermost_open_contour(altered, region);
        REQUIRE(again.has_value());
        CHECK(again->cycle == got->cycle);
        CHECK(again->enclosed == got->enclosed);
    }
    CHECK(tested == 40);
}

TEST_CASE("chemical distance on the full grid is the L1 distance") {
    LatticeBox box{{0, 0}, 8, 8};
    OpenMask m = random_mask(box, 1.1, 1);
    auto d = chemical_distance(m, {{0, 0}}, {{3, 2}});
    REQUIRE(d.has_value());
    CHECK(*d == 5);
    CHECK(*chemical_distance(m, {{4, 4}}, {{4, 4}}) == 0);
}

TEST_CASE("breadth-first distances match Floyd-Warshall") {
    LatticeBox box{{0, 0}, 8, 8};
    Rng rng(31337);
    std::vector<Point> left, right;
    for (std::int64_t y = 0; y < 8; ++y) {
        left.push_back({0, y});
        right.push_back({7, y});
    }
    for (int trial = 0; trial < 50; ++trial) {
        OpenMask m = random_mask(box, 0.6, rng.next_u64());
        auto got = chemical_distance(m, left, right, box);
        auto expect = fw_distance_oracle(m, left, right, box);
        CHECK(got == expect);
        if (got) {
            // never shorter than the L-infinity separation
            CHECK(*got >= 7);
        }
    }
}

TEST_CASE("cluster labels agree with a flood fill") {
    LatticeBox box{{0, 0}, 10, 10};
    OpenMask all = random_mask(box, 1.1, 1);
    auto labels = cluster_labels(all);
    for (auto l : labels) CHECK(l == 0);

    // checkerboard: everyone isolated
    OpenMask checker = random_mask(box, -0.1, 1);
    for (std::int64_t i = 0; i < box.vertex_count(); ++i) {
        Point p = box.point_at(i);
        if ((p.x + p.y) % 2 == 0) checker.set(p, true);
    }
    auto ids = cluster_labels(checker);
    for (std::int64_t i = 0; i < box.vertex_count(); ++i)
        if (checker.is_open(box.point_at(i))) CHECK(ids[std::size_t(i)] == i);

    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        OpenMask m = random_mask(box, 0.55, rng.next_u64());
        auto got = cluster_labels(m);
        // oracle: repeated flood fills, labeling by smallest row-major member
        std::vector<std::int64_t> expect(std::size_t(box.vertex_count()), -1);
        for (std::int64_t i = 0; i < box.vertex_count(); ++i) {
            if (!m.is_open(box.point_at(i)) || expect[std::size_t(i)] >= 0) continue;
            std::vector<Point> stack{box.point_at(i)};
            expect[std::size_t(i)] = i;
            while (!stack.empty()) {
                Point p = stack.back();
                stack.pop_back();
                const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y},
                                       {p.x, p.y - 1}};
                for (Point q : nbrs)
                    if (box.contains(q) && m.is_open(q) && expect[std::size_t(box.index_of(q))] < 0) {
                        expect[std::size_t(box.index_of(q))] = i;
                        stack.push_back(q);
                    }
            }
        }
        CHECK(got == expect);
    }
}
