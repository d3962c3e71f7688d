#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gff2d/error.hpp"
#include "gff2d/greens.hpp"
#include "gff2d/rng.hpp"

using namespace gff2d;

namespace {

// independent oracle: full-pivot LU solve of the interior Laplacian
Eigen::MatrixXd green_oracle(const Domain& dom) {
    const auto n = std::int64_t(dom.interior_size());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        Point p = dom.interior()[std::size_t(i)];
        lap(i, i) = 4.0;
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        for (Point q : nbrs) {
            auto j = dom.interior_index(q);
            if (j >= 0) lap(i, j) = -1.0;
        }
    }
    return 4.0 * lap.fullPivLu().solve(Eigen::MatrixXd::Identity(n, n));
}

}  // namespace

TEST_CASE("center of the 3x3 box has unit expected visits") {
    Domain dom = Domain::from_box({{0, 0}, 3, 3});
    REQUIRE(dom.interior_size() == 1);
    GreensMatrix g = greens_matrix(dom);
    CHECK(g.at({1, 1}, {1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.at({0, 0}, {1, 1}) == 0.0);  // boundary rows vanish
}

TEST_CASE("dense Green agrees with an independent linear solve") {
    Domain dom = Domain::from_box({{0, 0}, 5, 5});
    GreensMatrix g = greens_matrix(dom);
    Eigen::MatrixXd oracle = green_oracle(dom);
    double worst = (g.dense() - oracle).cwiseAbs().maxCoeff();
    CHECK(worst < 1e-10);
    CHECK(g.at({2, 2}, {2, 2}) == doctest::Approx(oracle(4, 4)).epsilon(1e-12));
}

TEST_CASE("Green symmetry, positivity, and diagonal lower bound") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        std::int64_t w = 4 + std::int64_t(rng.next_below(6));
        std::int64_t h = 4 + std::int64_t(rng.next_below(6));
        Domain dom = Domain::from_box({{-2, 3}, w, h});
        GreensMatrix g = greens_matrix(dom);
        double asym = (g.dense() - g.dense().transpose()).cwiseAbs().maxCoeff();
        CHECK(asym < 1e-10);
        CHECK(g.dense().minCoeff() >= -1e-13);
        for (const Point& u : dom.interior()) CHECK(g.at(u, u) >= 1.0 - 1e-12);
    }
}

TEST_CASE("domain monotonicity on nested boxes") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        std::int64_t w = 8 + std::int64_t(rng.next_below(5));
        LatticeBox outer{{0, 0}, w, w};
        LatticeBox inner{{1, 1}, w - 2, w - 2};
        GreensMatrix g_out = greens_matrix(Domain::from_box(outer));
        GreensMatrix g_in = greens_matrix(Domain::from_box(inner));
        for (const Point& u : g_in.domain().interior())
            for (const Point& v : g_in.domain().interior())
                CHECK(g_in.at(u, v) <= g_out.at(u, v) + 1e-10);
    }
}

TEST_CASE("LatticeDirichlet Green columns match the dense route") {
    // an L-shaped domain
    std::vector<Point> pts;
    for (std::int64_t y = 0; y < 8; ++y)
        for (std::int64_t x = 0; x < 8; ++x)
            if (!(x >= 4 && y >= 4)) pts.push_back({x, y});
    Domain dom = Domain::from_points(pts);
    GreensMatrix dense = greens_matrix(dom);
    LatticeDirichlet sparse(dom.interior());
    for (const Point& u : {Point{1, 1}, Point{2, 5}, Point{5, 2}}) {
        auto col = sparse.green_column(u);
        for (std::size_t i = 0; i < sparse.unknowns().size(); ++i)
            CHECK(col[i] == doctest::Approx(dense.at(u, sparse.unknowns()[i])).epsilon(1e-9));
    }
}

TEST_CASE("FastPoisson solves the five-point system") {
    FastPoisson poisson(10, 7);
    Rng rng(3);
    std::vector<double> rhs(std::size_t(poisson.nx() * poisson.ny()));
    for (auto& v : rhs) v = rng.next_gaussian();
    auto x = rhs;
    poisson.solve(x);
    for (std::int64_t iy = 0; iy < poisson.ny(); ++iy)
        for (std::int64_t ix = 0; ix < poisson.nx(); ++ix) {
            auto at = [&](std::int64_t gx, std::int64_t gy) {
                if (gx < 0 || gx >= poisson.nx() || gy < 0 || gy >= poisson.ny()) return 0.0;
                return x[std::size_t(gy * poisson.nx() + gx)];
            };
            double lap = 4.0 * at(ix, iy) - at(ix - 1, iy) - at(ix + 1, iy) - at(ix, iy - 1) -
                         at(ix, iy + 1);
            CHECK(lap == doctest::Approx(rhs[std::size_t(iy * poisson.nx() + ix)]).epsilon(1e-9));
        }
}

TEST_CASE("spectral covariance equals the dense Green matrix") {
    for (auto [w, h] : {std::pair<std::int64_t, std::int64_t>{3, 3}, {5, 4}, {8, 8}}) {
        Domain dom = Domain::from_box({{0, 0}, w, h});
        GreensMatrix g = greens_matrix(dom);
        Eigen::MatrixXd cov = spectral_covariance(w, h);
        double worst = (cov - g.dense()).cwiseAbs().maxCoeff();
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("boundary Green sums respect the walk bound") {
    Point z{0, 0};
    double corner_sum = boundary_greens_sum(z, 4, 16, {-2, -2});
    CHECK(corner_sum > 0.0);
    CHECK(corner_sum <= 2.0 * (16.0 - 4.0));

    double side_sum = boundary_greens_sum(z, 4, 16, {0, -2});
    CHECK(side_sum <= 2.0 * 12.0);

    CHECK(boundary_greens_sum(z, 4, 16, {-2, -2}) <=
          boundary_greens_sum(z, 4, 32, {-2, -2}) + 1e-12);

    // cross-check against the dense Green matrix
    Domain dom = Domain::from_box(box_vl(z, 16.0));
    GreensMatrix g = greens_matrix(dom);
    LatticeBox inner = box_vl(z, 4.0);
    double direct = 0.0;
    for (std::int64_t y = inner.corner.y; y <= inner.max_corner().y; ++y)
        for (std::int64_t x = inner.corner.x; x <= inner.max_corner().x; ++x)
            if (x == inner.corner.x || x == inner.max_corner().x || y == inner.corner.y ||
                y == inner.max_corner().y)
                direct += g.at({-2, -2}, {x, y});
    CHECK(corner_sum == doctest::Approx(direct).epsilon(1e-9));

    CHECK_THROWS_AS(boundary_greens_sum(z, 4, 5, {-2, -2}), config_error);
    CHECK_THROWS_AS(boundary_greens_sum(z, 4, 16, {0, 0}), config_error);
}

TEST_CASE("log-correlation deviation is finite and attained inside the core") {
    auto rep = log_correlation_report(32);
    CHECK(rep.c_hat > 0.0);
    CHECK(rep.c_hat < 5.0);
    CHECK(rep.pairs > 0);
    Domain dom = Domain::from_box(box_vn(32));
    GreensMatrix g = greens_matrix(dom);
    double diag_dev = std::abs(g.at({0, 0}, {0, 0}) - (2.0 / 3.14159265358979) *
                                                          std::log(double(box_vn(32).width)));
    CHECK(rep.c_hat >= diag_dev - 1e-9);
}
