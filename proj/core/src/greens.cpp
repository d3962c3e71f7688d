#include "gff2d/greens.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "gff2d/error.hpp"

namespace gff2d {

namespace {
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}
constexpr double kPi = 3.14159265358979323846;
}  // namespace

GreensMatrix greens_matrix(const Domain& dom) {
    const auto n = std::int64_t(dom.interior_size());
    if (n < 1) throw config_error("greens_matrix: domain has no interior vertex");
    if (n > 20000) throw config_error("greens_matrix: interior too large for a dense solve");

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    const auto& interior = dom.interior();
    for (std::int64_t i = 0; i < n; ++i) {
        Point p = interior[std::size_t(i)];
        lap(i, i) = 4.0;
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        for (Point q : nbrs) {
            auto j = dom.interior_index(q);
            if (j >= 0) lap(i, j) = -1.0;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(lap);
    if (llt.info() != Eigen::Success)
        throw invariant_error("greens_matrix: Laplacian factorization failed");
    Eigen::MatrixXd g = 4.0 * llt.solve(Eigen::MatrixXd::Identity(n, n));
    return {dom, std::move(g)};
}

// ---------------------------------------------------------------------------
// LatticeDirichlet

LatticeDirichlet::LatticeDirichlet(std::vector<Point> unknowns) {
    if (unknowns.empty()) throw config_error("LatticeDirichlet: empty unknown set");
    std::sort(unknowns.begin(), unknowns.end(), row_major_less);
    unknowns.erase(std::unique(unknowns.begin(), unknowns.end()), unknowns.end());
    unknowns_ = std::move(unknowns);

    std::int64_t x0 = unknowns_[0].x, x1 = x0, y0 = unknowns_[0].y, y1 = y0;
    for (const auto& p : unknowns_) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    bbox_ = {{x0, y0}, x1 - x0 + 1, y1 - y0 + 1};
    cell_.assign(std::size_t(bbox_.vertex_count()), -1);
    for (std::size_t i = 0; i < unknowns_.size(); ++i)
        cell_[std::size_t(bbox_.index_of(unknowns_[i]))] = std::int32_t(i);

    const auto n = std::int64_t(unknowns_.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(5 * n));
    for (std::int64_t i = 0; i < n; ++i) {
        Point p = unknowns_[std::size_t(i)];
        trip.emplace_back(i, i, 4.0);
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        for (Point q : nbrs) {
            auto j = index_of(q);
            if (j >= 0) trip.emplace_back(i, j, -1.0);
        }
    }
    lap_.resize(n, n);
    lap_.setFromTriplets(trip.begin(), trip.end());
    solver_.compute(lap_);
    if (solver_.info() != Eigen::Success)
        throw invariant_error("LatticeDirichlet: factorization failed");
}

std::int64_t LatticeDirichlet::index_of(Point p) const {
    if (!bbox_.contains(p)) return -1;
    return cell_[std::size_t(bbox_.index_of(p))];
}

std::vector<double> LatticeDirichlet::harmonic(const std::function<double(Point)>& data) const {
    const auto n = std::int64_t(unknowns_.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (std::int64_t i = 0; i < n; ++i) {
        Point p = unknowns_[std::size_t(i)];
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        for (Point q : nbrs)
            if (index_of(q) < 0) rhs(i) += data(q);
    }
    Eigen::VectorXd x = solver_.solve(rhs);
    return {x.data(), x.data() + n};
}

std::vector<double> LatticeDirichlet::green_row_sum(const std::vector<Point>& s) const {
    const auto n = std::int64_t(unknowns_.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (Point v : s) {
        auto j = index_of(v);
        if (j >= 0) rhs(j) += 4.0;
    }
    Eigen::VectorXd x = solver_.solve(rhs);
    return {x.data(), x.data() + n};
}

std::vector<double> LatticeDirichlet::green_column(Point u) const {
    auto j = index_of(u);
    if (j < 0) throw config_error("green_column: point is not an unknown");
    const auto n = std::int64_t(unknowns_.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(j) = 4.0;
    Eigen::VectorXd x = solver_.solve(rhs);
    return {x.data(), x.data() + n};
}

// ---------------------------------------------------------------------------
// FastPoisson

FastPoisson::FastPoisson(std::int64_t width, std::int64_t height)
    : nx_(width - 2), ny_(height - 2) {
    if (nx_ < 1 || ny_ < 1) throw config_error("FastPoisson: box has no interior");
    buf_.assign(std::size_t(nx_ * ny_), 0.0);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan_ = fftw_plan_r2r_2d(int(ny_), int(nx_), buf_.data(), buf_.data(), FFTW_RODFT00,
                             FFTW_RODFT00, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw invariant_error("FastPoisson: fftw plan creation failed");
}

FastPoisson::~FastPoisson() {
    if (plan_ != nullptr) {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

void FastPoisson::transform() { fftw_execute(static_cast<fftw_plan>(plan_)); }

double FastPoisson::eigenvalue(std::int64_t kx, std::int64_t ky) const {
    return 4.0 - 2.0 * std::cos(kPi * double(kx) / double(nx_ + 1)) -
           2.0 * std::cos(kPi * double(ky) / double(ny_ + 1));
}

void FastPoisson::solve(std::vector<double>& rhs) {
    if (rhs.size() != buf_.size()) throw config_error("FastPoisson::solve: size mismatch");
    buf_ = rhs;
    transform();
    for (std::int64_t ky = 1; ky <= ny_; ++ky)
        for (std::int64_t kx = 1; kx <= nx_; ++kx)
            buf_[std::size_t((ky - 1) * nx_ + (kx - 1))] /= eigenvalue(kx, ky);
    transform();
    double norm = 1.0 / (4.0 * double(nx_ + 1) * double(ny_ + 1));
    for (std::size_t i = 0; i < buf_.size(); ++i) rhs[i] = buf_[i] * norm;
}

void FastPoisson::colored_noise(std::vector<double>& gaussians) {
    if (gaussians.size() != buf_.size())
        throw config_error("FastPoisson::colored_noise: size mismatch");
    double norm = 0.5 / std::sqrt(double(nx_ + 1) * double(ny_ + 1));
    for (std::int64_t ky = 1; ky <= ny_; ++ky)
        for (std::int64_t kx = 1; kx <= nx_; ++kx) {
            auto i = std::size_t((ky - 1) * nx_ + (kx - 1));
            buf_[i] = gaussians[i] * norm * std::sqrt(4.0 / eigenvalue(kx, ky));
        }
    transform();
    gaussians = buf_;
}

std::vector<double> FastPoisson::green_column(std::int64_t ux, std::int64_t uy) {
    if (ux < 0 || ux >= nx_ || uy < 0 || uy >= ny_)
        throw config_error("FastPoisson::green_column: offset outside interior");
    std::vector<double> rhs(buf_.size(), 0.0);
    rhs[std::size_t(uy * nx_ + ux)] = 4.0;
    solve(rhs);
    return rhs;
}

Eigen::MatrixXd spectral_covariance(std::int64_t width, std::int64_t height) {
    std::int64_t nx = width - 2, ny = height - 2;
    if (nx < 1 || ny < 1) throw config_error("spectral_covariance: box has no interior");
    std::int64_t n = nx * ny;
    if (n > 4096) throw config_error("spectral_covariance: interior too large for direct sum");

    // Normalized eigenvectors evaluated on the interior grid.
    auto phi = [&](std::int64_t kx, std::int64_t ky, std::int64_t x, std::int64_t y) {
        return 2.0 / std::sqrt(double((nx + 1) * (ny + 1))) *
               std::sin(kPi * double(kx * (x + 1)) / double(nx + 1)) *
               std::sin(kPi * double(ky * (y + 1)) / double(ny + 1));
    };
    auto mu = [&](std::int64_t kx, std::int64_t ky) {
        return 4.0 - 2.0 * std::cos(kPi * double(kx) / double(nx + 1)) -
               2.0 * std::cos(kPi * double(ky) / double(ny + 1));
    };
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t ky = 1; ky <= ny; ++ky)
        for (std::int64_t kx = 1; kx <= nx; ++kx) {
            Eigen::VectorXd mode(n);
            for (std::int64_t y = 0; y < ny; ++y)
                for (std::int64_t x = 0; x < nx; ++x)
                    mode(y * nx + x) = phi(kx, ky, x, y);
            cov += (4.0 / mu(kx, ky)) * mode * mode.transpose();
        }
    return cov;
}

// ---------------------------------------------------------------------------

double boundary_greens_sum(Point z, double l1, double l2, Point u) {
    if (!(l2 >= l1 + 2.0)) throw config_error("boundary_greens_sum: need l2 >= l1 + 2");
    LatticeBox inner = box_vl(z, l1);
    LatticeBox outer = box_vl(z, l2);

    std::vector<Point> ring;
    for (std::int64_t y = inner.corner.y; y <= inner.max_corner().y; ++y)
        for (std::int64_t x = inner.corner.x; x <= inner.max_corner().x; ++x)
            if (y == inner.corner.y || y == inner.max_corner().y || x == inner.corner.x ||
                x == inner.max_corner().x)
                ring.push_back({x, y});
    bool u_on_ring = false;
    for (Point p : ring) u_on_ring = u_on_ring || (p == u);
    if (!u_on_ring) throw config_error("boundary_greens_sum: u must lie on the inner ring");

    FastPoisson poisson(outer.width, outer.height);
    std::vector<double> rhs(std::size_t(poisson.nx() * poisson.ny()), 0.0);
    auto offset = [&](Point p) {
        std::int64_t ix = p.x - outer.corner.x - 1;
        std::int64_t iy = p.y - outer.corner.y - 1;
        return std::size_t(iy * poisson.nx() + ix);
    };
    for (Point p : ring) rhs[offset(p)] += 4.0;
    poisson.solve(rhs);
    return rhs[offset(u)];
}

LogCorrelationReport log_correlation_report(std::int64_t n) {
    if (n < 4) throw config_error("log_correlation_report: N too small");
    if (n > 512) throw config_error("log_correlation_report: N above the exact-mode limit");
    LatticeBox box = box_vn(n);
    const double side = double(box.width);
    const double margin = 0.1 * side;

    // chi-core offsets relative to the interior grid
    std::vector<Point> core;
    for (std::int64_t y = box.corner.y; y <= box.max_corner().y; ++y)
        for (std::int64_t x = box.corner.x; x <= box.max_corner().x; ++x) {
            double d = double(std::min(std::min(x - box.corner.x, box.max_corner().x - x),
                                       std::min(y - box.corner.y, box.max_corner().y - y)));
            if (d > margin) core.push_back({x, y});
        }
    if (core.empty()) throw config_error("log_correlation_report: empty chi-core");

    FastPoisson poisson(box.width, box.height);
    LogCorrelationReport rep;
    rep.n = n;
    const double two_over_pi = 2.0 / kPi;
    for (Point u : core) {
        // the box is symmetric about the origin; one octant of u suffices
        if (!(u.x >= 0 && u.y >= 0 && u.y <= u.x)) continue;
        auto col = poisson.green_column(u.x - box.corner.x - 1, u.y - box.corner.y - 1);
        for (Point v : core) {
            double g = col[std::size_t((v.y - box.corner.y - 1) * poisson.nx() +
                                       (v.x - box.corner.x - 1))];
            double profile = two_over_pi * std::log(side / double(std::max<std::int64_t>(
                                                               linf(u, v), 1)));
            double dev = std::abs(g - profile);
            ++rep.pairs;
            if (dev > rep.c_hat) {
                rep.c_hat = dev;
                rep.arg_u = u;
                rep.arg_v = v;
            }
        }
    }
    return rep;
}

}  // namespace gff2d
