#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gff2d/domain.hpp"

namespace gff2d {

// Green's function of the simple random walk killed on the boundary:
// G(u,v) = expected visits to v before reaching the boundary, starting at u.
// Equals 4 * (-Laplacian)^{-1} on interior vertices and vanishes whenever
// either argument is a boundary vertex.
class GreensMatrix {
  public:
    GreensMatrix(Domain dom, Eigen::MatrixXd g) : dom_(std::move(dom)), g_(std::move(g)) {}

    double at(Point u, Point v) const {
        auto i = dom_.interior_index(u);
        auto j = dom_.interior_index(v);
        if (i < 0 || j < 0) return 0.0;
        return g_(i, j);
    }
    const Eigen::MatrixXd& dense() const { return g_; }
    const Domain& domain() const { return dom_; }

  private:
    Domain dom_;
    Eigen::MatrixXd g_;
};

// Dense symmetric solve; interiors beyond ~20k vertices are rejected.
GreensMatrix greens_matrix(const Domain& dom);

// Sparse Dirichlet solver on an arbitrary finite unknown set.  The unknowns
// need not be the interior of a Domain; any vertex not in the set acts as
// boundary data.
class LatticeDirichlet {
  public:
    explicit LatticeDirichlet(std::vector<Point> unknowns);

    const std::vector<Point>& unknowns() const { return unknowns_; }
    std::int64_t index_of(Point p) const;

    // Solve the discrete Dirichlet problem: harmonic on the unknown set with
    // the given values outside it.
    std::vector<double> harmonic(const std::function<double(Point)>& data) const;

    // x(u) = sum_{v in S} G(u, v) for every unknown u, exact via one solve.
    std::vector<double> green_row_sum(const std::vector<Point>& s) const;

    // One column of the Green's function: G(u, .) over the unknown set.
    std::vector<double> green_column(Point u) const;

  private:
    std::vector<Point> unknowns_;
    LatticeBox bbox_;
    std::vector<std::int32_t> cell_;
    Eigen::SparseMatrix<double> lap_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

// FFT Poisson solver on the interior of a width x height box of vertices
// (Dirichlet sine basis).  Not thread-safe; use one instance per thread.
class FastPoisson {
  public:
    FastPoisson(std::int64_t width, std::int64_t height);
    ~FastPoisson();
    FastPoisson(const FastPoisson&) = delete;
    FastPoisson& operator=(const FastPoisson&) = delete;

    std::int64_t nx() const { return nx_; }
    std::int64_t ny() const { return ny_; }

    // In place: rhs over the interior (row-major) -> solution of L x = rhs.
    void solve(std::vector<double>& rhs);
    // Applies the inverse square root branch: given iid standard normals,
    // produces a field with covariance 4 L^{-1}.
    void colored_noise(std::vector<double>& gaussians);
    // G(u, .) over the interior; (ux, uy) are interior offsets.
    std::vector<double> green_column(std::int64_t ux, std::int64_t uy);

    double eigenvalue(std::int64_t kx, std::int64_t ky) const;  // of L, 1-based modes

  private:
    void transform();

    std::int64_t nx_ = 0;
    std::int64_t ny_ = 0;
    std::vector<double> buf_;
    void* plan_ = nullptr;  // fftw_plan
};

// Closed-form covariance of the sine-basis sampler over the interior of the
// box, as a dense matrix in interior row-major indexing.
Eigen::MatrixXd spectral_covariance(std::int64_t width, std::int64_t height);

// Sum of G_{V_{l2}(z)}(u, v) over v on the boundary ring of V_{l1}(z).
// The walk estimate bounds this by 2 (l2 - l1).
double boundary_greens_sum(Point z, double l1, double l2, Point u);

struct LogCorrelationReport {
    std::int64_t n = 0;
    double c_hat = 0.0;  // sup deviation from (2/pi) log(L / (|u-v|_inf v 1))
    Point arg_u, arg_v;
    std::uint64_t pairs = 0;
};

// Exact sup over u,v in the chi-core of V_N of the deviation between the
// Green's function and the log-correlation profile.
LogCorrelationReport log_correlation_report(std::int64_t n);

}  // namespace gff2d
