#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gff2d/domain.hpp"
#include "gff2d/geometry.hpp"
#include "gff2d/stats.hpp"

namespace gff2d {

enum class SamplerKind { dense, spectral };

// A sampled field on a box of vertices, zero on the boundary ring and (by
// convention) everywhere outside.
struct FieldSample {
    LatticeBox box;
    std::vector<double> values;  // row-major over the box
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::spectral;

    double value(Point p) const {
        if (!box.contains(p)) return 0.0;
        return values[std::size_t(box.index_of(p))];
    }
};

// Exact sampler backed by a symmetric factorization of the Green's matrix.
// Interiors above 5000 vertices are rejected; use the spectral sampler.
FieldSample sample_dense(const LatticeBox& box, std::uint64_t seed);

// Same law as sample_dense, with the factorization done once up front.
class DenseSampler {
  public:
    explicit DenseSampler(const LatticeBox& box);
    ~DenseSampler();
    DenseSampler(DenseSampler&&) noexcept;
    DenseSampler& operator=(DenseSampler&&) noexcept;

    FieldSample draw(std::uint64_t seed) const;
    const LatticeBox& box() const { return box_; }

  private:
    LatticeBox box_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exact sampler in the Dirichlet sine eigenbasis, per-mode standard
// deviation sqrt(4/mu).  Same law as sample_dense on rectangles.
FieldSample sample_spectral(const LatticeBox& box, std::uint64_t seed);

// Harmonic extension of field data into a subregion.
struct HarmonicField {
    Domain region;               // the subdomain B
    std::vector<double> values;  // per region vertex; boundary carries the data

    double at(Point p) const;
};

// H solves the discrete Dirichlet problem on the interior of B with data
// taken from the sample on the rest of B; equals the conditional mean of the
// field given everything outside B's interior.
HarmonicField harmonic_extension(const FieldSample& sample, const LatticeBox& b);

struct MarkovDecomposition {
    FieldSample inner;      // a field on B, zero on its boundary
    HarmonicField harmonic; // the conditional-mean part
};

// Splits a sample on D into an independent inner field on B plus the
// harmonic part: inner + harmonic reproduces the sample exactly on B.
MarkovDecomposition markov_decompose(const FieldSample& sample, const LatticeBox& b);

// Mean of (field + alpha) over the boundary ring of V_{2w}(v0).
double boundary_average(const FieldSample& sample, Point v0, double w, double alpha);

std::vector<Point> boundary_ring(const LatticeBox& box);

struct FluctuationTail {
    double p_hat = 0.0;
    Interval ci;
    double bound = 0.0;  // 4 exp(-eps^2 L / (8 C2 ell)) at the configured C2
    std::size_t trials = 0;
    std::size_t exceedances = 0;
};

// Monte Carlo estimate of P(sup_{x in U} |H^B(x) - H^B(z_U)| >= eps) for a
// field sampled on D, with the tail bound it is compared against.
FluctuationTail fluctuation_tail_experiment(const LatticeBox& d, const LatticeBox& b,
                                            const LatticeBox& u, double eps,
                                            std::size_t trials, std::uint64_t seed,
                                            double c2 = 1.0);

}  // namespace gff2d
