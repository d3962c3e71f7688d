#include "gff2d/field.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gff2d/error.hpp"
#include "gff2d/greens.hpp"
#include "gff2d/rng.hpp"

namespace gff2d {

std::vector<Point> boundary_ring(const LatticeBox& box) {
    std::vector<Point> ring;
    for (std::int64_t y = box.corner.y; y <= box.max_corner().y; ++y)
        for (std::int64_t x = box.corner.x; x <= box.max_corner().x; ++x)
            if (y == box.corner.y || y == box.max_corner().y || x == box.corner.x ||
                x == box.max_corner().x)
                ring.push_back({x, y});
    return ring;
}

struct DenseSampler::Impl {
    Domain dom;
    Eigen::MatrixXd chol;  // lower factor of the Green's matrix
};

DenseSampler::DenseSampler(const LatticeBox& box) : box_(box), impl_(new Impl) {
    impl_->dom = Domain::from_box(box);
    if (impl_->dom.interior_size() == 0) throw config_error("sample_dense: box has no interior");
    if (impl_->dom.interior_size() > 5000)
        throw config_error("sample_dense: interior above 5000 vertices; use sample_spectral");
    GreensMatrix green = greens_matrix(impl_->dom);
    Eigen::LLT<Eigen::MatrixXd> llt(green.dense());
    if (llt.info() != Eigen::Success)
        throw invariant_error("sample_dense: Green's matrix is not positive definite "
                              "(disconnected interior?)");
    impl_->chol = llt.matrixL();
}

DenseSampler::~DenseSampler() = default;
DenseSampler::DenseSampler(DenseSampler&&) noexcept = default;
DenseSampler& DenseSampler::operator=(DenseSampler&&) noexcept = default;

FieldSample DenseSampler::draw(std::uint64_t seed) const {
    const auto n = std::int64_t(impl_->dom.interior_size());
    Rng rng(seed);
    Eigen::VectorXd z(n);
    for (std::int64_t i = 0; i < n; ++i) z(i) = rng.next_gaussian();
    Eigen::VectorXd eta = impl_->chol * z;

    FieldSample out;
    out.box = box_;
    out.seed = seed;
    out.sampler = SamplerKind::dense;
    out.values.assign(std::size_t(box_.vertex_count()), 0.0);
    for (std::int64_t i = 0; i < n; ++i)
        out.values[std::size_t(box_.index_of(impl_->dom.interior()[std::size_t(i)]))] = eta(i);
    return out;
}

FieldSample sample_dense(const LatticeBox& box, std::uint64_t seed) {
    return DenseSampler(box).draw(seed);
}

FieldSample sample_spectral(const LatticeBox& box, std::uint64_t seed) {
    if (box.width < 3 || box.height < 3)
        throw config_error("sample_spectral: box has no interior");
    FastPoisson poisson(box.width, box.height);
    std::vector<double> g(std::size_t(poisson.nx() * poisson.ny()));
    Rng rng(seed);
    for (auto& v : g) v = rng.next_gaussian();
    poisson.colored_noise(g);

    FieldSample out;
    out.box = box;
    out.seed = seed;
    out.sampler = SamplerKind::spectral;
    out.values.assign(std::size_t(box.vertex_count()), 0.0);
    for (std::int64_t iy = 0; iy < poisson.ny(); ++iy)
        for (std::int64_t ix = 0; ix < poisson.nx(); ++ix) {
            Point p{box.corner.x + 1 + ix, box.corner.y + 1 + iy};
            out.values[std::size_t(box.index_of(p))] = g[std::size_t(iy * poisson.nx() + ix)];
        }
    return out;
}

double HarmonicField::at(Point p) const {
    auto i = region.vertex_index(p);
    if (i < 0) throw config_error("HarmonicField::at: point outside the region");
    return values[std::size_t(i)];
}

HarmonicField harmonic_extension(const FieldSample& sample, const LatticeBox& b) {
    if (!sample.box.contains_box(b))
        throw config_error("harmonic_extension: subdomain escapes the sampled box");
    Domain region = Domain::from_box(b);
    if (region.interior_size() == 0)
        throw config_error("harmonic_extension: subdomain has no interior");

    LatticeDirichlet dirichlet(region.interior());
    auto interior_values = dirichlet.harmonic([&](Point p) { return sample.value(p); });

    HarmonicField h;
    h.values.assign(region.size(), 0.0);
    for (std::size_t i = 0; i < region.size(); ++i) {
        Point p = region.vertices()[i];
        auto k = dirichlet.index_of(p);
        h.values[i] = k >= 0 ? interior_values[std::size_t(k)] : sample.value(p);
    }
    h.region = std::move(region);
    return h;
}

MarkovDecomposition markov_decompose(const FieldSample& sample, const LatticeBox& b) {
    MarkovDecomposition out{.inner = FieldSample{}, .harmonic = harmonic_extension(sample, b)};
    out.inner.box = b;
    out.inner.seed = sample.seed;
    out.inner.sampler = sample.sampler;
    out.inner.values.assign(std::size_t(b.vertex_count()), 0.0);
    for (const Point& p : out.harmonic.region.interior())
        out.inner.values[std::size_t(b.index_of(p))] = sample.value(p) - out.harmonic.at(p);
    return out;
}

double boundary_average(const FieldSample& sample, Point v0, double w, double alpha) {
    LatticeBox ring_box = box_vl(v0, 2.0 * w);
    if (!sample.box.contains_box(ring_box))
        throw config_error("boundary_average: V_{2w}(v0) escapes the sampled box");
    auto ring = boundary_ring(ring_box);
    double sum = 0.0;
    for (Point p : ring) sum += sample.value(p) + alpha;
    return sum / double(ring.size());
}

FluctuationTail fluctuation_tail_experiment(const LatticeBox& d, const LatticeBox& b,
                                            const LatticeBox& u, double eps,
                                            std::size_t trials, std::uint64_t seed, double c2) {
    if (trials == 0) throw config_error("fluctuation_tail_experiment: need trials >= 1");
    if (!d.contains_box(b) || !b.contains_box(u))
        throw config_error("fluctuation_tail_experiment: need U inside B inside D");
    const double big_l = double(b.width);
    const double ell = double(u.width);
    // U must sit in the chi-core of B
    const double chi = 0.1;
    std::int64_t m = std::int64_t(std::floor(chi * big_l)) + 1;
    LatticeBox core{{b.corner.x + m, b.corner.y + m}, b.width - 2 * m, b.height - 2 * m};
    if (!core.contains_box(u))
        throw config_error("fluctuation_tail_experiment: U escapes the chi-core of B");

    Point z_u = u.corner;  // lower-left lattice corner
    Domain region = Domain::from_box(b);
    LatticeDirichlet dirichlet(region.interior());

    std::size_t exceed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        FieldSample sample = sample_spectral(d, Rng::derive(seed, 0, t).next_u64());
        auto h = dirichlet.harmonic([&](Point p) { return sample.value(p); });
        auto h_at = [&](Point p) {
            auto k = dirichlet.index_of(p);
            return k >= 0 ? h[std::size_t(k)] : sample.value(p);
        };
        double hz = h_at(z_u);
        bool hit = false;
        for (std::int64_t y = u.corner.y; y <= u.max_corner().y && !hit; ++y)
            for (std::int64_t x = u.corner.x; x <= u.max_corner().x && !hit; ++x)
                hit = std::abs(h_at({x, y}) - hz) >= eps;
        if (hit) ++exceed;
    }

    FluctuationTail out;
    out.trials = trials;
    out.exceedances = exceed;
    out.p_hat = double(exceed) / double(trials);
    out.ci = wilson_ci(exceed, trials);
    out.bound = 4.0 * std::exp(-eps * eps * big_l / (8.0 * c2 * ell));
    return out;
}

}  // namespace gff2d
