#include "gff2d/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gff2d/error.hpp"
#include "gff2d/field.hpp"
#include "gff2d/greens.hpp"
#include "gff2d/levelset.hpp"
#include "gff2d/rng.hpp"

#ifndef GFF2D_VERSION
#define GFF2D_VERSION "0.0.0"
#endif

namespace gff2d {

namespace {

using nlohmann::json;

// Runs fn(0..count) across workers; callers write into per-index slots so the
// merged result does not depend on scheduling.
template <typename F>
void parallel_for(std::size_t count, std::size_t workers, F&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t spawn = std::min(workers, count);
    pool.reserve(spawn);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < spawn; ++w)
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Point> column_points(const LatticeBox& box, std::int64_t x) {
    std::vector<Point> pts;
    for (std::int64_t y = box.corner.y; y <= box.max_corner().y; ++y) pts.push_back({x, y});
    return pts;
}

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    auto t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

}  // namespace

ExperimentKind parse_kind(const std::string& name) {
    if (name == "crossing") return ExperimentKind::crossing;
    if (name == "chemdist") return ExperimentKind::chemdist;
    if (name == "parallelogram") return ExperimentKind::parallelogram;
    if (name == "fluctuation") return ExperimentKind::fluctuation;
    if (name == "contour") return ExperimentKind::contour;
    throw config_error("unknown experiment kind: " + name);
}

std::string kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::crossing: return "crossing";
        case ExperimentKind::chemdist: return "chemdist";
        case ExperimentKind::parallelogram: return "parallelogram";
        case ExperimentKind::fluctuation: return "fluctuation";
        case ExperimentKind::contour: return "contour";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw config_error("config: trials must be >= 1");
    for (auto n : n_values) {
        if (n < 2) throw config_error("config: N must be >= 2");
        if (n % 2 != 0) throw config_error("config: all N must be even");
    }
    for (double l : lambda_values)
        if (!(l >= 0.0)) throw config_error("config: lambda must be >= 0");
    if (!(kappa > 0.0 && kappa < 1.0)) throw config_error("config: kappa must lie in (0,1)");
    if (k_base < 2 || (k_base & (k_base - 1)) != 0)
        throw config_error("config: K must be a power of two >= 2");
    if (workers < 1) throw config_error("config: workers must be >= 1");
    if (!(rejection_cap >= 1.0)) throw config_error("config: rejection_cap must be >= 1");
    if (!(width >= 10.0)) throw config_error("config: width must be >= 10");
    switch (kind) {
        case ExperimentKind::crossing:
        case ExperimentKind::chemdist:
        case ExperimentKind::fluctuation:
            if (n_values.empty()) throw config_error("config: N list required");
            if (lambda_values.empty()) throw config_error("config: lambda list required");
            break;
        case ExperimentKind::parallelogram:
        case ExperimentKind::contour:
            if (lambda_values.empty()) throw config_error("config: lambda list required");
            break;
    }
    if (kind == ExperimentKind::chemdist && n_values.size() < 3)
        throw config_error("config: chemdist needs at least three sizes N");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") cfg.kind = parse_kind(value.get<std::string>());
        else if (key == "n") cfg.n_values = value.get<std::vector<std::int64_t>>();
        else if (key == "lambda") cfg.lambda_values = value.get<std::vector<double>>();
        else if (key == "kappa") cfg.kappa = value.get<double>();
        else if (key == "k") cfg.k_base = value.get<std::int64_t>();
        else if (key == "trials") cfg.trials = value.get<std::size_t>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "out") cfg.out_dir = value.get<std::string>();
        else if (key == "workers") cfg.workers = value.get<std::size_t>();
        else if (key == "alpha") cfg.alpha = value.get<double>();
        else if (key == "width") cfg.width = value.get<double>();
        else if (key == "ell") cfg.ell = value.get<double>();
        else if (key == "ratios") cfg.ratios = value.get<std::vector<double>>();
        else if (key == "rejection_cap") cfg.rejection_cap = value.get<double>();
        else if (key == "record_timing") cfg.record_timing = value.get<bool>();
        else throw config_error("config: unknown key \"" + key + "\"");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json() const {
    json j{{"kind", kind_name(kind)},
           {"n", n_values},
           {"lambda", lambda_values},
           {"kappa", kappa},
           {"k", k_base},
           {"trials", trials},
           {"seed", seed},
           {"out", out_dir},
           {"workers", workers},
           {"alpha", alpha},
           {"width", width},
           {"ell", ell},
           {"ratios", ratios},
           {"rejection_cap", rejection_cap},
           {"record_timing", record_timing}};
    return j.dump(2);
}

// ---------------------------------------------------------------------------

ExperimentOutput run_crossing(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    std::uint64_t cell = 0;
    for (std::int64_t n : cfg.n_values) {
        auto band_side = std::int64_t(std::llround(cfg.kappa * double(n)));
        if (band_side < 2) throw config_error("run_crossing: kappa N too small");
        LatticeBox band{{-band_side / 2, -band_side / 2}, band_side, band_side};
        LatticeBox sample_box = box_vn(2 * n);
        auto left = column_points(band, band.corner.x);
        auto right = column_points(band, band.max_corner().x);
        for (double lambda : cfg.lambda_values) {
            auto t0 = std::chrono::steady_clock::now();
            std::vector<std::uint8_t> hit(cfg.trials, 0);
            parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
                FieldSample sample =
                    sample_spectral(sample_box, Rng::derive(cfg.seed, cell, t).next_u64());
                OpenMask mask = open_mask(sample, lambda, cfg.alpha);
                hit[t] = chemical_distance(mask, left, right, band).has_value() ? 1 : 0;
            });
            std::size_t successes = 0;
            for (auto h : hit) successes += h;
            Interval ci = wilson_ci(successes, cfg.trials);
            out.records.push_back({"crossing", n, lambda, cfg.kappa, cfg.k_base, cfg.trials,
                                   double(successes) / double(cfg.trials), ci.lo, ci.hi,
                                   cfg.record_timing ? elapsed_since(t0) : 0.0});
            ++cell;
        }
    }
    return out;
}

ExperimentOutput run_chemdist(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    std::vector<std::pair<double, double>> points_two, points_one;
    std::uint64_t cell = 0;
    for (std::int64_t n : cfg.n_values) {
        LatticeBox region{{-n / 2, -n / 2}, n, n};
        LatticeBox sample_box = box_vn(2 * n);
        auto left = column_points(region, region.corner.x);
        auto right = column_points(region, region.max_corner().x);
        for (double lambda : cfg.lambda_values) {
            for (int side = 0; side < 2; ++side) {  // 0: two-sided, 1: one-sided baseline
                auto t0 = std::chrono::steady_clock::now();
                const std::size_t budget =
                    std::size_t(cfg.rejection_cap * double(cfg.trials)) + 1;
                std::vector<std::int64_t> dist(budget, -1);
                std::vector<std::uint8_t> done(budget, 0);
                const std::size_t chunk =
                    std::max<std::size_t>(cfg.workers, std::max<std::size_t>(1, cfg.trials / 4));
                std::size_t attempted = 0;
                std::size_t successes = 0;
                while (attempted < budget && successes < cfg.trials) {
                    std::size_t upto = std::min(budget, attempted + chunk);
                    parallel_for(upto - attempted, cfg.workers, [&](std::size_t i) {
                        std::size_t a = attempted + i;
                        FieldSample sample = sample_spectral(
                            sample_box, Rng::derive(cfg.seed, cell, a).next_u64());
                        OpenMask mask = side == 0 ? open_mask(sample, lambda, cfg.alpha)
                                                  : one_sided_mask(sample, -lambda);
                        auto d = chemical_distance(mask, left, right, region);
                        if (d) dist[a] = *d;
                        done[a] = 1;
                    });
                    attempted = upto;
                    successes = 0;
                    for (std::size_t a = 0; a < attempted; ++a) successes += dist[a] >= 0;
                }
                // first `trials` connected samples in attempt order
                std::vector<double> values;
                for (std::size_t a = 0; a < attempted && values.size() < cfg.trials; ++a)
                    if (dist[a] >= 0) values.push_back(double(dist[a]));

                std::string kind = side == 0 ? "chemdist-two-sided" : "chemdist-one-sided";
                if (values.empty()) {
                    out.records.push_back({kind, n, lambda, cfg.kappa, cfg.k_base, 0,
                                           std::nan(""), std::nan(""), std::nan(""),
                                           cfg.record_timing ? elapsed_since(t0) : 0.0});
                    out.notes[kind + "-N" + std::to_string(n)] = "unfit: no connected trial";
                } else {
                    double mean = 0.0;
                    for (double v : values) mean += v;
                    mean /= double(values.size());
                    double var = 0.0;
                    for (double v : values) var += (v - mean) * (v - mean);
                    var = values.size() > 1 ? var / double(values.size() - 1) : 0.0;
                    double half = 1.959963984540054 * std::sqrt(var / double(values.size()));
                    out.records.push_back({kind, n, lambda, cfg.kappa, cfg.k_base, values.size(),
                                           mean, mean - half, mean + half,
                                           cfg.record_timing ? elapsed_since(t0) : 0.0});
                    (side == 0 ? points_two : points_one).emplace_back(double(n - 1), mean);
                }
                ++cell;
            }
        }
    }
    auto add_fit = [&](const char* name, const std::vector<std::pair<double, double>>& pts) {
        if (pts.size() < 3) return;
        std::vector<double> xs;
        for (auto& p : pts) xs.push_back(p.first);
        std::sort(xs.begin(), xs.end());
        if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3) return;
        LineFit fit = fit_exponent(pts);
        out.metrics[std::string(name) + "_slope"] = fit.slope;
        out.metrics[std::string(name) + "_slope_ci_lo"] = fit.slope_ci.lo;
        out.metrics[std::string(name) + "_slope_ci_hi"] = fit.slope_ci.hi;
    };
    add_fit("two_sided", points_two);
    add_fit("one_sided", points_one);
    return out;
}

ExperimentOutput run_parallelogram(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    const double w = cfg.width;
    Parallelogram d = make_parallelogram(0.0, 0.0, 16.0 * w, 0.0, w);
    Point v0 = d.anchor();
    std::uint64_t cell = 0;
    for (double ratio : cfg.ratios) {
        double big_l = ratio * w;
        LatticeBox sample_box = box_vl(v0, big_l);
        bool feasible = sample_box.contains_box(d.bounding_lattice());
        for (double lambda : cfg.lambda_values) {
            auto t0 = std::chrono::steady_clock::now();
            if (!feasible) {
                out.records.push_back({"parallelogram", std::int64_t(std::llround(big_l)), lambda,
                                       cfg.kappa, cfg.k_base, 0, std::nan(""), std::nan(""),
                                       std::nan(""), 0.0});
                out.notes["ratio-" + std::to_string(ratio)] =
                    "infeasible: V_L(v0) does not contain the parallelogram";
                ++cell;
                continue;
            }
            std::vector<std::uint8_t> hit(cfg.trials, 0);
            parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
                FieldSample sample =
                    sample_spectral(sample_box, Rng::derive(cfg.seed, cell, t).next_u64());
                OpenMask mask = open_mask(sample, lambda, cfg.alpha);
                hit[t] = crossing_exists(mask, d) ? 1 : 0;
            });
            std::size_t successes = 0;
            for (auto h : hit) successes += h;
            Interval ci = wilson_ci(successes, cfg.trials);
            out.records.push_back({"parallelogram", std::int64_t(std::llround(big_l)), lambda,
                                   cfg.kappa, cfg.k_base, cfg.trials,
                                   double(successes) / double(cfg.trials), ci.lo, ci.hi,
                                   cfg.record_timing ? elapsed_since(t0) : 0.0});
            ++cell;
        }
    }
    out.metrics["crossing_bound"] = 7.0 / 8.0;
    return out;
}

ExperimentOutput run_fluctuation(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    std::uint64_t cell = 0;
    for (std::int64_t n : cfg.n_values) {
        LatticeBox b = box_vn(n);
        LatticeBox d = box_vn(2 * n);
        LatticeBox u = box_vl({0, 0}, cfg.ell);
        for (double eps : cfg.lambda_values) {
            auto t0 = std::chrono::steady_clock::now();
            FluctuationTail tail = fluctuation_tail_experiment(
                d, b, u, eps, cfg.trials, Rng::derive(cfg.seed, cell, 0).next_u64());
            out.records.push_back({"fluctuation", n, eps, cfg.kappa, cfg.k_base, cfg.trials,
                                   tail.p_hat, tail.ci.lo, tail.ci.hi,
                                   cfg.record_timing ? elapsed_since(t0) : 0.0});
            out.metrics["bound_N" + std::to_string(n) + "_eps" + std::to_string(eps)] =
                tail.bound;
            ++cell;
        }
    }
    return out;
}

ExperimentOutput run_contour(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    const double w = cfg.width;
    Parallelogram d = make_parallelogram(0.0, 0.0, 16.0 * w, 0.0, w);
    Annulus annulus = rotate_and_assemble(d);
    AnnulusRegion region = AnnulusRegion::from_annulus(annulus);
    LatticeBox sample_box = annulus.outer_box;
    LatticeBox inner_ring_box = box_vl(annulus.center, 2.0 * w);
    auto ring = boundary_ring(inner_ring_box);
    const double ring_sum_bound = 2.0 * (4.0 * d.l - 2.0 * w);  // walk estimate on C*

    std::atomic<std::size_t> violations{0};
    std::uint64_t cell = 0;
    for (double lambda : cfg.lambda_values) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<std::uint8_t> has_contour(cfg.trials, 0);
        std::vector<double> x_stat(cfg.trials, 0.0);
        std::vector<double> var_y(cfg.trials, 0.0);
        parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
            FieldSample sample =
                sample_spectral(sample_box, Rng::derive(cfg.seed, cell, t).next_u64());
            OpenMask mask = open_mask(sample, lambda, cfg.alpha);
            x_stat[t] = boundary_average(sample, annulus.center, w, cfg.alpha);
            auto contour = outermost_open_contour(mask, region);
            if (!contour) return;
            has_contour[t] = 1;

            LatticeDirichlet conditional(contour->enclosed);
            auto harmonic = conditional.harmonic([&](Point p) { return sample.value(p); });
            double mean_h = 0.0;
            for (Point p : ring) mean_h += harmonic[std::size_t(conditional.index_of(p))];
            mean_h = mean_h / double(ring.size()) + cfg.alpha;
            if (std::abs(mean_h) > lambda + 1e-9) ++violations;

            auto row_sums = conditional.green_row_sum(ring);
            double total = 0.0;
            for (Point p : ring) {
                double s = row_sums[std::size_t(conditional.index_of(p))];
                if (s > ring_sum_bound + 1e-9)
                    throw invariant_error("run_contour: ring Green sum exceeds the walk bound");
                total += s;
            }
            var_y[t] = total / (double(ring.size()) * double(ring.size()));
        });
        std::size_t successes = 0;
        double max_var_y = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            successes += has_contour[t];
            max_var_y = std::max(max_var_y, var_y[t]);
        }
        Interval ci = wilson_ci(successes, cfg.trials);
        out.records.push_back({"contour", std::int64_t(std::llround(4.0 * d.l)), lambda,
                               cfg.kappa, cfg.k_base, cfg.trials,
                               double(successes) / double(cfg.trials), ci.lo, ci.hi,
                               cfg.record_timing ? elapsed_since(t0) : 0.0});
        out.metrics["max_var_y_lambda" + std::to_string(lambda)] = max_var_y;
        ++cell;
    }
    out.metrics["conditional_mean_violations"] = double(violations.load());
    out.metrics["var_y_bound"] = 16.0;
    return out;
}

// ---------------------------------------------------------------------------

LineFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p.first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 3) throw config_error("fit_exponent: need at least three distinct sizes");
    std::vector<double> lx, ly;
    for (const auto& p : points) {
        if (!(p.first > 0.0 && p.second > 0.0))
            throw config_error("fit_exponent: sizes and values must be positive");
        lx.push_back(std::log(p.first));
        ly.push_back(std::log(p.second));
    }
    return fit_line(lx, ly);
}

void write_results_csv(const std::string& path, const std::vector<ResultRecord>& records) {
    std::ofstream os(path, std::ios::binary);  // '\n' line ends on every platform
    if (!os) throw config_error("write_results_csv: cannot open " + path);
    os << "kind,N,lambda,kappa,K,trials,estimate,ci_lo,ci_hi,seconds\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%lld,%.12g,%.12g,%lld,%zu,%.12g,%.12g,%.12g,%.3f\n",
                      r.kind.c_str(), (long long)r.n, r.lambda, r.kappa, (long long)r.k_base,
                      r.trials, r.estimate, r.ci_lo, r.ci_hi, r.seconds);
        os << buf;
    }
}

namespace {

void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const ExperimentOutput& out, const std::string& started,
                    const std::string& finished) {
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["seed"] = cfg.seed;
    j["version"] = GFF2D_VERSION;
    j["started"] = started;
    j["finished"] = finished;
    j["metrics"] = out.metrics;
    j["notes"] = out.notes;
    std::ofstream os(path);
    if (!os) throw config_error("write_manifest: cannot open " + path);
    os << j.dump(2) << '\n';
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    std::string started = iso_now();
    ExperimentOutput out;
    switch (cfg.kind) {
        case ExperimentKind::crossing: out = run_crossing(cfg); break;
        case ExperimentKind::chemdist: out = run_chemdist(cfg); break;
        case ExperimentKind::parallelogram: out = run_parallelogram(cfg); break;
        case ExperimentKind::fluctuation: out = run_fluctuation(cfg); break;
        case ExperimentKind::contour: out = run_contour(cfg); break;
    }
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_results_csv(cfg.out_dir + "/results.csv", out.records);
        write_manifest(cfg.out_dir + "/manifest.json", cfg, out, started, iso_now());
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace {

struct Series {
    std::string label;
    std::vector<std::array<double, 4>> pts;  // n, estimate, lo, hi
};

}  // namespace

void plot_results_csv(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream is(csv_path);
    if (!is) throw config_error("plot: cannot open " + csv_path);
    std::string line;
    if (!std::getline(is, line)) throw config_error("plot: empty csv");

    std::map<std::string, Series> series;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::vector<std::string> cols;
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() < 10) continue;
        double n = std::atof(cols[1].c_str());
        double est = std::atof(cols[6].c_str());
        double lo = std::atof(cols[7].c_str());
        double hi = std::atof(cols[8].c_str());
        if (!std::isfinite(est)) continue;
        std::string key = cols[0] + " lambda=" + cols[2];
        auto& s = series[key];
        s.label = key;
        s.pts.push_back({n, est, lo, hi});
        x0 = std::min(x0, n);
        x1 = std::max(x1, n);
        y0 = std::min(y0, std::isfinite(lo) ? lo : est);
        y1 = std::max(y1, std::isfinite(hi) ? hi : est);
    }
    if (series.empty()) throw config_error("plot: no plottable rows");
    if (x0 == x1) x1 = x0 + 1.0;
    if (y0 == y1) y1 = y0 + 1.0;

    const double width = 820.0, height = 560.0, ml = 70.0, mr = 170.0, mt = 30.0, mb = 50.0;
    auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double x = x0 + (x1 - x0) * i / 5.0;
        double y = y0 + (y1 - y0) * i / 5.0;
        svg << "<text x=\"" << sx(x) << "\" y=\"" << height - mb + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << x << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(y) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << y << "</text>\n";
    }
    int idx = 0;
    for (const auto& [key, s] : series) {
        const char* color = palette[idx % 8];
        std::ostringstream poly;
        for (const auto& p : s.pts) poly << sx(p[0]) << ',' << sy(p[1]) << ' ';
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << poly.str()
            << "\"/>\n";
        for (const auto& p : s.pts) {
            svg << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            if (std::isfinite(p[2]) && std::isfinite(p[3]))
                svg << "<line x1=\"" << sx(p[0]) << "\" y1=\"" << sy(p[2]) << "\" x2=\""
                    << sx(p[0]) << "\" y2=\"" << sy(p[3]) << "\" stroke=\"" << color
                    << "\"/>\n";
        }
        svg << "<text x=\"" << width - mr + 10 << "\" y=\"" << mt + 16 * idx + 10
            << "\" font-size=\"12\" fill=\"" << color << "\">" << s.label << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    std::ofstream os(svg_path);
    if (!os) throw config_error("plot: cannot open " + svg_path);
    os << svg.str();
}

}  // namespace gff2d
