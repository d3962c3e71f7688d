// Command line front end: field sampling, Green's function dumps, constant
// schedules, Monte Carlo experiments, and SVG rendering of result tables.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "gff2d/error.hpp"
#include "gff2d/experiment.hpp"
#include "gff2d/field.hpp"
#include "gff2d/greens.hpp"
#include "gff2d/io.hpp"
#include "gff2d/schedule.hpp"

namespace {

using namespace gff2d;

int cmd_sample(std::int64_t n, std::int64_t width, std::int64_t height, std::int64_t cx,
               std::int64_t cy, std::uint64_t seed, const std::string& sampler,
               const std::string& out, const std::string& csv) {
    LatticeBox box;
    if (n > 0) {
        box = box_vn(n);
    } else {
        if (width < 3 || height < 3) throw config_error("sample: need --n or --width/--height");
        box = {{cx, cy}, width, height};
    }
    FieldSample sample =
        sampler == "dense" ? sample_dense(box, seed) : sample_spectral(box, seed);
    if (!out.empty()) write_field(out, sample);
    if (!csv.empty()) write_field_csv(csv, sample);
    std::printf("sampled %lldx%lld box, seed %llu, sampler %s\n", (long long)box.width,
                (long long)box.height, (unsigned long long)seed, sampler.c_str());
    return 0;
}

int cmd_greens(std::int64_t n, const std::string& out, bool logcorr) {
    if (logcorr) {
        auto rep = log_correlation_report(n);
        std::printf("N=%lld  pairs=%llu  deviation sup=%.10f at u=(%lld,%lld) v=(%lld,%lld)\n",
                    (long long)rep.n, (unsigned long long)rep.pairs, rep.c_hat,
                    (long long)rep.arg_u.x, (long long)rep.arg_u.y, (long long)rep.arg_v.x,
                    (long long)rep.arg_v.y);
        return 0;
    }
    Domain dom = Domain::from_box(box_vn(n));
    GreensMatrix g = greens_matrix(dom);
    if (out.empty()) {
        std::printf("V_%lld: %zu interior vertices, G(0,0)=%.12f\n", (long long)n,
                    dom.interior_size(), g.at({0, 0}, {0, 0}));
        return 0;
    }
    std::ofstream os(out);
    if (!os) throw config_error("greens: cannot open " + out);
    os << "ux,uy,vx,vy,g\n";
    const auto& interior = dom.interior();
    char buf[128];
    for (const Point& u : interior)
        for (const Point& v : interior) {
            std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,%.17g\n", (long long)u.x,
                          (long long)u.y, (long long)v.x, (long long)v.y, g.at(u, v));
            os << buf;
        }
    std::printf("wrote %zu^2 Green entries to %s\n", dom.interior_size(), out.c_str());
    return 0;
}

int cmd_schedule(int log2_k, double lambda, int horizon, double delta, const std::string& csv,
                 const std::string& json_out) {
    ScheduleConfig cfg;
    auto eps = epsilon_schedule(cfg, horizon);
    auto deltas = delta_schedule(log2_k, horizon);
    auto ks = k_thresholds(cfg, lambda, horizon);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!csv.empty()) {
        file.open(csv);
        if (!file) throw config_error("schedule: cannot open " + csv);
        os = &file;
    }
    (*os) << "r,eps_r,delta_r,Delta_r,c_r,K_r\n";
    char buf[256];
    for (int r = 0; r <= horizon; ++r) {
        std::string cr = r >= 1 ? c_r_value(log2_k, r).str() : "";
        std::string dr = r >= 1 ? std::to_string(double(deltas.increment[std::size_t(r - 1)]))
                                : "";
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%s,%s,%s\n", r, eps[std::size_t(r)],
                      double(deltas.delta[std::size_t(r)]), dr.c_str(), cr.c_str(),
                      ks.k_r[std::size_t(r)].str().c_str());
        (*os) << buf;
    }

    auto sum = summability_check(log2_k, delta);
    auto eps_l = epsilon_of_lambda(cfg, lambda);
    nlohmann::json j{{"lambda", lambda},
                     {"K_log2", log2_k},
                     {"summability_total", double(sum.total)},
                     {"summability_pass", sum.pass},
                     {"delta", delta},
                     {"K_of_lambda", eps_l.k_value.str()},
                     {"k_of_lambda_log2", eps_l.log2_k},
                     {"epsilon_of_lambda", eps_l.epsilon.str()},
                     {"minimal_summable_K_log2", eps_l.minimal_summable},
                     {"K_inf_log2", double(eps_l.log2_k_inf)}};
    if (json_out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream jf(json_out);
        if (!jf) throw config_error("schedule: cannot open " + json_out);
        jf << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& out_dir, std::size_t workers) {
    ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
    if (!kind.empty()) cfg.kind = parse_kind(kind);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    if (cfg.out_dir.empty()) throw config_error("experiment: output directory required");
    auto out = run_experiment(cfg);
    std::printf("%zu result rows -> %s/results.csv\n", out.records.size(), cfg.out_dir.c_str());
    for (const auto& [k, v] : out.metrics) std::printf("  %s = %.6g\n", k.c_str(), v);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-sided level-set laboratory for the 2D discrete Gaussian free field"};
    app.require_subcommand(1);

    // sample
    std::int64_t n = 0, width = 0, height = 0, cx = 0, cy = 0;
    std::uint64_t seed = 1;
    std::string sampler = "spectral", out_file, csv_file;
    auto* sample = app.add_subcommand("sample", "draw a field sample and write a dump");
    sample->add_option("--n", n, "sample on V_N");
    sample->add_option("--width", width, "box width (vertices)");
    sample->add_option("--height", height, "box height (vertices)");
    sample->add_option("--corner-x", cx, "box corner x");
    sample->add_option("--corner-y", cy, "box corner y");
    sample->add_option("--seed", seed, "seed");
    sample->add_option("--sampler", sampler, "dense|spectral")
        ->check(CLI::IsMember({"dense", "spectral"}));
    sample->add_option("--out", out_file, "binary field dump path");
    sample->add_option("--csv", csv_file, "CSV export path");

    // greens
    std::int64_t gn = 8;
    std::string greens_out;
    bool logcorr = false;
    auto* greens = app.add_subcommand("greens", "exact Green's function utilities");
    greens->add_option("--n", gn, "box V_N");
    greens->add_option("--out", greens_out, "write the dense matrix as CSV");
    greens->add_flag("--logcorr", logcorr, "report the log-correlation deviation instead");

    // schedule
    int log2_k = 32, horizon = 16;
    double lambda = 1.0, delta = 1.0 / 16.0;
    std::string sched_csv, sched_json;
    auto* sched = app.add_subcommand("schedule", "constant schedules and thresholds");
    sched->add_option("--k-log2", log2_k, "log2 of K for the table");
    sched->add_option("--lambda", lambda, "lambda for K_r(lambda)");
    sched->add_option("--horizon", horizon, "table depth R");
    sched->add_option("--delta", delta, "summability target");
    sched->add_option("--csv", sched_csv, "write the table to this file");
    sched->add_option("--json", sched_json, "write the summary to this file");

    // experiment
    std::string exp_kind, exp_config, exp_out;
    std::size_t exp_workers = 0;
    auto* exp = app.add_subcommand("experiment", "run a Monte Carlo experiment");
    exp->add_option("kind", exp_kind,
                    "crossing|chemdist|parallelogram|fluctuation|contour")
        ->required();
    exp->add_option("--config", exp_config, "JSON config file")->required();
    exp->add_option("--out", exp_out, "output directory");
    exp->add_option("--workers", exp_workers, "worker threads");

    // plot
    std::string plot_csv, plot_out;
    auto* plot = app.add_subcommand("plot", "render a results CSV as SVG");
    plot->add_option("csv", plot_csv, "results.csv path")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed())
            return cmd_sample(n, width, height, cx, cy, seed, sampler, out_file, csv_file);
        if (greens->parsed()) return cmd_greens(gn, greens_out, logcorr);
        if (sched->parsed())
            return cmd_schedule(log2_k, lambda, horizon, delta, sched_csv, sched_json);
        if (exp->parsed()) return cmd_experiment(exp_kind, exp_config, exp_out, exp_workers);
        if (plot->parsed()) {
            plot_results_csv(plot_csv, plot_out);
            std::printf("wrote %s\n", plot_out.c_str());
            return 0;
        }
    } catch (const gff2d::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gff2d::invariant_error& e) {
        std::fprintf(stderr, "invariant failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
