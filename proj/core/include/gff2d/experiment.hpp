#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gff2d/stats.hpp"

namespace gff2d {

enum class ExperimentKind { crossing, chemdist, parallelogram, fluctuation, contour };

ExperimentKind parse_kind(const std::string& name);
std::string kind_name(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::crossing;
    std::vector<std::int64_t> n_values;
    std::vector<double> lambda_values;
    double kappa = 0.5;
    std::int64_t k_base = 4;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::string out_dir;

    std::size_t workers = 1;
    double alpha = 0.0;
    double width = 10.0;                          // parallelogram / annulus width
    double ell = 4.0;                             // fluctuation inner-box side
    std::vector<double> ratios = {24, 32, 48, 64};  // L/w grid for parallelogram cells
    double rejection_cap = 10.0;                  // chemdist attempt budget, x trials
    bool record_timing = false;  // keep results.csv reproducible by default

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json() const;
    void validate() const;
};

// One row of results.csv.
struct ResultRecord {
    std::string kind;
    std::int64_t n = 0;
    double lambda = 0.0;
    double kappa = 0.0;
    std::int64_t k_base = 0;
    std::size_t trials = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double seconds = 0.0;
};

struct ExperimentOutput {
    std::vector<ResultRecord> records;
    std::map<std::string, double> metrics;
    std::map<std::string, std::string> notes;
};

ExperimentOutput run_crossing(const ExperimentConfig& cfg);
ExperimentOutput run_chemdist(const ExperimentConfig& cfg);
ExperimentOutput run_parallelogram(const ExperimentConfig& cfg);
ExperimentOutput run_fluctuation(const ExperimentConfig& cfg);
ExperimentOutput run_contour(const ExperimentConfig& cfg);

// Dispatch on cfg.kind; when out_dir is set, writes results.csv and
// manifest.json there.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// OLS slope of log y against log x; at least three distinct abscissae.
LineFit fit_exponent(const std::vector<std::pair<double, double>>& points);

void write_results_csv(const std::string& path, const std::vector<ResultRecord>& records);

// Scatter/line SVG of estimate against N for each (kind, lambda) series.
void plot_results_csv(const std::string& csv_path, const std::string& svg_path);

}  // namespace gff2d
