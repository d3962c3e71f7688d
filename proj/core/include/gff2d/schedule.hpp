#pragma once

#include <cstdint>
#include <vector>

#include "gff2d/pow2.hpp"

namespace gff2d {

// beta is pinned at 2^-9 by the decay-rate recursion.
inline constexpr double kBeta = 0.001953125;
inline constexpr int kLog2Beta = -9;

// Universal constants.  Only their forms are pinned: C3 = 2 C4 sqrt(C2) and
// C5 = (2 v C4)^32 are derived, the rest are calibration choices.
struct ScheduleConfig {
    double c1 = 1.0;
    double c2 = 1.0;
    double c4 = 2.0;
    double c_prime = 1.0;
    double lambda0 = 1.0;
    double c_override = 0.0;  // 0 = derive the smallest admissible at lambda0
    double b_override = 0.0;

    double c3() const;
    long double log2_c5() const;
    double eps0() const;  // 100 sqrt(C2)

    // exponent of K_0(lambda) = e^{c lambda^2}
    double exponent_c() const;
};

// eps_0 .. eps_R: 100 sqrt(C2), 8 sqrt(C2), then 4 sqrt(C2) beta^{r/2}.
std::vector<double> epsilon_schedule(const ScheduleConfig& cfg, int r_max);
double epsilon_sum_to(const ScheduleConfig& cfg, int r);  // sum of eps_1..eps_r
double epsilon_sum_inf(const ScheduleConfig& cfg);

// c_r = (beta K)^r, exact as a power of two.
Pow2Real c_r_value(int log2_k, int r);

struct DeltaSchedule {
    std::vector<long double> delta;      // delta_0 .. delta_R
    std::vector<long double> increment;  // Delta_1 .. Delta_R (index r-1)
};
DeltaSchedule delta_schedule(int log2_k, int r_max);

// K_0(lambda) = e^{c lambda^2}; with the derived minimal c this equals
// 400 e^{2c'(lambda0+eps0)^2} v C5 at lambda0 and dominates the constraint
// beyond it.
Pow2Real k0_of(const ScheduleConfig& cfg, double lambda);

struct KThresholds {
    std::vector<Pow2Real> k_r;  // K_0(lambda) .. K_R(lambda), recursive route
    Pow2Real k_inf;
};
KThresholds k_thresholds(const ScheduleConfig& cfg, double lambda, int r_max);

struct SummabilityResult {
    bool pass = false;
    long double total = 0.0;       // Delta_1 + sum_{r >= 1} Delta_{r+1}
    long double tail_bound = 0.0;  // rigorous bound on the terms beyond the horizon
    int horizon = 0;
};
SummabilityResult summability_check(int log2_k, double delta);

// Smallest K = 2^k passing summability at the given delta, by doubling K.
int minimal_summable_log2k(double delta);

struct EpsilonOfLambda {
    std::int64_t log2_k = 0;  // k(lambda)
    Pow2Real k_value;         // K(lambda) = 2^{k(lambda)}
    Pow2Real epsilon;         // 1 / (16 K^2 k)
    int minimal_summable = 0; // provenance: smallest power of two passing delta = 1/16
    long double log2_k_inf = 0.0L;
};
EpsilonOfLambda epsilon_of_lambda(const ScheduleConfig& cfg, double lambda);

// P(|Z| <= lambda) for Z centered Gaussian with variance 4.
double rho_of_lambda(double lambda);

// N^2 (4 rho)^{kappa N}; requires rho < 1/4.
double trivial_decay_bound(double lambda, double kappa, std::int64_t n);

}  // namespace gff2d
