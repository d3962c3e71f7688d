#include "gff2d/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gff2d/error.hpp"

namespace gff2d {

// ---------------------------------------------------------------------------
// Pow2Real

Pow2Real Pow2Real::from_double(double v) {
    if (v == 0.0) return zero();
    if (!(v > 0.0)) throw config_error("Pow2Real: value must be nonnegative");
    int e = 0;
    double m = std::frexp(v, &e);  // m in [0.5, 1)
    return {m * 2.0, e - 1};
}

Pow2Real Pow2Real::from_log2(long double x) {
    auto e = (std::int64_t)std::floor(x);
    double m = double(std::exp2(x - (long double)e));
    if (m >= 2.0) {
        m /= 2.0;
        ++e;
    }
    return {m, e};
}

long double Pow2Real::log2_value() const {
    if (is_zero()) throw config_error("Pow2Real: log2 of zero");
    return std::log2((long double)mantissa) + (long double)exp2;
}

double Pow2Real::to_double() const {
    if (is_zero()) return 0.0;
    if (exp2 > 1023) return std::numeric_limits<double>::infinity();
    if (exp2 < -1073) return 0.0;
    return std::ldexp(mantissa, int(exp2));
}

std::string Pow2Real::str() const {
    if (is_zero()) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g*2^%lld", mantissa, (long long)exp2);
    return buf;
}

namespace {
Pow2Real normalized(double m, std::int64_t e) {
    if (m == 0.0) return Pow2Real::zero();
    while (m >= 2.0) {
        m /= 2.0;
        ++e;
    }
    while (m < 1.0) {
        m *= 2.0;
        --e;
    }
    return {m, e};
}
}  // namespace

Pow2Real operator*(Pow2Real a, Pow2Real b) {
    if (a.is_zero() || b.is_zero()) return Pow2Real::zero();
    return normalized(a.mantissa * b.mantissa, a.exp2 + b.exp2);
}

Pow2Real operator/(Pow2Real a, Pow2Real b) {
    if (b.is_zero()) throw config_error("Pow2Real: division by zero");
    if (a.is_zero()) return Pow2Real::zero();
    return normalized(a.mantissa / b.mantissa, a.exp2 - b.exp2);
}

Pow2Real operator+(Pow2Real a, Pow2Real b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exp2 < b.exp2) std::swap(a, b);
    std::int64_t shift = a.exp2 - b.exp2;
    if (shift > 64) return a;
    return normalized(a.mantissa + std::ldexp(b.mantissa, -int(shift)), a.exp2);
}

bool operator<(Pow2Real a, Pow2Real b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exp2 != b.exp2) return a.exp2 < b.exp2;
    return a.mantissa < b.mantissa;
}

Pow2Real pow2_pow(Pow2Real base, std::int64_t k) {
    if (base.is_zero()) return k == 0 ? Pow2Real{1.0, 0} : Pow2Real::zero();
    if (base.mantissa == 1.0) return {1.0, base.exp2 * k};  // exact for pure powers of two
    return Pow2Real::from_log2(base.log2_value() * (long double)k);
}

// ---------------------------------------------------------------------------
// Constant schedules

double ScheduleConfig::c3() const { return 2.0 * c4 * std::sqrt(c2); }

long double ScheduleConfig::log2_c5() const {
    return 32.0L * std::log2((long double)std::max(2.0, c4));
}

double ScheduleConfig::eps0() const { return 100.0 * std::sqrt(c2); }

double ScheduleConfig::exponent_c() const {
    if (c_override > 0.0) return c_override;
    // smallest c with e^{c lambda0^2} >= 400 e^{2c'(lambda0+eps0)^2} v C5
    double lhs = std::log(400.0) + 2.0 * c_prime * (lambda0 + eps0()) * (lambda0 + eps0());
    double c5 = double(log2_c5()) * 0.69314718055994530942;  // ln C5
    return std::max(lhs, c5) / (lambda0 * lambda0);
}

std::vector<double> epsilon_schedule(const ScheduleConfig& cfg, int r_max) {
    if (r_max < 0) throw config_error("epsilon_schedule: negative horizon");
    double root_c2 = std::sqrt(cfg.c2);
    std::vector<double> eps(std::size_t(r_max) + 1);
    for (int r = 0; r <= r_max; ++r) {
        if (r == 0)
            eps[std::size_t(r)] = 100.0 * root_c2;
        else if (r == 1)
            eps[std::size_t(r)] = 8.0 * root_c2;
        else
            eps[std::size_t(r)] = 4.0 * root_c2 * std::pow(kBeta, double(r - 1) / 2.0);
    }
    return eps;
}

double epsilon_sum_to(const ScheduleConfig& cfg, int r) {
    auto eps = epsilon_schedule(cfg, r);
    double s = 0.0;
    for (int i = 1; i <= r; ++i) s += eps[std::size_t(i)];
    return s;
}

double epsilon_sum_inf(const ScheduleConfig& cfg) {
    // 8 sqrt(C2) + 4 sqrt(C2) sum_{r>=1} beta^{r/2}
    double q = std::sqrt(kBeta);
    return std::sqrt(cfg.c2) * (8.0 + 4.0 * q / (1.0 - q));
}

Pow2Real c_r_value(int log2_k, int r) {
    if (r < 0) throw config_error("c_r: negative index");
    return {1.0, std::int64_t(log2_k + kLog2Beta) * r};
}

DeltaSchedule delta_schedule(int log2_k, int r_max) {
    if (log2_k < 1) throw config_error("delta_schedule: K must be a power of two >= 2");
    if (r_max < 1) throw config_error("delta_schedule: horizon must be >= 1");
    const long double ln2 = 0.693147180559945309417232121458L;
    const long double ln_k = (long double)log2_k * ln2;
    const long double log2_beta_k = (long double)(log2_k + kLog2Beta);

    DeltaSchedule out;
    out.delta.resize(std::size_t(r_max) + 1);
    out.increment.resize(std::size_t(r_max));
    out.delta[0] = 0.0L;
    out.delta[1] = 0.5L;

    // Delta_1 = 9 log K / (beta K^{1/8})
    out.increment[0] = 9.0L * ln_k * std::exp2(9.0L - (long double)log2_k / 8.0L);
    for (int r = 1; r < r_max; ++r) {
        // Delta_{r+1} = (log(1 + 2 c_r) + 9 beta^{-1} log K) / c_r
        long double log2_cr = log2_beta_k * r;
        long double numer;
        if (log2_cr > 60.0L)
            numer = ln2 * (1.0L + log2_cr) + 512.0L * 9.0L * ln_k;
        else
            numer = std::log(1.0L + 2.0L * std::exp2(log2_cr)) + 512.0L * 9.0L * ln_k;
        out.increment[std::size_t(r)] =
            log2_cr > 16000.0L ? 0.0L : numer * std::exp2(-log2_cr);
    }
    for (int r = 1; r < r_max; ++r)
        out.delta[std::size_t(r) + 1] = out.delta[std::size_t(r)] + out.increment[std::size_t(r)];
    return out;
}

Pow2Real k0_of(const ScheduleConfig& cfg, double lambda) {
    if (lambda < cfg.lambda0)
        throw config_error("k0_of: lambda below lambda0");
    const long double log2e = 1.44269504088896340736L;
    long double log2_k0 = (long double)cfg.exponent_c() * lambda * lambda * log2e;
    return Pow2Real::from_log2(log2_k0);
}

KThresholds k_thresholds(const ScheduleConfig& cfg, double lambda, int r_max) {
    if (r_max < 0) throw config_error("k_thresholds: negative horizon");
    auto eps = epsilon_schedule(cfg, r_max + 1);
    KThresholds out;
    out.k_r.reserve(std::size_t(r_max) + 1);
    // recursive route: K_{r+1}(lambda) = K_r(lambda + eps_{r+1})
    for (int r = 0; r <= r_max; ++r) {
        double shifted = lambda;
        for (int i = r; i >= 1; --i) shifted += eps[std::size_t(i)];
        out.k_r.push_back(k0_of(cfg, shifted));
    }
    out.k_inf = k0_of(cfg, lambda + epsilon_sum_inf(cfg));
    return out;
}

SummabilityResult summability_check(int log2_k, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw config_error("summability_check: delta in (0,1)");
    if (log2_k < 1) throw config_error("summability_check: K must be a power of two >= 2");
    SummabilityResult res;
    res.horizon = 64;
    if (log2_k + kLog2Beta <= 0) {
        // beta K <= 1: the series diverges
        res.total = std::numeric_limits<long double>::infinity();
        res.tail_bound = res.total;
        res.pass = false;
        return res;
    }
    DeltaSchedule sched = delta_schedule(log2_k, res.horizon + 1);
    long double total = sched.increment[0];  // Delta_1
    for (int r = 1; r <= res.horizon; ++r) total += sched.increment[std::size_t(r)];

    // tail: Delta_{r+1} <= (A + B r) q^r for r > horizon, with q = 1/(beta K)
    const long double ln2 = 0.693147180559945309417232121458L;
    long double q = std::exp2(-(long double)(log2_k + kLog2Beta));
    long double big_a = std::log(3.0L) + 512.0L * 9.0L * (long double)log2_k * ln2;
    long double big_b = (long double)(log2_k + kLog2Beta) * ln2;
    long double r0 = res.horizon + 1;
    long double qr = std::exp2(-(long double)(log2_k + kLog2Beta) * r0);
    long double tail =
        qr * (big_a / (1.0L - q) + big_b * (r0 / (1.0L - q) + q / ((1.0L - q) * (1.0L - q))));
    res.tail_bound = tail;
    res.total = total + tail;
    res.pass = res.total <= (long double)delta;
    return res;
}

int minimal_summable_log2k(double delta) {
    for (int k = 10; k <= 1 << 20; ++k)
        if (summability_check(k, delta).pass) return k;
    throw invariant_error("minimal_summable_log2k: no passing K found");
}

EpsilonOfLambda epsilon_of_lambda(const ScheduleConfig& cfg, double lambda) {
    if (lambda < cfg.lambda0) throw config_error("epsilon_of_lambda: lambda below lambda0");
    EpsilonOfLambda out;
    out.minimal_summable = minimal_summable_log2k(1.0 / 16.0);
    out.log2_k_inf = k0_of(cfg, lambda + epsilon_sum_inf(cfg)).log2_value();

    long double log2_target;
    if (cfg.b_override > 0.0) {
        log2_target = (long double)cfg.b_override * lambda * lambda * 1.44269504088896340736L;
    } else {
        // smallest b with e^{b lambda0^2} >= K_inf(lambda0) v minimal summable K;
        // then K = e^{b lambda^2}
        long double log2_at_l0 =
            std::max(k0_of(cfg, cfg.lambda0 + epsilon_sum_inf(cfg)).log2_value(),
                     (long double)out.minimal_summable);
        log2_target = log2_at_l0 * lambda * lambda / (cfg.lambda0 * cfg.lambda0);
    }
    auto k = std::int64_t(std::ceil(log2_target));
    k = std::max<std::int64_t>(k, std::int64_t(std::ceil(out.log2_k_inf)));
    k = std::max<std::int64_t>(k, out.minimal_summable);
    while (k <= (1 << 21) && !summability_check(int(k), 1.0 / 16.0).pass) ++k;

    out.log2_k = k;
    out.k_value = {1.0, k};
    // eps = 1 / (16 K^2 k)
    out.epsilon = Pow2Real::from_log2(-(4.0L + 2.0L * (long double)k +
                                        std::log2((long double)k)));
    return out;
}

double rho_of_lambda(double lambda) {
    if (lambda < 0.0) throw config_error("rho_of_lambda: lambda must be >= 0");
    return std::erf(lambda / (2.0 * 1.41421356237309504880));
}

double trivial_decay_bound(double lambda, double kappa, std::int64_t n) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw config_error("trivial_decay_bound: kappa in (0,1)");
    if (n < 1) throw config_error("trivial_decay_bound: N must be >= 1");
    double rho = rho_of_lambda(lambda);
    if (rho >= 0.25)
        throw config_error("trivial_decay_bound: requires rho(lambda) < 1/4 "
                           "(lambda too large for the vanishing bound)");
    if (rho == 0.0) return 0.0;
    double log_bound = 2.0 * std::log(double(n)) + kappa * double(n) * std::log(4.0 * rho);
    return std::exp(log_bound);
}

}  // namespace gff2d
