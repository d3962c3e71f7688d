#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace gff2d {

// A positive real stored as mantissa * 2^exp2 with mantissa in [1,2).
// The constant schedules produce values like e^{20000} that overflow any
// hardware float, so thresholds are carried and reported in this form.
struct Pow2Real {
    double mantissa = 0.0;   // 0 encodes the value 0
    std::int64_t exp2 = 0;

    static Pow2Real zero() { return {0.0, 0}; }

    static Pow2Real from_double(double v);
    // Value 2^x for a real x (x may be huge).
    static Pow2Real from_log2(long double x);

    bool is_zero() const { return mantissa == 0.0; }
    long double log2_value() const;
    // Lossy; +inf if the exponent exceeds double range.
    double to_double() const;

    std::string str() const;  // "1.2345*2^678"

    friend Pow2Real operator*(Pow2Real a, Pow2Real b);
    friend Pow2Real operator/(Pow2Real a, Pow2Real b);
    friend Pow2Real operator+(Pow2Real a, Pow2Real b);
    friend bool operator<(Pow2Real a, Pow2Real b);
    friend bool operator<=(Pow2Real a, Pow2Real b) { return !(b < a); }
};

Pow2Real pow2_pow(Pow2Real base, std::int64_t k);

}  // namespace gff2d
