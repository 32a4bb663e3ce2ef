// Small numeric helpers shared across the library.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace evid {

// log(sum_i exp(v_i)), stable under large magnitudes.
inline double log_sum_exp(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    double hi = v[0];
    for (double x : v)
        if (x > hi) hi = x;
    if (!std::isfinite(hi)) return hi;  // all -inf, or a stray +inf/nan surfaces as-is
    double sum = 0.0;
    for (double x : v) sum += std::exp(x - hi);
    return hi + std::log(sum);
}

// log(1 + exp(x)) without overflow.
inline double log1p_exp(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sq(double x) { return x * x; }

}  // namespace evid
