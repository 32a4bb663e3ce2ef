// RNG stream type, seed derivation and the non-standard draws the kernels need.
//
// One seedable stream drives a whole pipeline; kernels receive the stream and
// never construct their own. Replicate seeds come from a counter-based mix of
// the master seed so replicates can run in parallel and stay reproducible.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace evid {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for stream `index` derived from a master seed; pure function of both.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

inline double draw_normal(Rng& rng, double mean, double sd) {
    return std::normal_distribution<double>(mean, sd)(rng);
}

// Gamma(shape, rate): density rate^shape/Gamma(shape) x^{shape-1} e^{-rate x}.
inline double draw_gamma(Rng& rng, double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

// InvGamma(shape, rate): density rate^shape/Gamma(shape) x^{-shape-1} e^{-rate/x},
// i.e. 1/X ~ Gamma(shape, rate).
inline double draw_inv_gamma(Rng& rng, double shape, double rate) {
    return 1.0 / draw_gamma(rng, shape, rate);
}

// Symmetric Dirichlet via normalised Gamma draws.
inline std::vector<double> draw_dirichlet(Rng& rng, const std::vector<double>& alpha) {
    std::vector<double> w(alpha.size());
    double total = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        w[j] = std::gamma_distribution<double>(alpha[j], 1.0)(rng);
        total += w[j];
    }
    for (double& x : w) x /= total;
    return w;
}

}  // namespace evid
