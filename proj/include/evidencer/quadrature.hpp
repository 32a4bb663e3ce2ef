// Numerical rules mapping an expected-log-deviance curve (and raw
// log-likelihood samples) to log-evidence estimates and discretisation bounds.
//
// Everything here is a pure function of immutable inputs; safe to call
// concurrently. All evidence arithmetic stays in log space.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace evid {

// Ordered inverse temperatures t_0 = 0 < ... < t_n = 1.
class Ladder {
  public:
    explicit Ladder(std::vector<double> rungs);

    const std::vector<double>& rungs() const { return rungs_; }
    std::size_t size() const { return rungs_.size(); }
    std::size_t intervals() const { return rungs_.size() - 1; }
    double operator[](std::size_t i) const { return rungs_[i]; }

  private:
    std::vector<double> rungs_;
};

// Sampled moments of the log deviance at one inverse temperature. The
// variance doubles as the curve's derivative at t.
struct RungEstimate {
    double t = 0.0;
    double mean_logdev = 0.0;
    double var_logdev = 0.0;
    std::int64_t sample_count = 0;
};

// RungEstimates sorted by t with endpoints exactly 0 and 1.
class DevianceCurve {
  public:
    explicit DevianceCurve(std::vector<RungEstimate> points);

    std::span<const RungEstimate> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const RungEstimate& operator[](std::size_t i) const { return points_[i]; }
    Ladder ladder() const;

  private:
    std::vector<RungEstimate> points_;
};

struct EvidenceReport {
    double log_z_standard = 0.0;
    double log_z_modified = 0.0;
    std::optional<double> log_z_stepping_stone;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double s_n = 0.0;  // upper_bound - lower_bound
};

struct SnBounds {
    double lower = 0.0;
    double upper = 0.0;
    double s_n = 0.0;
};

namespace quad {

// Trapezium rule over the curve: sum_i dt_i * (mean_{i-1} + mean_i) / 2.
double trapezium(const DevianceCurve& curve);

// Trapezium rule minus the endpoint-derivative correction
// sum_i (dt_i^2 / 12) * (var_{i+1} - var_i), using the variances as the
// curve's derivatives. Exact for cubics when the derivatives are exact.
double corrected_trapezium(const DevianceCurve& curve);

// Lower/upper rectangular approximations and their gap S_n. No monotonicity
// check: negative contributions are the caller's Monte Carlo noise to read.
SnBounds sn_bounds(const DevianceCurve& curve);

// Stepping Stone estimator. `loglik_samples[k]` holds draws of log p(y|theta)
// from the tempered posterior at rung t_k, for k = 0..n-1 (no samples at
// t_n = 1). Returns sum_k [logsumexp_i((t_{k+1}-t_k) l_{k,i}) - log m_k].
// Non-finite samples are rejected eagerly, naming the rung.
double stepping_stone(const Ladder& ladder,
                      std::span<const std::vector<double>> loglik_samples);

}  // namespace quad
}  // namespace evid
