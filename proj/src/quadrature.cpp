#include "evidencer/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "evidencer/numeric.hpp"

namespace evid {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Ladder::Ladder(std::vector<double> rungs) : rungs_(std::move(rungs)) {
    require(rungs_.size() >= 2, "Ladder: need at least 2 rungs");
    require(rungs_.front() == 0.0, "Ladder: first rung must be exactly 0");
    require(rungs_.back() == 1.0, "Ladder: last rung must be exactly 1");
    for (std::size_t i = 1; i < rungs_.size(); ++i)
        require(rungs_[i - 1] < rungs_[i], "Ladder: rungs must be strictly increasing");
}

DevianceCurve::DevianceCurve(std::vector<RungEstimate> points) : points_(std::move(points)) {
    require(points_.size() >= 2, "DevianceCurve: need at least 2 points");
    require(points_.front().t == 0.0, "DevianceCurve: first point must be at t=0");
    require(points_.back().t == 1.0, "DevianceCurve: last point must be at t=1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        const std::string at = " at rung " + std::to_string(i);
        require(std::isfinite(p.mean_logdev), "DevianceCurve: non-finite mean_logdev" + at);
        require(std::isfinite(p.var_logdev) && p.var_logdev >= 0.0,
                "DevianceCurve: var_logdev must be finite and >= 0" + at);
        require(p.sample_count >= 2, "DevianceCurve: sample_count must be >= 2" + at);
        if (i > 0)
            require(points_[i - 1].t < p.t, "DevianceCurve: t values must be strictly increasing" + at);
    }
}

Ladder DevianceCurve::ladder() const {
    std::vector<double> t;
    t.reserve(points_.size());
    for (const auto& p : points_) t.push_back(p.t);
    return Ladder(std::move(t));
}

namespace quad {

double trapezium(const DevianceCurve& curve) {
    double acc = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double dt = curve[i].t - curve[i - 1].t;
        acc += dt * 0.5 * (curve[i - 1].mean_logdev + curve[i].mean_logdev);
    }
    return acc;
}

double corrected_trapezium(const DevianceCurve& curve) {
    double correction = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double dt = curve[i].t - curve[i - 1].t;
        correction += dt * dt / 12.0 * (curve[i].var_logdev - curve[i - 1].var_logdev);
    }
    return trapezium(curve) - correction;
}

SnBounds sn_bounds(const DevianceCurve& curve) {
    SnBounds b;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double dt = curve[i].t - curve[i - 1].t;
        b.lower += dt * curve[i - 1].mean_logdev;
        b.upper += dt * curve[i].mean_logdev;
    }
    b.s_n = b.upper - b.lower;
    return b;
}

double stepping_stone(const Ladder& ladder,
                      std::span<const std::vector<double>> loglik_samples) {
    if (loglik_samples.size() != ladder.intervals())
        throw std::invalid_argument(
            "stepping_stone: need one sample array per rung except t=1 (got " +
            std::to_string(loglik_samples.size()) + ", expected " +
            std::to_string(ladder.intervals()) + ")");

    double log_z = 0.0;
    std::vector<double> scaled;
    for (std::size_t k = 0; k < loglik_samples.size(); ++k) {
        const auto& samples = loglik_samples[k];
        if (samples.empty())
            throw std::invalid_argument("stepping_stone: empty sample array at rung " +
                                        std::to_string(k));
        const double dt = ladder[k + 1] - ladder[k];
        scaled.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!std::isfinite(samples[i]))
                throw std::invalid_argument("stepping_stone: non-finite log-likelihood at rung " +
                                            std::to_string(k));
            scaled[i] = dt * samples[i];
        }
        log_z += log_sum_exp(scaled) - std::log(static_cast<double>(samples.size()));
    }
    return log_z;
}

}  // namespace quad
}  // namespace evid
