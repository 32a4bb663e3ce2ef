// The pluggable model contract: log densities, a tempered transition kernel
// and a prior sampler over a model-specific chain state.
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evidencer/rng.hpp"

namespace evid {

struct LinRegState {
    Eigen::Vector2d beta;  // intercept and slope
    double tau = 1.0;      // noise precision, > 0
};

struct LogisticState {
    Eigen::VectorXd theta;
    // Bernoulli log-likelihood of theta, maintained by the kernel so each
    // sweep evaluates the data term once. Valid on every state produced by
    // draw_from_prior or step.
    double loglik = 0.0;
};

struct MixtureState {
    std::vector<double> weights;  // k-simplex
    std::vector<double> means;
    std::vector<double> vars;     // strictly positive
    std::vector<int> alloc;       // component index per observation, 0-based
};

using ChainState = std::variant<std::monostate, LinRegState, LogisticState, MixtureState>;

struct StepStats {
    long proposals = 0;
    long accepts = 0;
    double rate() const { return proposals == 0 ? 1.0 : static_cast<double>(accepts) / proposals; }
};

class Model {
  public:
    virtual ~Model() = default;

    virtual const std::string& name() const = 0;
    virtual ChainState draw_from_prior(Rng& rng) const = 0;
    // One MCMC sweep targeting p(y|theta)^t p(theta).
    virtual void step(ChainState& state, double t, Rng& rng, StepStats* stats = nullptr) const = 0;
    virtual double log_likelihood(const ChainState& state) const = 0;
    virtual double log_prior(const ChainState& state) const = 0;

    // Closed-form log evidence, where one exists.
    virtual std::optional<double> analytic_log_evidence() const { return std::nullopt; }
    // Stored long-run reference value used as ground truth when no closed
    // form exists.
    virtual std::optional<double> benchmark_log_evidence() const { return std::nullopt; }
};

}  // namespace evid
