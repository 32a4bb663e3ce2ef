// Bayesian logistic regressions for the Pima diabetes data.
#pragma once

#include <filesystem>

#include "evidencer/dataset.hpp"
#include "evidencer/kernels.hpp"
#include "evidencer/model.hpp"

namespace evid::models {

// which = 1: intercept + NP + PGC + BMI + DP; which = 2 adds AGE. Covariates
// standardised to mean 0 and sample sd 1 (N-1 denominator). Prior is
// N(0, tau^-1 I) on all coefficients with tau = 0.01.
class PimaModel final : public Model {
  public:
    static constexpr double kPriorPrecision = 0.01;

    explicit PimaModel(int which,
                       const std::filesystem::path& data_dir = dataset::default_dir());

    const std::string& name() const override { return name_; }
    ChainState draw_from_prior(Rng& rng) const override;
    void step(ChainState& state, double t, Rng& rng, StepStats* stats) const override;
    double log_likelihood(const ChainState& state) const override;
    double log_prior(const ChainState& state) const override;
    std::optional<double> benchmark_log_evidence() const override { return benchmark_; }

    int dim() const { return static_cast<int>(data_.X.cols()); }
    const kernels::LogisticData& data() const { return data_; }

  private:
    std::string name_;
    kernels::LogisticData data_;
    double benchmark_ = 0.0;
};

}  // namespace evid::models
