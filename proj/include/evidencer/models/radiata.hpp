// Gaussian linear regressions for the radiata pine compression data, with the
// closed-form tempered evidence that serves as ground truth everywhere else.
#pragma once

#include <filesystem>
#include <memory>

#include "evidencer/dataset.hpp"
#include "evidencer/kernels.hpp"
#include "evidencer/model.hpp"

namespace evid::models {

// which = 1 regresses on density, which = 2 on resin-adjusted density; both
// covariates are mean-centred. Priors: (alpha,beta) ~ N((3000,185), (tau Q0)^-1)
// with Q0 = diag(0.06, 6), tau ~ Gamma(3, 2*300^2).
class RadiataModel final : public Model {
  public:
    explicit RadiataModel(int which,
                          const std::filesystem::path& data_dir = dataset::default_dir());

    const std::string& name() const override { return name_; }
    ChainState draw_from_prior(Rng& rng) const override;
    void step(ChainState& state, double t, Rng& rng, StepStats* stats) const override;
    double log_likelihood(const ChainState& state) const override;
    double log_prior(const ChainState& state) const override;
    std::optional<double> analytic_log_evidence() const override { return log_z(1.0); }

    // log z(y|t) of the power posterior, exact by conjugacy; log_z(0) == 0.
    double log_z(double t) const;
    // Exact draw from the tempered posterior (tau ~ Gamma(a_t, b_t), then
    // beta | tau); lets tests bypass MCMC entirely.
    LinRegState draw_tempered_posterior(double t, Rng& rng) const;

    const kernels::LinRegData& data() const { return data_; }
    const kernels::LinRegPrior& prior() const { return prior_; }

  private:
    std::string name_;
    kernels::LinRegData data_;
    kernels::LinRegPrior prior_;
    double mu0_Q0_mu0_ = 0.0;
    double logdet_Q0_ = 0.0;
};

}  // namespace evid::models
