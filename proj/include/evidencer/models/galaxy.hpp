// Gaussian mixture for the galaxy velocity data with latent allocations. The
// tempered deviance is the completed likelihood p(y|z,theta).
#pragma once

#include <filesystem>

#include "evidencer/dataset.hpp"
#include "evidencer/kernels.hpp"
#include "evidencer/model.hpp"

namespace evid::models {

// k-component mixture over velocities in units of 1000 km/s. Priors:
// w ~ Dirichlet(1,...,1), mu_j ~ N(0, 100^2), var_j ~ InvGamma(1, 1). The
// component-mean prior variance of 1e4 is what reproduces the published
// estimates on this data; see the README's notes on prior interpretation.
class GalaxyModel final : public Model {
  public:
    explicit GalaxyModel(int k,
                         const std::filesystem::path& data_dir = dataset::default_dir(),
                         const kernels::MixturePrior& prior = {});

    const std::string& name() const override { return name_; }
    ChainState draw_from_prior(Rng& rng) const override;
    void step(ChainState& state, double t, Rng& rng, StepStats* stats) const override;
    double log_likelihood(const ChainState& state) const override;
    double log_prior(const ChainState& state) const override;

    int components() const { return k_; }
    const std::vector<double>& observations() const { return y_; }

  private:
    std::string name_;
    int k_ = 0;
    std::vector<double> y_;  // velocities / 1000
    kernels::MixturePrior prior_;
};

}  // namespace evid::models
