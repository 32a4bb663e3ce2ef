// Tempered MCMC transition kernels for the built-in model families, plus the
// rung executor that turns raw sweeps into a RungEstimate.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "evidencer/model.hpp"
#include "evidencer/quadrature.hpp"
#include "evidencer/rng.hpp"

namespace evid {

struct RunConfig {
    long iterations = 10000;
    double burn_fraction = 0.2;     // first fifth discarded by default
    std::uint64_t rng_seed = 1;     // consumed by whoever owns the stream

    long burn_count() const { return static_cast<long>(iterations * burn_fraction); }
    long retained() const { return iterations - burn_count(); }
    void validate() const;
};

namespace kernels {

struct LinRegData {
    Eigen::MatrixX2d X;  // column of ones, mean-centred covariate
    Eigen::VectorXd y;
    // cached products
    Eigen::Matrix2d XtX;
    Eigen::Vector2d Xty;
    double yty = 0.0;
    long n() const { return y.size(); }
};

struct LinRegPrior {
    Eigen::Vector2d mu0;
    Eigen::Matrix2d Q0;  // coefficient precision is tau * Q0
    double a0 = 0.0;     // gamma shape for tau
    double b0 = 0.0;     // gamma rate for tau
};

// Full conjugate sweep of the power posterior p(y|beta,tau)^t p(beta|tau) p(tau):
//   beta | tau ~ N(m_t, (tau M_t)^-1),  M_t = t X'X + Q0,  m_t = M_t^-1 (t X'y + Q0 mu0)
//   tau | beta ~ Gamma(a0 + n t/2 + 1, b0 + (beta-mu0)'Q0(beta-mu0)/2 + t ||y-X beta||^2 / 2)
void gibbs_linreg_step(LinRegState& state, double t, const LinRegData& data,
                       const LinRegPrior& prior, Rng& rng);

struct LogisticData {
    Eigen::MatrixXd X;  // intercept column plus standardised covariates
    Eigen::VectorXd y;  // 0/1 incidence
};

double bernoulli_loglik(const LogisticData& data, const Eigen::VectorXd& theta);

// Joint random-walk update with diagonal proposal variance min(0.01/t, 1/tau);
// accepts with probability exp(t dloglik + dlogprior). A non-finite proposal
// log-likelihood rejects and is counted in stats.
void metropolis_logistic_step(LogisticState& state, double t, const LogisticData& data,
                              double prior_precision, Rng& rng, StepStats* stats = nullptr);

struct MixturePrior {
    double weight_conc = 1.0;   // symmetric Dirichlet concentration
    double mean_var = 1e4;      // component mean prior variance
    double var_shape = 1.0;     // inverse-gamma shape for component variances
    double var_rate = 1.0;      // inverse-gamma rate
};

// One sweep of the tempered completed-likelihood target
// p(y|z,theta)^t p(z|w) p(w) p(mu) p(sigma^2): conjugate draws for weights,
// means and variances, then a Metropolis pass over the allocations with a
// discrete uniform proposal.
void mixture_step(MixtureState& state, double t, const std::vector<double>& y, int k,
                  const MixturePrior& prior, Rng& rng, StepStats* stats = nullptr);

struct RungResult {
    RungEstimate estimate;
    ChainState final_state;
    double acceptance_rate = 1.0;
    std::vector<double> loglik_samples;  // retained draws, only when requested
};

// Runs config.iterations sweeps at the given t from init, discards the burn-in
// prefix and summarises the retained log deviances (variance with N-1).
RungResult run_rung(const Model& model, double t, ChainState init, const RunConfig& config,
                    Rng& rng, bool keep_samples = false);

}  // namespace kernels
}  // namespace evid
