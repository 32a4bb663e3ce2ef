#include "evidencer/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "evidencer/numeric.hpp"

namespace evid {

void RunConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("RunConfig: iterations must be >= 1");
    if (!(burn_fraction >= 0.0 && burn_fraction < 1.0))
        throw std::invalid_argument("RunConfig: burn_fraction must be in [0, 1)");
    if (retained() < 2)
        throw std::invalid_argument("RunConfig: need at least 2 retained sweeps");
}

namespace kernels {

void gibbs_linreg_step(LinRegState& state, double t, const LinRegData& data,
                       const LinRegPrior& prior, Rng& rng) {
    const Eigen::Matrix2d Mt = t * data.XtX + prior.Q0;
    const Eigen::Vector2d rhs = t * data.Xty + prior.Q0 * prior.mu0;
    const Eigen::LLT<Eigen::Matrix2d> llt(Mt);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("gibbs_linreg_step: M_t not positive definite");
    const Eigen::Vector2d mt = llt.solve(rhs);

    // beta | tau ~ N(m_t, (tau M_t)^-1): m_t + L^-T z / sqrt(tau)
    Eigen::Vector2d zvec(draw_normal(rng, 0.0, 1.0), draw_normal(rng, 0.0, 1.0));
    const Eigen::Matrix2d L = llt.matrixL();
    state.beta = mt + L.transpose().triangularView<Eigen::Upper>().solve(zvec) / std::sqrt(state.tau);

    const Eigen::Vector2d d = state.beta - prior.mu0;
    const Eigen::VectorXd resid = data.y - data.X * state.beta;
    const double shape = prior.a0 + data.n() * t / 2.0 + 1.0;  // +p/2 with p=2
    const double rate = prior.b0 + 0.5 * d.dot(prior.Q0 * d) + 0.5 * t * resid.squaredNorm();
    state.tau = draw_gamma(rng, shape, rate);
}

double bernoulli_loglik(const LogisticData& data, const Eigen::VectorXd& theta) {
    const Eigen::VectorXd eta = data.X * theta;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        ll += data.y[i] * eta[i] - log1p_exp(eta[i]);
    return ll;
}

void metropolis_logistic_step(LogisticState& state, double t, const LogisticData& data,
                              double prior_precision, Rng& rng, StepStats* stats) {
    const double tau = prior_precision;
    // At t=0 the division yields +inf and the min resolves to the prior scale.
    const double prop_var = std::min(0.01 / t, 1.0 / tau);
    const double prop_sd = std::sqrt(prop_var);

    Eigen::VectorXd proposal(state.theta.size());
    for (Eigen::Index j = 0; j < proposal.size(); ++j)
        proposal[j] = state.theta[j] + draw_normal(rng, 0.0, prop_sd);

    const double loglik_prop = bernoulli_loglik(data, proposal);
    if (stats) ++stats->proposals;
    if (!std::isfinite(loglik_prop)) return;  // auto-reject

    const double dlogprior = -0.5 * tau * (proposal.squaredNorm() - state.theta.squaredNorm());
    const double log_ratio = t * (loglik_prop - state.loglik) + dlogprior;
    if (log_ratio >= 0.0 || std::log(std::uniform_real_distribution<double>(0.0, 1.0)(rng)) < log_ratio) {
        state.theta = proposal;
        state.loglik = loglik_prop;
        if (stats) ++stats->accepts;
    }
}

namespace {

double log_normal_pdf(double x, double mean, double var) {
    return -0.5 * std::log(2.0 * M_PI * var) - sq(x - mean) / (2.0 * var);
}

}  // namespace

void mixture_step(MixtureState& state, double t, const std::vector<double>& y, int k,
                  const MixturePrior& prior, Rng& rng, StepStats* stats) {
    if (static_cast<int>(state.weights.size()) != k)
        throw std::invalid_argument("mixture_step: state/k mismatch");
    const std::size_t n = y.size();

    // w | z ~ Dirichlet(conc + n_1, ..., conc + n_k); the allocation prior is
    // untempered.
    std::vector<double> alpha(k, prior.weight_conc);
    for (std::size_t i = 0; i < n; ++i) alpha[state.alloc[i]] += 1.0;
    state.weights = draw_dirichlet(rng, alpha);

    // Sums per component under the current allocation.
    std::vector<double> count(k, 0.0), sum(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        count[state.alloc[i]] += 1.0;
        sum[state.alloc[i]] += y[i];
    }

    // mu_j | rest: precision 1/mean_var + t n_j / var_j. Empty components fall
    // back to the prior.
    for (int j = 0; j < k; ++j) {
        const double prec = 1.0 / prior.mean_var + t * count[j] / state.vars[j];
        const double mean = (t * sum[j] / state.vars[j]) / prec;
        state.means[j] = draw_normal(rng, mean, 1.0 / std::sqrt(prec));
    }

    // var_j | rest ~ InvGamma(shape + t n_j / 2, rate + t/2 sum of squares).
    std::vector<double> ssq(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) ssq[state.alloc[i]] += sq(y[i] - state.means[state.alloc[i]]);
    for (int j = 0; j < k; ++j)
        state.vars[j] = draw_inv_gamma(rng, prior.var_shape + 0.5 * t * count[j],
                                       prior.var_rate + 0.5 * t * ssq[j]);

    // z_i: discrete uniform proposal, accepted with
    // min(1, (w_j' / w_j) (N(y_i; mu_j', var_j') / N(y_i; mu_j, var_j))^t).
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int cur = state.alloc[i];
        const int cand = pick(rng);
        if (stats) ++stats->proposals;
        if (cand == cur) {
            if (stats) ++stats->accepts;
            continue;
        }
        const double log_ratio = std::log(state.weights[cand]) - std::log(state.weights[cur]) +
                                 t * (log_normal_pdf(y[i], state.means[cand], state.vars[cand]) -
                                      log_normal_pdf(y[i], state.means[cur], state.vars[cur]));
        if (log_ratio >= 0.0 || std::log(unif(rng)) < log_ratio) {
            state.alloc[i] = cand;
            if (stats) ++stats->accepts;
        }
    }
}

RungResult run_rung(const Model& model, double t, ChainState init, const RunConfig& config,
                    Rng& rng, bool keep_samples) {
    config.validate();
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("run_rung: t must lie in [0, 1]");

    RungResult out;
    out.final_state = std::move(init);
    const long burn = config.burn_count();
    const long retained = config.retained();

    StepStats stats;
    double mean = 0.0, m2 = 0.0;  // Welford over retained log deviances
    long n = 0;
    if (keep_samples) out.loglik_samples.reserve(retained);

    for (long it = 0; it < config.iterations; ++it) {
        model.step(out.final_state, t, rng, &stats);
        if (it < burn) continue;
        const double ll = model.log_likelihood(out.final_state);
        ++n;
        const double delta = ll - mean;
        mean += delta / n;
        m2 += delta * (ll - mean);
        if (keep_samples) out.loglik_samples.push_back(ll);
    }

    out.estimate.t = t;
    out.estimate.mean_logdev = mean;
    out.estimate.var_logdev = m2 / (n - 1);
    out.estimate.sample_count = n;
    out.acceptance_rate = stats.rate();
    return out;
}

}  // namespace kernels
}  // namespace evid
