#include "evidencer/models/galaxy.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencer/numeric.hpp"

namespace evid::models {

GalaxyModel::GalaxyModel(int k, const std::filesystem::path& data_dir,
                         const kernels::MixturePrior& prior)
    : k_(k), prior_(prior) {
    if (k < 1 || k > 10) throw std::invalid_argument("GalaxyModel: k must be in 1..10");
    name_ = "galaxy" + std::to_string(k);
    const GalaxyData raw = dataset::load_galaxy(data_dir);
    y_.reserve(raw.velocity_km_s.size());
    for (double v : raw.velocity_km_s) y_.push_back(v / 1000.0);
}

ChainState GalaxyModel::draw_from_prior(Rng& rng) const {
    MixtureState s;
    s.weights = draw_dirichlet(rng, std::vector<double>(k_, prior_.weight_conc));
    s.means.resize(k_);
    s.vars.resize(k_);
    const double mean_sd = std::sqrt(prior_.mean_var);
    for (int j = 0; j < k_; ++j) {
        s.means[j] = draw_normal(rng, 0.0, mean_sd);
        s.vars[j] = draw_inv_gamma(rng, prior_.var_shape, prior_.var_rate);
    }
    s.alloc.resize(y_.size());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < y_.size(); ++i) {
        double u = unif(rng), acc = 0.0;
        int j = k_ - 1;
        for (int c = 0; c < k_; ++c) {
            acc += s.weights[c];
            if (u <= acc) {
                j = c;
                break;
            }
        }
        s.alloc[i] = j;
    }
    return s;
}

void GalaxyModel::step(ChainState& state, double t, Rng& rng, StepStats* stats) const {
    kernels::mixture_step(std::get<MixtureState>(state), t, y_, k_, prior_, rng, stats);
}

double GalaxyModel::log_likelihood(const ChainState& state) const {
    const auto& s = std::get<MixtureState>(state);
    double ll = 0.0;
    for (std::size_t i = 0; i < y_.size(); ++i) {
        const int j = s.alloc[i];
        ll += -0.5 * std::log(2.0 * M_PI * s.vars[j]) - sq(y_[i] - s.means[j]) / (2.0 * s.vars[j]);
    }
    return ll;
}

double GalaxyModel::log_prior(const ChainState& state) const {
    const auto& s = std::get<MixtureState>(state);
    // Symmetric Dirichlet density.
    double lp = std::lgamma(k_ * prior_.weight_conc) - k_ * std::lgamma(prior_.weight_conc);
    for (int j = 0; j < k_; ++j) lp += (prior_.weight_conc - 1.0) * std::log(s.weights[j]);
    // Component means and variances.
    for (int j = 0; j < k_; ++j) {
        lp += -0.5 * std::log(2.0 * M_PI * prior_.mean_var) - sq(s.means[j]) / (2.0 * prior_.mean_var);
        lp += prior_.var_shape * std::log(prior_.var_rate) - std::lgamma(prior_.var_shape) -
              (prior_.var_shape + 1.0) * std::log(s.vars[j]) - prior_.var_rate / s.vars[j];
    }
    // Allocations given weights.
    for (int a : s.alloc) lp += std::log(s.weights[a]);
    return lp;
}

}  // namespace evid::models
