#include "evidencer/models/radiata.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencer/numeric.hpp"

namespace evid::models {

namespace {

struct Conjugate {
    Eigen::Matrix2d Mt;
    Eigen::Vector2d mt;
    double a_t = 0.0;
    double b_t = 0.0;
    double logdet_Mt = 0.0;
};

Conjugate conjugate_update(const kernels::LinRegData& d, const kernels::LinRegPrior& p,
                           double mu0_Q0_mu0, double t) {
    Conjugate c;
    c.Mt = t * d.XtX + p.Q0;
    const Eigen::LLT<Eigen::Matrix2d> llt(c.Mt);
    c.mt = llt.solve(t * d.Xty + p.Q0 * p.mu0);
    c.a_t = p.a0 + d.n() * t / 2.0;
    c.b_t = p.b0 + 0.5 * (t * d.yty + mu0_Q0_mu0 - c.mt.dot(c.Mt * c.mt));
    const Eigen::Matrix2d L = llt.matrixL();
    c.logdet_Mt = 2.0 * (std::log(L(0, 0)) + std::log(L(1, 1)));
    return c;
}

}  // namespace

RadiataModel::RadiataModel(int which, const std::filesystem::path& data_dir) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("RadiataModel: which must be 1 or 2");
    name_ = which == 1 ? "radiata1" : "radiata2";

    const RadiataData raw = dataset::load_radiata(data_dir);
    const auto& covar = which == 1 ? raw.x : raw.z;
    const long n = static_cast<long>(raw.y.size());
    double cbar = 0.0;
    for (double v : covar) cbar += v;
    cbar /= n;

    data_.X.resize(n, 2);
    data_.y.resize(n);
    for (long i = 0; i < n; ++i) {
        data_.X(i, 0) = 1.0;
        data_.X(i, 1) = covar[i] - cbar;
        data_.y[i] = raw.y[i];
    }
    data_.XtX = data_.X.transpose() * data_.X;
    data_.Xty = data_.X.transpose() * data_.y;
    data_.yty = data_.y.squaredNorm();

    prior_.mu0 << 3000.0, 185.0;
    prior_.Q0 = Eigen::Vector2d(0.06, 6.0).asDiagonal();
    prior_.a0 = 3.0;
    prior_.b0 = 2.0 * 300.0 * 300.0;

    mu0_Q0_mu0_ = prior_.mu0.dot(prior_.Q0 * prior_.mu0);
    logdet_Q0_ = std::log(prior_.Q0(0, 0)) + std::log(prior_.Q0(1, 1));
}

ChainState RadiataModel::draw_from_prior(Rng& rng) const {
    LinRegState s;
    s.tau = draw_gamma(rng, prior_.a0, prior_.b0);
    const double sd = 1.0 / std::sqrt(s.tau);
    s.beta[0] = draw_normal(rng, prior_.mu0[0], sd / std::sqrt(prior_.Q0(0, 0)));
    s.beta[1] = draw_normal(rng, prior_.mu0[1], sd / std::sqrt(prior_.Q0(1, 1)));
    return s;
}

void RadiataModel::step(ChainState& state, double t, Rng& rng, StepStats*) const {
    kernels::gibbs_linreg_step(std::get<LinRegState>(state), t, data_, prior_, rng);
}

double RadiataModel::log_likelihood(const ChainState& state) const {
    const auto& s = std::get<LinRegState>(state);
    const double rss = (data_.y - data_.X * s.beta).squaredNorm();
    const long n = data_.n();
    return 0.5 * n * (std::log(s.tau) - std::log(2.0 * M_PI)) - 0.5 * s.tau * rss;
}

double RadiataModel::log_prior(const ChainState& state) const {
    const auto& s = std::get<LinRegState>(state);
    const Eigen::Vector2d d = s.beta - prior_.mu0;
    // |tau Q0| = tau^2 |Q0| for the two coefficients
    const double lp_beta = 0.5 * (2.0 * std::log(s.tau) + logdet_Q0_) - std::log(2.0 * M_PI) -
                           0.5 * s.tau * d.dot(prior_.Q0 * d);
    const double lp_tau = prior_.a0 * std::log(prior_.b0) - std::lgamma(prior_.a0) +
                          (prior_.a0 - 1.0) * std::log(s.tau) - prior_.b0 * s.tau;
    return lp_beta + lp_tau;
}

double RadiataModel::log_z(double t) const {
    const Conjugate c = conjugate_update(data_, prior_, mu0_Q0_mu0_, t);
    return -0.5 * data_.n() * t * std::log(2.0 * M_PI) + 0.5 * (logdet_Q0_ - c.logdet_Mt) +
           prior_.a0 * std::log(prior_.b0) - std::lgamma(prior_.a0) + std::lgamma(c.a_t) -
           c.a_t * std::log(c.b_t);
}

LinRegState RadiataModel::draw_tempered_posterior(double t, Rng& rng) const {
    const Conjugate c = conjugate_update(data_, prior_, mu0_Q0_mu0_, t);
    LinRegState s;
    s.tau = draw_gamma(rng, c.a_t, c.b_t);
    Eigen::Vector2d zvec(draw_normal(rng, 0.0, 1.0), draw_normal(rng, 0.0, 1.0));
    const Eigen::LLT<Eigen::Matrix2d> llt(c.Mt);
    const Eigen::Matrix2d L = llt.matrixL();
    s.beta = c.mt + L.transpose().triangularView<Eigen::Upper>().solve(zvec) / std::sqrt(s.tau);
    return s;
}

}  // namespace evid::models
