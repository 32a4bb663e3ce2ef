#include "evidencer/models/pima.hpp"

#include <cmath>
#include <stdexcept>

namespace evid::models {

namespace {

// Long-run power-posterior reference values (2000 rungs x 20000 iterations).
constexpr double kBenchmarkModel1 = -257.2342;
constexpr double kBenchmarkModel2 = -259.8519;

void standardise(std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    for (double& x : v) x = (x - mean) / sd;
}

}  // namespace

PimaModel::PimaModel(int which, const std::filesystem::path& data_dir) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("PimaModel: which must be 1 or 2");
    name_ = which == 1 ? "pima1" : "pima2";
    benchmark_ = which == 1 ? kBenchmarkModel1 : kBenchmarkModel2;

    const PimaData raw = dataset::load_pima(data_dir);
    std::vector<std::vector<double>> covars = {raw.npreg, raw.glu, raw.bmi, raw.ped};
    if (which == 2) covars.push_back(raw.age);
    for (auto& c : covars) standardise(c);

    const long n = static_cast<long>(raw.rows());
    data_.X.resize(n, static_cast<long>(covars.size()) + 1);
    data_.y.resize(n);
    for (long i = 0; i < n; ++i) {
        data_.X(i, 0) = 1.0;
        for (std::size_t j = 0; j < covars.size(); ++j) data_.X(i, static_cast<long>(j) + 1) = covars[j][i];
        data_.y[i] = raw.type[i];
    }
}

ChainState PimaModel::draw_from_prior(Rng& rng) const {
    LogisticState s;
    s.theta.resize(dim());
    const double sd = 1.0 / std::sqrt(kPriorPrecision);
    for (int j = 0; j < dim(); ++j) s.theta[j] = draw_normal(rng, 0.0, sd);
    s.loglik = kernels::bernoulli_loglik(data_, s.theta);
    return s;
}

void PimaModel::step(ChainState& state, double t, Rng& rng, StepStats* stats) const {
    kernels::metropolis_logistic_step(std::get<LogisticState>(state), t, data_, kPriorPrecision,
                                      rng, stats);
}

double PimaModel::log_likelihood(const ChainState& state) const {
    return std::get<LogisticState>(state).loglik;
}

double PimaModel::log_prior(const ChainState& state) const {
    const auto& s = std::get<LogisticState>(state);
    const double p = static_cast<double>(s.theta.size());
    return 0.5 * p * (std::log(kPriorPrecision) - std::log(2.0 * M_PI)) -
           0.5 * kPriorPrecision * s.theta.squaredNorm();
}

}  // namespace evid::models
