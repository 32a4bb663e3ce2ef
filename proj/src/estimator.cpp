#include "evidencer/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

namespace evid {

void PipelineConfig::validate() const {
    run.validate();
    if (schedule.rung_count < 1)
        throw std::invalid_argument("PipelineConfig: rung_count must be >= 1");
    if (schedule.kind == ScheduleKind::powered_fraction && !(schedule.pf_power > 0.0))
        throw std::invalid_argument("PipelineConfig: pf_power must be > 0");
    if (estimators.stepping_stone && !keep_samples)
        throw std::invalid_argument("PipelineConfig: stepping stone requires keep_samples");
}

namespace estimator {

namespace {

kernels::RungResult default_runner(const Model& model, double t, ChainState init,
                                   const RunConfig& config, Rng& rng, bool keep) {
    return kernels::run_rung(model, t, std::move(init), config, rng, keep);
}

}  // namespace

PipelineResult run_pipeline(const Model& model, const PipelineConfig& config,
                            const RungRunner& runner_in) {
    config.validate();
    const RungRunner& runner = runner_in ? runner_in : default_runner;
    Rng rng(config.run.rng_seed);
    const bool keep = config.keep_samples;

    std::vector<RungEstimate> estimates;
    std::vector<std::vector<double>> samples;  // rung order, t < 1 only
    std::vector<RungDiagnostics> diagnostics;

    std::optional<Ladder> built;
    if (config.schedule.kind == ScheduleKind::powered_fraction) {
        Ladder lad = ladder::pf_schedule(config.schedule.rung_count, config.schedule.pf_power);
        const std::size_t m = lad.size();
        estimates.resize(m);
        diagnostics.resize(m);
        if (keep) samples.resize(m - 1);

        ChainState state = model.draw_from_prior(rng);
        for (std::size_t idx = m; idx-- > 0;) {
            const double t = lad[idx];
            kernels::RungResult res;
            try {
                res = runner(model, t, std::move(state), config.run, rng, keep && t < 1.0);
            } catch (const std::exception& ex) {
                throw std::runtime_error("run_pipeline: rung t=" + std::to_string(t) +
                                         " failed: " + ex.what());
            }
            state = std::move(res.final_state);
            estimates[idx] = res.estimate;
            diagnostics[idx] = {t, res.acceptance_rate};
            if (keep && t < 1.0) samples[idx] = std::move(res.loglik_samples);
        }
        built = std::move(lad);
    } else {
        // Warm-start bookkeeping: final state of every finished rung, keyed by t.
        std::map<double, ChainState> finals;
        std::map<double, std::vector<double>> samples_by_t;
        std::map<double, double> acceptance_by_t;

        CurveEvaluator eval = [&](double t) -> RungEstimate {
            ChainState init;
            if (finals.empty()) {
                init = model.draw_from_prior(rng);
            } else {
                auto it = finals.upper_bound(t);  // currently closest larger t
                if (it == finals.end()) --it;
                init = it->second;
            }
            auto res = runner(model, t, std::move(init), config.run, rng, keep && t < 1.0);
            finals[t] = std::move(res.final_state);
            acceptance_by_t[t] = res.acceptance_rate;
            if (keep && t < 1.0) samples_by_t[t] = std::move(res.loglik_samples);
            return res.estimate;
        };

        auto [lad, curve] = ladder::adaptive_build(config.schedule.rung_count, eval);
        estimates.assign(curve.points().begin(), curve.points().end());
        for (double t : lad.rungs()) diagnostics.push_back({t, acceptance_by_t.at(t)});
        if (keep) {
            samples.reserve(lad.size() - 1);
            for (std::size_t i = 0; i + 1 < lad.size(); ++i)
                samples.push_back(std::move(samples_by_t.at(lad[i])));
        }
        built = std::move(lad);
    }

    PipelineResult out{EvidenceReport{}, DevianceCurve(std::move(estimates)), std::move(diagnostics)};
    out.report.log_z_standard = quad::trapezium(out.curve);
    out.report.log_z_modified = quad::corrected_trapezium(out.curve);
    const SnBounds b = quad::sn_bounds(out.curve);
    out.report.lower_bound = b.lower;
    out.report.upper_bound = b.upper;
    out.report.s_n = b.s_n;
    if (config.estimators.stepping_stone)
        out.report.log_z_stepping_stone = quad::stepping_stone(*built, samples);
    return out;
}

namespace {

EstimateStats summarise(const std::vector<double>& values, double truth) {
    EstimateStats s;
    const double n = static_cast<double>(values.size());
    for (double v : values) s.mean += v;
    s.mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0));
    s.bias = s.mean - truth;
    s.rmse = std::sqrt(s.bias * s.bias + s.se * s.se);
    return s;
}

}  // namespace

ReplicationSummary replicate(const Model& model, const PipelineConfig& config, int R,
                             double truth, std::uint64_t master_seed, int threads,
                             PipelineResult* first_out, const RungRunner& runner) {
    if (R < 2) throw std::invalid_argument("replicate: need at least 2 replicates");
    config.validate();

    std::vector<double> std_v(R), mod_v(R), ss_v(R);
    std::vector<std::exception_ptr> errors(R);
    std::atomic<int> next{0};

    auto work = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= R) return;
            try {
                PipelineConfig c = config;
                c.run.rng_seed = derive_seed(master_seed, static_cast<std::uint64_t>(r));
                PipelineResult res = run_pipeline(model, c, runner);
                std_v[r] = res.report.log_z_standard;
                mod_v[r] = res.report.log_z_modified;
                if (config.estimators.stepping_stone) ss_v[r] = *res.report.log_z_stepping_stone;
                if (r == 0 && first_out) *first_out = std::move(res);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };

    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, R);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    for (int r = 0; r < R; ++r) {
        if (errors[r]) {
            try {
                std::rethrow_exception(errors[r]);
            } catch (const std::exception& ex) {
                throw std::runtime_error("replicate " + std::to_string(r) + " failed: " + ex.what());
            }
        }
    }

    ReplicationSummary out;
    out.replicates = R;
    out.truth = truth;
    if (config.estimators.standard) out.standard = summarise(std_v, truth);
    if (config.estimators.modified) out.modified = summarise(mod_v, truth);
    if (config.estimators.stepping_stone) out.stepping_stone = summarise(ss_v, truth);
    return out;
}

}  // namespace estimator
}  // namespace evid
