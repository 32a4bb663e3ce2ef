// Full evidence-estimation pipelines: schedule construction, sequential rung
// execution with warm starts, curve assembly and the replication harness that
// turns repeated runs into bias / standard error / RMSE summaries.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "evidencer/kernels.hpp"
#include "evidencer/ladder.hpp"
#include "evidencer/model.hpp"
#include "evidencer/quadrature.hpp"

namespace evid {

struct EstimatorSet {
    bool standard = true;
    bool modified = true;
    bool stepping_stone = false;

    static EstimatorSet all() { return {true, true, true}; }
    bool any() const { return standard || modified || stepping_stone; }
};

struct PipelineConfig {
    ScheduleSpec schedule;
    RunConfig run;
    EstimatorSet estimators;
    bool keep_samples = false;  // per-rung log-likelihood arrays are large
    void validate() const;
};

struct RungDiagnostics {
    double t = 0.0;
    double acceptance_rate = 1.0;
};

struct PipelineResult {
    EvidenceReport report;
    DevianceCurve curve;
    std::vector<RungDiagnostics> diagnostics;  // in ladder order
};

// Seam for tests that need exact rung statistics: defaults to kernels::run_rung.
using RungRunner = std::function<kernels::RungResult(
    const Model&, double t, ChainState init, const RunConfig&, Rng&, bool keep_samples)>;

namespace estimator {

// Runs one pipeline. Powered-fraction schedules evaluate rungs from t=1
// downward, each warm-started from the previous (larger-t) final state; the
// t=1 rung starts from a prior draw. Adaptive schedules delegate placement to
// ladder::adaptive_build, warm-starting each new rung from the currently
// closest larger t. Bounds are always included in the report; the stepping
// stone estimate reuses the retained draws at every rung below t=1.
PipelineResult run_pipeline(const Model& model, const PipelineConfig& config,
                            const RungRunner& runner = {});

struct EstimateStats {
    double mean = 0.0;
    double bias = 0.0;
    double se = 0.0;    // sample sd of the replicate estimates (N-1)
    double rmse = 0.0;  // sqrt(bias^2 + se^2)
};

struct ReplicationSummary {
    int replicates = 0;
    double truth = 0.0;
    std::optional<EstimateStats> standard;
    std::optional<EstimateStats> modified;
    std::optional<EstimateStats> stepping_stone;
};

// Runs R independent pipelines with seeds derived from the master seed
// (counter-based, so replicates can run on `threads` workers and still give
// identical results). Summaries cover exactly the requested estimators.
// `first_out`, when given, receives replicate 0's full pipeline result.
ReplicationSummary replicate(const Model& model, const PipelineConfig& config, int R,
                             double truth, std::uint64_t master_seed, int threads = 0,
                             PipelineResult* first_out = nullptr,
                             const RungRunner& runner = {});

}  // namespace estimator
}  // namespace evid
