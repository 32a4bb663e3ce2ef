// Experiment harness behind the CLI: configuration, model registry,
// machine-readable outputs (CSV or JSON) and the relative-cost probe.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evidencer/estimator.hpp"

namespace evid::bench {

enum class Format { csv, json };

struct ExperimentConfig {
    std::string model_id;  // radiata1, radiata2, pima1, pima2, galaxy3, galaxy4
    ScheduleKind schedule = ScheduleKind::powered_fraction;
    double pf_power = 5.0;
    std::vector<int> rung_counts;
    long iterations = 10000;
    double burn_fraction = 0.2;
    int replicates = 1;
    EstimatorSet estimators;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir;
    Format format = Format::csv;
    std::optional<double> truth_override;
    bool recompute_truth = false;
    std::filesystem::path data_dir;  // empty means the built-in default
    int threads = 0;

    void validate() const;  // names the offending field
};

struct SummaryRow {
    std::string model;
    std::string scheme;     // pf | adaptive
    std::string estimator;  // standard | modified | stepping_stone
    int n = 0;
    int replicates = 0;
    double truth = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double se = 0.0;
    double rmse = 0.0;
};

struct ReportRecord {
    std::string model;
    std::string scheme;
    int n = 0;
    EvidenceReport report;
};

// Everything one experiment produces for a single rung count, plus the
// experiment-wide summary rows it contributed.
struct OutputBundle {
    DevianceCurve curve;
    ReportRecord record;
    std::vector<SummaryRow> summary;
};

std::unique_ptr<Model> make_model(const std::string& id, const std::filesystem::path& data_dir);

std::string scheme_name(ScheduleKind kind);

// Plot-ready curve table; numbers survive a round trip bit-exactly.
void emit_curve(const DevianceCurve& curve, const std::filesystem::path& path, Format format);
DevianceCurve read_curve(const std::filesystem::path& path, Format format);

void emit_report(const ReportRecord& record, const std::filesystem::path& path, Format format);
ReportRecord read_report(const std::filesystem::path& path, Format format);

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path,
                  Format format);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path, Format format);

// Ground truth for bias summaries: the --truth override, then the model's
// closed form, then its stored benchmark. recompute_truth replaces a stored
// benchmark with a fresh long modified-PF run (2000 rungs x 20000 iterations
// by default; hours of compute).
std::optional<double> resolve_truth(const Model& model, const ExperimentConfig& config);
double recompute_truth_value(const Model& model, int rungs, long iterations, std::uint64_t seed);

// Runs the configured experiment, writes all bundle files under out_dir and
// prints the summary table to `out`. Returns the written bundles.
std::vector<OutputBundle> run_experiment(const ExperimentConfig& config, std::ostream& out);

// Relative wall-clock cost of scheme/estimator combinations on one model.
struct TimingCombo {
    ScheduleKind schedule = ScheduleKind::powered_fraction;
    bool modified = false;  // corrected integration rule on top of the curve
    std::string name() const;
};

struct TimingConfig {
    std::string model_id;
    std::filesystem::path data_dir;
    int rungs = 100;
    long iterations = 10000;
    double burn_fraction = 0.2;
    std::uint64_t seed = 1;
    std::vector<TimingCombo> combos;  // first combo is the baseline
};

struct TimingReport {
    std::vector<std::string> names;
    std::vector<double> seconds;
    std::vector<double> ratios;  // relative to the first combo
};

TimingReport timing_probe(const TimingConfig& config);

// Entry point used by the binary: parses argv (without argv[0]) and executes
// the `run` or `timing` subcommand. Returns the process exit code; all
// configuration and data errors map to 2.
int cli_run(const std::vector<std::string>& args);

}  // namespace evid::bench
