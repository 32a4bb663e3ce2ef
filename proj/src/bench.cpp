#include "evidencer/bench.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "evidencer/dataset.hpp"
#include "evidencer/models/galaxy.hpp"
#include "evidencer/models/pima.hpp"
#include "evidencer/models/radiata.hpp"

namespace evid::bench {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw std::runtime_error("bad numeric field '" + s + "' in " + where);
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return json::parse(in);
}

json report_to_json(const ReportRecord& r) {
    json j{{"model", r.model},
           {"scheme", r.scheme},
           {"n", r.n},
           {"log_z_standard", r.report.log_z_standard},
           {"log_z_modified", r.report.log_z_modified},
           {"lower_bound", r.report.lower_bound},
           {"upper_bound", r.report.upper_bound},
           {"s_n", r.report.s_n}};
    if (r.report.log_z_stepping_stone)
        j["log_z_stepping_stone"] = *r.report.log_z_stepping_stone;
    else
        j["log_z_stepping_stone"] = nullptr;
    return j;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (model_id.empty()) throw std::invalid_argument("--model is required");
    if (rung_counts.empty()) throw std::invalid_argument("--rungs must list at least one count");
    for (int n : rung_counts)
        if (n < 1) throw std::invalid_argument("--rungs entries must be positive");
    if (iterations < 1) throw std::invalid_argument("--iters must be positive");
    if (!(burn_fraction >= 0.0 && burn_fraction < 1.0))
        throw std::invalid_argument("--burn must lie in [0, 1)");
    if (static_cast<long>(iterations * (1.0 - burn_fraction)) < 2)
        throw std::invalid_argument("--iters leaves fewer than 2 retained sweeps after --burn");
    if (replicates < 1) throw std::invalid_argument("--reps must be positive");
    if (!(pf_power > 0.0)) throw std::invalid_argument("--pf-power must be positive");
    if (!estimators.any()) throw std::invalid_argument("--estimators selects nothing");
    if (out_dir.empty()) throw std::invalid_argument("--out is required");
    if (threads < 0) throw std::invalid_argument("--threads must be >= 0");
}

std::unique_ptr<Model> make_model(const std::string& id, const std::filesystem::path& data_dir) {
    const auto dir = data_dir.empty() ? dataset::default_dir() : data_dir;
    if (id == "radiata1") return std::make_unique<models::RadiataModel>(1, dir);
    if (id == "radiata2") return std::make_unique<models::RadiataModel>(2, dir);
    if (id == "pima1") return std::make_unique<models::PimaModel>(1, dir);
    if (id == "pima2") return std::make_unique<models::PimaModel>(2, dir);
    if (id == "galaxy3") return std::make_unique<models::GalaxyModel>(3, dir);
    if (id == "galaxy4") return std::make_unique<models::GalaxyModel>(4, dir);
    throw std::invalid_argument("--model: unknown model '" + id + "'");
}

std::string scheme_name(ScheduleKind kind) {
    return kind == ScheduleKind::powered_fraction ? "pf" : "adaptive";
}

void emit_curve(const DevianceCurve& curve, const std::filesystem::path& path, Format format) {
    auto out = open_out(path);
    if (format == Format::csv) {
        out << "t,mean_logdev,var_logdev,sample_count\n";
        for (const auto& p : curve.points())
            out << fmt17(p.t) << ',' << fmt17(p.mean_logdev) << ',' << fmt17(p.var_logdev) << ','
                << p.sample_count << '\n';
    } else {
        json rows = json::array();
        for (const auto& p : curve.points())
            rows.push_back({{"t", p.t},
                            {"mean_logdev", p.mean_logdev},
                            {"var_logdev", p.var_logdev},
                            {"sample_count", p.sample_count}});
        out << json{{"curve", rows}}.dump(2) << '\n';
    }
}

DevianceCurve read_curve(const std::filesystem::path& path, Format format) {
    std::vector<RungEstimate> pts;
    if (format == Format::csv) {
        const auto lines = read_lines(path);
        if (lines.empty() || lines[0] != "t,mean_logdev,var_logdev,sample_count")
            throw std::runtime_error("bad curve header in " + path.string());
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            const auto cells = split_line(lines[i]);
            if (cells.size() != 4) throw std::runtime_error("bad curve row in " + path.string());
            pts.push_back({parse_double(cells[0], path.string()),
                           parse_double(cells[1], path.string()),
                           parse_double(cells[2], path.string()),
                           static_cast<std::int64_t>(std::stoll(cells[3]))});
        }
    } else {
        for (const auto& row : load_json(path).at("curve"))
            pts.push_back({row.at("t").get<double>(), row.at("mean_logdev").get<double>(),
                           row.at("var_logdev").get<double>(),
                           row.at("sample_count").get<std::int64_t>()});
    }
    return DevianceCurve(std::move(pts));
}

void emit_report(const ReportRecord& r, const std::filesystem::path& path, Format format) {
    auto out = open_out(path);
    if (format == Format::csv) {
        out << "model,scheme,n,log_z_standard,log_z_modified,log_z_stepping_stone,"
               "lower_bound,upper_bound,s_n\n";
        out << r.model << ',' << r.scheme << ',' << r.n << ',' << fmt17(r.report.log_z_standard)
            << ',' << fmt17(r.report.log_z_modified) << ','
            << (r.report.log_z_stepping_stone ? fmt17(*r.report.log_z_stepping_stone) : "") << ','
            << fmt17(r.report.lower_bound) << ',' << fmt17(r.report.upper_bound) << ','
            << fmt17(r.report.s_n) << '\n';
    } else {
        out << report_to_json(r).dump(2) << '\n';
    }
}

ReportRecord read_report(const std::filesystem::path& path, Format format) {
    ReportRecord r;
    if (format == Format::csv) {
        const auto lines = read_lines(path);
        if (lines.size() < 2) throw std::runtime_error("bad report file " + path.string());
        const auto cells = split_line(lines[1]);
        if (cells.size() != 9) throw std::runtime_error("bad report row in " + path.string());
        r.model = cells[0];
        r.scheme = cells[1];
        r.n = std::stoi(cells[2]);
        r.report.log_z_standard = parse_double(cells[3], path.string());
        r.report.log_z_modified = parse_double(cells[4], path.string());
        if (!cells[5].empty()) r.report.log_z_stepping_stone = parse_double(cells[5], path.string());
        r.report.lower_bound = parse_double(cells[6], path.string());
        r.report.upper_bound = parse_double(cells[7], path.string());
        r.report.s_n = parse_double(cells[8], path.string());
    } else {
        const json j = load_json(path);
        r.model = j.at("model").get<std::string>();
        r.scheme = j.at("scheme").get<std::string>();
        r.n = j.at("n").get<int>();
        r.report.log_z_standard = j.at("log_z_standard").get<double>();
        r.report.log_z_modified = j.at("log_z_modified").get<double>();
        if (!j.at("log_z_stepping_stone").is_null())
            r.report.log_z_stepping_stone = j.at("log_z_stepping_stone").get<double>();
        r.report.lower_bound = j.at("lower_bound").get<double>();
        r.report.upper_bound = j.at("upper_bound").get<double>();
        r.report.s_n = j.at("s_n").get<double>();
    }
    return r;
}

void emit_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path,
                  Format format) {
    auto out = open_out(path);
    if (format == Format::csv) {
        out << "model,scheme,estimator,n,replicates,truth,mean,bias,se,rmse\n";
        for (const auto& r : rows)
            out << r.model << ',' << r.scheme << ',' << r.estimator << ',' << r.n << ','
                << r.replicates << ',' << fmt17(r.truth) << ',' << fmt17(r.mean) << ','
                << fmt17(r.bias) << ',' << fmt17(r.se) << ',' << fmt17(r.rmse) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"model", r.model},
                           {"scheme", r.scheme},
                           {"estimator", r.estimator},
                           {"n", r.n},
                           {"replicates", r.replicates},
                           {"truth", r.truth},
                           {"mean", r.mean},
                           {"bias", r.bias},
                           {"se", r.se},
                           {"rmse", r.rmse}});
        out << json{{"summary", arr}}.dump(2) << '\n';
    }
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path, Format format) {
    std::vector<SummaryRow> rows;
    if (format == Format::csv) {
        const auto lines = read_lines(path);
        if (lines.empty() ||
            lines[0] != "model,scheme,estimator,n,replicates,truth,mean,bias,se,rmse")
            throw std::runtime_error("bad summary header in " + path.string());
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            const auto c = split_line(lines[i]);
            if (c.size() != 10) throw std::runtime_error("bad summary row in " + path.string());
            rows.push_back({c[0], c[1], c[2], std::stoi(c[3]), std::stoi(c[4]),
                            parse_double(c[5], path.string()), parse_double(c[6], path.string()),
                            parse_double(c[7], path.string()), parse_double(c[8], path.string()),
                            parse_double(c[9], path.string())});
        }
    } else {
        for (const auto& j : load_json(path).at("summary"))
            rows.push_back({j.at("model").get<std::string>(), j.at("scheme").get<std::string>(),
                            j.at("estimator").get<std::string>(), j.at("n").get<int>(),
                            j.at("replicates").get<int>(), j.at("truth").get<double>(),
                            j.at("mean").get<double>(), j.at("bias").get<double>(),
                            j.at("se").get<double>(), j.at("rmse").get<double>()});
    }
    return rows;
}

double recompute_truth_value(const Model& model, int rungs, long iterations, std::uint64_t seed) {
    PipelineConfig pc;
    pc.schedule = {ScheduleKind::powered_fraction, rungs, 5.0};
    pc.run = {iterations, 0.2, derive_seed(seed, 0)};
    pc.estimators = {true, true, false};
    const auto res = estimator::run_pipeline(model, pc);
    return res.report.log_z_modified;
}

std::optional<double> resolve_truth(const Model& model, const ExperimentConfig& config) {
    if (config.truth_override) return config.truth_override;
    if (auto z = model.analytic_log_evidence()) return z;
    if (model.benchmark_log_evidence()) {
        if (config.recompute_truth)
            return recompute_truth_value(model, 2000, 20000, config.seed ^ 0x7472757468ULL);
        return model.benchmark_log_evidence();
    }
    return std::nullopt;
}

namespace {

void append_summary_rows(std::vector<SummaryRow>& all, const std::string& model,
                         const std::string& scheme, int n,
                         const estimator::ReplicationSummary& s) {
    auto add = [&](const char* name, const std::optional<estimator::EstimateStats>& st) {
        if (!st) return;
        all.push_back({model, scheme, name, n, s.replicates, s.truth, st->mean, st->bias, st->se,
                       st->rmse});
    };
    add("standard", s.standard);
    add("modified", s.modified);
    add("stepping_stone", s.stepping_stone);
}

void print_summary_table(const std::vector<SummaryRow>& rows, std::ostream& out) {
    if (rows.empty()) return;
    out << std::left << std::setw(10) << "model" << std::setw(10) << "scheme" << std::setw(16)
        << "estimator" << std::right << std::setw(6) << "n" << std::setw(6) << "reps"
        << std::setw(14) << "truth" << std::setw(14) << "mean" << std::setw(12) << "bias"
        << std::setw(12) << "se" << std::setw(12) << "rmse" << '\n';
    for (const auto& r : rows) {
        out << std::left << std::setw(10) << r.model << std::setw(10) << r.scheme << std::setw(16)
            << r.estimator << std::right << std::setw(6) << r.n << std::setw(6) << r.replicates
            << std::fixed << std::setprecision(4) << std::setw(14) << r.truth << std::setw(14)
            << r.mean << std::setw(12) << r.bias << std::setw(12) << r.se << std::setw(12)
            << r.rmse << '\n';
        out.unsetf(std::ios::fixed);
    }
}

void print_report(const ReportRecord& r, std::ostream& out) {
    out << r.model << ' ' << r.scheme << " n=" << r.n << std::fixed << std::setprecision(4)
        << "  standard=" << r.report.log_z_standard << "  modified=" << r.report.log_z_modified;
    if (r.report.log_z_stepping_stone) out << "  stepping_stone=" << *r.report.log_z_stepping_stone;
    out << "  bounds=[" << r.report.lower_bound << ", " << r.report.upper_bound
        << "]  s_n=" << r.report.s_n << '\n';
    out.unsetf(std::ios::fixed);
}

std::string ext(Format f) { return f == Format::csv ? ".csv" : ".json"; }

}  // namespace

std::vector<OutputBundle> run_experiment(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto model = make_model(config.model_id, config.data_dir);
    const auto truth = resolve_truth(*model, config);
    if (config.replicates >= 2 && !truth)
        throw std::runtime_error("no ground truth available for '" + config.model_id +
                                 "'; pass --truth to compute bias summaries");

    std::filesystem::create_directories(config.out_dir);
    const std::string scheme = scheme_name(config.schedule);

    std::vector<OutputBundle> bundles;
    std::vector<SummaryRow> all_rows;
    for (int n : config.rung_counts) {
        PipelineConfig pc;
        pc.schedule = {config.schedule, n, config.pf_power};
        pc.run = {config.iterations, config.burn_fraction, 0};
        pc.estimators = config.estimators;
        pc.keep_samples = config.estimators.stepping_stone;

        std::vector<SummaryRow> rows;
        std::optional<PipelineResult> first;
        if (config.replicates >= 2) {
            PipelineResult res{EvidenceReport{}, DevianceCurve({{0, 0, 0, 2}, {1, 0, 0, 2}}), {}};
            const auto summary = estimator::replicate(*model, pc, config.replicates, *truth,
                                                      config.seed, config.threads, &res);
            append_summary_rows(rows, config.model_id, scheme, n, summary);
            first = std::move(res);
        } else {
            pc.run.rng_seed = derive_seed(config.seed, 0);
            first = estimator::run_pipeline(*model, pc);
        }

        const std::string stem = config.model_id + "_" + scheme + "_n" + std::to_string(n);
        ReportRecord record{config.model_id, scheme, n, first->report};
        emit_curve(first->curve, config.out_dir / ("curve_" + stem + ext(config.format)),
                   config.format);
        emit_report(record, config.out_dir / ("report_" + stem + ext(config.format)),
                    config.format);
        print_report(record, out);

        all_rows.insert(all_rows.end(), rows.begin(), rows.end());
        bundles.push_back({std::move(first->curve), std::move(record), std::move(rows)});
    }

    emit_summary(all_rows, config.out_dir / ("summary" + ext(config.format)), config.format);
    print_summary_table(all_rows, out);
    return bundles;
}

std::string TimingCombo::name() const {
    return scheme_name(schedule) + std::string(modified ? "-modified" : "-standard");
}

TimingReport timing_probe(const TimingConfig& config) {
    if (config.combos.size() < 2)
        throw std::invalid_argument("timing_probe: need >=2 schemes to compare");
    const auto model = make_model(config.model_id, config.data_dir);

    TimingReport rep;
    for (const auto& combo : config.combos) {
        PipelineConfig pc;
        pc.schedule = {combo.schedule, config.rungs, 5.0};
        pc.run = {config.iterations, config.burn_fraction, derive_seed(config.seed, 0)};
        pc.estimators = {!combo.modified, combo.modified, false};

        const auto start = std::chrono::steady_clock::now();
        (void)estimator::run_pipeline(*model, pc);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        rep.names.push_back(combo.name());
        rep.seconds.push_back(elapsed.count());
    }
    for (double s : rep.seconds) rep.ratios.push_back(s / rep.seconds.front());
    return rep;
}

namespace {

EstimatorSet parse_estimators(const std::vector<std::string>& tokens) {
    EstimatorSet set{false, false, false};
    for (const auto& t : tokens) {
        if (t == "all")
            set = EstimatorSet::all();
        else if (t == "standard")
            set.standard = true;
        else if (t == "modified")
            set.modified = true;
        else if (t == "ss")
            set.stepping_stone = true;
        else
            throw CLI::ValidationError("--estimators", "unknown estimator '" + t + "'");
    }
    return set;
}

std::vector<TimingCombo> parse_combos(const std::vector<std::string>& tokens) {
    std::vector<TimingCombo> combos;
    for (const auto& t : tokens) {
        if (t == "pf-standard")
            combos.push_back({ScheduleKind::powered_fraction, false});
        else if (t == "pf-modified")
            combos.push_back({ScheduleKind::powered_fraction, true});
        else if (t == "adaptive-standard")
            combos.push_back({ScheduleKind::adaptive, false});
        else if (t == "adaptive-modified")
            combos.push_back({ScheduleKind::adaptive, true});
        else
            throw CLI::ValidationError("--schemes", "unknown scheme '" + t + "'");
    }
    return combos;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"Marginal likelihood estimation with power posteriors"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML file (flags take precedence)");

    const std::map<std::string, ScheduleKind> schedule_map{
        {"pf", ScheduleKind::powered_fraction}, {"adaptive", ScheduleKind::adaptive}};
    const std::map<std::string, Format> format_map{{"csv", Format::csv}, {"json", Format::json}};

    // ---- run
    auto* run = app.add_subcommand("run", "Estimate evidence and write curve/report/summary files");
    ExperimentConfig cfg;
    std::vector<std::string> estimator_tokens{"all"};
    std::string data_dir, out_dir;
    double truth = 0.0;
    run->add_option("--model", cfg.model_id,
                    "Model id: radiata1, radiata2, pima1, pima2, galaxy3, galaxy4")
        ->required();
    run->add_option("--schedule", cfg.schedule, "Rung placement: pf or adaptive")
        ->transform(CLI::CheckedTransformer(schedule_map))
        ->default_str("pf");
    run->add_option("--pf-power", cfg.pf_power, "Powered-fraction exponent")->capture_default_str();
    run->add_option("--rungs", cfg.rung_counts, "Interval counts, comma separated")
        ->required()
        ->delimiter(',');
    run->add_option("--iters", cfg.iterations, "MCMC sweeps per rung")->capture_default_str();
    run->add_option("--burn", cfg.burn_fraction, "Burn-in fraction")->capture_default_str();
    run->add_option("--reps", cfg.replicates, "Independent replicates")->capture_default_str();
    run->add_option("--estimators", estimator_tokens,
                    "Comma list of standard, modified, ss, or all")
        ->delimiter(',');
    run->add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--format", cfg.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(format_map))
        ->default_str("csv");
    auto* truth_opt = run->add_option("--truth", truth, "Override the ground-truth log evidence");
    run->add_flag("--recompute-truth", cfg.recompute_truth,
                  "Recompute a stored benchmark truth with a long run (slow)");
    run->add_option("--data", data_dir, "Dataset directory (default: bundled data)");
    run->add_option("--threads", cfg.threads, "Worker threads for replicates (0 = auto)");

    // ---- timing
    auto* timing = app.add_subcommand("timing", "Relative wall-clock cost of the schemes");
    TimingConfig tcfg;
    std::vector<std::string> combo_tokens{"pf-standard", "pf-modified", "adaptive-standard",
                                          "adaptive-modified"};
    std::string tdata_dir;
    timing->add_option("--model", tcfg.model_id, "Model id")->required();
    timing->add_option("--rungs", tcfg.rungs, "Interval count")->capture_default_str();
    timing->add_option("--iters", tcfg.iterations, "MCMC sweeps per rung")->capture_default_str();
    timing->add_option("--burn", tcfg.burn_fraction, "Burn-in fraction")->capture_default_str();
    timing->add_option("--seed", tcfg.seed, "Master RNG seed")->capture_default_str();
    timing->add_option("--schemes", combo_tokens, "Comma list of scheme-estimator combos")
        ->delimiter(',');
    timing->add_option("--data", tdata_dir, "Dataset directory (default: bundled data)");

    try {
        std::vector<const char*> argv;
        argv.push_back("evidencer");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (run->parsed()) {
            cfg.estimators = parse_estimators(estimator_tokens);
            cfg.out_dir = out_dir;
            cfg.data_dir = data_dir;
            if (*truth_opt) cfg.truth_override = truth;
            run_experiment(cfg, std::cout);
        } else {
            tcfg.combos = parse_combos(combo_tokens);
            tcfg.data_dir = tdata_dir;
            const auto rep = timing_probe(tcfg);
            std::cout << std::left << std::setw(20) << "combo" << std::right << std::setw(12)
                      << "seconds" << std::setw(10) << "ratio" << '\n';
            for (std::size_t i = 0; i < rep.names.size(); ++i)
                std::cout << std::left << std::setw(20) << rep.names[i] << std::right
                          << std::fixed << std::setprecision(3) << std::setw(12) << rep.seconds[i]
                          << std::setprecision(4) << std::setw(10) << rep.ratios[i] << '\n';
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace evid::bench
