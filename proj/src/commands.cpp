#include "leja/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "leja/diagnostics.hpp"
#include "leja/interp.hpp"

namespace leja {

using nlohmann::json;

namespace {

void ensure_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw ConfigError("output directory is not writable: " + dir.string());
}

void write_series_csv(const std::filesystem::path& path, const Series& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "n,value\n";
    char buf[64];
    for (const auto& [n, v] : series) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", n, v);
        out << buf;
    }
}

void write_histogram_csv(const std::filesystem::path& path,
                         const std::vector<HistogramBin>& bins) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "bin_left,bin_right,density\n";
    char buf[128];
    for (const auto& b : bins) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", b.left, b.right, b.density);
        out << buf;
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

json series_to_json(const Series& series) {
    json n = json::array(), value = json::array();
    for (const auto& [k, v] : series) {
        n.push_back(k);
        value.push_back(v);
    }
    return json{{"n", n}, {"value", value}};
}

std::vector<Complex> load_points(const RunConfig& config, const CommandOptions& options) {
    if (!options.points_file) throw ConfigError("this command needs --points <csv>");
    if (!std::filesystem::exists(*options.points_file))
        throw ConfigError("points file does not exist: " + options.points_file->string());
    std::vector<Complex> nodes;
    try {
        nodes = read_points_csv(*options.points_file);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const auto& domain = config.domain_ref();
    for (Complex z : nodes)
        if (!domain.contains(z))
            throw ConfigError("points file contains nodes outside the configured domain");
    return nodes;
}

QualityReportOptions report_options(const RunConfig& config) {
    QualityReportOptions opt;
    opt.lebesgue_grid = config.grids.lebesgue;
    opt.eval_grid = config.grids.eval;
    opt.fit_lo = config.fit_lo;
    opt.fit_hi = config.fit_hi;
    opt.histogram_bins = config.histogram_bins;
    opt.function_name = config.function_name;
    return opt;
}

json report_to_json(const QualityReport& report) {
    json j;
    j["seed"] = report.seed;
    j["ok"] = true;
    j["method"] = report.method;
    j["domain"] = report.domain_id;
    if (report.ks_distance) j["ks_distance"] = *report.ks_distance;
    j["lebesgue_slope"] = report.lebesgue_slope ? json(*report.lebesgue_slope) : json(nullptr);
    j["separation_slope"] =
        report.separation_slope ? json(*report.separation_slope) : json(nullptr);
    if (report.geometric_rate) j["geometric_rate"] = *report.geometric_rate;
    if (!report.capacity_supnorm.empty())
        j["capacity_supnorm_final"] = report.capacity_supnorm.back().second;
    if (!report.capacity_transfinite.empty())
        j["capacity_transfinite_final"] = report.capacity_transfinite.back().second;
    j["series"] = {{"lebesgue", series_to_json(report.lebesgue)},
                   {"min_separation", series_to_json(report.min_separation)},
                   {"capacity_supnorm", series_to_json(report.capacity_supnorm)},
                   {"capacity_transfinite", series_to_json(report.capacity_transfinite)},
                   {"pseudo_leja_ratio", series_to_json(report.pseudo_leja_ratio)}};
    if (!report.error_trace.empty()) j["series"]["error_trace"] = series_to_json(report.error_trace);
    j["grids"] = {{"lebesgue", report.lebesgue_grid}, {"eval", report.eval_grid}};
    j["fit_range"] = json::array({report.fit_lo, report.fit_hi});
    return j;
}

}  // namespace

void cmd_generate(const RunConfig& config, const CommandOptions& options) {
    const auto& domain = config.domain_ref();
    ensure_out_dir(options.out_dir);
    const std::uint64_t seed = options.seed_override.value_or(config.seeds.front());
    const GeneratorConfig gen = config.generator_config(seed);
    const std::optional<double> alpha = effective_alpha(domain, gen);

    struct Checkpoint {
        std::size_t n, candidates;
        double elapsed_seconds;
    };
    std::vector<Checkpoint> checkpoints;
    const ProgressSink sink = [&](const ProgressEvent& ev) {
        const std::size_t produced = ev.n + 1;
        if (produced % 100 != 0 && produced != config.n_target) return;
        const std::size_t budget =
            alpha ? step_count(produced, *alpha) : ev.candidates;
        checkpoints.push_back({produced, budget, ev.elapsed_seconds});
        if (!options.quiet)
            std::fprintf(stderr, "generated %zu/%zu nodes (%.1fs)\n", produced, config.n_target,
                         ev.elapsed_seconds);
    };

    const NodeSequence seq = generate(domain, gen, sink);
    write_points_csv(options.out_dir / "points.csv", seq);

    json meta;
    meta["config"] = run_config_to_json(config);
    meta["method"] = method_name(config.method);
    meta["seed"] = seed;
    meta["alpha"] = alpha ? json(*alpha) : json(nullptr);
    meta["n"] = seq.nodes.size();
    meta["domain"] = domain_to_json(domain);
    json cps = json::array();
    for (const auto& cp : checkpoints)
        cps.push_back({{"n", cp.n},
                       {"candidates", cp.candidates},
                       {"elapsed_seconds", cp.elapsed_seconds}});
    meta["checkpoints"] = cps;
    write_json(options.out_dir / "meta.json", meta);
}

void cmd_interpolate(const RunConfig& config, const CommandOptions& options) {
    const auto& domain = config.domain_ref();
    ensure_out_dir(options.out_dir);
    const auto nodes = load_points(config, options);
    const std::string fname =
        config.function_name.empty() ? std::string("runge_complex") : config.function_name;
    try {
        check_function_on_domain(fname, domain);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto trace = error_trace(domain, nodes, test_function(fname), config.grids.eval);
    write_series_csv(options.out_dir / "error_trace.csv", trace);
    try {
        std::printf("geometric_rate %.6f\n", geometric_rate(trace, 1e-13));
    } catch (const std::invalid_argument&) {
        std::printf("geometric_rate unavailable (too few usable points)\n");
    }
}

void cmd_lebesgue(const RunConfig& config, const CommandOptions& options) {
    const auto& domain = config.domain_ref();
    ensure_out_dir(options.out_dir);
    const auto nodes = load_points(config, options);
    const auto grid = domain.eval_grid(config.grids.lebesgue);
    Series series;
    for (const auto& est : lebesgue_series(nodes, grid, 1, nodes.size()))
        series.emplace_back(est.n, est.value);
    write_series_csv(options.out_dir / "lebesgue.csv", series);
    const std::size_t hi = std::min(config.fit_hi, nodes.size());
    try {
        std::printf("loglog_slope %.6f (n in [%zu, %zu])\n",
                    loglog_slope(series, config.fit_lo, hi).slope, config.fit_lo, hi);
    } catch (const std::invalid_argument&) {
        std::printf("loglog_slope unavailable (too few points in range)\n");
    }
}

void cmd_report(const RunConfig& config, const CommandOptions& options) {
    const auto& domain = config.domain_ref();
    ensure_out_dir(options.out_dir);
    const QualityReportOptions opt = report_options(config);

    const std::size_t count = config.seeds.size();
    std::vector<std::optional<QualityReport>> reports(count);
    std::vector<NodeSequence> sequences(count);
    std::vector<std::string> errors(count);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            const GeneratorConfig gen = config.generator_config(config.seeds[idx]);
            sequences[idx] = generate(domain, gen);
            reports[idx] = quality_report(domain, sequences[idx], opt);
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    }

    json seeds_json = json::array();
    std::vector<QualityReport> ok;
    std::vector<Complex> pooled_nodes;
    for (std::size_t i = 0; i < count; ++i) {
        if (reports[i]) {
            seeds_json.push_back(report_to_json(*reports[i]));
            ok.push_back(*reports[i]);
            pooled_nodes.insert(pooled_nodes.end(), sequences[i].nodes.begin(),
                                sequences[i].nodes.end());
            if (!options.quiet)
                std::fprintf(stderr, "seed %llu: ok\n",
                             static_cast<unsigned long long>(config.seeds[i]));
        } else {
            seeds_json.push_back(
                {{"seed", config.seeds[i]}, {"ok", false}, {"error", errors[i]}});
            std::fprintf(stderr, "seed %llu: FAILED: %s\n",
                         static_cast<unsigned long long>(config.seeds[i]), errors[i].c_str());
        }
    }
    if (ok.empty()) throw std::runtime_error("report: every seed failed");

    json ensemble = nullptr;
    if (ok.size() >= 2) {
        try {
            const EnsembleStats stats =
                ensemble_stats(ok, config.fit_lo, std::min(config.fit_hi, config.n_target));
            ensemble = {{"n", stats.n},
                        {"lebesgue_mean", stats.lebesgue_mean},
                        {"lebesgue_sd", stats.lebesgue_sd},
                        {"mean_slope", stats.mean_slope},
                        {"sd_slope", stats.sd_slope ? json(*stats.sd_slope) : json(nullptr)}};
            std::printf("mean_lebesgue_slope %.6f\n", stats.mean_slope);
        } catch (const std::invalid_argument& e) {
            std::fprintf(stderr, "ensemble stats unavailable: %s\n", e.what());
        }
    }

    json root;
    root["config"] = run_config_to_json(config);
    root["seeds"] = seeds_json;
    root["ensemble"] = ensemble;
    write_json(options.out_dir / "report.json", root);

    write_histogram_csv(options.out_dir / "histogram.csv",
                        projection_histogram(pooled_nodes, domain, config.histogram_bins));
}

}  // namespace leja
