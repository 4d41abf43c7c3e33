#include <omp.h>

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "leja/commands.hpp"

namespace {

struct GlobalFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::string points_file;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, GlobalFlags& flags, bool wants_points) {
    cmd->add_option("--config", flags.config_path, "JSON experiment configuration")->required();
    cmd->add_option("--out", flags.out_dir, "output directory (default: current)");
    cmd->add_option("--threads", flags.threads, "OpenMP thread count (default: runtime choice)");
    cmd->add_flag("--quiet", flags.quiet, "suppress progress output");
    auto* seed_opt = cmd->add_option("--seed", flags.seed, "override the config seed");
    seed_opt->each([&flags](const std::string&) { flags.seed_given = true; });
    if (wants_points)
        cmd->add_option("--points", flags.points_file, "node CSV produced by `generate`")
            ->required();
}

int run(const std::string& name, const GlobalFlags& flags) {
    if (flags.threads > 0) omp_set_num_threads(flags.threads);
    leja::RunConfig config = leja::load_run_config(flags.config_path);
    if (flags.seed_given) config.seeds.assign(1, flags.seed);

    leja::CommandOptions options;
    options.out_dir = flags.out_dir;
    options.quiet = flags.quiet;
    if (flags.seed_given) options.seed_override = flags.seed;
    if (!flags.points_file.empty()) options.points_file = flags.points_file;

    if (name == "generate")
        leja::cmd_generate(config, options);
    else if (name == "interpolate")
        leja::cmd_interpolate(config, options);
    else if (name == "lebesgue")
        leja::cmd_lebesgue(config, options);
    else
        leja::cmd_report(config, options);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpolation node generators and quality diagnostics on compact subsets of C"};
    app.require_subcommand(1);

    GlobalFlags flags;
    add_common(app.add_subcommand("generate", "generate a node sequence (points.csv, meta.json)"),
               flags, false);
    add_common(app.add_subcommand("interpolate",
                                  "interpolation error trace for a node file (error_trace.csv)"),
               flags, true);
    add_common(app.add_subcommand("lebesgue", "Lebesgue-constant series for a node file"), flags,
               true);
    add_common(app.add_subcommand("report", "ensemble generation + diagnostics (report.json)"),
               flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), flags);
    } catch (const leja::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
