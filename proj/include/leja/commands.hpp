#pragma once

#include <filesystem>
#include <optional>

#include "leja/run_config.hpp"

namespace leja {

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    std::optional<std::filesystem::path> points_file;
    bool quiet = false;
};

/// generate: points.csv + meta.json.
void cmd_generate(const RunConfig& config, const CommandOptions& options);

/// interpolate: error_trace.csv; prints the fitted geometric rate.
void cmd_interpolate(const RunConfig& config, const CommandOptions& options);

/// lebesgue: lebesgue.csv; prints the log-log slope of the series.
void cmd_lebesgue(const RunConfig& config, const CommandOptions& options);

/// report: report.json + histogram.csv over the configured seed ensemble.
/// Per-seed failures are recorded and skipped; throws only when every seed
/// fails.
void cmd_report(const RunConfig& config, const CommandOptions& options);

}  // namespace leja
