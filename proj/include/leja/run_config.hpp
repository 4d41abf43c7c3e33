#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leja/domain.hpp"
#include "leja/generators.hpp"

namespace leja {

/// Configuration or usage problem: maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSizes {
    std::size_t generation = 100000;
    std::size_t eval = 10000;
    std::size_t lebesgue = 50000;
};

/// One experiment description, parsed from the JSON config file.
struct RunConfig {
    std::optional<CompactDomain> domain;
    Method method = Method::rm;
    std::size_t n_target = 1;
    double epsilon = 0.01;
    std::optional<double> alpha_override;
    std::vector<std::uint64_t> seeds = {0};
    std::size_t ensemble = 1;
    GridSizes grids;
    std::string function_name;
    double mesh_multiplier = 4.0;
    std::size_t histogram_bins = 50;
    std::size_t fit_lo = 10;
    std::size_t fit_hi = 200;
    std::size_t max_attempts = 1000000;

    const CompactDomain& domain_ref() const;
    GeneratorConfig generator_config(std::uint64_t seed) const;
};

CompactDomain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const CompactDomain& domain);

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& config);

}  // namespace leja
