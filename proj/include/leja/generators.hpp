#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>

#include "leja/domain.hpp"
#include "leja/polyeval.hpp"
#include "leja/rng.hpp"

namespace leja {

struct GeneratorConfig {
    Method method = Method::rm;
    std::size_t n_target = 1;
    double epsilon = 0.01;
    std::uint64_t seed = 0;
    /// Grid size for grid-leja and for the rejection-sampling upper bound.
    std::size_t grid_size = 100000;
    /// Overrides the exponent-derived candidate budget N_n = floor(n^alpha).
    std::optional<double> alpha_override;
    /// Boundary mesh holds ceil(c * n^r_m) points at step n.
    double mesh_multiplier = 4.0;
    /// Rejection sampling gives up after this many attempts per node.
    std::size_t max_attempts = 1000000;
};

struct ProgressEvent {
    std::size_t n = 0;           // index of the node just produced
    std::size_t candidates = 0;  // per-step candidate budget (N_n, mesh or grid size, attempts)
    double elapsed_seconds = 0.0;
};
using ProgressSink = std::function<void(const ProgressEvent&)>;

/// N_n = max(1, floor(n^alpha)); values within 1e-9 of the next integer are
/// snapped up before flooring, removing platform-dependent off-by-one at
/// exact powers.
std::size_t step_count(std::size_t n, double alpha);

/// alpha_override if present, else r_l + eps for MH and r_m * r_c + eps for
/// RM. Other methods have no candidate exponent.
std::optional<double> effective_alpha(const CompactDomain& domain, const GeneratorConfig& config);

/// Metropolis acceptance rule in log space, with the conventions for
/// coincident points: a -infinity candidate always loses; a -infinity state
/// accepts any finite candidate.
bool mh_accept(double log_u, double candidate_log, double state_log);

/// One step of the independent Metropolis-Hastings chain targeting the
/// density proportional to |pi_n|: the chain starts at a uniform draw, runs
/// big_n accept/reject iterations against fresh uniform proposals, and
/// returns the final state. log|pi_n| is evaluated exactly big_n + 1 times.
Complex next_mh_point(std::span<const Complex> existing, const CompactDomain& domain,
                      std::size_t big_n, const SplitStream& stream);

/// Argmax of log|pi_n| over big_n fresh uniform candidates; ties broken by
/// the smallest draw index. Candidate evaluation runs in parallel.
Complex next_rm_point(std::span<const Complex> existing, const CompactDomain& domain,
                      std::size_t big_n, const SplitStream& stream);

/// Rejection sampling from the density proportional to |pi_n| with the
/// approximate upper bound 2 * max_grid |pi_n|.
Complex next_rejection_point(std::span<const Complex> existing, const CompactDomain& domain,
                             std::span<const Complex> bound_grid, const SplitStream& stream,
                             std::size_t max_attempts);

/// Argmax of log|pi_n| over a fixed grid, ties by smallest grid index.
Complex next_grid_leja_point(std::span<const Complex> existing, std::span<const Complex> grid);

/// Argmax of log|pi_n| over a per-step boundary mesh.
Complex next_mesh_pseudo_leja_point(std::span<const Complex> existing,
                                    std::span<const Complex> boundary_mesh);

/// Produces n_target nodes by the configured method. Step n consumes only
/// substreams keyed by n, so the first n nodes of a longer run coincide
/// bit-for-bit with a shorter run under the same seed.
NodeSequence generate(const CompactDomain& domain, const GeneratorConfig& config,
                      const ProgressSink& progress = {});

/// CSV with header "index,re,im", one node per row, 17 significant digits.
void write_points_csv(const std::filesystem::path& path, const NodeSequence& sequence);
std::vector<Complex> read_points_csv(const std::filesystem::path& path);

}  // namespace leja
