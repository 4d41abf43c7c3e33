#include "leja/generators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace leja {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_config(const GeneratorConfig& config) {
    if (config.n_target < 1) throw std::invalid_argument("generator: n_target must be >= 1");
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("generator: epsilon must be positive");
    if (!(config.mesh_multiplier > 0.0))
        throw std::invalid_argument("generator: mesh_multiplier must be positive");
    if (config.alpha_override && !(*config.alpha_override > 0.0))
        throw std::invalid_argument("generator: alpha override must be positive");
    const bool needs_grid = config.method == Method::grid_leja ||
                            config.method == Method::rejection_random_leja;
    if (needs_grid && config.grid_size < 2)
        throw std::invalid_argument("generator: grid_size must be >= 2");
}

std::size_t mesh_size_for_step(const CompactDomain& domain, const GeneratorConfig& config,
                               std::size_t n) {
    const double r_m = domain.exponents().markov;
    const double raw =
        config.mesh_multiplier * std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), r_m);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

}  // namespace

std::size_t step_count(std::size_t n, double alpha) {
    if (n == 0) throw std::invalid_argument("step_count: n must be >= 1");
    const double raw = std::pow(static_cast<double>(n), alpha);
    const double floored = std::floor(raw + 1e-9);
    if (floored < 1.0) return 1;
    if (floored >= 9.2e18) throw std::invalid_argument("step_count: budget overflows");
    return static_cast<std::size_t>(floored);
}

std::optional<double> effective_alpha(const CompactDomain& domain, const GeneratorConfig& config) {
    if (config.alpha_override) return config.alpha_override;
    switch (config.method) {
        case Method::mh:
            return domain.exponents().nikolskii + config.epsilon;
        case Method::rm:
            return domain.exponents().markov * domain.exponents().covering + config.epsilon;
        default:
            return std::nullopt;
    }
}

bool mh_accept(double log_u, double candidate_log, double state_log) {
    if (candidate_log == kNegInf) return false;   // zero-density candidate never wins
    if (state_log == kNegInf) return true;        // escaping a zero-density state
    return log_u <= candidate_log - state_log;
}

Complex next_mh_point(std::span<const Complex> existing, const CompactDomain& domain,
                      std::size_t big_n, const SplitStream& stream) {
    if (existing.empty()) throw std::invalid_argument("next_mh_point: need at least one node");
    if (big_n < 1) throw std::invalid_argument("next_mh_point: big_n must be >= 1");
    const auto n = static_cast<std::uint64_t>(existing.size());

    Substream init = stream.at(n, 0, Purpose::candidate);
    Complex state = domain.sample_uniform(init);
    double state_log = log_abs_pi(existing, state);
    for (std::uint64_t k = 1; k <= big_n; ++k) {
        Substream cs = stream.at(n, k, Purpose::candidate);
        const Complex candidate = domain.sample_uniform(cs);
        const double candidate_log = log_abs_pi(existing, candidate);
        Substream us = stream.at(n, k, Purpose::accept);
        const double log_u = std::log(us.next_unit());
        if (mh_accept(log_u, candidate_log, state_log)) {
            state = candidate;
            state_log = candidate_log;
        }
    }
    if (state_log == kNegInf)
        throw std::runtime_error("next_mh_point: chain never left a zero-density state");
    return state;
}

namespace {

Complex rm_scan(std::span<const Complex> existing, const CompactDomain& domain, std::size_t big_n,
                const SplitStream& stream, Purpose purpose, bool& all_degenerate) {
    const auto n = static_cast<std::uint64_t>(existing.size());
    double best = kNegInf;
    std::uint64_t best_k = big_n + 1;
    Complex best_point;
#pragma omp parallel
    {
        double local_best = kNegInf;
        std::uint64_t local_k = big_n + 1;
        Complex local_point;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t kk = 1; kk <= static_cast<std::ptrdiff_t>(big_n); ++kk) {
            const auto k = static_cast<std::uint64_t>(kk);
            Substream cs = stream.at(n, k, purpose);
            const Complex candidate = domain.sample_uniform(cs);
            const double v = log_abs_pi(existing, candidate);
            if (v > local_best || (v == local_best && k < local_k)) {
                local_best = v;
                local_k = k;
                local_point = candidate;
            }
        }
#pragma omp critical
        {
            if (local_best > best || (local_best == best && local_k < best_k)) {
                best = local_best;
                best_k = local_k;
                best_point = local_point;
            }
        }
    }
    all_degenerate = (best == kNegInf);
    return best_point;
}

}  // namespace

Complex next_rm_point(std::span<const Complex> existing, const CompactDomain& domain,
                      std::size_t big_n, const SplitStream& stream) {
    if (big_n < 1) throw std::invalid_argument("next_rm_point: big_n must be >= 1");
    bool degenerate = false;
    Complex z = rm_scan(existing, domain, big_n, stream, Purpose::candidate, degenerate);
    if (!degenerate) return z;
    z = rm_scan(existing, domain, big_n, stream, Purpose::retry, degenerate);
    if (!degenerate) return z;
    throw std::runtime_error("next_rm_point: all candidates coincided with existing nodes twice");
}

Complex next_rejection_point(std::span<const Complex> existing, const CompactDomain& domain,
                             std::span<const Complex> bound_grid, const SplitStream& stream,
                             std::size_t max_attempts) {
    if (bound_grid.empty()) throw std::invalid_argument("next_rejection_point: empty bound grid");
    const auto n = static_cast<std::uint64_t>(existing.size());
    const double log_bound = std::numbers::ln2 + sup_norm_estimate(existing, bound_grid).value;
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Substream cs = stream.at(n, attempt, Purpose::candidate);
        const Complex candidate = domain.sample_uniform(cs);
        const double v = log_abs_pi(existing, candidate);
        if (v == kNegInf) continue;  // coincident with a node: zero density
        Substream us = stream.at(n, attempt, Purpose::accept);
        if (std::log(us.next_unit()) <= v - log_bound) return candidate;
    }
    throw std::runtime_error(
        "next_rejection_point: attempt cap reached; the grid-based bound has likely failed");
}

Complex next_grid_leja_point(std::span<const Complex> existing, std::span<const Complex> grid) {
    const SupEstimate best = sup_norm_estimate(existing, grid);
    if (best.value == kNegInf)
        throw std::invalid_argument("next_grid_leja_point: no grid point distinct from the nodes");
    return best.argmax;
}

Complex next_mesh_pseudo_leja_point(std::span<const Complex> existing,
                                    std::span<const Complex> boundary_mesh) {
    const SupEstimate best = sup_norm_estimate(existing, boundary_mesh);
    if (best.value == kNegInf)
        throw std::invalid_argument("next_mesh_pseudo_leja_point: degenerate mesh");
    return best.argmax;
}

NodeSequence generate(const CompactDomain& domain, const GeneratorConfig& config,
                      const ProgressSink& progress) {
    validate_config(config);
    const SplitStream stream(config.seed);
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    NodeSequence seq;
    seq.method = config.method;
    seq.domain_id = domain.describe();
    const bool randomized = config.method == Method::mh || config.method == Method::rm ||
                            config.method == Method::rejection_random_leja;
    if (randomized) seq.seed = config.seed;
    seq.nodes.reserve(config.n_target);

    std::vector<Complex> grid;
    if (config.method == Method::grid_leja || config.method == Method::rejection_random_leja)
        grid = domain.eval_grid(config.grid_size);
    const std::optional<double> alpha = effective_alpha(domain, config);

    // z_0: uniform draw for the randomized methods, argmax of the empty
    // product (first grid/mesh point) for the deterministic ones.
    std::size_t budget0 = 0;
    if (randomized) {
        Substream s0 = stream.at(0, 0, Purpose::init);
        seq.nodes.push_back(domain.sample_uniform(s0));
        budget0 = 1;
    } else if (config.method == Method::grid_leja) {
        seq.nodes.push_back(next_grid_leja_point({}, grid));
        budget0 = grid.size();
    } else {
        const std::size_t count = mesh_size_for_step(domain, config, 1);
        const auto mesh = domain.boundary_mesh(count);
        seq.nodes.push_back(next_mesh_pseudo_leja_point({}, mesh));
        budget0 = mesh.size();
    }
    if (!domain.contains(seq.nodes.back()))
        throw std::runtime_error("generate: node escaped the domain");
    if (progress) progress({0, budget0, elapsed()});

    for (std::size_t n = 1; n < config.n_target; ++n) {
        const std::span<const Complex> existing(seq.nodes.data(), n);
        Complex z;
        std::size_t budget = 0;
        switch (config.method) {
            case Method::mh: {
                budget = step_count(n, *alpha);
                z = next_mh_point(existing, domain, budget, stream);
                break;
            }
            case Method::rm: {
                budget = step_count(n, *alpha);
                z = next_rm_point(existing, domain, budget, stream);
                break;
            }
            case Method::rejection_random_leja: {
                budget = config.max_attempts;
                z = next_rejection_point(existing, domain, grid, stream, config.max_attempts);
                break;
            }
            case Method::grid_leja: {
                budget = grid.size();
                z = next_grid_leja_point(existing, grid);
                break;
            }
            case Method::mesh_pseudo_leja: {
                const auto mesh = domain.boundary_mesh(mesh_size_for_step(domain, config, n));
                budget = mesh.size();
                z = next_mesh_pseudo_leja_point(existing, mesh);
                break;
            }
        }
        if (!domain.contains(z)) throw std::runtime_error("generate: node escaped the domain");
        seq.nodes.push_back(z);
        if (progress) progress({n, budget, elapsed()});
    }

    // Pairwise distinctness is part of the NodeSequence contract.
    auto sorted = seq.nodes;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::runtime_error("generate: produced coincident nodes");
    return seq;
}

void write_points_csv(const std::filesystem::path& path, const NodeSequence& sequence) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "index,re,im\n";
    char buf[128];
    for (std::size_t i = 0; i < sequence.nodes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, sequence.nodes[i].real(),
                      sequence.nodes[i].imag());
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Complex> read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path.string());
    std::vector<Complex> nodes;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("index", 0) == 0) continue;  // header
        }
        std::istringstream row(line);
        std::string cell;
        double values[3] = {0, 0, 0};
        int col = 0;
        while (std::getline(row, cell, ',') && col < 3) values[col++] = std::stod(cell);
        if (col != 3) throw std::runtime_error("malformed points row: " + line);
        if (!std::isfinite(values[1]) || !std::isfinite(values[2]))
            throw std::runtime_error("non-finite node in points file");
        nodes.emplace_back(values[1], values[2]);
    }
    if (nodes.empty()) throw std::runtime_error("points file has no nodes: " + path.string());
    return nodes;
}

}  // namespace leja
