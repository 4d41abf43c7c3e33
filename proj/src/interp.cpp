#include "leja/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leja {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kNearNodeSwitch = 1e-8;
}  // namespace

void NewtonInterpolant::append(Complex node, Complex f_value) {
    const std::size_t n = nodes_.size();
    std::vector<Complex> row(n + 1);
    row[0] = f_value;
    for (std::size_t j = 1; j <= n; ++j) {
        const Complex denom = node - nodes_[n - j];
        if (denom == Complex(0.0, 0.0))
            throw std::invalid_argument("newton_interpolate: coincident nodes");
        row[j] = (row[j - 1] - diagonal_[j - 1]) / denom;
    }
    nodes_.push_back(node);
    coefficients_.push_back(row[n]);
    diagonal_ = std::move(row);
}

Complex NewtonInterpolant::evaluate(Complex z) const {
    if (coefficients_.empty()) return {0.0, 0.0};
    const std::size_t n = coefficients_.size();
    Complex acc = coefficients_[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) acc = acc * (z - nodes_[j]) + coefficients_[j];
    return acc;
}

InterpolationResult newton_interpolate(std::span<const Complex> nodes,
                                       std::span<const Complex> f_values) {
    if (nodes.size() != f_values.size())
        throw std::invalid_argument("newton_interpolate: nodes/values length mismatch");
    NewtonInterpolant interp;
    for (std::size_t i = 0; i < nodes.size(); ++i) interp.append(nodes[i], f_values[i]);
    return {interp.coefficients(), interp.nodes(), {}};
}

std::vector<std::pair<std::size_t, double>> error_trace(const CompactDomain& domain,
                                                        std::span<const Complex> nodes,
                                                        const std::function<Complex(Complex)>& f,
                                                        std::size_t eval_grid_size) {
    const auto grid = domain.eval_grid(eval_grid_size);
    const auto grid_count = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<Complex> f_on_grid(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < grid_count; ++i)
        f_on_grid[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);

    // Per grid point: partial Newton sum and the running basis product
    // prod_{j<k} (z - z_j).
    std::vector<Complex> partial(grid.size(), Complex(0.0, 0.0));
    std::vector<Complex> basis(grid.size(), Complex(1.0, 0.0));

    NewtonInterpolant interp;
    std::vector<std::pair<std::size_t, double>> trace;
    trace.reserve(nodes.size());
    for (std::size_t n = 1; n <= nodes.size(); ++n) {
        const Complex node = nodes[n - 1];
        interp.append(node, f(node));
        const Complex coeff = interp.coefficients()[n - 1];
        double sup = 0.0;
#pragma omp parallel for schedule(static) reduction(max : sup)
        for (std::ptrdiff_t i = 0; i < grid_count; ++i) {
            const auto g = static_cast<std::size_t>(i);
            partial[g] += coeff * basis[g];
            basis[g] *= grid[g] - node;
            const double err = std::abs(partial[g] - f_on_grid[g]);
            sup = std::max(sup, err);
        }
        trace.emplace_back(n, sup);
    }
    return trace;
}

namespace {

/// Barycentric data for one prefix: w[i] = sum_{j != i} log|z_i - z_j| and
/// the scaled inverse weights v[i] = exp(-w[i] - shift) with
/// shift = max_i(-w[i]).
struct BarycentricWeights {
    std::vector<double> log_weights;
    std::vector<double> scaled_inverse;
    double shift = 0.0;

    void rescale() {
        shift = kNegInf;
        for (double w : log_weights) shift = std::max(shift, -w);
        scaled_inverse.resize(log_weights.size());
        for (std::size_t i = 0; i < log_weights.size(); ++i)
            scaled_inverse[i] = std::exp(-log_weights[i] - shift);
    }
};

double lambda_at(std::span<const Complex> nodes, const BarycentricWeights& bary, Complex z) {
    const std::size_t n = nodes.size();
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) min_dist = std::min(min_dist, std::abs(z - nodes[i]));

    if (min_dist < kNearNodeSwitch) {
        // Direct per-basis sum; exact (= 1) when z is a node.
        double lambda = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CompensatedSum log_li;
            bool vanishes = false;
            for (std::size_t j = 0; j < n && !vanishes; ++j) {
                if (j == i) continue;
                const Complex dz = z - nodes[j];
                if (dz == Complex(0.0, 0.0))
                    vanishes = true;  // z sits on another node, so l_i(z) = 0
                else
                    log_li.add(std::log(std::abs(dz)));
            }
            if (!vanishes) lambda += std::exp(log_li.value() - bary.log_weights[i]);
        }
        return lambda;
    }

    const double log_pi = log_abs_pi(nodes, z);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += bary.scaled_inverse[i] / std::abs(z - nodes[i]);
    return std::exp(log_pi + bary.shift) * sum;
}

LebesgueEstimate lebesgue_scan(std::span<const Complex> nodes, const BarycentricWeights& bary,
                               std::span<const Complex> grid) {
    double best = kNegInf;
    std::size_t best_index = grid.size();
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
    {
        double local_best = kNegInf;
        std::size_t local_index = grid.size();
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto g = static_cast<std::size_t>(i);
            const double v = lambda_at(nodes, bary, grid[g]);
            if (v > local_best || (v == local_best && g < local_index)) {
                local_best = v;
                local_index = g;
            }
        }
#pragma omp critical
        {
            if (local_best > best || (local_best == best && local_index < best_index)) {
                best = local_best;
                best_index = local_index;
            }
        }
    }
    return {nodes.size(), best, grid[best_index]};
}

void check_distinct(std::span<const Complex> nodes, const char* who) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw std::invalid_argument(std::string(who) + ": coincident nodes");
}

}  // namespace

LebesgueEstimate lebesgue_estimate(std::span<const Complex> nodes, std::span<const Complex> grid) {
    if (nodes.empty()) throw std::invalid_argument("lebesgue_estimate: empty node prefix");
    if (grid.empty()) throw std::invalid_argument("lebesgue_estimate: empty grid");
    check_distinct(nodes, "lebesgue_estimate");
    BarycentricWeights bary;
    bary.log_weights.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CompensatedSum w;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            w.add(std::log(std::abs(nodes[i] - nodes[j])));
        }
        bary.log_weights[i] = w.value();
    }
    bary.rescale();
    return lebesgue_scan(nodes, bary, grid);
}

std::vector<LebesgueEstimate> lebesgue_series(std::span<const Complex> nodes,
                                              std::span<const Complex> grid, std::size_t n_from,
                                              std::size_t n_to) {
    if (n_from < 1 || n_to > nodes.size() || n_from > n_to)
        throw std::invalid_argument("lebesgue_series: bad prefix range");
    if (grid.empty()) throw std::invalid_argument("lebesgue_series: empty grid");
    check_distinct(nodes, "lebesgue_series");

    BarycentricWeights bary;
    std::vector<LebesgueEstimate> out;
    out.reserve(n_to - n_from + 1);
    for (std::size_t n = 1; n <= n_to; ++n) {
        const Complex z_new = nodes[n - 1];
        // w_new = log|pi_{n-1}(z_new)|; existing weights gain one term each.
        const std::span<const Complex> prefix(nodes.data(), n - 1);
        const double w_new = log_abs_pi(prefix, z_new);
        for (std::size_t i = 0; i + 1 < n; ++i)
            bary.log_weights[i] += std::log(std::abs(nodes[i] - z_new));
        bary.log_weights.push_back(w_new);
        if (n < n_from) continue;
        bary.rescale();
        out.push_back(lebesgue_scan(std::span<const Complex>(nodes.data(), n), bary, grid));
    }
    return out;
}

std::function<Complex(Complex)> test_function(std::string_view name) {
    if (name == "runge_complex")
        return [](Complex z) { return 1.0 / (z * z + Complex(0.01, 0.0)); };
    if (name == "exp")
        return [](Complex z) { return std::exp(z); };
    if (name == "abs")
        return [](Complex z) { return Complex(std::abs(z), 0.0); };
    throw std::invalid_argument("unknown test function: " + std::string(name));
}

void check_function_on_domain(std::string_view name, const CompactDomain& domain) {
    if (name == "runge_complex") {
        if (domain.contains(Complex(0.0, 0.1)) || domain.contains(Complex(0.0, -0.1)))
            throw std::invalid_argument("runge_complex has poles at +-0.1i inside the domain");
        return;
    }
    if (name == "exp") return;
    if (name == "abs") {
        const bool real_segment =
            domain.kind() == DomainKind::segment &&
            domain.geometry<CompactDomain::Segment>().a.imag() == 0.0 &&
            domain.geometry<CompactDomain::Segment>().b.imag() == 0.0;
        if (real_segment || domain.kind() == DomainKind::interval_union) return;
        throw std::invalid_argument("abs is only enabled on subsets of the real line");
    }
    test_function(name);  // throws the canonical unknown-name error
}

}  // namespace leja
