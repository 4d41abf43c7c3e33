#include "leja/polyeval.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace leja {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::string method_name(Method method) {
    switch (method) {
        case Method::grid_leja: return "grid-leja";
        case Method::mesh_pseudo_leja: return "mesh-pseudo-leja";
        case Method::mh: return "mh";
        case Method::rm: return "rm";
        case Method::rejection_random_leja: return "rejection-random-leja";
    }
    return "?";
}

Method method_from_name(std::string_view name) {
    if (name == "grid-leja") return Method::grid_leja;
    if (name == "mesh-pseudo-leja") return Method::mesh_pseudo_leja;
    if (name == "mh") return Method::mh;
    if (name == "rm") return Method::rm;
    if (name == "rejection-random-leja") return Method::rejection_random_leja;
    throw std::invalid_argument("unknown method name: " + std::string(name));
}

double log_abs_pi(std::span<const Complex> nodes, Complex z) {
    // Accumulate prod |z - z_j|^2 as mantissa * 2^e2 with the integer
    // exponent harvested exactly; one log at the end. Squared distances
    // outside [2^-100, 2^100] are pre-normalized so the running product
    // can neither overflow nor underflow between checks.
    double acc = 1.0;
    long long e2 = 0;
    CompensatedSum spill;  // log-domain terms that bypass the product path
    for (const Complex& node : nodes) {
        const Complex dz = z - node;
        double d2 = std::norm(dz);
        if (d2 <= 0.0 || !std::isfinite(d2)) {
            if (dz == Complex(0.0, 0.0)) return kNegInf;
            // squared magnitude under/overflowed; hypot-based log is safe
            spill.add(2.0 * std::log(std::abs(dz)));
            continue;
        }
        if (d2 < 0x1p-100 || d2 > 0x1p+100) {
            int e = 0;
            d2 = std::frexp(d2, &e);
            e2 += e;
        }
        acc *= d2;
        if (acc < 0x1p-500 || acc > 0x1p+500) {
            int e = 0;
            acc = std::frexp(acc, &e);
            e2 += e;
        }
    }
    spill.add(static_cast<double>(e2) * std::numbers::ln2);
    spill.add(std::log(acc));
    return 0.5 * spill.value();
}

double log_abs_pi_serial(std::span<const Complex> nodes, Complex z) {
    CompensatedSum sum;
    for (const Complex& node : nodes) {
        const Complex dz = z - node;
        if (dz == Complex(0.0, 0.0)) return kNegInf;
        sum.add(std::log(std::abs(dz)));
    }
    return sum.value();
}

SupEstimate sup_norm_estimate_serial(std::span<const Complex> nodes, std::span<const Complex> grid) {
    if (grid.empty()) throw std::invalid_argument("sup_norm_estimate: empty grid");
    double best = kNegInf;
    std::size_t best_index = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = log_abs_pi(nodes, grid[i]);
        if (v > best || (v == best && i < best_index)) {
            best = v;
            best_index = i;
        }
    }
    return {best, best_index, grid[best_index]};
}

SupEstimate sup_norm_estimate(std::span<const Complex> nodes, std::span<const Complex> grid) {
    if (grid.empty()) throw std::invalid_argument("sup_norm_estimate: empty grid");
    double best = kNegInf;
    std::size_t best_index = grid.size();
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel
    {
        double local_best = kNegInf;
        std::size_t local_index = grid.size();
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const double v = log_abs_pi(nodes, grid[static_cast<std::size_t>(i)]);
            const auto idx = static_cast<std::size_t>(i);
            if (v > local_best || (v == local_best && idx < local_index)) {
                local_best = v;
                local_index = idx;
            }
        }
#pragma omp critical
        {
            // lexicographic (value desc, index asc) merge is order-independent
            if (local_best > best || (local_best == best && local_index < best_index)) {
                best = local_best;
                best_index = local_index;
            }
        }
    }
    return {best, best_index, grid[best_index]};
}

double pairwise_log_product(std::span<const Complex> nodes) {
    const std::size_t n = nodes.size();
    if (n < 2) throw std::invalid_argument("pairwise_log_product: need at least 2 nodes");
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex dz = nodes[i] - nodes[j];
            if (dz == Complex(0.0, 0.0))
                throw std::invalid_argument("pairwise_log_product: coincident nodes");
            sum.add(std::log(std::abs(dz)));
        }
    }
    return sum.value();
}

}  // namespace leja
