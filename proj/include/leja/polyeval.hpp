#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leja/domain.hpp"

namespace leja {

enum class Method { grid_leja, mesh_pseudo_leja, mh, rm, rejection_random_leja };

std::string method_name(Method method);
Method method_from_name(std::string_view name);

/// Ordered distinct nodes z_0..z_{n-1} with generation provenance.
struct NodeSequence {
    std::vector<Complex> nodes;
    Method method = Method::grid_leja;
    std::optional<std::uint64_t> seed;
    std::string domain_id;
};

/// log|pi_n(z)| = sum_{j<n} log|z - z_j|. Returns -infinity when z coincides
/// with a node; an empty prefix gives 0 (empty product). Magnitudes are
/// accumulated as a running product with exact power-of-two exponent
/// harvesting, so mixed scales cost a single log at the end.
double log_abs_pi(std::span<const Complex> nodes, Complex z);

/// Straightforward per-term log sum with Neumaier compensation. Serial
/// reference kept for tests and the kernel benchmark.
double log_abs_pi_serial(std::span<const Complex> nodes, Complex z);

struct SupEstimate {
    double value = 0.0;
    std::size_t argmax_index = 0;
    Complex argmax;
};

/// Grid maximum of log|pi_n|; ties broken by the smallest grid index, so the
/// OpenMP reduction and the serial scan return identical results.
SupEstimate sup_norm_estimate(std::span<const Complex> nodes, std::span<const Complex> grid);
SupEstimate sup_norm_estimate_serial(std::span<const Complex> nodes, std::span<const Complex> grid);

/// sum_{i<j} log|z_i - z_j|; needs n >= 2 and pairwise-distinct nodes.
double pairwise_log_product(std::span<const Complex> nodes);

/// Kahan-Neumaier accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace leja
