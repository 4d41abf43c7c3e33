#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "leja/domain.hpp"
#include "leja/polyeval.hpp"

namespace leja {

/// Divided-difference table in incremental form: appending a node appends a
/// single Newton coefficient in O(n). Evaluation uses the nested (Horner)
/// form of the Newton expansion.
class NewtonInterpolant {
public:
    void append(Complex node, Complex f_value);
    Complex evaluate(Complex z) const;

    const std::vector<Complex>& nodes() const { return nodes_; }
    const std::vector<Complex>& coefficients() const { return coefficients_; }
    std::size_t size() const { return nodes_.size(); }

private:
    std::vector<Complex> nodes_;
    std::vector<Complex> coefficients_;
    std::vector<Complex> diagonal_;  // last row of the divided-difference table
};

struct InterpolationResult {
    std::vector<Complex> newton_coefficients;
    std::vector<Complex> nodes;
    std::vector<std::pair<std::size_t, double>> error_trace;
};

InterpolationResult newton_interpolate(std::span<const Complex> nodes,
                                       std::span<const Complex> f_values);

/// Sup-norm interpolation errors ||L_n(f) - f|| on a deterministic grid of
/// the domain, for every prefix length n = 1..len(nodes). The interpolant is
/// extended one divided difference at a time, so the whole trace costs
/// O(len * grid).
std::vector<std::pair<std::size_t, double>> error_trace(const CompactDomain& domain,
                                                        std::span<const Complex> nodes,
                                                        const std::function<Complex(Complex)>& f,
                                                        std::size_t eval_grid_size);

struct LebesgueEstimate {
    std::size_t n = 0;
    double value = 1.0;
    Complex argmax_point;
};

/// Grid maximum of the Lebesgue function lambda_n(z) = sum_i |l_i(z)|,
/// a lower bound for the Lebesgue constant. Magnitudes are evaluated through
/// log-domain barycentric weights; within 1e-8 of a node the sum switches to
/// the direct per-basis form, which is exact at the nodes.
LebesgueEstimate lebesgue_estimate(std::span<const Complex> nodes, std::span<const Complex> grid);

/// One estimate per prefix length n in [n_from, n_to]; the barycentric
/// weights are carried incrementally in O(n) per step.
std::vector<LebesgueEstimate> lebesgue_series(std::span<const Complex> nodes,
                                              std::span<const Complex> grid, std::size_t n_from,
                                              std::size_t n_to);

/// Built-in target functions selectable by name: "runge_complex" is
/// 1/(z^2 + 0.1^2), "exp" the exponential, "abs" the modulus (real sets
/// only). Throws for unknown names.
std::function<Complex(Complex)> test_function(std::string_view name);

/// Rejects functions with poles on K ("runge_complex" near +-0.1i) and
/// restricts "abs" to subsets of the real line.
void check_function_on_domain(std::string_view name, const CompactDomain& domain);

}  // namespace leja
