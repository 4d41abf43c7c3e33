#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "leja/generators.hpp"
#include "leja/polyeval.hpp"
#include "oracles.hpp"

using namespace leja;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Complex> random_nodes(std::size_t count, std::uint64_t seed, double scale = 1.0) {
    const SplitStream stream(seed);
    std::vector<Complex> nodes;
    nodes.reserve(count);
    Substream s = stream.at(0, 0, Purpose::init);
    while (nodes.size() < count) {
        const Complex z(scale * (2.0 * s.next_unit() - 1.0), scale * (2.0 * s.next_unit() - 1.0));
        nodes.push_back(z);
    }
    return nodes;
}
}  // namespace

TEST_CASE("log_abs_pi: closed-form examples") {
    CHECK(log_abs_pi({}, {5.0, 2.0}) == 0.0);

    const std::vector<Complex> one{{0.0, 0.0}};
    CHECK(log_abs_pi(one, {2.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    const std::vector<Complex> two{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(log_abs_pi(two, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-14));

    CHECK(log_abs_pi(two, {1.0, 0.0}) == -kInf);
}

TEST_CASE("log_abs_pi matches the direct-product oracle on grid-Leja nodes") {
    GeneratorConfig config;
    config.method = Method::grid_leja;
    config.n_target = 5;
    config.grid_size = 1001;
    const CompactDomain interval = CompactDomain::segment({-1.0, 0.0}, {1.0, 0.0});
    const NodeSequence seq = generate(interval, config);
    const Complex z(0.3, 0.0);
    const double expected = oracle::direct_product_log(seq.nodes, z);
    CHECK(log_abs_pi(seq.nodes, z) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exp(log_abs_pi) tracks direct products for n <= 30") {
    // factors kept within [0.1, 10]: nodes in an annulus around the origin
    const SplitStream stream(99);
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Substream s = stream.at(trial, 0, Purpose::init);
        std::vector<Complex> nodes;
        while (nodes.size() < 30) {
            const double r = 0.1 + 9.9 * s.next_unit();
            const double theta = 2.0 * 3.14159265358979 * s.next_unit();
            nodes.push_back(Complex(r * std::cos(theta), r * std::sin(theta)));
        }
        const double got = log_abs_pi(nodes, {0.0, 0.0});
        const double expected = oracle::direct_product_log(nodes, {0.0, 0.0});
        CHECK(std::abs(std::exp(got) - std::exp(expected)) <=
              1e-10 * std::abs(std::exp(expected)));
    }
}

TEST_CASE("log_abs_pi agrees with the compensated serial reference") {
    const auto nodes = random_nodes(200, 4);
    const SplitStream stream(5);
    for (std::uint64_t i = 0; i < 50; ++i) {
        Substream s = stream.at(i, 0, Purpose::init);
        const Complex z(2.0 * s.next_unit() - 1.0, 2.0 * s.next_unit() - 1.0);
        const double fast = log_abs_pi(nodes, z);
        const double ref = log_abs_pi_serial(nodes, z);
        CHECK(fast == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("log_abs_pi is permutation invariant to 1e-12") {
    auto nodes = random_nodes(60, 8);
    const Complex z(0.37, -0.22);
    const double base = log_abs_pi(nodes, z);
    const SplitStream stream(21);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        Substream s = stream.at(trial, 0, Purpose::init);
        for (std::size_t i = nodes.size(); i > 1; --i)
            std::swap(nodes[i - 1], nodes[static_cast<std::size_t>(s.next_unit() * i)]);
        CHECK(log_abs_pi(nodes, z) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("sup_norm_estimate: ties break to the first grid index") {
    const std::vector<Complex> grid{{-1.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};

    const SupEstimate empty = sup_norm_estimate({}, grid);
    CHECK(empty.value == 0.0);
    CHECK(empty.argmax_index == 0);

    const std::vector<Complex> one{{0.0, 0.0}};
    const SupEstimate est = sup_norm_estimate(one, grid);
    CHECK(est.value == doctest::Approx(0.0));
    CHECK(est.argmax_index == 0);  // log|-1| = log|1| = 0, first wins
    CHECK(est.argmax == Complex(-1.0, 0.0));
}

TEST_CASE("sup_norm_estimate equals the serial reference and an exhaustive scan") {
    const auto nodes = random_nodes(10, 12);
    const auto grid = CompactDomain::segment({-1.0, 0.0}, {1.0, 0.0}).eval_grid(10000);

    const SupEstimate omp_est = sup_norm_estimate(nodes, grid);
    const SupEstimate serial_est = sup_norm_estimate_serial(nodes, grid);
    CHECK(omp_est.value == serial_est.value);
    CHECK(omp_est.argmax_index == serial_est.argmax_index);

    // independent scan
    double best = -kInf;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = oracle::direct_product_log(nodes, grid[i]);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    CHECK(omp_est.argmax_index == best_i);
    CHECK(omp_est.value == doctest::Approx(best).epsilon(1e-11));
}

TEST_CASE("sup_norm_estimate dominates every grid value") {
    const auto nodes = random_nodes(25, 31);
    const auto grid = CompactDomain::disk({0.0, 0.0}, 1.0).eval_grid(500);
    const double sup = sup_norm_estimate(nodes, grid).value;
    for (const Complex& g : grid) CHECK(log_abs_pi(nodes, g) <= sup);
}

TEST_CASE("pairwise_log_product: examples and oracle") {
    const std::vector<Complex> two{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(pairwise_log_product(two) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    const std::vector<Complex> three{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}};
    CHECK(pairwise_log_product(three) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    const auto nodes = random_nodes(20, 77);
    const double expected = oracle::brute_force_pairwise(nodes);
    CHECK(pairwise_log_product(nodes) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS((void)pairwise_log_product(std::vector<Complex>{{1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)pairwise_log_product(std::vector<Complex>{{1.0, 0.0}, {1.0, 0.0}}),
        std::invalid_argument);
}

TEST_CASE("pairwise_log_product is permutation symmetric") {
    auto nodes = random_nodes(15, 3);
    const double base = pairwise_log_product(nodes);
    std::reverse(nodes.begin(), nodes.end());
    CHECK(pairwise_log_product(nodes) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("telescoping: pairwise product equals summed prefix evaluations") {
    const auto nodes = random_nodes(40, 123);
    CompensatedSum sum;
    for (std::size_t k = 1; k < nodes.size(); ++k)
        sum.add(log_abs_pi(std::span<const Complex>(nodes.data(), k), nodes[k]));
    CHECK(pairwise_log_product(nodes) == doctest::Approx(sum.value()).epsilon(1e-9));
}

TEST_CASE("method names round-trip") {
    for (Method m : {Method::grid_leja, Method::mesh_pseudo_leja, Method::mh, Method::rm,
                     Method::rejection_random_leja})
        CHECK(method_from_name(method_name(m)) == m);
    CHECK_THROWS_AS(method_from_name("nope"), std::invalid_argument);
}
