// Timing comparison between the OpenMP kernels and their serial references:
// grid sup-norm scans, one RM candidate sweep, and a Lebesgue-series step.
// Build target: leja_bench. Run manually; prints one table row per kernel.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "leja/diagnostics.hpp"
#include "leja/generators.hpp"
#include "leja/interp.hpp"

namespace {

double time_of(const std::function<void()>& body, int repeats) {
    body();  // warm-up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    using namespace leja;
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    const CompactDomain interval = CompactDomain::segment({-1.0, 0.0}, {1.0, 0.0});

    GeneratorConfig gen;
    gen.method = Method::rm;
    gen.n_target = 200;
    gen.seed = 7;
    const NodeSequence seq = generate(interval, gen);
    const auto grid = interval.eval_grid(100000);

    {
        volatile double sink = 0.0;
        const double serial = time_of(
            [&] {
                double acc = 0.0;
                for (const Complex& g : grid) acc += log_abs_pi_serial(seq.nodes, g);
                sink = acc;
            },
            3);
        const double parallel = time_of(
            [&] {
                double acc = 0.0;
#pragma omp parallel for reduction(+ : acc)
                for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
                    acc += log_abs_pi(seq.nodes, grid[static_cast<std::size_t>(i)]);
                sink = acc;
            },
            3);
        row("log_abs_pi over 1e5 grid", serial, parallel);
    }

    {
        const double serial =
            time_of([&] { (void)sup_norm_estimate_serial(seq.nodes, grid); }, 3);
        const double parallel = time_of([&] { (void)sup_norm_estimate(seq.nodes, grid); }, 3);
        row("sup_norm_estimate", serial, parallel);
    }

    {
        const SplitStream stream(11);
        const std::size_t budget = step_count(seq.nodes.size(), 2.01);
        const double parallel = time_of(
            [&] { (void)next_rm_point(seq.nodes, interval, budget, stream); }, 3);
        // serial sweep: same candidates, single thread
        const double serial = time_of(
            [&] {
                double best = -1e300;
                std::size_t best_k = 0;
                for (std::size_t k = 1; k <= budget; ++k) {
                    Substream cs = stream.at(seq.nodes.size(), k, Purpose::candidate);
                    const Complex c = interval.sample_uniform(cs);
                    const double v = log_abs_pi_serial(seq.nodes, c);
                    if (v > best) {
                        best = v;
                        best_k = k;
                    }
                }
                (void)best_k;
            },
            3);
        row("rm candidate sweep (n=200)", serial, parallel);
    }

    {
        const auto lgrid = interval.eval_grid(50000);
        const double parallel =
            time_of([&] { (void)lebesgue_estimate(seq.nodes, lgrid); }, 3);
        const double serial = time_of(
            [&] {
                // direct Lagrange-sum scan, single thread
                double best = 0.0;
                for (const Complex& z : lgrid) {
                    double lambda = 0.0;
                    for (std::size_t i = 0; i < seq.nodes.size(); ++i) {
                        double log_li = 0.0;
                        bool vanish = false;
                        for (std::size_t j = 0; j < seq.nodes.size() && !vanish; ++j) {
                            if (j == i) continue;
                            const Complex num = z - seq.nodes[j];
                            if (num == Complex(0.0, 0.0)) {
                                vanish = true;
                                break;
                            }
                            log_li +=
                                std::log(std::abs(num)) - std::log(std::abs(seq.nodes[i] - seq.nodes[j]));
                        }
                        if (!vanish) lambda += std::exp(log_li);
                    }
                    best = std::max(best, lambda);
                }
                (void)best;
            },
            1);
        row("lebesgue scan (n=200)", serial, parallel);
    }

    return 0;
}
