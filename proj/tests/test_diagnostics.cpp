#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leja/diagnostics.hpp"
#include "leja/generators.hpp"
#include "oracles.hpp"

using namespace leja;

namespace {
const CompactDomain kInterval = CompactDomain::segment({-1.0, 0.0}, {1.0, 0.0});
const CompactDomain kUnitDisk = CompactDomain::disk({0.0, 0.0}, 1.0);
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("capacity_transfinite: single pair and roots of unity") {
    const std::vector<Complex> pair{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(capacity_transfinite(pair) == doctest::Approx(2.0).epsilon(1e-12));

    const int n = 16;
    std::vector<Complex> roots;
    for (int k = 0; k < n; ++k)
        roots.push_back(Complex(std::cos(2.0 * kPi * k / n), std::sin(2.0 * kPi * k / n)));
    const double brute = std::exp(2.0 * oracle::brute_force_pairwise(roots) / (n * (n - 1.0)));
    CHECK(capacity_transfinite(roots) == doctest::Approx(brute).epsilon(1e-12));
    // closed form: prod_{i<j} |w_i - w_j| = n^(n/2), so the estimator is n^(1/(n-1))
    CHECK(capacity_transfinite(roots) ==
          doctest::Approx(std::pow(16.0, 1.0 / 15.0)).epsilon(1e-10));

    CHECK_THROWS_AS((void)capacity_transfinite(std::vector<Complex>{{1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("capacity_supnorm: single node normalization") {
    const std::vector<Complex> one{{0.0, 0.0}};
    const std::vector<Complex> grid{{-1.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
    CHECK(capacity_supnorm(one, grid) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("separation_series: direct distances") {
    const std::vector<Complex> nodes{{0.0, 0.0}, {1.0, 0.0}, {0.25, 0.0}};
    const Series s = separation_series(nodes);
    REQUIRE(s.size() == 2);
    CHECK(s[0].first == 1);
    CHECK(s[0].second == doctest::Approx(1.0));
    CHECK(s[1].first == 2);
    CHECK(s[1].second == doctest::Approx(0.25));
}

TEST_CASE("lower_envelope is the running minimum") {
    const Series raw{{1, 5.0}, {2, 3.0}, {3, 4.0}, {4, 2.0}};
    const Series env = lower_envelope(raw);
    CHECK(env[0].second == 5.0);
    CHECK(env[1].second == 3.0);
    CHECK(env[2].second == 3.0);
    CHECK(env[3].second == 2.0);
}

TEST_CASE("loglog_slope: planted exponents") {
    Series quadratic, constant, powerlaw;
    for (std::size_t n = 5; n <= 300; ++n) {
        const auto x = static_cast<double>(n);
        quadratic.emplace_back(n, x * x);
        constant.emplace_back(n, 5.0);
        powerlaw.emplace_back(n, 3.0 * std::pow(x, 1.56) * (1.0 + 0.01 * std::sin(x)));
    }
    CHECK(loglog_slope(quadratic, 5, 300).slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(loglog_slope(constant, 5, 300).slope == doctest::Approx(0.0).epsilon(1e-9));
    const FitResult fit = loglog_slope(powerlaw, 5, 300);
    CHECK(fit.slope >= 1.5);
    CHECK(fit.slope <= 1.62);
    CHECK(fit.r_squared > 0.99);

    Series bad{{1, 1.0}, {2, -1.0}, {3, 1.0}};
    CHECK_THROWS_AS((void)loglog_slope(bad, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)loglog_slope(quadratic, 5, 6), std::invalid_argument);
}

TEST_CASE("geometric_rate: planted rates and the plateau cutoff") {
    Series clean, floored;
    for (std::size_t n = 1; n <= 300; ++n) {
        const double e = std::pow(0.9, static_cast<double>(n));
        clean.emplace_back(n, e);
        floored.emplace_back(n, std::max(e, 1e-16));
    }
    CHECK(geometric_rate(clean, 0.0) == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(geometric_rate(floored, 1e-13) == doctest::Approx(0.9).epsilon(1e-6));

    Series tiny{{1, 1.0}, {2, 0.9}};
    CHECK_THROWS_AS((void)geometric_rate(tiny, 0.0), std::invalid_argument);
}

TEST_CASE("empirical_measure_test: arcsine quantiles and equispaced points") {
    const int n = 500;

    std::vector<Complex> quantiles;
    for (int j = 0; j < n; ++j)
        quantiles.push_back(Complex(std::cos(kPi * (j + 0.5) / n), 0.0));
    const MeasureTest good = empirical_measure_test(quantiles, kInterval, 50);
    CHECK(good.ks_distance < 0.01);

    std::vector<Complex> equispaced;
    for (int j = 0; j < n; ++j)
        equispaced.push_back(Complex(-1.0 + 2.0 * j / (n - 1.0), 0.0));
    const MeasureTest bad = empirical_measure_test(equispaced, kInterval, 50);
    CHECK(bad.ks_distance > 0.1);

    // histogram integrates to one
    double mass = 0.0;
    for (const HistogramBin& b : good.histogram) mass += b.density * (b.right - b.left);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("KS distance is invariant under monotone reparameterization (circle)") {
    const CompactDomain circle = CompactDomain::circle({0.0, 0.0}, 1.0);
    const SplitStream stream(8);
    std::vector<Complex> nodes;
    for (int i = 0; i < 400; ++i) {
        Substream s = stream.at(static_cast<std::uint64_t>(i), 0, Purpose::init);
        nodes.push_back(circle.sample_uniform(s));
    }
    const MeasureTest via_angle = empirical_measure_test(nodes, circle, 32);

    // oracle: normalized arclength s = (theta + pi) / (2 pi) against U[0,1]
    std::vector<double> arclen;
    for (const Complex& z : nodes) arclen.push_back((std::arg(z) + kPi) / (2.0 * kPi));
    const double ks_arclen = oracle::ks_distance(arclen, [](double t) { return t; });
    CHECK(via_angle.ks_distance == doctest::Approx(ks_arclen).epsilon(1e-12));
}

TEST_CASE("reference density normalization (quadrature to 1e-6)") {
    const ReferenceDensity arcsine = ReferenceDensity::for_domain(kInterval);
    // substitute t = sin(u): integral of pdf becomes 1/pi du over [-pi/2, pi/2]
    const int cells = 200000;
    double integral = 0.0;
    for (int i = 0; i < cells; ++i) {
        const double u = -kPi / 2 + kPi * (i + 0.5) / cells;
        integral += arcsine.pdf(std::sin(u)) * std::cos(u) * (kPi / cells);
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(arcsine.cdf(arcsine.hi()) - arcsine.cdf(arcsine.lo()) == doctest::Approx(1.0));

    const ReferenceDensity uniform = ReferenceDensity::for_domain(kUnitDisk);
    CHECK(uniform.cdf(0.0) == doctest::Approx(0.5));
    CHECK_FALSE(ReferenceDensity::available(DomainKind::polygon));
}

TEST_CASE("polygon has no closed-form reference; histogram-only mode works") {
    const CompactDomain square =
        CompactDomain::polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    const SplitStream stream(9);
    std::vector<Complex> nodes;
    for (int i = 0; i < 200; ++i) {
        Substream s = stream.at(static_cast<std::uint64_t>(i), 0, Purpose::init);
        nodes.push_back(square.sample_uniform(s));
    }
    CHECK_THROWS_AS((void)empirical_measure_test(nodes, square, 16), std::invalid_argument);
    const auto hist = projection_histogram(nodes, square, 16);
    double mass = 0.0;
    for (const HistogramBin& b : hist) mass += b.density * (b.right - b.left);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pseudo_leja_ratio_series: grid-leja on its own grid sits at 1") {
    GeneratorConfig config;
    config.method = Method::grid_leja;
    config.n_target = 20;
    config.grid_size = 5001;
    const NodeSequence seq = generate(kInterval, config);
    const auto grid = kInterval.eval_grid(config.grid_size);
    const Series ratios = pseudo_leja_ratio_series(seq.nodes, grid);
    REQUIRE(ratios.size() == seq.nodes.size() - 1);
    for (const auto& [n, r] : ratios) {
        CHECK(r <= 1.0 + 1e-9);
        CHECK(r >= 1.0 - 1e-9);
    }
}

TEST_CASE("grid-leja separation envelope decays no faster than the theory bound") {
    GeneratorConfig config;
    config.method = Method::grid_leja;
    config.n_target = 150;
    config.grid_size = 30001;
    const NodeSequence seq = generate(kInterval, config);
    const Series env = lower_envelope(separation_series(seq.nodes));
    const FitResult fit = loglog_slope(env, 10, 149);
    CHECK(fit.slope >= -3.2);
    CHECK(fit.slope <= -0.5);  // it does decay
}

TEST_CASE("ensemble_stats: degenerate and linear families") {
    QualityReport a, b;
    for (std::size_t n = 1; n <= 50; ++n) {
        a.lebesgue.emplace_back(n, static_cast<double>(n));
        b.lebesgue.emplace_back(n, 3.0 * static_cast<double>(n));
    }

    SUBCASE("identical reports have zero sd and no sd slope") {
        const EnsembleStats stats = ensemble_stats({a, a}, 5, 50);
        for (double sd : stats.lebesgue_sd) CHECK(sd == 0.0);
        CHECK_FALSE(stats.sd_slope.has_value());
        CHECK(stats.mean_slope == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("n and 3n: mean 2n, sd sqrt(2) n, both slopes 1") {
        const EnsembleStats stats = ensemble_stats({a, b}, 5, 50);
        CHECK(stats.lebesgue_mean[9] == doctest::Approx(20.0));
        CHECK(stats.lebesgue_sd[9] == doctest::Approx(10.0 * std::sqrt(2.0)));
        CHECK(stats.mean_slope == doctest::Approx(1.0).epsilon(1e-9));
        REQUIRE(stats.sd_slope.has_value());
        CHECK(*stats.sd_slope == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("mismatched ranges are rejected") {
        QualityReport c = a;
        c.lebesgue.pop_back();
        CHECK_THROWS_AS((void)ensemble_stats({a, c}, 5, 40), std::invalid_argument);
        CHECK_THROWS_AS((void)ensemble_stats({a}, 5, 40), std::invalid_argument);
    }
}

TEST_CASE("quality_report: field population on a small RM run") {
    GeneratorConfig config;
    config.method = Method::rm;
    config.n_target = 60;
    config.seed = 14;
    const NodeSequence seq = generate(kInterval, config);

    QualityReportOptions opt;
    opt.lebesgue_grid = 2000;
    opt.eval_grid = 1000;
    opt.fit_lo = 10;
    opt.fit_hi = 60;
    opt.function_name = "runge_complex";
    const QualityReport report = quality_report(kInterval, seq, opt);

    CHECK(report.lebesgue.size() == 60);
    CHECK(report.min_separation.size() == 59);
    CHECK(report.capacity_supnorm.size() == 60);
    CHECK(report.capacity_transfinite.size() == 59);
    CHECK(report.pseudo_leja_ratio.size() == 59);
    CHECK(report.error_trace.size() == 60);
    CHECK(report.lebesgue_slope.has_value());
    CHECK(report.separation_slope.has_value());
    CHECK(report.geometric_rate.has_value());
    REQUIRE(report.ks_distance.has_value());
    CHECK(*report.ks_distance < 0.5);
    CHECK(report.method == "rm");

    for (const auto& [n, v] : report.capacity_supnorm) CHECK(v > 0.0);
    for (const auto& [n, v] : report.capacity_transfinite) CHECK(v > 0.0);

    // transfinite values agree with the direct estimator per prefix
    for (const auto& [n, v] : report.capacity_transfinite) {
        const std::span<const Complex> prefix(seq.nodes.data(), n);
        CHECK(v == doctest::Approx(capacity_transfinite(prefix)).epsilon(1e-9));
    }

    // running minimum of separations is non-increasing
    const Series env = lower_envelope(report.min_separation);
    for (std::size_t i = 1; i < env.size(); ++i) CHECK(env[i].second <= env[i - 1].second);
}
