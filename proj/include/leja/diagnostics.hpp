#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leja/domain.hpp"
#include "leja/polyeval.hpp"

namespace leja {

using Series = std::vector<std::pair<std::size_t, double>>;

/// exp(max_grid log|pi_n| / n): the sup-norm capacity estimator.
double capacity_supnorm(std::span<const Complex> nodes, std::span<const Complex> grid);

/// exp(2 * sum_{i<j} log|z_i - z_j| / (n(n-1))): transfinite-diameter estimator.
double capacity_transfinite(std::span<const Complex> nodes);

/// Closed-form equilibrium distribution of the projection used by the
/// measure test: arcsine along the parameter for segments, uniform angle for
/// circle and disk. Unavailable for polygons and interval unions.
class ReferenceDensity {
public:
    static bool available(DomainKind kind);
    static ReferenceDensity for_domain(const CompactDomain& domain);

    /// CDF of the projected coordinate over [lo, hi].
    double cdf(double t) const;
    double pdf(double t) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    ReferenceDensity(bool arcsine, double lo, double hi) : arcsine_(arcsine), lo_(lo), hi_(hi) {}
    bool arcsine_;
    double lo_, hi_;
};

/// Projection of nodes to the diagnostic coordinate: the normalized segment
/// parameter, the angle around the center (circle/disk), the angle around
/// the centroid (polygon), or the real coordinate (interval union).
std::vector<double> project_nodes(std::span<const Complex> nodes, const CompactDomain& domain);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    double density = 0.0;
};

struct MeasureTest {
    double ks_distance = 0.0;
    std::vector<HistogramBin> histogram;
};

/// KS distance between the empirical CDF of the projected nodes and the
/// closed-form equilibrium CDF, plus a normalized histogram. Throws
/// "reference unavailable" for domains without a closed form; use
/// projection_histogram for those.
MeasureTest empirical_measure_test(std::span<const Complex> nodes, const CompactDomain& domain,
                                   std::size_t bins);

std::vector<HistogramBin> projection_histogram(std::span<const Complex> nodes,
                                               const CompactDomain& domain, std::size_t bins);

/// Per-n minimum distance from z_n to all prior nodes, n = 1..len-1.
Series separation_series(std::span<const Complex> nodes);

/// Per-n ratio |pi_n(z_n)| / max_grid |pi_n| in (0, 1] up to grid error.
Series pseudo_leja_ratio_series(std::span<const Complex> nodes, std::span<const Complex> grid);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

/// Ordinary least squares of ln(value) on ln(n) over n in [n_min, n_max].
FitResult loglog_slope(const Series& series, std::size_t n_min, std::size_t n_max);

/// Fits ln e_n = a + n ln(rho) over the entries with e_n > cutoff_ratio *
/// max e_n (excludes the machine-precision plateau) and returns rho.
double geometric_rate(const Series& series, double cutoff_ratio);

struct QualityReport {
    Series lebesgue;
    Series min_separation;
    Series capacity_supnorm;
    Series capacity_transfinite;
    Series pseudo_leja_ratio;
    Series error_trace;

    std::optional<double> lebesgue_slope;
    std::optional<double> separation_slope;
    std::optional<double> geometric_rate;
    std::optional<double> ks_distance;
    std::vector<HistogramBin> histogram;

    std::uint64_t seed = 0;
    std::string method;
    std::string domain_id;
    std::size_t lebesgue_grid = 0;
    std::size_t eval_grid = 0;
    std::size_t fit_lo = 10;
    std::size_t fit_hi = 200;
};

struct QualityReportOptions {
    std::size_t lebesgue_grid = 50000;
    std::size_t eval_grid = 10000;
    std::size_t fit_lo = 10;
    std::size_t fit_hi = 200;
    std::size_t histogram_bins = 50;
    std::string function_name;  // empty: skip the interpolation-error block
    double rate_cutoff = 1e-13;
};

/// Runs the full per-sequence diagnostic battery.
QualityReport quality_report(const CompactDomain& domain, const NodeSequence& sequence,
                             const QualityReportOptions& options);

struct EnsembleStats {
    std::vector<std::size_t> n;
    std::vector<double> lebesgue_mean;
    std::vector<double> lebesgue_sd;
    double mean_slope = 0.0;
    std::optional<double> sd_slope;
};

/// Per-n sample mean / standard deviation of the Lebesgue estimates across
/// reports, and the log-log slopes of both over [n_min, n_max]. All reports
/// must share an identical n range.
EnsembleStats ensemble_stats(const std::vector<QualityReport>& reports, std::size_t n_min,
                             std::size_t n_max);

/// Separation fits use the running minimum: the bound being probed is a
/// lower-envelope statement.
Series lower_envelope(const Series& series);

}  // namespace leja
