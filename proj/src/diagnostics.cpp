#include "leja/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "leja/interp.hpp"

namespace leja {

namespace {
constexpr double kPi = std::numbers::pi;
}

double capacity_supnorm(std::span<const Complex> nodes, std::span<const Complex> grid) {
    if (nodes.empty()) throw std::invalid_argument("capacity_supnorm: need n >= 1");
    const double sup = sup_norm_estimate(nodes, grid).value;
    return std::exp(sup / static_cast<double>(nodes.size()));
}

double capacity_transfinite(std::span<const Complex> nodes) {
    const auto n = static_cast<double>(nodes.size());
    if (nodes.size() < 2) throw std::invalid_argument("capacity_transfinite: need n >= 2");
    return std::exp(2.0 * pairwise_log_product(nodes) / (n * (n - 1.0)));
}

bool ReferenceDensity::available(DomainKind kind) {
    return kind == DomainKind::segment || kind == DomainKind::circle || kind == DomainKind::disk;
}

ReferenceDensity ReferenceDensity::for_domain(const CompactDomain& domain) {
    switch (domain.kind()) {
        case DomainKind::segment:
            // arcsine law in the normalized parameter t in [-1, 1]
            return ReferenceDensity(true, -1.0, 1.0);
        case DomainKind::circle:
        case DomainKind::disk:
            // equilibrium measure is uniform on the boundary circle: the
            // angle projection is uniform
            return ReferenceDensity(false, -kPi, kPi);
        default:
            throw std::invalid_argument("reference unavailable for " + kind_name(domain.kind()));
    }
}

double ReferenceDensity::cdf(double t) const {
    const double x = std::clamp(t, lo_, hi_);
    if (arcsine_) return 0.5 + std::asin(x) / kPi;
    return (x - lo_) / (hi_ - lo_);
}

double ReferenceDensity::pdf(double t) const {
    if (t < lo_ || t > hi_) return 0.0;
    if (arcsine_) return 1.0 / (kPi * std::sqrt(std::max(1e-300, 1.0 - t * t)));
    return 1.0 / (hi_ - lo_);
}

std::vector<double> project_nodes(std::span<const Complex> nodes, const CompactDomain& domain) {
    std::vector<double> out;
    out.reserve(nodes.size());
    switch (domain.kind()) {
        case DomainKind::segment: {
            const auto& seg = domain.geometry<CompactDomain::Segment>();
            const Complex mid = 0.5 * (seg.a + seg.b);
            const Complex half = 0.5 * (seg.b - seg.a);
            const double h2 = std::norm(half);
            for (Complex z : nodes) {
                const Complex d = z - mid;
                out.push_back((d.real() * half.real() + d.imag() * half.imag()) / h2);
            }
            break;
        }
        case DomainKind::circle:
        case DomainKind::disk: {
            const Complex center = domain.kind() == DomainKind::circle
                                       ? domain.geometry<CompactDomain::Circle>().center
                                       : domain.geometry<CompactDomain::Disk>().center;
            for (Complex z : nodes) out.push_back(std::arg(z - center));
            break;
        }
        case DomainKind::polygon: {
            const auto& vertices = domain.geometry<CompactDomain::Polygon>().vertices;
            Complex centroid(0.0, 0.0);
            for (Complex v : vertices) centroid += v;
            centroid /= static_cast<double>(vertices.size());
            for (Complex z : nodes) out.push_back(std::arg(z - centroid));
            break;
        }
        case DomainKind::interval_union: {
            for (Complex z : nodes) out.push_back(z.real());
            break;
        }
    }
    return out;
}

namespace {

std::vector<HistogramBin> histogram_of(const std::vector<double>& values, double lo, double hi,
                                       std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("histogram: need at least one bin");
    std::vector<std::size_t> counts(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        auto idx = static_cast<std::ptrdiff_t>(std::floor((v - lo) / width));
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }
    std::vector<HistogramBin> out(bins);
    const double total = static_cast<double>(values.size());
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].left = lo + width * static_cast<double>(b);
        out[b].right = lo + width * static_cast<double>(b + 1);
        out[b].density = total > 0 ? static_cast<double>(counts[b]) / (total * width) : 0.0;
    }
    return out;
}

std::pair<double, double> projection_range(const CompactDomain& domain,
                                           const std::vector<double>& values) {
    switch (domain.kind()) {
        case DomainKind::segment: return {-1.0, 1.0};
        case DomainKind::circle:
        case DomainKind::disk:
        case DomainKind::polygon: return {-kPi, kPi};
        case DomainKind::interval_union: {
            const auto& iv = domain.geometry<CompactDomain::IntervalUnion>().intervals;
            return {iv.front().first, iv.back().second};
        }
    }
    return {*std::min_element(values.begin(), values.end()),
            *std::max_element(values.begin(), values.end())};
}

}  // namespace

MeasureTest empirical_measure_test(std::span<const Complex> nodes, const CompactDomain& domain,
                                   std::size_t bins) {
    if (nodes.empty()) throw std::invalid_argument("empirical_measure_test: no nodes");
    const ReferenceDensity ref = ReferenceDensity::for_domain(domain);
    auto projected = project_nodes(nodes, domain);
    const auto [lo, hi] = projection_range(domain, projected);
    MeasureTest result;
    result.histogram = histogram_of(projected, lo, hi, bins);

    std::sort(projected.begin(), projected.end());
    const auto m = static_cast<double>(projected.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < projected.size(); ++i) {
        const double F = ref.cdf(projected[i]);
        ks = std::max(ks, std::abs(F - static_cast<double>(i) / m));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / m - F));
    }
    result.ks_distance = ks;
    return result;
}

std::vector<HistogramBin> projection_histogram(std::span<const Complex> nodes,
                                               const CompactDomain& domain, std::size_t bins) {
    if (nodes.empty()) throw std::invalid_argument("projection_histogram: no nodes");
    auto projected = project_nodes(nodes, domain);
    const auto [lo, hi] = projection_range(domain, projected);
    return histogram_of(projected, lo, hi, bins);
}

Series separation_series(std::span<const Complex> nodes) {
    Series out;
    if (nodes.size() < 2) return out;
    out.reserve(nodes.size() - 1);
    for (std::size_t n = 1; n < nodes.size(); ++n) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) best = std::min(best, std::abs(nodes[n] - nodes[j]));
        out.emplace_back(n, best);
    }
    return out;
}

Series pseudo_leja_ratio_series(std::span<const Complex> nodes, std::span<const Complex> grid) {
    Series out;
    out.reserve(nodes.size() > 0 ? nodes.size() - 1 : 0);
    for (std::size_t n = 1; n < nodes.size(); ++n) {
        const std::span<const Complex> prefix(nodes.data(), n);
        const double sup = sup_norm_estimate(prefix, grid).value;
        const double own = log_abs_pi(prefix, nodes[n]);
        out.emplace_back(n, std::exp(own - sup));
    }
    return out;
}

Series lower_envelope(const Series& series) {
    Series out;
    out.reserve(series.size());
    double running = std::numeric_limits<double>::infinity();
    for (const auto& [n, v] : series) {
        running = std::min(running, v);
        out.emplace_back(n, running);
    }
    return out;
}

FitResult loglog_slope(const Series& series, std::size_t n_min, std::size_t n_max) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, v] : series) {
        if (n < n_min || n > n_max) continue;
        if (!(v > 0.0))
            throw std::invalid_argument("loglog_slope: nonpositive value in fit range");
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(v));
    }
    if (pts.size() < 3) throw std::invalid_argument("loglog_slope: fewer than 3 points in range");
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) { mx += x; my += y; }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    return fit;
}

double geometric_rate(const Series& series, double cutoff_ratio) {
    double emax = 0.0;
    for (const auto& [n, e] : series) emax = std::max(emax, e);
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, e] : series) {
        if (e > cutoff_ratio * emax && e > 0.0)
            pts.emplace_back(static_cast<double>(n), std::log(e));
    }
    if (pts.size() < 3) throw std::invalid_argument("geometric_rate: fewer than 3 usable points");
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) { mx += x; my += y; }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    return std::exp(sxy / sxx);
}

QualityReport quality_report(const CompactDomain& domain, const NodeSequence& sequence,
                             const QualityReportOptions& options) {
    const std::span<const Complex> nodes(sequence.nodes);
    if (nodes.empty()) throw std::invalid_argument("quality_report: empty sequence");
    QualityReport report;
    report.seed = sequence.seed.value_or(0);
    report.method = method_name(sequence.method);
    report.domain_id = sequence.domain_id;
    report.lebesgue_grid = options.lebesgue_grid;
    report.eval_grid = options.eval_grid;
    report.fit_lo = options.fit_lo;
    report.fit_hi = std::min(options.fit_hi, nodes.size());

    const auto lebesgue_grid = domain.eval_grid(options.lebesgue_grid);
    const auto eval_grid = domain.eval_grid(options.eval_grid);

    for (const auto& est :
         lebesgue_series(nodes, lebesgue_grid, 1, nodes.size()))
        report.lebesgue.emplace_back(est.n, est.value);

    report.min_separation = separation_series(nodes);
    report.pseudo_leja_ratio = pseudo_leja_ratio_series(nodes, eval_grid);

    // Per-prefix capacity estimators; the transfinite product is extended
    // incrementally with log|pi_n(z_n)|.
    CompensatedSum pair_sum;
    for (std::size_t n = 1; n <= nodes.size(); ++n) {
        const std::span<const Complex> prefix(nodes.data(), n);
        if (n >= 2) {
            pair_sum.add(log_abs_pi(std::span<const Complex>(nodes.data(), n - 1), nodes[n - 1]));
            const auto dn = static_cast<double>(n);
            report.capacity_transfinite.emplace_back(
                n, std::exp(2.0 * pair_sum.value() / (dn * (dn - 1.0))));
        }
        report.capacity_supnorm.emplace_back(
            n, std::exp(sup_norm_estimate(prefix, eval_grid).value / static_cast<double>(n)));
    }

    const auto points_in_range = [&report](const Series& s) {
        std::size_t count = 0;
        for (const auto& [n, v] : s)
            if (n >= report.fit_lo && n <= report.fit_hi && v > 0.0) ++count;
        return count;
    };
    if (points_in_range(report.lebesgue) >= 3)
        report.lebesgue_slope = loglog_slope(report.lebesgue, report.fit_lo, report.fit_hi).slope;
    const Series envelope = lower_envelope(report.min_separation);
    if (points_in_range(envelope) >= 3)
        report.separation_slope = loglog_slope(envelope, report.fit_lo, report.fit_hi).slope;

    if (ReferenceDensity::available(domain.kind())) {
        const MeasureTest mt = empirical_measure_test(nodes, domain, options.histogram_bins);
        report.ks_distance = mt.ks_distance;
        report.histogram = mt.histogram;
    } else {
        report.histogram = projection_histogram(nodes, domain, options.histogram_bins);
    }

    if (!options.function_name.empty()) {
        check_function_on_domain(options.function_name, domain);
        const auto f = test_function(options.function_name);
        report.error_trace = error_trace(domain, nodes, f, options.eval_grid);
        report.geometric_rate = geometric_rate(report.error_trace, options.rate_cutoff);
    }
    return report;
}

EnsembleStats ensemble_stats(const std::vector<QualityReport>& reports, std::size_t n_min,
                             std::size_t n_max) {
    if (reports.size() < 2) throw std::invalid_argument("ensemble_stats: need at least 2 reports");
    const Series& first = reports.front().lebesgue;
    for (const auto& r : reports) {
        if (r.lebesgue.size() != first.size())
            throw std::invalid_argument("ensemble_stats: mismatched n ranges");
        for (std::size_t i = 0; i < first.size(); ++i)
            if (r.lebesgue[i].first != first[i].first)
                throw std::invalid_argument("ensemble_stats: mismatched n ranges");
    }

    EnsembleStats stats;
    const auto count = static_cast<double>(reports.size());
    Series mean_series, sd_series;
    for (std::size_t i = 0; i < first.size(); ++i) {
        const std::size_t n = first[i].first;
        double mean = 0.0;
        for (const auto& r : reports) mean += r.lebesgue[i].second;
        mean /= count;
        double var = 0.0;
        for (const auto& r : reports) {
            const double d = r.lebesgue[i].second - mean;
            var += d * d;
        }
        var /= (count - 1.0);
        stats.n.push_back(n);
        stats.lebesgue_mean.push_back(mean);
        stats.lebesgue_sd.push_back(std::sqrt(var));
        mean_series.emplace_back(n, mean);
        sd_series.emplace_back(n, std::sqrt(var));
    }
    stats.mean_slope = loglog_slope(mean_series, n_min, n_max).slope;
    bool sd_positive = true;
    for (const auto& [n, v] : sd_series)
        if (n >= n_min && n <= n_max && !(v > 0.0)) sd_positive = false;
    if (sd_positive) stats.sd_slope = loglog_slope(sd_series, n_min, n_max).slope;
    return stats;
}

}  // namespace leja
