#include "leja/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leja {

namespace {

constexpr double kThinTolerance = 1e-12;
constexpr std::size_t kRejectionCap = 1000000;

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

int orientation(Complex a, Complex b, Complex c) {
    const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                     (b.imag() - a.imag()) * (c.real() - a.real());
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool on_segment_collinear(Complex a, Complex b, Complex p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_collinear(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment_collinear(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment_collinear(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment_collinear(q1, q2, p2)) return true;
    return false;
}

void validate_simple_polygon(const std::vector<Complex>& v) {
    const std::size_t m = v.size();
    if (m < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (Complex z : v) require_finite(z, "polygon vertex");
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i] == v[(i + 1) % m])
            throw std::invalid_argument("polygon has a zero-length edge");
    }
    // Non-adjacent edges must not intersect.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t i2 = (i + 1) % m;
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::size_t j2 = (j + 1) % m;
            if (j == i || j2 == i || j == i2) continue;
            if (segments_intersect(v[i], v[i2], v[j], v[j2]))
                throw std::invalid_argument("polygon is self-intersecting");
        }
    }
    if (std::abs(polygon_area(v)) <= 0.0)
        throw std::invalid_argument("polygon has zero area");
}

/// Crossing-parity test for a strictly interior/exterior query point. The
/// horizontal ray is nudged off any vertex ordinate by 1e-12 so grazing a
/// vertex never flips the parity.
bool polygon_interior(const std::vector<Complex>& v, double x, double y) {
    const std::size_t m = v.size();
    bool clear = false;
    for (int guard = 0; guard < 64 && !clear; ++guard) {
        clear = true;
        for (Complex w : v) {
            if (std::abs(w.imag() - y) <= 1e-13) {
                y += kThinTolerance;
                clear = false;
                break;
            }
        }
    }
    bool inside = false;
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const double yi = v[i].imag(), yj = v[j].imag();
        if ((yi > y) == (yj > y)) continue;
        const double xi = v[i].real(), xj = v[j].real();
        const double x_cross = xi + (y - yi) / (yj - yi) * (xj - xi);
        if (x < x_cross) inside = !inside;
    }
    return inside;
}

struct BoundingBox { double x0, x1, y0, y1; };

BoundingBox polygon_bbox(const std::vector<Complex>& v) {
    BoundingBox b{v[0].real(), v[0].real(), v[0].imag(), v[0].imag()};
    for (Complex z : v) {
        b.x0 = std::min(b.x0, z.real());
        b.x1 = std::max(b.x1, z.real());
        b.y0 = std::min(b.y0, z.imag());
        b.y1 = std::max(b.y1, z.imag());
    }
    return b;
}

std::vector<double> linspace(double a, double b, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) { out[0] = a; return out; }
    for (std::size_t i = 0; i < count; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

std::string fmt_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%g,%g)", z.real(), z.imag());
    return buf;
}

}  // namespace

double polygon_area(const std::vector<Complex>& vertices) {
    double twice = 0.0;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        twice += vertices[j].real() * vertices[i].imag() - vertices[i].real() * vertices[j].imag();
    }
    return 0.5 * twice;
}

std::string kind_name(DomainKind kind) {
    switch (kind) {
        case DomainKind::segment: return "segment";
        case DomainKind::circle: return "circle";
        case DomainKind::disk: return "disk";
        case DomainKind::polygon: return "polygon";
        case DomainKind::interval_union: return "interval-union";
    }
    return "?";
}

CompactDomain CompactDomain::segment(Complex a, Complex b) {
    require_finite(a, "segment endpoint");
    require_finite(b, "segment endpoint");
    if (a == b) throw std::invalid_argument("segment endpoints coincide");
    return CompactDomain(Segment{a, b}, ExponentProfile{2.0, 2.0, 1.0});
}

CompactDomain CompactDomain::circle(Complex center, double radius) {
    require_finite(center, "circle center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("circle radius must be positive");
    return CompactDomain(Circle{center, radius}, ExponentProfile{1.0, 1.0, 1.0});
}

CompactDomain CompactDomain::disk(Complex center, double radius) {
    require_finite(center, "disk center");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("disk radius must be positive");
    return CompactDomain(Disk{center, radius}, ExponentProfile{2.0, 1.0, 2.0});
}

CompactDomain CompactDomain::polygon(std::vector<Complex> vertices) {
    validate_simple_polygon(vertices);
    return CompactDomain(Polygon{std::move(vertices)}, ExponentProfile{2.0, 2.0, 2.0});
}

CompactDomain CompactDomain::interval_union(std::vector<std::pair<double, double>> intervals) {
    if (intervals.empty()) throw std::invalid_argument("interval union is empty");
    std::sort(intervals.begin(), intervals.end());
    for (auto& [a, b] : intervals) {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
            throw std::invalid_argument("interval union: each interval needs a < b, finite");
    }
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].first <= intervals[i - 1].second)
            throw std::invalid_argument("interval union: intervals overlap");
    }
    return CompactDomain(IntervalUnion{std::move(intervals)}, ExponentProfile{2.0, 2.0, 1.0});
}

DomainKind CompactDomain::kind() const {
    switch (shape_.index()) {
        case 0: return DomainKind::segment;
        case 1: return DomainKind::circle;
        case 2: return DomainKind::disk;
        case 3: return DomainKind::polygon;
        default: return DomainKind::interval_union;
    }
}

void CompactDomain::set_exponents(const ExponentProfile& e) {
    if (!(e.nikolskii > 0.0) || !(e.markov > 0.0) || !(e.covering > 0.0))
        throw std::invalid_argument("exponents must be strictly positive");
    exponents_ = e;
}

double CompactDomain::diameter() const {
    return std::visit(
        [](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return std::abs(g.b - g.a);
            } else if constexpr (std::is_same_v<T, Circle> || std::is_same_v<T, Disk>) {
                return 2.0 * g.radius;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                double best = 0.0;
                for (std::size_t i = 0; i < g.vertices.size(); ++i)
                    for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
                        best = std::max(best, std::abs(g.vertices[i] - g.vertices[j]));
                return best;
            } else {
                return g.intervals.back().second - g.intervals.front().first;
            }
        },
        shape_);
}

bool CompactDomain::contains(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return std::visit(
        [z](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return point_segment_distance(z, g.a, g.b) <= kThinTolerance;
            } else if constexpr (std::is_same_v<T, Circle>) {
                return std::abs(std::abs(z - g.center) - g.radius) <= kThinTolerance;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return std::abs(z - g.center) <= g.radius + kThinTolerance;
            } else if constexpr (std::is_same_v<T, Polygon>) {
                for (std::size_t i = 0, m = g.vertices.size(), j = m - 1; i < m; j = i++)
                    if (point_segment_distance(z, g.vertices[j], g.vertices[i]) <= kThinTolerance)
                        return true;
                return polygon_interior(g.vertices, z.real(), z.imag());
            } else {
                if (std::abs(z.imag()) > kThinTolerance) return false;
                for (auto [a, b] : g.intervals)
                    if (z.real() >= a - kThinTolerance && z.real() <= b + kThinTolerance) return true;
                return false;
            }
        },
        shape_);
}

Complex CompactDomain::sample_uniform(Substream& stream) const {
    return std::visit(
        [&stream](const auto& g) -> Complex {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return g.a + stream.next_unit() * (g.b - g.a);
            } else if constexpr (std::is_same_v<T, Circle>) {
                const double theta = 2.0 * std::numbers::pi * stream.next_unit();
                return g.center + g.radius * Complex(std::cos(theta), std::sin(theta));
            } else if constexpr (std::is_same_v<T, Disk>) {
                const double r = g.radius * std::sqrt(stream.next_unit());
                const double theta = 2.0 * std::numbers::pi * stream.next_unit();
                return g.center + r * Complex(std::cos(theta), std::sin(theta));
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const BoundingBox b = polygon_bbox(g.vertices);
                for (std::size_t i = 0; i < kRejectionCap; ++i) {
                    const double x = b.x0 + stream.next_unit() * (b.x1 - b.x0);
                    const double y = b.y0 + stream.next_unit() * (b.y1 - b.y0);
                    if (polygon_interior(g.vertices, x, y)) return {x, y};
                }
                throw std::runtime_error("polygon sampling: rejection cap reached (degenerate area)");
            } else {
                // Component chosen with probability proportional to its
                // length: that is the uniform measure on a disjoint union.
                double total = 0.0;
                for (auto [a, b] : g.intervals) total += b - a;
                double pick = stream.next_unit() * total;
                std::size_t idx = 0;
                for (; idx + 1 < g.intervals.size(); ++idx) {
                    const double len = g.intervals[idx].second - g.intervals[idx].first;
                    if (pick <= len) break;
                    pick -= len;
                }
                const auto [a, b] = g.intervals[idx];
                const double t = std::clamp(pick / (b - a), 0.0, 1.0);
                return {a + t * (b - a), 0.0};
            }
        },
        shape_);
}

std::vector<Complex> CompactDomain::eval_grid(std::size_t target_count) const {
    if (target_count < 2) throw std::invalid_argument("eval_grid: target_count must be >= 2");
    return std::visit(
        [target_count](const auto& g) -> std::vector<Complex> {
            using T = std::decay_t<decltype(g)>;
            std::vector<Complex> out;
            if constexpr (std::is_same_v<T, Segment>) {
                for (double t : linspace(0.0, 1.0, target_count)) out.push_back(g.a + t * (g.b - g.a));
            } else if constexpr (std::is_same_v<T, Circle>) {
                out.reserve(target_count);
                for (std::size_t k = 0; k < target_count; ++k) {
                    const double theta =
                        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(target_count);
                    out.push_back(g.center + g.radius * Complex(std::cos(theta), std::sin(theta)));
                }
            } else if constexpr (std::is_same_v<T, Disk>) {
                const double fill = std::numbers::pi / 4.0;
                const auto m = static_cast<std::size_t>(
                    std::ceil(std::sqrt(static_cast<double>(target_count) / fill)));
                const auto xs = linspace(g.center.real() - g.radius, g.center.real() + g.radius, std::max<std::size_t>(m, 2));
                const auto ys = linspace(g.center.imag() - g.radius, g.center.imag() + g.radius, std::max<std::size_t>(m, 2));
                for (double y : ys)
                    for (double x : xs)
                        if (std::abs(Complex(x, y) - g.center) <= g.radius + kThinTolerance)
                            out.emplace_back(x, y);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const BoundingBox b = polygon_bbox(g.vertices);
                const double box_area = (b.x1 - b.x0) * (b.y1 - b.y0);
                const double fill = std::min(1.0, std::abs(polygon_area(g.vertices)) / box_area);
                const auto m = static_cast<std::size_t>(
                    std::ceil(std::sqrt(static_cast<double>(target_count) / fill)));
                const auto xs = linspace(b.x0, b.x1, std::max<std::size_t>(m, 2));
                const auto ys = linspace(b.y0, b.y1, std::max<std::size_t>(m, 2));
                const auto on_boundary = [&g](Complex z) {
                    for (std::size_t i = 0, mm = g.vertices.size(), j = mm - 1; i < mm; j = i++)
                        if (point_segment_distance(z, g.vertices[j], g.vertices[i]) <= kThinTolerance)
                            return true;
                    return false;
                };
                for (double y : ys)
                    for (double x : xs) {
                        const Complex z(x, y);
                        if (on_boundary(z) || polygon_interior(g.vertices, x, y)) out.push_back(z);
                    }
                for (Complex v : g.vertices)
                    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
            } else {
                double total = 0.0;
                for (auto [a, b] : g.intervals) total += b - a;
                for (auto [a, b] : g.intervals) {
                    const double share = (b - a) / total * static_cast<double>(target_count);
                    const auto count = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(share)));
                    for (double x : linspace(a, b, count)) out.emplace_back(x, 0.0);
                }
            }
            return out;
        },
        shape_);
}

std::vector<Complex> CompactDomain::boundary_mesh(std::size_t count) const {
    if (count == 0) throw std::invalid_argument("boundary_mesh: count must be positive");
    return std::visit(
        [count](const auto& g) -> std::vector<Complex> {
            using T = std::decay_t<decltype(g)>;
            std::vector<Complex> out;
            out.reserve(count);
            if constexpr (std::is_same_v<T, Segment>) {
                if (count == 1) return {g.a};
                for (double t : linspace(0.0, 1.0, count)) out.push_back(g.a + t * (g.b - g.a));
            } else if constexpr (std::is_same_v<T, Circle> || std::is_same_v<T, Disk>) {
                for (std::size_t k = 0; k < count; ++k) {
                    const double theta =
                        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
                    out.push_back(g.center + g.radius * Complex(std::cos(theta), std::sin(theta)));
                }
            } else if constexpr (std::is_same_v<T, Polygon>) {
                const std::size_t m = g.vertices.size();
                std::vector<double> cumlen(m + 1, 0.0);
                for (std::size_t i = 0; i < m; ++i)
                    cumlen[i + 1] = cumlen[i] + std::abs(g.vertices[(i + 1) % m] - g.vertices[i]);
                const double perimeter = cumlen[m];
                std::size_t edge = 0;
                for (std::size_t k = 0; k < count; ++k) {
                    const double s = perimeter * static_cast<double>(k) / static_cast<double>(count);
                    while (edge + 1 < m && cumlen[edge + 1] <= s) ++edge;
                    const double t = (s - cumlen[edge]) / (cumlen[edge + 1] - cumlen[edge]);
                    out.push_back(g.vertices[edge] + t * (g.vertices[(edge + 1) % m] - g.vertices[edge]));
                }
            } else {
                throw std::invalid_argument("boundary_mesh: unsupported for interval unions");
            }
            return out;
        },
        shape_);
}

std::string CompactDomain::describe() const {
    return std::visit(
        [](const auto& g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return "segment" + fmt_complex(g.a) + "-" + fmt_complex(g.b);
            } else if constexpr (std::is_same_v<T, Circle>) {
                return "circle" + fmt_complex(g.center) + "r" + std::to_string(g.radius);
            } else if constexpr (std::is_same_v<T, Disk>) {
                return "disk" + fmt_complex(g.center) + "r" + std::to_string(g.radius);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return "polygon[" + std::to_string(g.vertices.size()) + "]";
            } else {
                return "interval-union[" + std::to_string(g.intervals.size()) + "]";
            }
        },
        shape_);
}

}  // namespace leja
