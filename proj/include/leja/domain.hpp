#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "leja/rng.hpp"

namespace leja {

using Complex = std::complex<double>;

/// Growth exponents of the Nikolskii (r_l), Markov (r_m) and covering (r_c)
/// inequalities for a compact set with its natural measure. They only enter
/// as configuration data: the candidate budget per step is n^(r_l + eps) for
/// the Metropolis-Hastings method and n^(r_m * r_c + eps) for the
/// randomized-mesh method.
struct ExponentProfile {
    double nikolskii = 2.0;
    double markov = 2.0;
    double covering = 1.0;
};

enum class DomainKind { segment, circle, disk, polygon, interval_union };

std::string kind_name(DomainKind kind);

/// A compact subset K of the complex plane together with its natural measure
/// (arclength for segment / circle / interval unions, area for disk and
/// polygon). Provides membership, uniform sampling, deterministic evaluation
/// grids, a boundary mesh, the exact diameter and the exponent profile.
///
/// Lower-dimensional sets use a 1e-12 absolute containment tolerance:
/// floating-point images of their parameterizations are never exactly on
/// the set.
class CompactDomain {
public:
    static CompactDomain segment(Complex a, Complex b);
    static CompactDomain circle(Complex center, double radius);
    static CompactDomain disk(Complex center, double radius);
    static CompactDomain polygon(std::vector<Complex> vertices);
    static CompactDomain interval_union(std::vector<std::pair<double, double>> intervals);

    DomainKind kind() const;

    const ExponentProfile& exponents() const { return exponents_; }
    void set_exponents(const ExponentProfile& e);

    /// Exact diameter of K (closed form for every kind).
    double diameter() const;

    /// Membership test; tolerance 1e-12 for sets of zero area.
    bool contains(Complex z) const;

    /// One draw from the uniform distribution U_sigma(K). Consumes as many
    /// variates from the substream as the geometry requires (rejection from
    /// the bounding box for polygons, capped at 10^6 attempts).
    Complex sample_uniform(Substream& stream) const;

    /// Deterministic quasi-uniform grid with size within a factor two of
    /// target_count: equispaced parameters for one-dimensional sets, a
    /// tensor grid intersected with K for disk and polygon. Polygon grids
    /// always include the vertices; segment grids the endpoints.
    std::vector<Complex> eval_grid(std::size_t target_count) const;

    /// count equispaced-parameter points on the boundary of K. Unsupported
    /// for interval unions.
    std::vector<Complex> boundary_mesh(std::size_t count) const;

    /// Short human-readable identifier used for provenance fields.
    std::string describe() const;

    // Geometry accessors used by config serialization and diagnostics.
    struct Segment { Complex a, b; };
    struct Circle { Complex center; double radius; };
    struct Disk { Complex center; double radius; };
    struct Polygon { std::vector<Complex> vertices; };
    struct IntervalUnion { std::vector<std::pair<double, double>> intervals; };

    template <typename T>
    const T& geometry() const { return std::get<T>(shape_); }

private:
    using Shape = std::variant<Segment, Circle, Disk, Polygon, IntervalUnion>;

    CompactDomain(Shape shape, ExponentProfile exponents)
        : shape_(std::move(shape)), exponents_(exponents) {}

    Shape shape_;
    ExponentProfile exponents_;
};

/// Signed area of a simple polygon (shoelace).
double polygon_area(const std::vector<Complex>& vertices);

}  // namespace leja
