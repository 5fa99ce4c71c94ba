#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace nescape::geom {

using Complex = std::complex<double>;

struct SingularPointError : std::domain_error {
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

struct Disk {
    double R;
};

struct Annulus {
    double R1;
    double R2;
};

struct Rectangle {
    double a;
    double b;
};

/// Region bounded between two internally tangent circles: the outer circle
/// has radius R and center (R, 0), the inner circle radius d*R and center
/// (d*R, 0).  Both pass through the origin, which is the cusp point.
struct TangentCircles {
    double R;
    double d;  // radii ratio, 0 < d < 1
};

class PlanarDomain {
public:
    using Shape = std::variant<Disk, Annulus, Rectangle, TangentCircles>;

    explicit PlanarDomain(Shape shape);

    static PlanarDomain disk(double R) { return PlanarDomain(Disk{R}); }
    static PlanarDomain annulus(double R1, double R2) { return PlanarDomain(Annulus{R1, R2}); }
    static PlanarDomain rectangle(double a, double b) { return PlanarDomain(Rectangle{a, b}); }
    static PlanarDomain tangent_circles(double R, double d) {
        return PlanarDomain(TangentCircles{R, d});
    }

    double area() const;
    double boundary_length() const;
    const Shape& shape() const { return shape_; }
    std::string kind() const;

private:
    Shape shape_;
};

struct FullSphere {
    double R;
};

/// Sphere of radius R with the polar cap of central angle delta removed.
/// Colatitude theta in [0, pi] is measured from the removed cap's center
/// (the north pole), so the domain is delta < theta <= pi and its boundary
/// is the rim circle theta = delta.
struct DecapitatedSphere {
    double R;
    double delta;
};

class SphericalDomain {
public:
    using Shape = std::variant<FullSphere, DecapitatedSphere>;

    explicit SphericalDomain(Shape shape);

    static SphericalDomain full_sphere(double R) { return SphericalDomain(FullSphere{R}); }
    static SphericalDomain decapitated(double R, double delta) {
        return SphericalDomain(DecapitatedSphere{R, delta});
    }

    double area() const;
    /// Rim length for the decapitated sphere; zero for the full sphere.
    double boundary_length() const;
    const Shape& shape() const { return shape_; }
    std::string kind() const;

private:
    Shape shape_;
};

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

enum class BoundaryComponent { Outer, Inner, TopEdge, CapRim, Cusp };
enum class WidthConvention { AngularHalfWidth, Arclength, LengthRatio };

std::string to_string(BoundaryComponent c);
std::string to_string(WidthConvention c);
BoundaryComponent component_from_string(const std::string& s);
WidthConvention convention_from_string(const std::string& s);

/// Absorbing arc on one boundary component.  `center` is the boundary
/// parameter of the window center (an angle for circular components, an
/// arclength coordinate for the rectangle's top edge, 0 for the cusp) and
/// `half_width` is interpreted according to `convention`:
///   - angular-half-width: the paper's angular parameter (half-width),
///   - arclength:          half the window extent in arclength, measured
///                         from `center` along the component,
///   - length-ratio:       |window| / |whole boundary| for circular and
///                         straight components; for the tangent-circles
///                         cusp it is the arclength cutoff over the outer
///                         diameter 2R, the epsilon of the cusp escape law.
struct Window {
    BoundaryComponent component;
    double center;
    double half_width;
    WidthConvention convention;
};

/// The same window expressed in all three conventions.
///   angular:   angular parameter (half-width; for the top edge, the image
///              half-width pi*l/a of the cosine mapping),
///   arclength: absorbed boundary measure |dOmega_a|,
///   ratio:     the dimensionless epsilon the asymptotic formulas consume.
struct WindowMeasures {
    double angular;
    double arclength;
    double ratio;
};

WindowMeasures window_measures(const Window& window, const PlanarDomain& domain);
WindowMeasures window_measures(const Window& window, const SphericalDomain& domain);

/// Absorbed span [lo, hi] of a top-edge window on the rectangle's top side;
/// a window centered at x = a is clipped to [a - eps, a], the corner setup.
std::pair<double, double> rectangle_window_span(const Window& window, const Rectangle& rect);

// ---------------------------------------------------------------------------
// Conformal maps
// ---------------------------------------------------------------------------

struct Inversion {};

/// z -> z^(pi/alpha) on the principal branch; flattens a corner of opening
/// angle alpha placed at the origin.
struct CornerFlatten {
    double alpha;
};

/// z -> exp{ pi*i/(1/d - 1) * (1/z - 1) }: maps the canonical tangent-circles
/// domain (outer radius 1/2) onto the upper half plane.  The cusp sits at
/// z = 0.
struct CuspMap {
    double d;
};

/// Stereographic projection from the north pole.  Internally uses the
/// paper's diameter-1 sphere: a point at colatitude theta maps to the circle
/// of radius cot(theta/2).  The radius R enters only through the Jacobian
/// scaling (2R)^2.
struct Stereographic {
    double R;
};

struct SpherePoint {
    double theta;
    double phi;
};

using ConformalMap = std::variant<Inversion, CornerFlatten, CuspMap, Stereographic>;
using MapPoint = std::variant<Complex, SpherePoint>;

Complex map_apply(const ConformalMap& map, const MapPoint& point);
MapPoint map_invert(const ConformalMap& map, const Complex& image);

/// Area magnification factor from domain to image: |f'(z)|^2 for planar
/// maps; (1+r^2)^2/(2R)^2 for the stereographic projection, so that the
/// Laplace-Beltrami operator transports to (1+r^2)^2 * Laplacian on the
/// diameter-1 sphere.
double map_jacobian(const ConformalMap& map, const MapPoint& point);

}  // namespace nescape::geom
