#include "nescape/geometry.hpp"

#include <cmath>

namespace nescape::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// PlanarDomain
// ---------------------------------------------------------------------------

PlanarDomain::PlanarDomain(Shape shape) : shape_(std::move(shape)) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                require(s.R > 0.0, "Disk: R must be positive");
            } else if constexpr (std::is_same_v<T, Annulus>) {
                require(s.R1 > 0.0 && s.R2 > s.R1, "Annulus: requires 0 < R1 < R2");
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                require(s.a > 0.0 && s.b > 0.0, "Rectangle: sides must be positive");
            } else {
                require(s.R > 0.0, "TangentCircles: R must be positive");
                require(s.d > 0.0 && s.d < 1.0, "TangentCircles: requires 0 < d < 1");
            }
        },
        shape_);
}

double PlanarDomain::area() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) return kPi * s.R * s.R;
            else if constexpr (std::is_same_v<T, Annulus>) return kPi * (s.R2 * s.R2 - s.R1 * s.R1);
            else if constexpr (std::is_same_v<T, Rectangle>) return s.a * s.b;
            else return kPi * s.R * s.R * (1.0 - s.d * s.d);
        },
        shape_);
}

double PlanarDomain::boundary_length() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) return 2.0 * kPi * s.R;
            else if constexpr (std::is_same_v<T, Annulus>) return 2.0 * kPi * (s.R1 + s.R2);
            else if constexpr (std::is_same_v<T, Rectangle>) return 2.0 * (s.a + s.b);
            else return 2.0 * kPi * s.R * (1.0 + s.d);
        },
        shape_);
}

std::string PlanarDomain::kind() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) return "disk";
            else if constexpr (std::is_same_v<T, Annulus>) return "annulus";
            else if constexpr (std::is_same_v<T, Rectangle>) return "rectangle";
            else return "tangent_circles";
        },
        shape_);
}

// ---------------------------------------------------------------------------
// SphericalDomain
// ---------------------------------------------------------------------------

SphericalDomain::SphericalDomain(Shape shape) : shape_(std::move(shape)) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FullSphere>) {
                require(s.R > 0.0, "FullSphere: R must be positive");
            } else {
                require(s.R > 0.0, "DecapitatedSphere: R must be positive");
                require(s.delta > 0.0 && s.delta < kPi,
                        "DecapitatedSphere: requires 0 < delta < pi");
            }
        },
        shape_);
}

double SphericalDomain::area() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FullSphere>) return 4.0 * kPi * s.R * s.R;
            else return 2.0 * kPi * s.R * s.R * (1.0 + std::cos(s.delta));
        },
        shape_);
}

double SphericalDomain::boundary_length() const {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FullSphere>) return 0.0;
            else return 2.0 * kPi * s.R * std::sin(s.delta);
        },
        shape_);
}

std::string SphericalDomain::kind() const {
    return std::holds_alternative<FullSphere>(shape_) ? "sphere" : "decapitated_sphere";
}

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

std::string to_string(BoundaryComponent c) {
    switch (c) {
        case BoundaryComponent::Outer: return "outer";
        case BoundaryComponent::Inner: return "inner";
        case BoundaryComponent::TopEdge: return "top-edge";
        case BoundaryComponent::CapRim: return "cap-rim";
        case BoundaryComponent::Cusp: return "cusp";
    }
    return "?";
}

std::string to_string(WidthConvention c) {
    switch (c) {
        case WidthConvention::AngularHalfWidth: return "angular-half-width";
        case WidthConvention::Arclength: return "arclength";
        case WidthConvention::LengthRatio: return "length-ratio";
    }
    return "?";
}

BoundaryComponent component_from_string(const std::string& s) {
    if (s == "outer") return BoundaryComponent::Outer;
    if (s == "inner") return BoundaryComponent::Inner;
    if (s == "top-edge") return BoundaryComponent::TopEdge;
    if (s == "cap-rim") return BoundaryComponent::CapRim;
    if (s == "cusp") return BoundaryComponent::Cusp;
    throw std::invalid_argument("unknown boundary component: " + s);
}

WidthConvention convention_from_string(const std::string& s) {
    if (s == "angular-half-width") return WidthConvention::AngularHalfWidth;
    if (s == "arclength") return WidthConvention::Arclength;
    if (s == "length-ratio") return WidthConvention::LengthRatio;
    throw std::invalid_argument("unknown width convention: " + s);
}

namespace {

// Measures for a window on a full circle of radius rho belonging to a
// boundary of total length boundary_len.
WindowMeasures circle_measures(const Window& w, double rho, double boundary_len,
                               const std::string& what) {
    WindowMeasures m{};
    switch (w.convention) {
        case WidthConvention::AngularHalfWidth: m.angular = w.half_width; break;
        case WidthConvention::Arclength: m.angular = w.half_width / rho; break;
        case WidthConvention::LengthRatio: m.angular = w.half_width * boundary_len / (2.0 * rho); break;
    }
    m.arclength = 2.0 * m.angular * rho;
    m.ratio = m.arclength / boundary_len;
    if (!(m.angular > 0.0) || m.angular >= kPi)
        throw std::invalid_argument(what + ": window half-width " + std::to_string(m.angular) +
                                    " rad must lie in (0, pi), i.e. under half the component");
    return m;
}

}  // namespace

WindowMeasures window_measures(const Window& window, const PlanarDomain& domain) {
    require(window.half_width > 0.0, "window: half_width must be positive");
    const double boundary_len = domain.boundary_length();
    return std::visit(
        [&](const auto& s) -> WindowMeasures {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                if (window.component != BoundaryComponent::Outer)
                    throw std::invalid_argument("disk window must sit on the outer component");
                return circle_measures(window, s.R, boundary_len, "disk");
            } else if constexpr (std::is_same_v<T, Annulus>) {
                if (window.component == BoundaryComponent::Inner)
                    return circle_measures(window, s.R1, boundary_len, "annulus inner");
                if (window.component == BoundaryComponent::Outer)
                    return circle_measures(window, s.R2, boundary_len, "annulus outer");
                throw std::invalid_argument("annulus window must sit on inner or outer circle");
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                if (window.component != BoundaryComponent::TopEdge)
                    throw std::invalid_argument("rectangle window must sit on the top edge");
                WindowMeasures m{};
                double half_len = 0.0;
                switch (window.convention) {
                    case WidthConvention::Arclength: half_len = window.half_width; break;
                    case WidthConvention::AngularHalfWidth:
                        half_len = window.half_width * s.a / kPi;
                        break;
                    case WidthConvention::LengthRatio:
                        half_len = window.half_width * boundary_len / 2.0;
                        break;
                }
                // Absorbed measure is the overlap of (center-h, center+h) with
                // the edge [0, a]; at the corner (center = a) half the nominal
                // window lies outside, exactly the reflection picture of the
                // corner problem.
                const double lo = std::max(0.0, window.center - half_len);
                const double hi = std::min(s.a, window.center + half_len);
                require(hi > lo, "rectangle window does not overlap the top edge");
                m.arclength = hi - lo;
                m.angular = kPi * m.arclength / s.a;
                m.ratio = m.arclength / boundary_len;
                if (half_len >= s.a / 2.0)
                    throw std::invalid_argument(
                        "rectangle: window half-extent must stay below half the edge length");
                return m;
            } else {
                if (window.component != BoundaryComponent::Cusp)
                    throw std::invalid_argument(
                        "tangent-circles window must sit at the cusp component");
                WindowMeasures m{};
                double cutoff = 0.0;  // one-sided arclength from the cusp
                switch (window.convention) {
                    case WidthConvention::Arclength: cutoff = window.half_width; break;
                    case WidthConvention::AngularHalfWidth:
                        cutoff = window.half_width * s.R;
                        break;
                    case WidthConvention::LengthRatio:
                        cutoff = window.half_width * 2.0 * s.R;
                        break;
                }
                m.arclength = cutoff;
                m.angular = cutoff / s.R;
                m.ratio = cutoff / (2.0 * s.R);
                if (cutoff >= kPi * s.d * s.R)
                    throw std::invalid_argument(
                        "tangent-circles: cusp cutoff must stay below half the inner circle");
                return m;
            }
        },
        domain.shape());
}

std::pair<double, double> rectangle_window_span(const Window& window, const Rectangle& rect) {
    if (window.component != BoundaryComponent::TopEdge)
        throw std::invalid_argument("rectangle window must sit on the top edge");
    double half_len = 0.0;
    switch (window.convention) {
        case WidthConvention::Arclength: half_len = window.half_width; break;
        case WidthConvention::AngularHalfWidth: half_len = window.half_width * rect.a / kPi; break;
        case WidthConvention::LengthRatio:
            half_len = window.half_width * (rect.a + rect.b);
            break;
    }
    const double lo = std::max(0.0, window.center - half_len);
    const double hi = std::min(rect.a, window.center + half_len);
    if (!(hi > lo)) throw std::invalid_argument("rectangle window does not overlap the top edge");
    return {lo, hi};
}

WindowMeasures window_measures(const Window& window, const SphericalDomain& domain) {
    require(window.half_width > 0.0, "window: half_width must be positive");
    const auto* decap = std::get_if<DecapitatedSphere>(&domain.shape());
    if (decap == nullptr || window.component != BoundaryComponent::CapRim)
        throw std::invalid_argument("spherical window must sit on a decapitated sphere's cap rim");
    const double rho = decap->R * std::sin(decap->delta);
    return circle_measures(window, rho, domain.boundary_length(), "cap rim");
}

// ---------------------------------------------------------------------------
// Conformal maps
// ---------------------------------------------------------------------------

namespace {

const Complex& planar_point(const MapPoint& p, const char* map_name) {
    const auto* z = std::get_if<Complex>(&p);
    if (z == nullptr)
        throw std::invalid_argument(std::string(map_name) + " expects a planar point");
    return *z;
}

}  // namespace

Complex map_apply(const ConformalMap& map, const MapPoint& point) {
    return std::visit(
        [&](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Inversion>) {
                const Complex& z = planar_point(point, "Inversion");
                if (z == Complex(0.0, 0.0))
                    throw SingularPointError("Inversion: singular at z = 0");
                return 1.0 / z;
            } else if constexpr (std::is_same_v<T, CornerFlatten>) {
                const Complex& z = planar_point(point, "CornerFlatten");
                if (z == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
                return std::pow(z, kPi / m.alpha);
            } else if constexpr (std::is_same_v<T, CuspMap>) {
                const Complex& z = planar_point(point, "CuspMap");
                if (z == Complex(0.0, 0.0))
                    throw SingularPointError("CuspMap: singular at the cusp z = 0");
                const double q = 1.0 / m.d - 1.0;
                return std::exp(Complex(0.0, kPi / q) * (1.0 / z - 1.0));
            } else {
                const auto* sp = std::get_if<SpherePoint>(&point);
                if (sp == nullptr)
                    throw std::invalid_argument("Stereographic expects a sphere point");
                if (sp->theta <= 0.0)
                    throw SingularPointError("Stereographic: singular at the projection pole");
                const double r = 1.0 / std::tan(0.5 * sp->theta);
                return Complex(r * std::cos(sp->phi), r * std::sin(sp->phi));
            }
        },
        map);
}

MapPoint map_invert(const ConformalMap& map, const Complex& image) {
    return std::visit(
        [&](const auto& m) -> MapPoint {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Inversion>) {
                if (image == Complex(0.0, 0.0))
                    throw SingularPointError("Inversion: singular at w = 0");
                return Complex(1.0 / image);
            } else if constexpr (std::is_same_v<T, CornerFlatten>) {
                if (image == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
                return Complex(std::pow(image, m.alpha / kPi));
            } else if constexpr (std::is_same_v<T, CuspMap>) {
                if (image == Complex(0.0, 0.0))
                    throw SingularPointError("CuspMap: w = 0 corresponds to the cusp");
                const double q = 1.0 / m.d - 1.0;
                const Complex eta = std::log(image);  // principal branch
                const Complex z = 1.0 / (1.0 + eta * q / Complex(0.0, kPi));
                return z;
            } else {
                const double r = std::abs(image);
                const double theta = 2.0 * std::atan2(1.0, r);
                double phi = std::atan2(image.imag(), image.real());
                if (phi < 0.0) phi += 2.0 * kPi;
                return SpherePoint{theta, phi};
            }
        },
        map);
}

double map_jacobian(const ConformalMap& map, const MapPoint& point) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Inversion>) {
                const Complex& z = planar_point(point, "Inversion");
                const double r2 = std::norm(z);
                if (r2 == 0.0) throw SingularPointError("Inversion: singular at z = 0");
                return 1.0 / (r2 * r2);
            } else if constexpr (std::is_same_v<T, CornerFlatten>) {
                const Complex& z = planar_point(point, "CornerFlatten");
                const double p = kPi / m.alpha;
                if (z == Complex(0.0, 0.0)) {
                    if (p == 1.0) return 1.0;
                    throw SingularPointError("CornerFlatten: degenerate at the corner");
                }
                return std::norm(p * std::pow(z, p - 1.0));
            } else if constexpr (std::is_same_v<T, CuspMap>) {
                const Complex& z = planar_point(point, "CuspMap");
                if (z == Complex(0.0, 0.0))
                    throw SingularPointError("CuspMap: singular at the cusp z = 0");
                const double q = 1.0 / m.d - 1.0;
                const Complex w = std::exp(Complex(0.0, kPi / q) * (1.0 / z - 1.0));
                // f'(z) = w * (-pi i / q) / z^2
                return std::norm(w * Complex(0.0, -kPi / q) / (z * z));
            } else {
                const auto* sp = std::get_if<SpherePoint>(&point);
                if (sp == nullptr)
                    throw std::invalid_argument("Stereographic expects a sphere point");
                if (sp->theta <= 0.0)
                    throw SingularPointError("Stereographic: singular at the projection pole");
                const double s = std::sin(0.5 * sp->theta);
                const double one_plus_r2 = 1.0 / (s * s);  // 1 + cot^2 = 1/sin^2
                return one_plus_r2 * one_plus_r2 / (4.0 * m.R * m.R);
            }
        },
        map);
}

}  // namespace nescape::geom
