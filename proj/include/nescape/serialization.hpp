#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nescape/asymptotics.hpp"
#include "nescape/dualseries.hpp"
#include "nescape/geometry.hpp"
#include "nescape/montecarlo.hpp"

namespace nescape::io {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A domain plus its (optional) absorbing window, the unit the CLI consumes.
struct GeometrySpec {
    std::variant<geom::PlanarDomain, geom::SphericalDomain> domain;
    std::optional<geom::Window> window;

    bool is_planar() const { return std::holds_alternative<geom::PlanarDomain>(domain); }
    const geom::PlanarDomain& planar() const { return std::get<geom::PlanarDomain>(domain); }
    const geom::SphericalDomain& spherical() const {
        return std::get<geom::SphericalDomain>(domain);
    }
    std::string kind() const;
    double area() const;
};

/// Parses {type, params, window:{component, center, half_width, convention}}.
GeometrySpec geometry_from_json(const json& j);
json geometry_to_json(const GeometrySpec& g);

/// Plain-text key=value block (one pair per line, '#' comments), e.g.
///   type = annulus
///   R1 = 1.0
///   window.component = inner
GeometrySpec geometry_from_kv(const std::string& text);

/// Auto-detects JSON vs key=value from the payload.
GeometrySpec geometry_from_text(const std::string& text);

json to_json(const asym::AsymptoticResult& r);
asym::AsymptoticResult asymptotic_from_json(const json& j);

json to_json(const dual::SeriesSolution& s);
dual::SeriesSolution series_from_json(const json& j);

json to_json(const mc::McEstimate& e);
mc::McEstimate estimate_from_json(const json& j);

json to_json(const std::vector<mc::SweepRow>& rows);

/// CSV with header "epsilon,mean,stderr,n_absorbed,n_censored".
std::string sweep_to_csv(const std::vector<mc::SweepRow>& rows);
std::vector<mc::SweepRow> sweep_from_csv(const std::string& text);

/// CSV with header "term,value" plus the total.
std::string asymptotic_to_csv(const asym::AsymptoticResult& r);

/// CSV with header "angle,flux".
std::string flux_to_csv(const dual::SeriesSolution& s);

std::string format_double(double v);  // shortest exact round-trip form

}  // namespace nescape::io
