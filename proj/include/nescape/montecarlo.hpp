#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nescape/geometry.hpp"

namespace nescape::mc {

struct CensoringError : std::runtime_error {
    double censored_fraction;
    explicit CensoringError(double frac)
        : std::runtime_error("censored fraction " + std::to_string(frac) +
                             " exceeds the 0.1% acceptance threshold; "
                             "increase max_steps or revisit dt"),
          censored_fraction(frac) {}
};

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StartSpec {
    enum class Kind { Point, Uniform, UniformCell };
    Kind kind = Kind::Uniform;
    // Point: planar coordinates, or (theta, phi) on the sphere.
    double x = 0.0;
    double y = 0.0;
    // UniformCell: uniform start restricted to one of cell_count equal-area
    // cells (consistency checks of the uniform estimator).
    int cell_index = 0;
    int cell_count = 1;

    static StartSpec point(double x, double y) {
        return StartSpec{Kind::Point, x, y, 0, 1};
    }
    static StartSpec uniform() { return StartSpec{}; }
    static StartSpec uniform_cell(int index, int count) {
        return StartSpec{Kind::UniformCell, 0.0, 0.0, index, count};
    }
};

struct McConfig {
    double dt = 1e-5;
    long n_paths = 10000;
    std::uint64_t seed = 0;
    long max_steps = 200'000'000;
    StartSpec start;
    bool adaptive_near_singularity = false;
    int n_threads = 0;  // 0: hardware concurrency
    // Verification mode: treat the whole boundary as reflecting and let every
    // path censor; suppresses the censoring error.
    bool reflect_everything = false;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_absorbed = 0;
    long n_censored = 0;
    double dt_used = 0.0;
    std::vector<std::string> warnings;
};

/// Euler-Maruyama reflected Brownian motion on a planar domain.  A missing
/// window means the whole boundary absorbs.
McEstimate simulate_planar(const geom::PlanarDomain& domain,
                           const std::optional<geom::Window>& window, const McConfig& config,
                           double D);

/// Tangent-plane stepping with radial reprojection on the decapitated
/// sphere.  A missing window means the whole cap rim absorbs.
McEstimate simulate_sphere(const geom::SphericalDomain& domain,
                           const std::optional<geom::Window>& window, const McConfig& config,
                           double D);

using AnyDomain = std::variant<geom::PlanarDomain, geom::SphericalDomain>;

struct SweepRow {
    double eps;
    McEstimate estimate;
};

/// Runs the simulator over a family of windows of sizes eps_values (in the
/// prototype window's convention), decreasing, at least three values.
std::vector<SweepRow> sweep(const AnyDomain& domain, const geom::Window& window_prototype,
                            std::span<const double> eps_values, const McConfig& config,
                            double D);

}  // namespace nescape::mc
