#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace nescape::tol {

/// Relative tolerance schedule for formula-vs-simulation comparisons; the
/// single source of truth shared by the `compare` command and the
/// acceptance suite.
struct CompareTolerance {
    std::string_view key;
    double rel_tol;
    // Comparisons may also pass within this many standard errors even when
    // the relative gate is tighter (0 disables the alternative).
    double stderr_multiple;
};

inline constexpr CompareTolerance kCompareTolerances[] = {
    {"sphere-cap-exact", 0.02, 3.0},
    {"annulus-avg", 0.10, 0.0},
    {"rectangle-corner", 0.07, 0.0},
    {"cusp-coefficient", 0.15, 0.0},
    {"sphere-window", 0.10, 0.0},
};

inline const CompareTolerance& compare_tolerance(std::string_view key) {
    for (const auto& t : kCompareTolerances)
        if (t.key == key) return t;
    throw std::invalid_argument("no tolerance entry for comparison key");
}

}  // namespace nescape::tol
