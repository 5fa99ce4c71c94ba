#pragma once

#include <string>
#include <vector>

#include "nescape/geometry.hpp"

namespace nescape::dual {
struct SeriesSolution;
}

namespace nescape::asym {

struct Term {
    std::string name;
    double value;
};

/// MFPT value with a named term-by-term breakdown.  `value` always equals
/// the sum of `terms`; `aux` carries companion scalars (e.g. the other of
/// an exact/asymptotic pair) that are reported but not part of the sum.
struct AsymptoticResult {
    double value = 0.0;
    std::vector<Term> terms;
    std::string error_order;
    std::string convention;
    std::vector<std::string> warnings;
    std::vector<Term> aux;
};

/// The fixed set of remainder tags results may carry.
const std::vector<std::string>& error_order_tags();

// Leading-order law for a window on a smooth boundary point,
// E[tau] = (|Omega|/(pi D)) [log(1/eps) + O(1)], eps the boundary-measure
// ratio.  The O(1) bracket is unknown: compare slopes in log(1/eps), not
// absolute values.
AsymptoticResult mfpt_leading_smooth(double area, double D, double eps_ratio);

// Window at a corner of opening angle alpha: the pi in the denominator is
// replaced by alpha.  Reduces exactly to mfpt_leading_smooth at alpha = pi.
AsymptoticResult mfpt_corner_leading(double area, double alpha, double D, double eps_ratio);

// Annulus R1 < r < R2 with the window on the inner circle, averaged over a
// uniform start.  eps_ang is the angular half-width of the window.
AsymptoticResult mfpt_annulus_avg(double R1, double R2, double eps_ang, double D);

// The dual-series constant c0 for the annulus problem.
AsymptoticResult c0_annulus(double R1, double R2, double eps_ang);

// The dual-series constant c0 for the rectangle corner problem.
AsymptoticResult c0_rectangle(double a, double b, double eps_len);

// Rectangle (0,a) x (0,b) with an absorbing segment of length eps_len at
// the top-right corner, averaged over a uniform start.
AsymptoticResult mfpt_rectangle_avg(double a, double b, double eps_len, double D);

// Domain between two tangent circles with the window at the cusp; the
// escape law is algebraic, E[tau] = |Omega| / ((1/d - 1) D) * (1/eps + O(1)).
// eps_ratio is the arclength cutoff from the cusp over the outer diameter.
AsymptoticResult mfpt_cusp_leading(const geom::TangentCircles& domain, double eps_ratio,
                                   double D);

// Exact MFPT on the decapitated sphere with a fully absorbing rim, started
// at colatitude theta: v = 2 R^2 log(sin(theta/2)/sin(delta/2)) / D.
double sphere_cap_mfpt_point(double R, double delta, double theta, double D);

// Same geometry averaged over a uniform start; the exact value is the
// default, the small-delta form is reported alongside.
AsymptoticResult sphere_cap_mfpt_avg(double R, double delta, double D);

// Decapitated sphere whose rim reflects except for a window of angular
// half-width eps_ang; averaged over a uniform start.  The asymptotic
// four-term form is the value; the expression exact in delta is reported
// in aux.
AsymptoticResult sphere_window_mfpt_avg(double R, double delta, double eps_ang, double D);

// Pointwise MFPT for the rim-window problem.  The azimuthal series
// coefficients a_n are supplied by a dual-series solution when available;
// with series == nullptr the sum is truncated to zero and the result is
// accurate only up to that O(1) contribution.
double sphere_window_mfpt_point(double R, double delta, double eps_ang, double theta,
                                double phi, double D,
                                const dual::SeriesSolution* series = nullptr);

}  // namespace nescape::asym
