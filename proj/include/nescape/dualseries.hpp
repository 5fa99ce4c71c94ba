#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nescape::dual {

struct ConvergenceError : std::runtime_error {
    double operator_norm;
    explicit ConvergenceError(double norm)
        : std::runtime_error("Neumann series does not contract: measured operator norm " +
                             std::to_string(norm)),
          operator_norm(norm) {}
};

struct IllConditionedError : std::runtime_error {
    double condition;
    explicit IllConditionedError(double cond)
        : std::runtime_error("collocation system ill-conditioned: estimate " +
                             std::to_string(cond)),
          condition(cond) {}
};

/// Mixed dual cosine-series problem with the window at theta = pi:
///   c0/2 + sum c_n/(1+H_n) cos(n theta) = 0    on pi - eps < theta < pi,
///   sum n c_n cos(n theta)              = rhs  on 0 < theta < pi - eps.
/// H is the exponentially decaying perturbation sequence with H(0) = 0.
struct DualSeriesProblem {
    std::function<double(int)> H;
    double rhs;
    double eps_ang;
    int truncation = 64;  // N >= 8
};

DualSeriesProblem annulus_problem(double R1, double R2, double eps_ang, int truncation = 64);
DualSeriesProblem rectangle_problem(double a, double b, double eps_len, int truncation = 64);
DualSeriesProblem disk_problem(double R, double eps_ang, int truncation = 64);
/// Unit-disk image of the sphere-with-window problem on the diameter-1
/// sphere: H = 0 and rhs = cos^2(delta/2)/2.
DualSeriesProblem sphere_window_problem(double delta, double eps_ang, int truncation = 64);

/// Validates invariants (H0 = 0, N >= 8, geometric decay of H_n).
void validate_problem(const DualSeriesProblem& problem);

struct SeriesSolution {
    std::vector<double> c;  // c0..cN
    std::vector<std::pair<double, double>> h1;            // (t, h1(t)) samples
    std::vector<std::pair<double, double>> flux_profile;  // (theta, flux) on the window
    double compatibility_residual = 0.0;
    std::string method;  // "neumann-series" | "collocation"
    double dirichlet_residual = 0.0;
    double flux_residual = 0.0;
    double condition_estimate = 0.0;
    double operator_norm = 0.0;
};

/// Abel-inverted right-hand side z(t) of the annulus Fredholm equation,
/// evaluated through the singularity-removing substitution.
double abel_rhs(double t, double R1, double R2);

/// Generic form for a problem with flux constant rhs.
double abel_rhs_generic(double t, double rhs);

/// O(beta^2) Fredholm kernel 2 beta^2 cos^2(s/2) sin(t); the O(beta^4)
/// remainder is excluded by construction.
double kernel_tilde(double t, double s, double beta);

/// Two-term Neumann-series solution h = z + K z of the Fredholm equation;
/// beta = R1/R2 feeds the kernel (R1 = 0 gives the pure-disk case).
SeriesSolution solve_h1_neumann(const DualSeriesProblem& problem, double R1, double R2);

/// Independent least-squares collocation oracle for the dual series
/// equations, solving directly for c0..cN.
SeriesSolution solve_collocation(const DualSeriesProblem& problem);

/// Series value of the window integral of (s')^n log(s-s')^2 over
/// (-eps, eps), valid for |s| < eps.
double log_integral_identity(int n, double s, double eps);

/// |Abel-summed partial sum - closed form| of the Legendre-Heaviside
/// identity; used by property tests only.
double heaviside_identity_residual(double theta, double t, int N, double abel_r = 0.999);

namespace detail {

/// G(t) = integral_0^t u sin(u/2) / sqrt(cos u - cos t) du, regular form.
double abel_G(double t);

/// dG/dt, regular form (differentiated under the integral sign).
double abel_G_prime(double t);

/// Window flux series value  sum n c_n cos(n theta) - rhs.
double window_flux(const std::vector<double>& c, double rhs, double theta);

}  // namespace detail

}  // namespace nescape::dual
