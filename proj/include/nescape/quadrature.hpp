#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nescape::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes (and caches) the n-point Gauss-Legendre rule.
const GaussRule& gauss_legendre(int n);

/// Integrates f over [a, b] with a fixed n-point Gauss-Legendre rule.
double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive bisection quadrature driven by a G7/G15 error estimate.
/// Intended for regular integrands with steep (but integrable) regions.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-11, double rel_tol = 1e-11,
                          int max_depth = 48);

/// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre_p(int n, double x);

/// Evaluates P_0..P_n at x into out (out.size() must be n+1).
void legendre_all(int n, double x, std::span<double> out);

}  // namespace nescape::quad
