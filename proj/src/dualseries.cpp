#include "nescape/dualseries.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "nescape/quadrature.hpp"

namespace nescape::dual {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error(msg);
}

// Phi(m) = G(t) with m = sin(t/2), rewritten over u = cos(psi) so the peak
// structure 1/sqrt(1 - m^2 + m^2 u^2) near u = 0 is explicit:
//   Phi(m) = 2 sqrt(2) m  I[ asin(m s) / sqrt(1 - m^2 s^2) du ],  s = sqrt(1-u^2).
double phi_of_m(double m) {
    if (m <= 0.0) return 0.0;
    auto f = [m](double u) {
        const double s2 = 1.0 - u * u;
        const double ms = m * std::sqrt(s2);
        return std::asin(ms) / std::sqrt(1.0 - m * m * s2);
    };
    return 2.0 * kSqrt2 * m * quad::integrate_adaptive(f, 0.0, 1.0, 1e-13, 1e-12);
}

// dPhi/dm, differentiated under the integral sign (regular for m < 1).
double phi_prime_of_m(double m) {
    if (m <= 0.0) return 0.0;
    auto f = [m](double u) {
        const double s2 = 1.0 - u * u;
        const double s = std::sqrt(s2);
        const double ms = m * s;
        const double w2 = 1.0 / (1.0 - ms * ms);
        const double w = std::sqrt(w2);
        const double a = std::asin(ms);
        return a * w + ms * w2 + ms * ms * a * w2 * w;
    };
    return 2.0 * kSqrt2 * quad::integrate_adaptive(f, 0.0, 1.0, 1e-13, 1e-12);
}

struct NodeGrid {
    std::vector<double> t;
    std::vector<double> w;
};

NodeGrid grid_on(double a, double b, int n) {
    const auto& rule = quad::gauss_legendre(n);
    NodeGrid g;
    g.t.resize(rule.nodes.size());
    g.w.resize(rule.nodes.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        g.t[i] = mid + half * rule.nodes[i];
        g.w[i] = half * rule.weights[i];
    }
    return g;
}

// Compatibility defect of the flux series: the total window flux must
// balance the reflecting-side source, i.e. equal -2 pi rhs in the abstract
// normalization.
double compatibility_residual(const std::vector<double>& c, double rhs, double eps) {
    double window_series = 0.0;  // integral over (pi-eps, pi) of sum n c_n cos
    for (size_t n = 1; n < c.size(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        window_series += c[n] * sign * std::sin(static_cast<double>(n) * eps);
    }
    const double window_flux = 2.0 * (window_series - rhs * eps);
    const double target = -2.0 * kPi * rhs;
    return std::abs(window_flux - target) / std::abs(target);
}

std::vector<std::pair<double, double>> sample_flux(const std::vector<double>& c, double rhs,
                                                   double eps, int samples = 65) {
    std::vector<std::pair<double, double>> out;
    out.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        // open grid, window center pi to edge pi - eps
        const double frac = (j + 0.5) / samples;
        const double theta = kPi - frac * eps;
        out.emplace_back(theta, detail::window_flux(c, rhs, theta));
    }
    return out;
}

}  // namespace

namespace detail {

double abel_G(double t) {
    require(t >= 0.0 && t < kPi, "abel_G: t must lie in [0, pi)");
    return phi_of_m(std::sin(0.5 * t));
}

double abel_G_prime(double t) {
    require(t >= 0.0 && t < kPi, "abel_G_prime: t must lie in [0, pi)");
    return phi_prime_of_m(std::sin(0.5 * t)) * 0.5 * std::cos(0.5 * t);
}

double window_flux(const std::vector<double>& c, double rhs, double theta) {
    double s = 0.0;
    for (size_t n = 1; n < c.size(); ++n)
        s += static_cast<double>(n) * c[n] * std::cos(static_cast<double>(n) * theta);
    return s - rhs;
}

}  // namespace detail

DualSeriesProblem annulus_problem(double R1, double R2, double eps_ang, int truncation) {
    require(R1 > 0.0 && R2 > R1, "annulus_problem: requires 0 < R1 < R2");
    const double beta2 = (R1 / R2) * (R1 / R2);
    DualSeriesProblem p;
    p.H = [beta2](int n) {
        if (n == 0) return 0.0;
        const double b2n = std::pow(beta2, n);
        return -2.0 * b2n / (1.0 + b2n);
    };
    p.rhs = 0.5 * (R2 * R2 - R1 * R1);
    p.eps_ang = eps_ang;
    p.truncation = truncation;
    return p;
}

DualSeriesProblem rectangle_problem(double a, double b, double eps_len, int truncation) {
    require(a > 0.0 && b > 0.0, "rectangle_problem: sides must be positive");
    require(eps_len > 0.0 && eps_len < a, "rectangle_problem: requires 0 < eps < a");
    DualSeriesProblem p;
    p.H = [a, b](int n) {
        if (n == 0) return 0.0;
        return std::tanh(kPi * n * b / a) - 1.0;
    };
    p.rhs = a * b / kPi;
    p.eps_ang = kPi * eps_len / a;
    p.truncation = truncation;
    return p;
}

DualSeriesProblem disk_problem(double R, double eps_ang, int truncation) {
    require(R > 0.0, "disk_problem: R must be positive");
    DualSeriesProblem p;
    p.H = [](int) { return 0.0; };
    p.rhs = 0.5 * R * R;
    p.eps_ang = eps_ang;
    p.truncation = truncation;
    return p;
}

DualSeriesProblem sphere_window_problem(double delta, double eps_ang, int truncation) {
    require(delta > 0.0 && delta < kPi, "sphere_window_problem: delta must lie in (0, pi)");
    const double c = std::cos(0.5 * delta);
    DualSeriesProblem p;
    p.H = [](int) { return 0.0; };
    p.rhs = 0.5 * c * c;
    p.eps_ang = eps_ang;
    p.truncation = truncation;
    return p;
}

void validate_problem(const DualSeriesProblem& problem) {
    require(static_cast<bool>(problem.H), "dual series problem: H must be callable");
    require(problem.H(0) == 0.0, "dual series problem: H_0 must vanish");
    require(problem.truncation >= 8, "dual series problem: truncation must be >= 8");
    require(problem.eps_ang > 0.0 && problem.eps_ang < kPi,
            "dual series problem: eps_ang must lie in (0, pi)");
    require(problem.rhs > 0.0, "dual series problem: rhs must be positive");
    // geometric decay |H_n| <= C g^n with g < 1, fitted on the first terms
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int n = 1; n <= 16; ++n) {
        const double h = std::abs(problem.H(n));
        if (h < 1e-290) continue;
        const double x = n, y = std::log(h);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used >= 3) {
        const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
        require(std::exp(slope) < 1.0,
                "dual series problem: H_n must decay geometrically (fit exponent >= 1)");
    }
}

double abel_rhs_generic(double t, double rhs) {
    require(t > 0.0 && t < kPi, "abel_rhs: t must lie in (0, pi)");
    return 2.0 * rhs / kPi * detail::abel_G_prime(t);
}

double abel_rhs(double t, double R1, double R2) {
    require(R1 >= 0.0 && R2 > R1, "abel_rhs: requires 0 <= R1 < R2");
    return abel_rhs_generic(t, 0.5 * (R2 * R2 - R1 * R1));
}

double kernel_tilde(double t, double s, double beta) {
    require(beta >= 0.0 && beta < 1.0, "kernel_tilde: beta must lie in [0, 1)");
    const double c = std::cos(0.5 * s);
    return 2.0 * beta * beta * c * c * std::sin(t);
}

SeriesSolution solve_h1_neumann(const DualSeriesProblem& problem, double R1, double R2) {
    validate_problem(problem);
    require(R1 >= 0.0 && R2 > R1, "solve_h1_neumann: requires 0 <= R1 < R2");
    const double beta = R1 / R2;
    const double eps = problem.eps_ang;
    const double rhs = problem.rhs;
    const double upper = kPi - eps;

    // The truncated kernel is rank one, K(t,s) = 2 beta^2 sin(t) cos^2(s/2),
    // so its L2 operator norm equals its Hilbert-Schmidt norm.
    auto sin2 = [](double t) { double v = std::sin(t); return v * v; };
    auto cos4 = [](double s) { double v = std::cos(0.5 * s); return v * v * v * v; };
    const double norm_k =
        2.0 * beta * beta *
        std::sqrt(quad::integrate_adaptive(sin2, 0.0, upper, 1e-12, 1e-12) *
                  quad::integrate_adaptive(cos4, 0.0, upper, 1e-12, 1e-12));
    if (norm_k >= 1.0) throw ConvergenceError(norm_k);

    const NodeGrid grid = grid_on(0.0, upper, 128);
    const size_t M = grid.t.size();

    std::vector<double> G_at(M);
    for (size_t i = 0; i < M; ++i) G_at[i] = detail::abel_G(grid.t[i]);
    const double G_edge = detail::abel_G(upper);

    // I_cos = integral of cos^2(s/2) z(s) ds over (0, upper), integrated by
    // parts so only G (not z) appears under the quadrature.
    const double s_half = std::sin(0.5 * eps);
    double int_sinG = 0.0;
    for (size_t i = 0; i < M; ++i) int_sinG += grid.w[i] * std::sin(grid.t[i]) * G_at[i];
    const double i_cos = 2.0 * rhs / kPi * (s_half * s_half * G_edge + 0.5 * int_sinG);

    std::vector<double> z(M), h(M);
    for (size_t i = 0; i < M; ++i) {
        z[i] = abel_rhs_generic(grid.t[i], rhs);
        h[i] = z[i] + 2.0 * beta * beta * std::sin(grid.t[i]) * i_cos;
    }

    SeriesSolution sol;
    sol.method = "neumann-series";
    sol.operator_norm = norm_k;
    const int N = problem.truncation;
    sol.c.assign(N + 1, 0.0);

    // c0 = sqrt(2) <h, 1>; the z part integrates exactly to (2 rhs/pi) G(upper).
    const double kz_inner = 2.0 * beta * beta * i_cos * (1.0 + std::cos(eps));
    sol.c[0] = kSqrt2 * (2.0 * rhs / kPi * G_edge + kz_inner);

    std::vector<double> p(N + 1);
    for (size_t i = 0; i < M; ++i) {
        quad::legendre_all(N, std::cos(grid.t[i]), p);
        const double wh = grid.w[i] * h[i];
        for (int n = 1; n <= N; ++n) sol.c[n] += wh * (p[n] + p[n - 1]);
    }
    for (int n = 1; n <= N; ++n) sol.c[n] *= (1.0 + problem.H(n)) / kSqrt2;

    sol.h1.reserve(M);
    for (size_t i = 0; i < M; ++i) sol.h1.emplace_back(grid.t[i], h[i]);
    sol.flux_profile = sample_flux(sol.c, rhs, eps);
    sol.compatibility_residual = compatibility_residual(sol.c, rhs, eps);
    return sol;
}

SeriesSolution solve_collocation(const DualSeriesProblem& problem) {
    validate_problem(problem);
    const int N = problem.truncation;
    const double eps = problem.eps_ang;
    const double rhs = problem.rhs;
    const double edge = kPi - eps;
    const int M = std::max(2 * N, 48);

    // The window flux density carries inverse-square-root edge singularities;
    // a plain cosine truncation cannot represent them and biases c0.  The
    // density is therefore expanded in the Chebyshev-weighted edge basis
    //   g(theta) = sum_k a_k T_{2k}(x) / sqrt(1 - x^2),  x = (theta - pi)/eps,
    // whose induced Fourier coefficients are Bessel moments,
    //   n c_n = (-1)^{n+1} eps sum_k (-1)^k a_k J_{2k}(n eps).
    // Total-flux compatibility pins a_0 = 2 rhs / eps exactly; the remaining
    // a_k and c0 are the least-squares unknowns.
    const int K = 6;                                       // highest density mode
    const int n_sum = std::max(N, static_cast<int>(std::ceil(30.0 / eps)));

    std::vector<double> hfac(n_sum + 1, 1.0);
    for (int n = 1; n <= n_sum; ++n) hfac[n] = 1.0 / (1.0 + problem.H(n));

    // bessel[k][n] = (-1)^{n+1} (eps/n) (-1)^k J_{2k}(n eps)
    std::vector<std::vector<double>> moment(K + 1, std::vector<double>(n_sum + 1, 0.0));
    for (int k = 0; k <= K; ++k) {
        const double sk = (k % 2 == 0) ? 1.0 : -1.0;
        for (int n = 1; n <= n_sum; ++n) {
            const double sn = (n % 2 == 0) ? -1.0 : 1.0;
            moment[k][n] = sn * sk * (eps / n) * std::cyl_bessel_j(2.0 * k, n * eps);
        }
    }

    std::vector<double> window_pts(M), reflect_pts(M);
    for (int j = 0; j < M; ++j) {
        const double x = std::cos(kPi * (2.0 * j + 1.0) / (2.0 * M));
        window_pts[j] = kPi - 0.5 * eps + 0.5 * eps * x;
        reflect_pts[j] = 0.5 * edge + 0.5 * edge * x;
    }

    // Unknowns y = [c0, a_1..a_K]; rows: Dirichlet series on the window and
    // the integrated flux series on the reflecting arc.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * M, K + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * M);
    const double a0 = 2.0 * rhs / eps;

    for (int j = 0; j < M; ++j) {
        const double theta = window_pts[j];
        A(j, 0) = 0.5;
        double fixed = 0.0;
        for (int n = 1; n <= n_sum; ++n) {
            const double cosn = std::cos(n * theta) * hfac[n];
            fixed += a0 * moment[0][n] * cosn;
            for (int k = 1; k <= K; ++k) A(j, k) += moment[k][n] * cosn;
        }
        b(j) = -fixed;
    }
    for (int j = 0; j < M; ++j) {
        const double theta = reflect_pts[j];
        double fixed = 0.0;
        for (int n = 1; n <= n_sum; ++n) {
            const double sinn = std::sin(n * theta);
            fixed += a0 * moment[0][n] * sinn;
            for (int k = 1; k <= K; ++k) A(M + j, k) += moment[k][n] * sinn;
        }
        b(M + j) = rhs * theta - fixed;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) /
                        svd.singularValues()(svd.singularValues().size() - 1);
    if (!(cond < 1e12)) throw IllConditionedError(cond);
    Eigen::VectorXd y = svd.solve(b);

    std::vector<double> density(K + 1);
    density[0] = a0;
    for (int k = 1; k <= K; ++k) density[k] = y(k);

    SeriesSolution sol;
    sol.method = "collocation";
    sol.condition_estimate = cond;
    sol.c.assign(N + 1, 0.0);
    sol.c[0] = y(0);
    for (int n = 1; n <= N; ++n) {
        double v = 0.0;
        for (int k = 0; k <= K; ++k) v += density[k] * moment[k][n];
        sol.c[n] = v;
    }

    Eigen::VectorXd resid = A * y - b;
    sol.dirichlet_residual = std::sqrt(resid.head(M).squaredNorm() / M);
    sol.flux_residual = std::sqrt(resid.tail(M).squaredNorm() / M) / rhs;
    // The physical window flux is the density itself; sample it directly so
    // the edge singularity survives in the profile.
    sol.flux_profile.reserve(65);
    for (int j = 0; j < 65; ++j) {
        const double frac = (j + 0.5) / 65.0;
        const double theta = kPi - frac * eps;
        const double x = (theta - kPi) / eps;
        double g = 0.0;
        double tk_prev = 1.0, tk = 2.0 * x * x - 1.0;  // T_0, T_2 at x
        const double x2 = 2.0 * (2.0 * x * x - 1.0);
        for (int k = 0; k <= K; ++k) {
            g += density[k] * tk_prev;
            const double tk_next = x2 * tk - tk_prev;  // T_{2k+2}
            tk_prev = tk;
            tk = tk_next;
        }
        g /= std::sqrt(std::fmax(1.0 - x * x, 1e-300));
        sol.flux_profile.emplace_back(theta, -g);
    }
    // Window-flux balance evaluated on the density with Gauss-Chebyshev
    // nodes (the weight absorbs the edge singularity): the total must be
    // -2 pi rhs, the -|Omega| compatibility condition in this normalization.
    {
        const int nodes = 64;
        double gc = 0.0;
        for (int i = 0; i < nodes; ++i) {
            const double x = std::cos(kPi * (2.0 * i + 1.0) / (2.0 * nodes));
            double tk_prev = 1.0, tk = 2.0 * x * x - 1.0;
            const double x2 = 2.0 * (2.0 * x * x - 1.0);
            for (int k = 0; k <= K; ++k) {
                gc += density[k] * tk_prev;
                const double tk_next = x2 * tk - tk_prev;
                tk_prev = tk;
                tk = tk_next;
            }
        }
        const double window_flux = eps * gc * kPi / nodes;
        sol.compatibility_residual =
            std::abs(window_flux - 2.0 * kPi * rhs) / (2.0 * kPi * rhs);
    }
    return sol;
}

double log_integral_identity(int n, double s, double eps) {
    require(n >= 0, "log_integral_identity: n must be >= 0");
    require(eps > 0.0, "log_integral_identity: eps must be positive");
    require(std::abs(s) < eps,
            "log_integral_identity: requires |s| < eps (series diverges otherwise)");
    const double ratio2 = (s / eps) * (s / eps);
    if (n % 2 == 0) {
        const double en1 = std::pow(eps, n + 1);
        double acc = 4.0 * (en1 / (n + 1) * std::log(eps) - en1 / ((n + 1.0) * (n + 1.0)));
        if (s != 0.0) {
            // -2 sum_j s^{2j} eps^{n-2j+1} / (j (n-2j+1))
            double pw = s * s * std::pow(eps, n - 1);  // j = 1 term magnitude
            for (int j = 1; j < 100000; ++j) {
                const double term = -2.0 * pw / (j * (n - 2.0 * j + 1.0));
                acc += term;
                if (std::abs(term) < 1e-16 * std::abs(acc) + 1e-300) break;
                pw *= ratio2;
            }
        }
        return acc;
    }
    double acc = 0.0;
    if (s != 0.0) {
        double pw = s * s * s * std::pow(eps, n - 2);  // j = 1 term magnitude
        for (int j = 1; j < 100000; ++j) {
            const double term = -4.0 * pw / ((2.0 * j + 1.0) * (n - 2.0 * j));
            acc += term;
            if (std::abs(term) < 1e-16 * std::abs(acc) + 1e-300) break;
            pw *= ratio2;
        }
    }
    return acc;
}

double heaviside_identity_residual(double theta, double t, int N, double abel_r) {
    require(theta > 0.0 && theta < kPi && t > 0.0 && t < kPi,
            "heaviside_identity_residual: theta, t must lie in (0, pi)");
    if (theta == t)
        throw std::domain_error("heaviside_identity_residual: singular at theta == t");
    require(N >= 1 && abel_r > 0.0 && abel_r <= 1.0,
            "heaviside_identity_residual: invalid N or Abel factor");
    const double x = std::cos(t);
    double p_prev = 1.0, p_cur = x;  // P_0, P_1
    double r_pow = abel_r;
    double sum = r_pow * (p_cur + p_prev) * std::sin(theta);
    for (int n = 2; n <= N; ++n) {
        const double p_next = ((2.0 * n - 1.0) * x * p_cur - (n - 1.0) * p_prev) / n;
        p_prev = p_cur;
        p_cur = p_next;
        r_pow *= abel_r;
        sum += r_pow * (p_cur + p_prev) * std::sin(n * theta);
    }
    sum /= kSqrt2;
    const double closed =
        theta > t ? std::cos(0.5 * theta) / std::sqrt(std::cos(t) - std::cos(theta)) : 0.0;
    return std::abs(sum - closed);
}

}  // namespace nescape::dual
